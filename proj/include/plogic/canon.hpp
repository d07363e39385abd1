#ifndef PLOGIC_CANON_HPP
#define PLOGIC_CANON_HPP

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "plogic/formula.hpp"
#include "plogic/model.hpp"
#include "plogic/rational.hpp"

namespace plogic {

// Tightest grid bounds an atom asserts for an event: either a single grid
// point or the open interval between two adjacent grid points.
class Bracket {
 public:
  static Bracket point(Rat v);
  static Bracket open(Rat lo, Rat hi);

  bool is_point() const { return lo_ == hi_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  Bracket complemented() const;  // bracket of the complement event
  bool operator==(const Bracket& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
  bool operator!=(const Bracket& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  Rat lo_, hi_;
};

// Probability part of a depth-1 atom: one bracket per event over the truth
// assignments. Assignments are bitmasks over the letter list (bit j = letter
// j true); events are bitmasks over assignments; brackets are indexed by
// event mask. Complement coherence holds by construction.
struct ProbabilitySpec {
  int q = 1;
  int letter_count = 0;
  std::vector<Bracket> brackets;  // size 1 << (1 << letter_count)

  int assignment_count() const { return 1 << letter_count; }
  int event_count() const { return 1 << assignment_count(); }
  bool operator==(const ProbabilitySpec& o) const {
    return q == o.q && letter_count == o.letter_count && brackets == o.brackets;
  }
};

// Depth-1 atom: a truth assignment paired with a consistent probability part.
struct CanonAtom {
  int prop = 0;  // assignment mask
  int spec = 0;  // index into the spec list
};

// The canonical introspective model over the atoms of L(q, 1, letters):
// atoms grouped by probability part, one representative measure per group,
// lifted to atoms through their propositional parts.
struct CanonicalModel {
  int q = 1;
  std::vector<int> letters;                 // sorted letter ids
  std::vector<ProbabilitySpec> specs;       // the groups, in enumeration order
  std::vector<CanonAtom> atoms;             // ordered by (prop, spec)
  std::vector<std::vector<Rat>> measures;   // per spec, over assignment masks
  FiniteTypeSpace space;                    // single agent, states = atoms

  int assignment_count() const { return 1 << (int)letters.size(); }
  int atom_index(int prop, int spec) const;
  StateSet group(int spec) const;           // atoms sharing the spec
  // Assignment-set satisfying a depth-0 formula over the model's letters.
  int depth0_event(const Formula& f) const;
  std::string atom_label(int atom) const;
};

// All consistent probability parts for accuracy q over the letters.
// Budget: at most one letter for q <= 8; two letters only for q = 1.
std::vector<ProbabilitySpec> enumerate_prob_parts(int q, const std::vector<int>& letters);

// Deterministic strictly-interior witness: the basic solution of the
// shared-margin maximization (one-dimensional open brackets sit at their
// midpoints). Throws LpError for inconsistent specs.
std::vector<Rat> representative_measure(const ProbabilitySpec& spec);

std::vector<CanonAtom> enumerate_atoms1(int q, const std::vector<int>& letters);

std::shared_ptr<const CanonicalModel> build_canonical_model(int q, const std::vector<int>& letters);

// |Omega_H(q, d, w)| for d >= 1: computed by enumeration at depth 1; equal
// for all larger depths since extensions are unique.
long cardinality(int q, int d, int w);

enum class Logic { SigmaPlus, SigmaH };

struct SatResult {
  bool satisfiable = false;
  std::shared_ptr<const FiniteTypeSpace> model;  // witness model when satisfiable
  int state = -1;
  std::string witness_label;
};

// Satisfiability of a single-agent, knowledge-free formula.
// SigmaH: search the canonical model M_H(accuracy(f), letters(f)); sound for
// any depth because depth-1 atoms extend uniquely.
// SigmaPlus: depth <= 1 only; decided independently by enumerating truth
// assignments for the modal subformulas and solving an exact feasibility
// system for the measure (the witness is a constant-kernel model).
SatResult sat(const Formula& f, Logic logic);

struct ValidityResult {
  bool is_valid = false;
  SatResult counterexample;  // of the negation, when invalid
};

ValidityResult valid(const Formula& f, Logic logic);

// Bracket that the unique depth-(d+1) extension of the atom assigns to a
// depth-1 event: the atom's own bracket of the union of propositional parts
// of the event's members inside the atom's group.
Bracket unique_extension_brackets(const CanonicalModel& model, int atom, const StateSet& event);

struct UxReport {
  long long pairs_checked = 0;
  long long failures = 0;
  std::vector<std::string> failure_details;  // capped
  bool all_passed() const { return failures == 0; }
};

// Certifies unique extension by exact LP: for every atom and depth-1 event,
// the min/max of mu(event) over measures that concentrate on the atom's
// group and push forward to its depth-0 brackets span exactly the predicted
// bracket, and exactly one grid bracket is jointly feasible.
UxReport verify_unique_extension(int q, const std::vector<int>& letters, int threads = 1);

// Syntactic route for the truth-lemma cross-check: whether the atom's
// bracket data entails a depth <= 1 formula (L_r phi holds iff r is at most
// the bracket's lower endpoint).
bool atom_entails(const CanonicalModel& model, int atom, const Formula& f);

// Atom index export: atom id -> assignment and brackets.
nlohmann::json atoms_to_json(const CanonicalModel& model);

// Conjunction of literals fixing each letter per the assignment mask.
Formula assignment_formula(const std::vector<int>& letters, int assignment);

// Canonical depth-0 formula for an assignment-set: the disjunction of its
// assignments' literal conjunctions (a lone assignment stays a conjunction,
// and the single-positive-literal case is just the letter).
Formula event_formula(const std::vector<int>& letters, int event_mask);

// Assignment-set satisfying a depth-0 formula over the given letters.
int assignment_event(const Formula& depth0, const std::vector<int>& letters);

// One event per complement pair (the side containing the all-true
// assignment), ordered by (cardinality, mask); trivial events excluded.
std::vector<int> orbit_representatives(int assignments);

}  // namespace plogic

#endif
