#ifndef PLOGIC_ALGEBRA_HPP
#define PLOGIC_ALGEBRA_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "plogic/model.hpp"
#include "plogic/rational.hpp"

namespace plogic {

// Element of a finite Boolean algebra, as a bitmask over its atoms.
using AlgElem = uint32_t;
// Unary operator table, indexed by element.
using OpTable = std::vector<AlgElem>;

// Finite Boolean algebra carrying a grid-indexed family of belief operators
// and, optionally, a knowledge operator. Carrier size is 2^atom_count.
struct ModalAlgebra {
  int atom_count = 0;
  std::vector<std::pair<Rat, OpTable>> belief;  // ascending in the index
  std::optional<OpTable> knowledge;

  int num_elems() const { return 1 << atom_count; }
  AlgElem top() const { return (AlgElem)(num_elems() - 1); }
  const OpTable& belief_at(const Rat& r) const;  // exact index lookup
};

// Semantic algebra of a finite model: carrier = powerset of states, belief
// operator at k/q = the event operator, knowledge from the partition when
// one is present. States are capped at 16 (the carrier is their powerset,
// but tables stay linear in the carrier).
ModalAlgebra make_powerset_algebra(const FiniteTypeSpace& m, int agent, int q);
ModalAlgebra make_powerset_algebra(const KnowledgeBeliefSpace& kb, int agent, int q);

// Four-element algebra abstracting a measure-one/null event structure over
// a distinguished point: elements (u, z) with u = "big part present" and
// z = "point present"; B>=0 is constantly top and B>=r collapses to (u, u)
// for r > 0 (tables supplied on the 1/6 grid). It validates every
// introspective belief law; its only knowledge operator is the coarsest box
// (top to top, everything else to bottom), and that operator lies outside
// the closure generated by the belief family, so knowledge is not belief-
// definable here. Every belief image on this carrier is bottom or top, which
// is why a knowledge operator survives at all: the pointwise forcing that
// rules one out needs events finer than any belief-closed finite carrier of
// this structure provides.
ModalAlgebra counterexample_algebra();

struct AlgebraViolation {
  std::string law;
  std::string detail;
};

struct AlgebraReport {
  std::vector<AlgebraViolation> violations;
  bool law_passed(const std::string& law) const;
  bool all_passed() const { return violations.empty(); }
};

// Belief-law suite as operator inequalities over every element and all grid
// pairs: boundary laws, superadditivity and its dual, disjointness above 1,
// monotonicity, index-antitonicity, and both introspection laws.
AlgebraReport check_sigma_h_laws(const ModalAlgebra& a, int q);

// Every unary operator satisfying the knowledge axioms against the belief
// family: K top = top, K(e & f) = Ke & Kf, Ke <= e, Ke <= KKe,
// ~Ke <= K~Ke, B>=r e <= K B>=r e, ~B>=r e <= K ~B>=r e, Ke <= B>=1 e.
// Carriers up to 4 elements are scanned table-by-table; larger carriers
// (up to 16 elements) enumerate binary relations, which parameterize
// exactly the meet-preserving candidates with K top = top.
std::vector<OpTable> search_knowledge_ops(const ModalAlgebra& a, int threads = 1);

// Knowledge operator induced by a state partition, as a table over the
// powerset carrier.
OpTable partition_operator(const std::vector<StateSet>& cells, int states);

// Fixed-point closure of {belief operators} (+ knowledge if requested) and
// the constant-top operator under pointwise complement, pointwise meet and
// composition.
std::set<OpTable> operator_closure(const ModalAlgebra& a, bool include_knowledge);

struct ReducibilityReport {
  bool extendable = false;               // some knowledge operator exists
  std::vector<OpTable> knowledge_ops;    // all of them
  std::vector<bool> inside_closure;      // per operator: in the belief-only closure?
};

// Finite-scale definability probe: can the algebra be extended by a
// knowledge operator at all, and if so, is that operator already generated
// by the belief family?
ReducibilityReport check_reducibility_witness(const ModalAlgebra& a);

// JSON: {"atoms": k, "belief": {"0": [...], "1/2": [...]},
//        "knowledge": [...] (optional)} with tables as element arrays.
nlohmann::json algebra_to_json(const ModalAlgebra& a);
ModalAlgebra algebra_from_json(const nlohmann::json& j);

}  // namespace plogic

#endif
