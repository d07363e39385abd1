#ifndef PLOGIC_MODEL_HPP
#define PLOGIC_MODEL_HPP

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "plogic/formula.hpp"
#include "plogic/rational.hpp"

namespace plogic {

// Events are explicit state sets over a finite space.
using StateSet = boost::dynamic_bitset<>;

StateSet full_set(int n);
StateSet empty_set(int n);

// Kernel rows are stored sparsely (zero entries omitted, indices ascending),
// so two rows are equal as measures iff the representations are equal.
using KernelRow = std::vector<std::pair<int, Rat>>;

// Finite probability model: states, one exact Markov kernel per agent and a
// valuation. The sigma-algebra is the full powerset.
struct FiniteTypeSpace {
  int num_states = 0;
  std::vector<std::vector<KernelRow>> kernels;  // [agent][state]
  std::map<int, StateSet> valuation;            // letter id -> extension

  int num_agents() const { return (int)kernels.size(); }
};

// Throws ModelError unless every row is a probability vector over the states
// and the valuation sets have the right size.
void validate_space(const FiniteTypeSpace& m);

// T_agent(state)(event), exact.
Rat kernel_mass(const FiniteTypeSpace& m, int agent, int state, const StateSet& event);

// {w : T_agent(w)(event) >= r}
StateSet belief_event(const FiniteTypeSpace& m, int agent, const Rat& r, const StateSet& event);

// Kernel-equality classes [T(w)] = {w' : T(w') = T(w)}, as a partition.
std::vector<StateSet> kernel_equality_classes(const FiniteTypeSpace& m, int agent);

// Certainty of own type: every state's measure gives mass 1 to its
// kernel-equality class.
bool is_harsanyi(const FiniteTypeSpace& m, int agent);
bool is_harsanyi(const FiniteTypeSpace& m);  // all agents

// Equivalent formulation: T(w)({v : T(v)(E) != T(w)(E)}) = 0 for all w and
// all events E. Exponential in the state count; guarded at 16 states.
bool is_harsanyi_hprime(const FiniteTypeSpace& m, int agent);

// Harsanyi type space plus one partition per agent.
struct KnowledgeBeliefSpace {
  FiniteTypeSpace base;
  std::vector<std::vector<StateSet>> partitions;  // [agent][cell]

  const StateSet& cell_of(int agent, int state) const;
};

// {w : cell_agent(w) subseteq event}
StateSet knowledge_event(const KnowledgeBeliefSpace& kb, int agent, const StateSet& event);

struct KbCheck {
  std::string condition;
  bool passed = true;
  std::string witness;  // "(w, E)" description on failure
};

struct KbReport {
  std::vector<KbCheck> checks;
  bool all_passed() const;
};

// Checks the four defining conditions: partitions are partitions, the base is
// Harsanyi, cells force certainty, and kernel-equality refines into cells.
KbReport validate_kb_space(const KnowledgeBeliefSpace& kb);

// Partitions each agent by kernel equality. Requires a Harsanyi base.
KnowledgeBeliefSpace extend_to_kb(const FiniteTypeSpace& m);

// Satisfaction. evaluate(m, w, f) follows the usual clauses; the knowledge
// clause needs a KnowledgeBeliefSpace. Throws ModelError on unknown letters,
// missing agents, or K over a bare type space.
bool evaluate(const FiniteTypeSpace& m, int state, const Formula& f);
bool evaluate(const KnowledgeBeliefSpace& kb, int state, const Formula& f);
StateSet extension(const FiniteTypeSpace& m, const Formula& f);
StateSet extension(const KnowledgeBeliefSpace& kb, const Formula& f);

struct LawViolation {
  std::string law;
  std::string detail;
};

struct LawReport {
  std::vector<LawViolation> violations;
  bool law_passed(const std::string& law) const;
  bool all_passed() const { return violations.empty(); }
};

// Verifies the semantic belief-operator laws over the full powerset and the
// index grid {0, 1/q, ..., 1}: B>=0 = all, B>=1(all) = all, disjointness for
// r+s>1, exact threshold agreement and index-antitonicity, finite
// superadditivity and its dual, monotonicity on 2-chains, plus the
// introspection laws (which fail on non-Harsanyi kernels, by design).
// For knowledge-belief spaces the three knowledge/belief interaction laws
// are included. Guarded at 8 states (the scan is exponential).
LawReport check_operator_laws(const FiniteTypeSpace& m, int agent, int q);
LawReport check_operator_laws(const KnowledgeBeliefSpace& kb, int agent, int q);

// Random models for property testing. Kernel entries are multiples of
// 1/denominator; every letter in 1..num_letters gets a random extension.
FiniteTypeSpace random_type_space(std::mt19937& rng, int states, int agents,
                                  int denominator, int num_letters);
// Random Harsanyi space: states are split into cells; each cell shares one
// measure concentrated on the cell.
FiniteTypeSpace random_harsanyi_space(std::mt19937& rng, int states, int agents,
                                      int denominator, int num_letters);

// JSON model format: {"states": n, "agents": k, "kernels": [[["3/4", ...],
// ...], ...], "valuation": {"p1": [0, 1]}, "partitions": [[[0], [1]], ...]}
// with rationals as "num/den" strings and dense kernel rows.
nlohmann::json space_to_json(const FiniteTypeSpace& m);
FiniteTypeSpace space_from_json(const nlohmann::json& j);
nlohmann::json kb_to_json(const KnowledgeBeliefSpace& kb);
KnowledgeBeliefSpace kb_from_json(const nlohmann::json& j);

}  // namespace plogic

#endif
