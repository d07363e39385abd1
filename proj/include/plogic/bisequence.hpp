#ifndef PLOGIC_BISEQUENCE_HPP
#define PLOGIC_BISEQUENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "plogic/model.hpp"
#include "plogic/rational.hpp"

namespace plogic {

// Finite-horizon two-agent space of paired bit sequences (a_0..a_n,
// b_0..b_n) with a_0 = b_0. States are indexed by a * 2^n + (b >> 1).
//
// Agent 1 considers two states equivalent when all a_k (k >= 1) agree and
// b_{k-1} agrees wherever a_k = 1; agent 2 dually with a and b swapped.
// The shared first digit is pinned only through those clauses, so when
// a_1 = 0 the pair (a_0, b_0) floats inside agent 1's class. Each agent's
// kernel is uniform on the class of the state.
class BiSeqSpace {
 public:
  explicit BiSeqSpace(int horizon);  // 1 <= horizon <= 10

  int horizon() const { return n_; }
  int num_states() const { return num_states_; }

  uint32_t a_bits(int state) const;
  uint32_t b_bits(int state) const;
  int index_of(uint32_t a, uint32_t b) const;

  // [a_k = v] or [b_k = v]
  StateSet coord_event(char which, int k, int v) const;
  // X = [a_0 = 1] (= [b_0 = 1])
  StateSet x_event() const { return coord_event('a', 0, 1); }

  const std::vector<int>& class_members(int agent, int state) const;
  int class_size(int agent, int state) const;

 private:
  int n_;
  int num_states_;
  std::vector<int> class_id_[2];
  std::vector<std::vector<int>> classes_[2];

  friend StateSet class_of(const BiSeqSpace&, int, int);
};

BiSeqSpace build_space(int horizon);

// Agent's information class of the state, as an event.
StateSet class_of(const BiSeqSpace& space, int agent, int state);

// T_agent(state)(event) = |event intersect class| / |class|, exact.
Rat kernel_prob(const BiSeqSpace& space, int agent, int state, const StateSet& event);

// {w : T_agent(w)(event) >= r}
StateSet belief_event(const BiSeqSpace& space, int agent, const Rat& r, const StateSet& event);

// J_agent^r E = B_agent^{>= r} E union B_agent^{>= r} (~E)
StateSet j_event(const BiSeqSpace& space, int agent, const Rat& r, const StateSet& event);

struct CoordinateLemmaReport {
  std::vector<std::string> failures;  // one entry per broken equality
  bool all_passed() const { return failures.empty(); }
};

// Checks [a_k=1] = J1 J2 J1 ... (k operators) X and the b-dual for
// k = 1..horizon as exact event equalities. The equalities characterize
// r > 1/2; at r <= 1/2 the report lists the broken ones.
CoordinateLemmaReport verify_coordinate_lemma(const BiSeqSpace& space, const Rat& r);

// Intersection of the alternating list (±X, ±J1 X, ±J2 J1 X, ...) with the
// given signs (true = unnegated). List length is at most horizon + 1.
StateSet jlist_event(const BiSeqSpace& space, const std::vector<bool>& signs, const Rat& r);

// Number of sign vectors of the given length whose list event is nonempty.
uint64_t count_consistent_jlists(const BiSeqSpace& space, int length, const Rat& r,
                                 int threads = 1);

// Two-agent finite type space with the uniform class kernels and p1 bound to
// X. Horizon capped at 8 (the kernel tables grow as 4 * 6^horizon entries).
FiniteTypeSpace export_type_space(const BiSeqSpace& space);

}  // namespace plogic

#endif
