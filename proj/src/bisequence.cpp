#include "plogic/bisequence.hpp"

#include <map>

#include "plogic/errors.hpp"
#include "plogic/parallel.hpp"

namespace plogic {

namespace {

// Forced b-positions for agent 1: bit k-1 set iff a_k = 1 (k in 1..n).
// For agent 2 swap the roles of a and b. b_n (resp. a_n) is never forced,
// and position 0 is free exactly when the partner's next digit is 0 (then
// the shared first digit floats with it).
inline uint32_t forced_mask(uint32_t driver_bits, int n) {
  return (driver_bits >> 1) & ((1u << n) - 1);
}

}  // namespace

BiSeqSpace::BiSeqSpace(int horizon) : n_(horizon) {
  if (horizon < 1 || horizon > 10)
    throw std::invalid_argument("horizon out of range 1..10");
  num_states_ = 2 << (2 * n_);  // 2 * 4^n

  // Group states into information classes per agent. The class key for
  // agent 1 is (a_1..a_n, forced b-digits); membership of a_0 follows b_0.
  for (int agent = 0; agent < 2; ++agent) {
    class_id_[agent].assign(num_states_, -1);
    std::map<std::pair<uint32_t, uint32_t>, int> ids;
    for (int s = 0; s < num_states_; ++s) {
      uint32_t a = a_bits(s), b = b_bits(s);
      uint32_t driver = agent == 0 ? a : b;
      uint32_t follower = agent == 0 ? b : a;
      uint32_t mask = forced_mask(driver, n_);
      auto key = std::make_pair(driver >> 1, follower & mask);
      auto [it, fresh] = ids.try_emplace(key, (int)classes_[agent].size());
      if (fresh) classes_[agent].emplace_back();
      class_id_[agent][s] = it->second;
      classes_[agent][it->second].push_back(s);
    }
  }
}

BiSeqSpace build_space(int horizon) { return BiSeqSpace(horizon); }

uint32_t BiSeqSpace::a_bits(int state) const { return (uint32_t)state >> n_; }

uint32_t BiSeqSpace::b_bits(int state) const {
  uint32_t a = a_bits(state);
  uint32_t b_rest = (uint32_t)state & ((1u << n_) - 1);
  return (b_rest << 1) | (a & 1u);
}

int BiSeqSpace::index_of(uint32_t a, uint32_t b) const {
  return (int)((a << n_) | (b >> 1));
}

StateSet BiSeqSpace::coord_event(char which, int k, int v) const {
  if (k < 0 || k > n_) throw std::invalid_argument("coordinate beyond the horizon");
  StateSet out(num_states_);
  for (int s = 0; s < num_states_; ++s) {
    uint32_t bits = which == 'a' ? a_bits(s) : b_bits(s);
    if ((int)((bits >> k) & 1u) == v) out.set(s);
  }
  return out;
}

const std::vector<int>& BiSeqSpace::class_members(int agent, int state) const {
  return classes_[agent][class_id_[agent][state]];
}

int BiSeqSpace::class_size(int agent, int state) const {
  return (int)class_members(agent, state).size();
}

StateSet class_of(const BiSeqSpace& space, int agent, int state) {
  StateSet out(space.num_states());
  for (int s : space.class_members(agent, state)) out.set(s);
  return out;
}

Rat kernel_prob(const BiSeqSpace& space, int agent, int state, const StateSet& event) {
  const auto& members = space.class_members(agent, state);
  int inside = 0;
  for (int s : members)
    if (event.test(s)) inside++;
  return Rat(inside, (int)members.size());
}

namespace {

// Classwise scan: the kernel is constant on classes, so decide each class
// once. pred(inside, size) says whether the class joins the event.
template <typename Pred>
StateSet classwise(const BiSeqSpace& space, int agent, const StateSet& event, Pred pred) {
  StateSet out(space.num_states());
  std::vector<char> seen(space.num_states(), 0);
  for (int s = 0; s < space.num_states(); ++s) {
    if (seen[s]) continue;
    const auto& members = space.class_members(agent, s);
    int inside = 0;
    for (int m : members) {
      seen[m] = 1;
      if (event.test(m)) inside++;
    }
    if (pred(inside, (int)members.size()))
      for (int m : members) out.set(m);
  }
  return out;
}

}  // namespace

StateSet belief_event(const BiSeqSpace& space, int agent, const Rat& r,
                      const StateSet& event) {
  const Int& num = numerator(r);
  const Int& den = denominator(r);
  return classwise(space, agent, event, [&](int inside, int size) {
    return Int(inside) * den >= num * size;
  });
}

StateSet j_event(const BiSeqSpace& space, int agent, const Rat& r, const StateSet& event) {
  const Int& num = numerator(r);
  const Int& den = denominator(r);
  // max(inside, size - inside) covers B>=r E union B>=r ~E in one pass.
  return classwise(space, agent, event, [&](int inside, int size) {
    int big = std::max(inside, size - inside);
    return Int(big) * den >= num * size;
  });
}

CoordinateLemmaReport verify_coordinate_lemma(const BiSeqSpace& space, const Rat& r) {
  CoordinateLemmaReport report;
  StateSet chain_a = space.x_event();  // ends with the agent-1 operator
  StateSet chain_b = space.x_event();  // ends with the agent-2 operator
  for (int k = 1; k <= space.horizon(); ++k) {
    StateSet next_a = j_event(space, 0, r, chain_b);
    StateSet next_b = j_event(space, 1, r, chain_a);
    if (next_a != space.coord_event('a', k, 1))
      report.failures.push_back("a-chain differs from [a_" + std::to_string(k) +
                                "=1] at r=" + rat_short_string(r));
    if (next_b != space.coord_event('b', k, 1))
      report.failures.push_back("b-chain differs from [b_" + std::to_string(k) +
                                "=1] at r=" + rat_short_string(r));
    chain_a = std::move(next_a);
    chain_b = std::move(next_b);
  }
  return report;
}

StateSet jlist_event(const BiSeqSpace& space, const std::vector<bool>& signs, const Rat& r) {
  if (signs.empty()) throw std::invalid_argument("empty list");
  if ((int)signs.size() > space.horizon() + 1)
    throw std::invalid_argument("list too long for the horizon");
  StateSet inner = space.x_event();
  StateSet result = signs[0] ? inner : ~inner;
  for (size_t j = 1; j < signs.size(); ++j) {
    int agent = (j % 2 == 1) ? 0 : 1;  // J1, J2, J1, ...
    StateSet next = j_event(space, agent, r, inner);
    result &= signs[j] ? next : ~next;
    inner = std::move(next);
  }
  return result;
}

uint64_t count_consistent_jlists(const BiSeqSpace& space, int length, const Rat& r,
                                 int threads) {
  if (length < 1 || length > space.horizon() + 1)
    throw std::invalid_argument("list length out of range for the horizon");
  // The nested J-events ignore signs, so build them once.
  std::vector<StateSet> layers;
  layers.push_back(space.x_event());
  for (int j = 1; j < length; ++j) {
    int agent = (j % 2 == 1) ? 0 : 1;
    layers.push_back(j_event(space, agent, r, layers.back()));
  }
  uint64_t total_signs = 1ull << length;
  std::vector<char> consistent(total_signs, 0);
  parallel_for((long long)total_signs, threads, [&](long long signs) {
    StateSet acc = full_set(space.num_states());
    for (int j = 0; j < length; ++j) {
      acc &= (signs >> j) & 1 ? layers[j] : ~layers[j];
      if (acc.none()) break;
    }
    consistent[signs] = acc.any() ? 1 : 0;
  });
  uint64_t count = 0;
  for (char c : consistent) count += (uint64_t)c;
  return count;
}

FiniteTypeSpace export_type_space(const BiSeqSpace& space) {
  if (space.horizon() > 8)
    throw BudgetError("type-space export capped at horizon 8");
  FiniteTypeSpace m;
  m.num_states = space.num_states();
  m.kernels.resize(2);
  for (int agent = 0; agent < 2; ++agent) {
    m.kernels[agent].reserve(m.num_states);
    for (int s = 0; s < m.num_states; ++s) {
      const auto& members = space.class_members(agent, s);
      Rat p(1, (int)members.size());
      KernelRow row;
      row.reserve(members.size());
      for (int v : members) row.emplace_back(v, p);
      m.kernels[agent].push_back(std::move(row));
    }
  }
  m.valuation[1] = space.x_event();
  return m;
}

}  // namespace plogic
