#include "plogic/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "plogic/errors.hpp"

namespace plogic {

StateSet full_set(int n) {
  StateSet s(n);
  s.set();
  return s;
}

StateSet empty_set(int n) { return StateSet(n); }

namespace {

std::string set_string(const StateSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto i = s.find_first(); i != StateSet::npos; i = s.find_next(i)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

void validate_space(const FiniteTypeSpace& m) {
  if (m.num_states <= 0) throw ModelError("model needs at least one state");
  if (m.kernels.empty()) throw ModelError("model needs at least one agent");
  for (int a = 0; a < m.num_agents(); ++a) {
    if ((int)m.kernels[a].size() != m.num_states)
      throw ModelError("agent " + std::to_string(a + 1) + " kernel has wrong row count");
    for (int w = 0; w < m.num_states; ++w) {
      Rat total = 0;
      int prev = -1;
      for (const auto& [v, p] : m.kernels[a][w]) {
        if (v <= prev || v >= m.num_states)
          throw ModelError("kernel row has out-of-order or out-of-range entries");
        if (p <= 0)
          throw ModelError("kernel rows store only positive entries");
        prev = v;
        total += p;
      }
      if (total != 1)
        throw ModelError("kernel row of state " + std::to_string(w) +
                         " sums to " + rat_fraction_string(total));
    }
  }
  for (const auto& [letter, ext] : m.valuation) {
    if ((int)ext.size() != m.num_states)
      throw ModelError("valuation of p" + std::to_string(letter) + " has wrong size");
  }
}

Rat kernel_mass(const FiniteTypeSpace& m, int agent, int state, const StateSet& event) {
  Rat total = 0;
  for (const auto& [v, p] : m.kernels.at(agent).at(state))
    if (event.test(v)) total += p;
  return total;
}

StateSet belief_event(const FiniteTypeSpace& m, int agent, const Rat& r,
                      const StateSet& event) {
  StateSet out(m.num_states);
  for (int w = 0; w < m.num_states; ++w)
    if (kernel_mass(m, agent, w, event) >= r) out.set(w);
  return out;
}

std::vector<StateSet> kernel_equality_classes(const FiniteTypeSpace& m, int agent) {
  std::map<KernelRow, int> ids;
  std::vector<StateSet> classes;
  for (int w = 0; w < m.num_states; ++w) {
    auto [it, fresh] = ids.try_emplace(m.kernels.at(agent)[w], (int)classes.size());
    if (fresh) classes.push_back(empty_set(m.num_states));
    classes[it->second].set(w);
  }
  return classes;
}

bool is_harsanyi(const FiniteTypeSpace& m, int agent) {
  auto classes = kernel_equality_classes(m, agent);
  std::vector<const StateSet*> class_of(m.num_states);
  for (const auto& c : classes)
    for (auto w = c.find_first(); w != StateSet::npos; w = c.find_next(w))
      class_of[w] = &c;
  for (int w = 0; w < m.num_states; ++w)
    if (kernel_mass(m, agent, w, *class_of[w]) != 1) return false;
  return true;
}

bool is_harsanyi(const FiniteTypeSpace& m) {
  for (int a = 0; a < m.num_agents(); ++a)
    if (!is_harsanyi(m, a)) return false;
  return true;
}

bool is_harsanyi_hprime(const FiniteTypeSpace& m, int agent) {
  if (m.num_states > 16)
    throw ModelError("H' sweep enumerates all events; 16 states max");
  const uint64_t num_events = 1ull << m.num_states;
  for (uint64_t mask = 0; mask < num_events; ++mask) {
    StateSet event(m.num_states, mask);
    std::vector<Rat> value(m.num_states);
    for (int v = 0; v < m.num_states; ++v) value[v] = kernel_mass(m, agent, v, event);
    for (int w = 0; w < m.num_states; ++w) {
      StateSet differ(m.num_states);
      for (int v = 0; v < m.num_states; ++v)
        if (value[v] != value[w]) differ.set(v);
      if (kernel_mass(m, agent, w, differ) != 0) return false;
    }
  }
  return true;
}

const StateSet& KnowledgeBeliefSpace::cell_of(int agent, int state) const {
  for (const auto& cell : partitions.at(agent))
    if (cell.test(state)) return cell;
  throw ModelError("state " + std::to_string(state) + " not covered by partition");
}

StateSet knowledge_event(const KnowledgeBeliefSpace& kb, int agent, const StateSet& event) {
  StateSet out(kb.base.num_states);
  for (const auto& cell : kb.partitions.at(agent))
    if (cell.is_subset_of(event)) out |= cell;
  return out;
}

bool KbReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const KbCheck& c) { return c.passed; });
}

KbReport validate_kb_space(const KnowledgeBeliefSpace& kb) {
  const auto& m = kb.base;
  KbReport report;

  KbCheck structural{"partitions are partitions", true, ""};
  if ((int)kb.partitions.size() != m.num_agents()) {
    structural.passed = false;
    structural.witness = "partition count != agent count";
  } else {
    for (int a = 0; a < m.num_agents() && structural.passed; ++a) {
      StateSet seen(m.num_states);
      for (const auto& cell : kb.partitions[a]) {
        if ((int)cell.size() != m.num_states || cell.none() || (seen & cell).any()) {
          structural.passed = false;
          structural.witness = "agent " + std::to_string(a + 1) +
                               " cells empty, overlapping or mis-sized";
          break;
        }
        seen |= cell;
      }
      if (structural.passed && !seen.all()) {
        structural.passed = false;
        structural.witness = "agent " + std::to_string(a + 1) + " cells do not cover";
      }
    }
  }
  report.checks.push_back(structural);
  if (!structural.passed) return report;  // remaining checks assume a partition

  KbCheck harsanyi{"base space satisfies certainty of own type", true, ""};
  for (int a = 0; a < m.num_agents(); ++a) {
    if (!is_harsanyi(m, a)) {
      harsanyi.passed = false;
      harsanyi.witness = "agent " + std::to_string(a + 1);
      break;
    }
  }
  report.checks.push_back(harsanyi);

  // Pi(w) subseteq E implies T(w)(E) = 1; the minimal such E is Pi(w) itself.
  KbCheck certainty{"cells are believed with probability 1", true, ""};
  for (int a = 0; a < m.num_agents() && certainty.passed; ++a) {
    for (int w = 0; w < m.num_states; ++w) {
      if (kernel_mass(m, a, w, kb.cell_of(a, w)) != 1) {
        certainty.passed = false;
        certainty.witness = "(w=" + std::to_string(w) +
                            ", E=" + set_string(kb.cell_of(a, w)) + ")";
        break;
      }
    }
  }
  report.checks.push_back(certainty);

  // [T(w)] subseteq E implies Pi(w) subseteq E; take E = [T(w)].
  KbCheck refine{"cells lie inside kernel-equality classes", true, ""};
  for (int a = 0; a < m.num_agents() && refine.passed; ++a) {
    auto classes = kernel_equality_classes(m, a);
    for (const auto& cls : classes) {
      for (auto w = cls.find_first(); w != StateSet::npos; w = cls.find_next(w)) {
        if (!kb.cell_of(a, (int)w).is_subset_of(cls)) {
          refine.passed = false;
          refine.witness = "(w=" + std::to_string(w) + ", E=" + set_string(cls) + ")";
          break;
        }
      }
      if (!refine.passed) break;
    }
  }
  report.checks.push_back(refine);
  return report;
}

KnowledgeBeliefSpace extend_to_kb(const FiniteTypeSpace& m) {
  for (int a = 0; a < m.num_agents(); ++a)
    if (!is_harsanyi(m, a))
      throw ModelError("agent " + std::to_string(a + 1) +
                       " is not certain of its own type; cannot extend");
  KnowledgeBeliefSpace kb;
  kb.base = m;
  for (int a = 0; a < m.num_agents(); ++a)
    kb.partitions.push_back(kernel_equality_classes(m, a));
  return kb;
}

// ---------------------------------------------------------------------------
// Satisfaction

namespace {

StateSet extension_core(const FiniteTypeSpace& m, const KnowledgeBeliefSpace* kb,
                        const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter: {
      auto it = m.valuation.find(f.letter_id());
      if (it == m.valuation.end())
        throw ModelError("letter p" + std::to_string(f.letter_id()) +
                         " not in the valuation");
      return it->second;
    }
    case Kind::Not:
      return ~extension_core(m, kb, f.lhs());
    case Kind::And:
      return extension_core(m, kb, f.lhs()) & extension_core(m, kb, f.rhs());
    case Kind::AtLeast: {
      if (f.agent() > m.num_agents())
        throw ModelError("agent " + std::to_string(f.agent()) + " not in the model");
      return belief_event(m, f.agent() - 1, f.index(),
                          extension_core(m, kb, f.lhs()));
    }
    case Kind::Knows: {
      if (!kb)
        throw ModelError("knowledge operator evaluated on a bare type space");
      if (f.agent() > (int)kb->partitions.size())
        throw ModelError("agent " + std::to_string(f.agent()) + " has no partition");
      return knowledge_event(*kb, f.agent() - 1, extension_core(m, kb, f.lhs()));
    }
    default:
      throw std::logic_error("non-core connective after core()");
  }
}

}  // namespace

StateSet extension(const FiniteTypeSpace& m, const Formula& f) {
  return extension_core(m, nullptr, core(f));
}

StateSet extension(const KnowledgeBeliefSpace& kb, const Formula& f) {
  return extension_core(kb.base, &kb, core(f));
}

bool evaluate(const FiniteTypeSpace& m, int state, const Formula& f) {
  if (state < 0 || state >= m.num_states)
    throw ModelError("state " + std::to_string(state) + " out of range");
  return extension(m, f).test(state);
}

bool evaluate(const KnowledgeBeliefSpace& kb, int state, const Formula& f) {
  if (state < 0 || state >= kb.base.num_states)
    throw ModelError("state " + std::to_string(state) + " out of range");
  return extension(kb, f).test(state);
}

// ---------------------------------------------------------------------------
// Operator laws

bool LawReport::law_passed(const std::string& law) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const LawViolation& v) { return v.law == law; });
}

namespace {

LawReport check_laws_impl(const FiniteTypeSpace& m, const KnowledgeBeliefSpace* kb,
                          int agent, int q) {
  if (m.num_states > 8)
    throw ModelError("operator-law sweep enumerates the powerset; 8 states max");
  if (q < 1) throw std::invalid_argument("grid needs q >= 1");
  const int n = m.num_states;
  const uint64_t num_events = 1ull << n;
  LawReport report;
  auto violate = [&](const std::string& law, const std::string& detail) {
    if (report.violations.size() < 64) report.violations.push_back({law, detail});
  };

  std::vector<Rat> grid;
  for (int k = 0; k <= q; ++k) grid.emplace_back(k, q);

  std::vector<StateSet> events;
  events.reserve(num_events);
  for (uint64_t mask = 0; mask < num_events; ++mask) events.emplace_back(n, mask);
  const StateSet omega = full_set(n);

  // Exact kernel values, computed once.
  std::vector<std::vector<Rat>> mass(num_events, std::vector<Rat>(n));
  for (uint64_t e = 0; e < num_events; ++e)
    for (int w = 0; w < n; ++w) mass[e][w] = kernel_mass(m, agent, w, events[e]);

  auto bel = [&](const Rat& r, uint64_t e) {
    StateSet out(n);
    for (int w = 0; w < n; ++w)
      if (mass[e][w] >= r) out.set(w);
    return out;
  };

  // (1) B>=0(A) = Omega and (2) B>=1(Omega) = Omega.
  for (uint64_t e = 0; e < num_events; ++e)
    if (bel(Rat(0), e) != omega) violate("1", "A=" + set_string(events[e]));
  if (bel(Rat(1), num_events - 1) != omega) violate("2", "");

  // (3) B>=r A and B>=s(~A) disjoint for r+s > 1.
  for (const Rat& r : grid)
    for (const Rat& s : grid) {
      if (r + s <= 1) continue;
      for (uint64_t e = 0; e < num_events; ++e) {
        uint64_t comp = (num_events - 1) ^ e;
        if ((bel(r, e) & bel(s, comp)).any())
          violate("3", "A=" + set_string(events[e]) + " r=" + rat_short_string(r) +
                           " s=" + rat_short_string(s));
      }
    }

  // (4) membership agrees with the exact threshold comparison and is
  // antitone across the grid.
  for (const Rat& r : grid)
    for (uint64_t e = 0; e < num_events; ++e) {
      StateSet b = bel(r, e);
      for (int w = 0; w < n; ++w)
        if (b.test(w) != (mass[e][w] >= r))
          violate("4", "w=" + std::to_string(w) + " A=" + set_string(events[e]));
      for (const Rat& s : grid)
        if (s < r && !b.is_subset_of(bel(s, e)))
          violate("4", "antitone fails at A=" + set_string(events[e]));
    }

  // (5) B>=r(A&B) & B>=s(A&~B) <= B>=(r+s) A and (6) its dual.
  for (const Rat& r : grid)
    for (const Rat& s : grid) {
      if (r + s > 1) continue;
      for (uint64_t a = 0; a < num_events; ++a)
        for (uint64_t b = 0; b < num_events; ++b) {
          uint64_t ab = a & b;
          uint64_t anb = a & ~b & (num_events - 1);
          if (!(bel(r, ab) & bel(s, anb)).is_subset_of(bel(r + s, a)))
            violate("5", "A=" + set_string(events[a]) + " B=" + set_string(events[b]));
          if (!((~bel(r, ab)) & (~bel(s, anb))).is_subset_of(~bel(r + s, a)))
            violate("6", "A=" + set_string(events[a]) + " B=" + set_string(events[b]));
        }
    }

  // (7) monotone on 2-chains (finite shadow of continuity from above).
  for (const Rat& r : grid)
    for (uint64_t a = 0; a < num_events; ++a)
      for (uint64_t sub = a;; sub = (sub - 1) & a) {
        if (sub != a && !bel(r, sub).is_subset_of(bel(r, a)))
          violate("7", "A=" + set_string(events[a]) + " A'=" + set_string(events[sub]));
        if (sub == 0) break;
      }

  // Introspection: B>=r E <= B>=1 B>=r E and its negative twin. These encode
  // certainty of own type and fail on non-Harsanyi kernels.
  for (const Rat& r : grid)
    for (uint64_t e = 0; e < num_events; ++e) {
      StateSet b = bel(r, e);
      if (!b.is_subset_of(belief_event(m, agent, Rat(1), b)))
        violate("4p", "E=" + set_string(events[e]) + " r=" + rat_short_string(r));
      StateSet nb = ~b;
      if (!nb.is_subset_of(belief_event(m, agent, Rat(1), nb)))
        violate("5p", "E=" + set_string(events[e]) + " r=" + rat_short_string(r));
    }

  if (kb) {
    for (uint64_t e = 0; e < num_events; ++e) {
      StateSet k = knowledge_event(*kb, agent, events[e]);
      if (!k.is_subset_of(bel(Rat(1), e)))
        violate("K<=B1", "E=" + set_string(events[e]));
      for (const Rat& r : grid) {
        StateSet b = bel(r, e);
        if (!b.is_subset_of(knowledge_event(*kb, agent, b)))
          violate("B<=KB", "E=" + set_string(events[e]) + " r=" + rat_short_string(r));
        StateSet nb = ~b;
        if (!nb.is_subset_of(knowledge_event(*kb, agent, nb)))
          violate("~B<=K~B", "E=" + set_string(events[e]) + " r=" + rat_short_string(r));
      }
    }
  }

  return report;
}

}  // namespace

LawReport check_operator_laws(const FiniteTypeSpace& m, int agent, int q) {
  return check_laws_impl(m, nullptr, agent, q);
}

LawReport check_operator_laws(const KnowledgeBeliefSpace& kb, int agent, int q) {
  return check_laws_impl(kb.base, &kb, agent, q);
}

// ---------------------------------------------------------------------------
// Random models

namespace {

// Random measure with entries k/denominator over the given support;
// guaranteed to sum to 1 (not every support state need be positive).
KernelRow random_row(std::mt19937& rng, const std::vector<int>& support, int denominator) {
  std::vector<int> units(support.size(), 0);
  std::uniform_int_distribution<size_t> pick(0, support.size() - 1);
  for (int u = 0; u < denominator; ++u) units[pick(rng)]++;
  KernelRow row;
  for (size_t i = 0; i < support.size(); ++i)
    if (units[i] > 0) row.emplace_back(support[i], Rat(units[i], denominator));
  return row;
}

std::map<int, StateSet> random_valuation(std::mt19937& rng, int states, int num_letters) {
  std::map<int, StateSet> val;
  for (int p = 1; p <= num_letters; ++p) {
    StateSet ext(states);
    for (int w = 0; w < states; ++w)
      if (rng() & 1) ext.set(w);
    val[p] = ext;
  }
  return val;
}

}  // namespace

FiniteTypeSpace random_type_space(std::mt19937& rng, int states, int agents,
                                  int denominator, int num_letters) {
  FiniteTypeSpace m;
  m.num_states = states;
  std::vector<int> all(states);
  for (int i = 0; i < states; ++i) all[i] = i;
  m.kernels.resize(agents);
  for (int a = 0; a < agents; ++a) {
    for (int w = 0; w < states; ++w)
      m.kernels[a].push_back(random_row(rng, all, denominator));
  }
  m.valuation = random_valuation(rng, states, num_letters);
  validate_space(m);
  return m;
}

FiniteTypeSpace random_harsanyi_space(std::mt19937& rng, int states, int agents,
                                      int denominator, int num_letters) {
  FiniteTypeSpace m;
  m.num_states = states;
  m.kernels.resize(agents);
  for (int a = 0; a < agents; ++a) {
    // Random ordered partition of 0..states-1 into cells.
    std::vector<int> order(states);
    for (int i = 0; i < states; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<int>> cells;
    size_t at = 0;
    while (at < order.size()) {
      size_t len = 1 + rng() % (order.size() - at);
      cells.emplace_back(order.begin() + at, order.begin() + at + len);
      at += len;
    }
    m.kernels[a].assign(states, {});
    for (auto& cell : cells) {
      std::sort(cell.begin(), cell.end());
      KernelRow row = random_row(rng, cell, denominator);
      for (int w : cell) m.kernels[a][w] = row;
    }
  }
  m.valuation = random_valuation(rng, states, num_letters);
  validate_space(m);
  return m;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

json space_to_json(const FiniteTypeSpace& m) {
  json j;
  j["states"] = m.num_states;
  j["agents"] = m.num_agents();
  json kernels = json::array();
  for (int a = 0; a < m.num_agents(); ++a) {
    json rows = json::array();
    for (int w = 0; w < m.num_states; ++w) {
      std::vector<Rat> dense(m.num_states, Rat(0));
      for (const auto& [v, p] : m.kernels[a][w]) dense[v] = p;
      json row = json::array();
      for (const auto& p : dense) row.push_back(rat_fraction_string(p));
      rows.push_back(std::move(row));
    }
    kernels.push_back(std::move(rows));
  }
  j["kernels"] = std::move(kernels);
  json val = json::object();
  for (const auto& [letter, ext] : m.valuation) {
    json states = json::array();
    for (auto w = ext.find_first(); w != StateSet::npos; w = ext.find_next(w))
      states.push_back((int)w);
    val["p" + std::to_string(letter)] = std::move(states);
  }
  j["valuation"] = std::move(val);
  return j;
}

FiniteTypeSpace space_from_json(const json& j) {
  FiniteTypeSpace m;
  try {
    m.num_states = j.at("states").get<int>();
    int agents = j.at("agents").get<int>();
    const json& kernels = j.at("kernels");
    if ((int)kernels.size() != agents)
      throw ModelError("kernel count does not match agent count");
    for (const json& rows : kernels) {
      std::vector<KernelRow> agent_rows;
      for (const json& row : rows) {
        if ((int)row.size() != m.num_states)
          throw ModelError("kernel row has wrong length");
        KernelRow sparse;
        for (int v = 0; v < m.num_states; ++v) {
          Rat p = rat_from_string(row[v].get<std::string>());
          if (p < 0) throw ModelError("negative kernel entry");
          if (p > 0) sparse.emplace_back(v, p);
        }
        agent_rows.push_back(std::move(sparse));
      }
      m.kernels.push_back(std::move(agent_rows));
    }
    for (const auto& [key, states] : j.at("valuation").items()) {
      if (key.empty() || key[0] != 'p')
        throw ModelError("valuation keys look like p<digits>");
      int letter = std::stoi(key.substr(1));
      StateSet ext(m.num_states);
      for (const json& w : states) ext.set(w.get<int>());
      m.valuation[letter] = ext;
    }
  } catch (const json::exception& e) {
    throw ModelError(std::string("bad model JSON: ") + e.what());
  }
  validate_space(m);
  return m;
}

json kb_to_json(const KnowledgeBeliefSpace& kb) {
  json j = space_to_json(kb.base);
  json parts = json::array();
  for (const auto& agent_cells : kb.partitions) {
    json cells = json::array();
    for (const auto& cell : agent_cells) {
      json states = json::array();
      for (auto w = cell.find_first(); w != StateSet::npos; w = cell.find_next(w))
        states.push_back((int)w);
      cells.push_back(std::move(states));
    }
    parts.push_back(std::move(cells));
  }
  j["partitions"] = std::move(parts);
  return j;
}

KnowledgeBeliefSpace kb_from_json(const json& j) {
  KnowledgeBeliefSpace kb;
  kb.base = space_from_json(j);
  try {
    for (const json& cells : j.at("partitions")) {
      std::vector<StateSet> agent_cells;
      for (const json& states : cells) {
        StateSet cell(kb.base.num_states);
        for (const json& w : states) cell.set(w.get<int>());
        agent_cells.push_back(std::move(cell));
      }
      kb.partitions.push_back(std::move(agent_cells));
    }
  } catch (const json::exception& e) {
    throw ModelError(std::string("bad partitions JSON: ") + e.what());
  }
  return kb;
}

}  // namespace plogic
