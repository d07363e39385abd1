#include "plogic/algebra.hpp"

#include <algorithm>

#include "plogic/errors.hpp"
#include "plogic/parallel.hpp"

namespace plogic {

const OpTable& ModalAlgebra::belief_at(const Rat& r) const {
  for (const auto& [index, table] : belief)
    if (index == r) return table;
  throw ModelError("no belief operator at index " + rat_short_string(r));
}

namespace {

AlgElem elem_of_set(const StateSet& s) {
  AlgElem e = 0;
  for (auto i = s.find_first(); i != StateSet::npos; i = s.find_next(i))
    e |= 1u << i;
  return e;
}

StateSet set_of_elem(AlgElem e, int states) {
  StateSet s(states);
  for (int i = 0; i < states; ++i)
    if (e & (1u << i)) s.set(i);
  return s;
}

ModalAlgebra powerset_impl(const FiniteTypeSpace& m, const KnowledgeBeliefSpace* kb,
                           int agent, int q) {
  if (m.num_states > 16) throw ModelError("powerset algebra capped at 16 states");
  if (q < 1) throw std::invalid_argument("grid needs q >= 1");
  ModalAlgebra a;
  a.atom_count = m.num_states;
  for (int k = 0; k <= q; ++k) {
    Rat r(k, q);
    OpTable table(a.num_elems());
    for (AlgElem e = 0; e < (AlgElem)a.num_elems(); ++e)
      table[e] = elem_of_set(belief_event(m, agent, r, set_of_elem(e, m.num_states)));
    a.belief.emplace_back(std::move(r), std::move(table));
  }
  if (kb) {
    OpTable table(a.num_elems());
    for (AlgElem e = 0; e < (AlgElem)a.num_elems(); ++e)
      table[e] =
          elem_of_set(knowledge_event(*kb, agent, set_of_elem(e, m.num_states)));
    a.knowledge = std::move(table);
  }
  return a;
}

}  // namespace

ModalAlgebra make_powerset_algebra(const FiniteTypeSpace& m, int agent, int q) {
  return powerset_impl(m, nullptr, agent, q);
}

ModalAlgebra make_powerset_algebra(const KnowledgeBeliefSpace& kb, int agent, int q) {
  return powerset_impl(kb.base, &kb, agent, q);
}

ModalAlgebra counterexample_algebra() {
  // Atoms: bit 0 = the measure-one bulk, bit 1 = the distinguished point.
  // The operators distinguish only r = 0 from r > 0; tables are provided on
  // the 1/6 grid so law sweeps at q = 1, 2, 3 all find their indices.
  ModalAlgebra a;
  a.atom_count = 2;
  OpTable top_table(4, 3);
  OpTable collapse(4);
  for (AlgElem e = 0; e < 4; ++e) collapse[e] = (e & 1u) ? 3 : 0;
  a.belief.emplace_back(Rat(0), top_table);
  for (int k = 1; k <= 6; ++k) a.belief.emplace_back(Rat(k, 6), collapse);
  return a;
}

bool AlgebraReport::law_passed(const std::string& law) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const AlgebraViolation& v) { return v.law == law; });
}

AlgebraReport check_sigma_h_laws(const ModalAlgebra& a, int q) {
  AlgebraReport report;
  auto violate = [&](const std::string& law, const std::string& detail) {
    if (report.violations.size() < 64) report.violations.push_back({law, detail});
  };
  const AlgElem top = a.top();

  std::vector<Rat> grid;
  for (int k = 0; k <= q; ++k) grid.emplace_back(k, q);
  std::vector<const OpTable*> op;
  for (const Rat& r : grid) op.push_back(&a.belief_at(r));

  auto leq = [&](AlgElem x, AlgElem y) { return (x & ~y) == 0; };

  // Boundary laws.
  for (AlgElem e = 0; e <= top; ++e)
    if ((*op[0])[e] != top) violate("A1", "e=" + std::to_string(e));
  for (size_t k = 0; k < grid.size(); ++k)
    if ((*op[k])[top] != top) violate("A2", "r=" + rat_short_string(grid[k]));

  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = 0; j < grid.size(); ++j) {
      bool in_range = grid[i] + grid[j] <= 1;
      size_t sum_at = i + j;  // index of r+s on the grid
      for (AlgElem e = 0; e <= top; ++e) {
        for (AlgElem f = 0; f <= top; ++f) {
          if (!in_range) continue;
          AlgElem both = (*op[i])[e & f];
          AlgElem other = (*op[j])[e & ~f & top];
          // A3: B>=r(e&f) & B>=s(e&~f) <= B>=r+s e
          if (!leq(both & other, (*op[sum_at])[e]))
            violate("A3", "e=" + std::to_string(e) + " f=" + std::to_string(f));
          // A4: the dual with complements
          if (!leq((~both & top) & (~other & top), ~(*op[sum_at])[e] & top))
            violate("A4", "e=" + std::to_string(e) + " f=" + std::to_string(f));
        }
        if (grid[i] + grid[j] > 1) {
          // A5: B>=r e <= ~B>=s ~e
          if (!leq((*op[i])[e], ~(*op[j])[~e & top] & top))
            violate("A5", "e=" + std::to_string(e) + " r=" + rat_short_string(grid[i]) +
                              " s=" + rat_short_string(grid[j]));
        }
      }
    }

  // Monotonicity in the event and antitonicity in the index.
  for (size_t k = 0; k < grid.size(); ++k)
    for (AlgElem e = 0; e <= top; ++e) {
      for (AlgElem f = 0; f <= top; ++f)
        if (leq(e, f) && !leq((*op[k])[e], (*op[k])[f]))
          violate("MON", "e=" + std::to_string(e) + " f=" + std::to_string(f));
      for (size_t l = k + 1; l < grid.size(); ++l)
        if (!leq((*op[l])[e], (*op[k])[e]))
          violate("ANTITONE", "e=" + std::to_string(e));
    }

  // Introspection pair.
  const OpTable& certain = *op.back();  // index 1
  for (size_t k = 0; k < grid.size(); ++k)
    for (AlgElem e = 0; e <= top; ++e) {
      AlgElem b = (*op[k])[e];
      if (!leq(b, certain[b]))
        violate("4p", "e=" + std::to_string(e) + " r=" + rat_short_string(grid[k]));
      AlgElem nb = ~b & top;
      if (!leq(nb, certain[nb]))
        violate("5p", "e=" + std::to_string(e) + " r=" + rat_short_string(grid[k]));
    }

  return report;
}

// ---------------------------------------------------------------------------
// Knowledge search

namespace {

bool satisfies_knowledge_axioms(const ModalAlgebra& a, const OpTable& k) {
  const AlgElem top = a.top();
  auto leq = [&](AlgElem x, AlgElem y) { return (x & ~y) == 0; };
  if (k[top] != top) return false;
  for (AlgElem e = 0; e <= top; ++e) {
    if (!leq(k[e], e)) return false;            // truth
    if (!leq(k[e], k[k[e]])) return false;      // positive introspection
    AlgElem nk = ~k[e] & top;
    if (!leq(nk, k[nk])) return false;          // negative introspection
  }
  for (AlgElem e = 0; e <= top; ++e)            // normality on all pairs
    for (AlgElem f = 0; f <= top; ++f)
      if (k[e & f] != (k[e] & k[f])) return false;

  const OpTable& certain = a.belief_at(Rat(1));
  for (AlgElem e = 0; e <= top; ++e)
    if (!leq(k[e], certain[e])) return false;  // knowledge implies certainty
  for (const auto& [r, table] : a.belief) {
    (void)r;
    for (AlgElem e = 0; e <= top; ++e) {
      AlgElem b = table[e];
      if (!leq(b, k[b])) return false;         // known beliefs
      AlgElem nb = ~b & top;
      if (!leq(nb, k[nb])) return false;       // known disbeliefs
    }
  }
  return true;
}

}  // namespace

std::vector<OpTable> search_knowledge_ops(const ModalAlgebra& a, int threads) {
  if (a.atom_count > 4) throw ModelError("knowledge search capped at 16 elements");
  const int elems = a.num_elems();
  std::vector<OpTable> found;

  if (elems <= 4) {
    // Exhaustive table scan: elems^elems candidates (256 for four elements).
    uint64_t total = 1;
    for (int i = 0; i < elems; ++i) total *= (uint64_t)elems;
    std::vector<char> hits(total, 0);
    parallel_for((long long)total, threads, [&](long long code) {
      OpTable k(elems);
      uint64_t c = (uint64_t)code;
      for (int e = 0; e < elems; ++e) {
        k[e] = (AlgElem)(c % elems);
        c /= elems;
      }
      hits[code] = satisfies_knowledge_axioms(a, k) ? 1 : 0;
    });
    for (uint64_t code = 0; code < total; ++code) {
      if (!hits[code]) continue;
      OpTable k(elems);
      uint64_t c = code;
      for (int e = 0; e < elems; ++e) {
        k[e] = (AlgElem)(c % elems);
        c /= elems;
      }
      found.push_back(std::move(k));
    }
    return found;
  }

  // Candidates satisfying K top = top and K(e&f) = Ke & Kf are exactly the
  // box operators of binary relations on the atoms, so scanning relations
  // is a complete search over the remaining axioms.
  const int atoms = a.atom_count;
  const uint64_t relations = 1ull << (atoms * atoms);
  std::vector<char> hits(relations, 0);
  parallel_for((long long)relations, threads, [&](long long rel) {
    OpTable k(elems);
    for (AlgElem e = 0; e < (AlgElem)elems; ++e) {
      AlgElem out = 0;
      for (int s = 0; s < atoms; ++s) {
        AlgElem successors = (AlgElem)((rel >> (s * atoms)) & (elems - 1));
        if ((successors & ~e) == 0) out |= 1u << s;
      }
      k[e] = out;
    }
    hits[rel] = satisfies_knowledge_axioms(a, k) ? 1 : 0;
  });
  for (uint64_t rel = 0; rel < relations; ++rel) {
    if (!hits[rel]) continue;
    OpTable k(elems);
    for (AlgElem e = 0; e < (AlgElem)elems; ++e) {
      AlgElem out = 0;
      for (int s = 0; s < atoms; ++s) {
        AlgElem successors = (AlgElem)((rel >> (s * atoms)) & (elems - 1));
        if ((successors & ~e) == 0) out |= 1u << s;
      }
      k[e] = out;
    }
    if (std::find(found.begin(), found.end(), k) == found.end())
      found.push_back(std::move(k));
  }
  return found;
}

OpTable partition_operator(const std::vector<StateSet>& cells, int states) {
  if (states > 16) throw ModelError("partition operator capped at 16 states");
  OpTable table(1 << states);
  for (AlgElem e = 0; e < (AlgElem)(1 << states); ++e) {
    AlgElem out = 0;
    for (const StateSet& cell : cells) {
      AlgElem c = elem_of_set(cell);
      if ((c & ~e) == 0) out |= c;
    }
    table[e] = out;
  }
  return table;
}

std::set<OpTable> operator_closure(const ModalAlgebra& a, bool include_knowledge) {
  if (a.atom_count > 4) throw ModelError("operator closure capped at 16 elements");
  const int elems = a.num_elems();
  const AlgElem top = a.top();

  std::set<OpTable> closed;
  std::vector<OpTable> queue;
  auto push = [&](OpTable t) {
    if (closed.size() > 200000)
      throw ModelError("operator closure grew past 200000 tables");
    if (closed.insert(t).second) queue.push_back(std::move(t));
  };
  push(OpTable(elems, top));  // constant top
  for (const auto& [r, table] : a.belief) push(table);
  if (include_knowledge) {
    if (!a.knowledge) throw ModelError("algebra carries no knowledge operator");
    push(*a.knowledge);
  }

  for (size_t at = 0; at < queue.size(); ++at) {
    OpTable f = queue[at];  // queue may reallocate while we append
    OpTable neg(elems);
    for (int e = 0; e < elems; ++e) neg[e] = ~f[e] & top;
    push(std::move(neg));
    std::vector<OpTable> snapshot(closed.begin(), closed.end());
    for (const OpTable& g : snapshot) {
      OpTable meet(elems), comp_fg(elems), comp_gf(elems);
      for (int e = 0; e < elems; ++e) {
        meet[e] = f[e] & g[e];
        comp_fg[e] = f[g[e]];
        comp_gf[e] = g[f[e]];
      }
      push(std::move(meet));
      push(std::move(comp_fg));
      push(std::move(comp_gf));
    }
  }
  return closed;
}

ReducibilityReport check_reducibility_witness(const ModalAlgebra& a) {
  ReducibilityReport report;
  report.knowledge_ops = search_knowledge_ops(a);
  report.extendable = !report.knowledge_ops.empty();
  auto closure = operator_closure(a, false);
  for (const OpTable& k : report.knowledge_ops)
    report.inside_closure.push_back(closure.count(k) > 0);
  return report;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

json algebra_to_json(const ModalAlgebra& a) {
  json j;
  j["atoms"] = a.atom_count;
  json belief = json::object();
  for (const auto& [r, table] : a.belief) {
    json arr = json::array();
    for (AlgElem e : table) arr.push_back((int)e);
    belief[rat_short_string(r)] = std::move(arr);
  }
  j["belief"] = std::move(belief);
  if (a.knowledge) {
    json arr = json::array();
    for (AlgElem e : *a.knowledge) arr.push_back((int)e);
    j["knowledge"] = std::move(arr);
  }
  return j;
}

ModalAlgebra algebra_from_json(const json& j) {
  ModalAlgebra a;
  try {
    a.atom_count = j.at("atoms").get<int>();
    if (a.atom_count < 0 || a.atom_count > 16) throw ModelError("atom count out of range");
    auto read_table = [&](const json& arr) {
      if ((int)arr.size() != a.num_elems()) throw ModelError("operator table size mismatch");
      OpTable t;
      for (const json& v : arr) {
        int e = v.get<int>();
        if (e < 0 || e >= a.num_elems()) throw ModelError("table entry out of range");
        t.push_back((AlgElem)e);
      }
      return t;
    };
    for (const auto& [key, arr] : j.at("belief").items())
      a.belief.emplace_back(rat_from_string(key), read_table(arr));
    std::sort(a.belief.begin(), a.belief.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (j.contains("knowledge")) a.knowledge = read_table(j.at("knowledge"));
  } catch (const json::exception& e) {
    throw ModelError(std::string("bad algebra JSON: ") + e.what());
  }
  return a;
}

}  // namespace plogic
