#include "plogic/canon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "plogic/errors.hpp"
#include "plogic/linear.hpp"
#include "plogic/parallel.hpp"

namespace plogic {

// ---------------------------------------------------------------------------
// Brackets

Bracket Bracket::point(Rat v) {
  if (!is_probability(v)) throw std::invalid_argument("bracket point outside [0,1]");
  Bracket b;
  b.lo_ = v;
  b.hi_ = std::move(v);
  return b;
}

Bracket Bracket::open(Rat lo, Rat hi) {
  if (lo >= hi || lo < 0 || hi > 1)
    throw std::invalid_argument("open bracket needs 0 <= lo < hi <= 1");
  Bracket b;
  b.lo_ = std::move(lo);
  b.hi_ = std::move(hi);
  return b;
}

Bracket Bracket::complemented() const {
  if (is_point()) return point(Rat(1) - lo_);
  return open(Rat(1) - hi_, Rat(1) - lo_);
}

std::string Bracket::to_string() const {
  if (is_point()) return rat_short_string(lo_);
  return "(" + rat_short_string(lo_) + "," + rat_short_string(hi_) + ")";
}

// ---------------------------------------------------------------------------
// Probability-part enumeration

// One representative per complement pair of nontrivial events: the side that
// contains the all-true assignment, ordered by (cardinality, mask). This
// order also drives the pruned search.
std::vector<int> orbit_representatives(int assignments) {
  int events = 1 << assignments;
  std::vector<int> reps;
  for (int mask = 1; mask < events - 1; ++mask)
    if (mask & (1 << (assignments - 1))) reps.push_back(mask);
  std::stable_sort(reps.begin(), reps.end(), [](int a, int b) {
    int pa = __builtin_popcount((unsigned)a), pb = __builtin_popcount((unsigned)b);
    return pa != pb ? pa < pb : a < b;
  });
  return reps;
}

namespace {

// The 2q+1 grid brackets in ascending order: Point 0, Open(0,1/q), ...
std::vector<Bracket> grid_brackets(int q) {
  std::vector<Bracket> out;
  for (int k = 0; k <= 2 * q; ++k) {
    if (k % 2 == 0)
      out.push_back(Bracket::point(Rat(k / 2, q)));
    else
      out.push_back(Bracket::open(Rat(k / 2, q), Rat(k / 2 + 1, q)));
  }
  return out;
}

void add_bracket_constraints(LinearSystem& sys, int event_mask, const Bracket& b,
                             int assignments, bool strict) {
  std::vector<Rat> coeffs(assignments, Rat(0));
  std::vector<Rat> neg(assignments, Rat(0));
  for (int a = 0; a < assignments; ++a)
    if (event_mask & (1 << a)) {
      coeffs[a] = 1;
      neg[a] = -1;
    }
  if (b.is_point()) {
    sys.add_eq(coeffs, b.lo());
  } else if (strict) {
    sys.add_lt(neg, -b.lo());    // lo < mu(E)
    sys.add_lt(coeffs, b.hi());  // mu(E) < hi
  } else {
    sys.add_le(neg, -b.lo());
    sys.add_le(coeffs, b.hi());
  }
}

LinearSystem base_system(int assignments) {
  LinearSystem sys(assignments);
  sys.add_eq(std::vector<Rat>(assignments, Rat(1)), Rat(1));
  return sys;
}

void check_budget(int q, size_t letter_count) {
  if (q < 1) throw std::invalid_argument("accuracy q must be positive");
  bool ok = (letter_count <= 1 && q <= 8) || (letter_count == 2 && q == 1);
  if (!ok)
    throw BudgetError("enumeration budget: at most one letter for q <= 8, "
                      "two letters only for q = 1 (got q=" + std::to_string(q) +
                      ", letters=" + std::to_string(letter_count) + ")");
}

}  // namespace

std::vector<ProbabilitySpec> enumerate_prob_parts(int q, const std::vector<int>& letters) {
  check_budget(q, letters.size());
  const int assignments = 1 << (int)letters.size();
  const int events = 1 << assignments;
  const auto reps = orbit_representatives(assignments);
  const auto choices = grid_brackets(q);

  std::vector<ProbabilitySpec> out;
  std::vector<Bracket> chosen;
  chosen.reserve(reps.size());

  // Depth-first over bracket assignments with exact feasibility pruning.
  std::function<void(size_t)> dfs = [&](size_t at) {
    LinearSystem sys = base_system(assignments);
    for (size_t i = 0; i < chosen.size(); ++i)
      add_bracket_constraints(sys, reps[i], chosen[i], assignments, /*strict=*/true);
    if (!lp_feasible(sys).feasible) return;
    if (at == reps.size()) {
      ProbabilitySpec spec;
      spec.q = q;
      spec.letter_count = (int)letters.size();
      spec.brackets.assign(events, Bracket::point(Rat(0)));
      spec.brackets[events - 1] = Bracket::point(Rat(1));
      for (size_t i = 0; i < reps.size(); ++i) {
        spec.brackets[reps[i]] = chosen[i];
        spec.brackets[(events - 1) ^ reps[i]] = chosen[i].complemented();
      }
      out.push_back(std::move(spec));
      return;
    }
    for (const Bracket& b : choices) {
      chosen.push_back(b);
      dfs(at + 1);
      chosen.pop_back();
    }
  };
  dfs(0);
  return out;
}

std::vector<Rat> representative_measure(const ProbabilitySpec& spec) {
  const int assignments = spec.assignment_count();
  LinearSystem sys = base_system(assignments);
  for (int rep : orbit_representatives(assignments))
    add_bracket_constraints(sys, rep, spec.brackets[rep], assignments, /*strict=*/true);
  auto report = lp_feasible(sys);
  if (!report.feasible) throw LpError("inconsistent probability specification");
  return *report.witness;
}

std::vector<CanonAtom> enumerate_atoms1(int q, const std::vector<int>& letters) {
  auto specs = enumerate_prob_parts(q, letters);
  std::vector<CanonAtom> atoms;
  int assignments = 1 << (int)letters.size();
  for (int prop = 0; prop < assignments; ++prop)
    for (int s = 0; s < (int)specs.size(); ++s) atoms.push_back({prop, s});
  return atoms;
}

// ---------------------------------------------------------------------------
// Canonical model

int CanonicalModel::atom_index(int prop, int spec) const {
  return prop * (int)specs.size() + spec;
}

StateSet CanonicalModel::group(int spec) const {
  StateSet g(space.num_states);
  for (int prop = 0; prop < assignment_count(); ++prop) g.set(atom_index(prop, spec));
  return g;
}

int CanonicalModel::depth0_event(const Formula& f) const {
  return assignment_event(f, letters);
}

int assignment_event(const Formula& depth0, const std::vector<int>& letters) {
  Formula g = core(depth0);
  std::function<bool(const Formula&, int)> eval = [&](const Formula& f, int a) -> bool {
    switch (f.kind()) {
      case Kind::Letter: {
        auto it = std::find(letters.begin(), letters.end(), f.letter_id());
        if (it == letters.end())
          throw ModelError("letter p" + std::to_string(f.letter_id()) +
                           " not among the model letters");
        return a & (1 << (it - letters.begin()));
      }
      case Kind::Not:
        return !eval(f.lhs(), a);
      case Kind::And:
        return eval(f.lhs(), a) && eval(f.rhs(), a);
      default:
        throw std::invalid_argument("assignment_event needs a depth-0 formula");
    }
  };
  int mask = 0;
  for (int a = 0; a < (1 << (int)letters.size()); ++a)
    if (eval(g, a)) mask |= 1 << a;
  return mask;
}

Formula assignment_formula(const std::vector<int>& letters, int assignment) {
  if (letters.empty()) throw std::invalid_argument("no letters to describe");
  Formula out;
  for (size_t j = 0; j < letters.size(); ++j) {
    Formula lit = Formula::letter(letters[j]);
    if (!(assignment & (1 << j))) lit = Formula::neg(lit);
    out = j == 0 ? lit : Formula::conj(out, lit);
  }
  return out;
}

Formula event_formula(const std::vector<int>& letters, int event_mask) {
  int assignments = 1 << (int)letters.size();
  if (event_mask <= 0 || event_mask >= (1 << assignments))
    throw std::invalid_argument("event_formula needs a nonempty proper event");
  Formula out;
  bool first = true;
  for (int a = 0; a < assignments; ++a) {
    if (!(event_mask & (1 << a))) continue;
    Formula term = assignment_formula(letters, a);
    out = first ? term : Formula::disj(out, term);
    first = false;
  }
  return out;
}

std::string CanonicalModel::atom_label(int atom) const {
  const CanonAtom& a = atoms.at(atom);
  std::string out = render(assignment_formula(letters, a.prop));
  for (int rep : orbit_representatives(assignment_count())) {
    out += ", P(" + render(event_formula(letters, rep)) +
           ")=" + specs[a.spec].brackets[rep].to_string();
  }
  return out;
}

namespace {

std::shared_ptr<const CanonicalModel> build_impl(int q, const std::vector<int>& letters) {
  auto model = std::make_shared<CanonicalModel>();
  model->q = q;
  model->letters = letters;
  model->specs = enumerate_prob_parts(q, letters);
  const int assignments = model->assignment_count();
  const int spec_count = (int)model->specs.size();
  for (const auto& spec : model->specs)
    model->measures.push_back(representative_measure(spec));
  for (int prop = 0; prop < assignments; ++prop)
    for (int s = 0; s < spec_count; ++s) model->atoms.push_back({prop, s});

  FiniteTypeSpace& space = model->space;
  space.num_states = (int)model->atoms.size();
  space.kernels.resize(1);
  space.kernels[0].reserve(space.num_states);
  for (const CanonAtom& atom : model->atoms) {
    KernelRow row;
    for (int v = 0; v < assignments; ++v) {
      const Rat& mass = model->measures[atom.spec][v];
      if (mass > 0) row.emplace_back(model->atom_index(v, atom.spec), mass);
    }
    space.kernels[0].push_back(std::move(row));
  }
  for (size_t j = 0; j < letters.size(); ++j) {
    StateSet ext(space.num_states);
    for (int i = 0; i < space.num_states; ++i)
      if (model->atoms[i].prop & (1 << j)) ext.set(i);
    space.valuation[letters[j]] = ext;
  }
  validate_space(space);
  return model;
}

}  // namespace

std::shared_ptr<const CanonicalModel> build_canonical_model(int q, const std::vector<int>& letters) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const CanonicalModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(q, letters);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto model = build_impl(q, letters);
  cache.emplace(std::move(key), model);
  return model;
}

long cardinality(int q, int d, int w) {
  if (d < 1) throw std::invalid_argument("cardinality is defined for depth >= 1");
  if (w < 0) throw std::invalid_argument("letter count must be nonnegative");
  std::vector<int> letters;
  for (int i = 1; i <= w; ++i) letters.push_back(i);
  return (long)enumerate_atoms1(q, letters).size();
}

// ---------------------------------------------------------------------------
// Satisfiability

namespace {

bool has_knowledge(const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter:
      return false;
    case Kind::Knows:
      return true;
    case Kind::Not:
    case Kind::AtLeast:
    case Kind::AtMost:
      return has_knowledge(f.lhs());
    default:
      return has_knowledge(f.lhs()) || has_knowledge(f.rhs());
  }
}

void check_belief_formula(const Formula& f) {
  if (has_knowledge(f))
    throw std::invalid_argument("knowledge operators are outside the belief language");
  auto ags = agents(f);
  if (!ags.empty() && (ags.size() > 1 || *ags.begin() != 1))
    throw std::invalid_argument("multi-agent satisfiability is not supported");
}

int checked_accuracy(const Formula& f, size_t letter_count) {
  Int acc = accuracy(f);
  if (acc > 8) throw BudgetError("accuracy " + acc.str() + " exceeds the q <= 8 budget");
  int q = acc.convert_to<int>();
  check_budget(q, letter_count);
  return q;
}

void collect_modal_leaves(const Formula& g, std::vector<Formula>& out) {
  switch (g.kind()) {
    case Kind::Letter:
      return;
    case Kind::AtLeast: {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
      return;
    }
    case Kind::Not:
      collect_modal_leaves(g.lhs(), out);
      return;
    case Kind::And:
      collect_modal_leaves(g.lhs(), out);
      collect_modal_leaves(g.rhs(), out);
      return;
    default:
      throw std::logic_error("non-core connective");
  }
}

SatResult sat_sigma_h(const Formula& f) {
  std::set<int> letter_set = letters(f);
  std::vector<int> letter_list(letter_set.begin(), letter_set.end());
  int q = checked_accuracy(f, letter_list.size());
  auto model = build_canonical_model(q, letter_list);
  StateSet ext = extension(model->space, f);
  SatResult result;
  auto w = ext.find_first();
  if (w == StateSet::npos) return result;
  result.satisfiable = true;
  result.model = std::shared_ptr<const FiniteTypeSpace>(model, &model->space);
  result.state = (int)w;
  result.witness_label = model->atom_label((int)w);
  return result;
}

SatResult sat_sigma_plus(const Formula& f) {
  if (depth(f) > 1)
    throw std::invalid_argument("the basic-logic decision covers depth <= 1 only");
  std::set<int> letter_set = letters(f);
  std::vector<int> letter_list(letter_set.begin(), letter_set.end());
  checked_accuracy(f, letter_list.size());
  const int assignments = 1 << (int)letter_list.size();

  Formula g = core(f);
  std::vector<Formula> modal;
  collect_modal_leaves(g, modal);
  if (modal.size() > 20) throw BudgetError("too many modal subformulas");

  // Truth of the Boolean skeleton under (assignment, modal truth vector).
  std::function<bool(const Formula&, int, uint32_t)> holds =
      [&](const Formula& h, int a, uint32_t sigma) -> bool {
    switch (h.kind()) {
      case Kind::Letter: {
        auto it = std::find(letter_list.begin(), letter_list.end(), h.letter_id());
        return a & (1 << (it - letter_list.begin()));
      }
      case Kind::Not:
        return !holds(h.lhs(), a, sigma);
      case Kind::And:
        return holds(h.lhs(), a, sigma) && holds(h.rhs(), a, sigma);
      case Kind::AtLeast: {
        auto it = std::find(modal.begin(), modal.end(), h);
        return sigma & (1u << (it - modal.begin()));
      }
      default:
        throw std::logic_error("non-core connective");
    }
  };

  for (int a = 0; a < assignments; ++a) {
    for (uint32_t sigma = 0; sigma < (1u << modal.size()); ++sigma) {
      if (!holds(g, a, sigma)) continue;
      LinearSystem sys = base_system(assignments);
      for (size_t i = 0; i < modal.size(); ++i) {
        int event = assignment_event(modal[i].lhs(), letter_list);
        std::vector<Rat> coeffs(assignments, Rat(0)), neg(assignments, Rat(0));
        for (int v = 0; v < assignments; ++v)
          if (event & (1 << v)) {
            coeffs[v] = 1;
            neg[v] = -1;
          }
        if (sigma & (1u << i))
          sys.add_le(neg, -modal[i].index());  // mu(E) >= r
        else
          sys.add_lt(coeffs, modal[i].index());  // mu(E) < r
      }
      auto report = lp_feasible(sys);
      if (!report.feasible) continue;

      auto space = std::make_shared<FiniteTypeSpace>();
      space->num_states = assignments;
      KernelRow row;
      for (int v = 0; v < assignments; ++v)
        if ((*report.witness)[v] > 0) row.emplace_back(v, (*report.witness)[v]);
      space->kernels = {std::vector<KernelRow>(assignments, row)};
      for (size_t j = 0; j < letter_list.size(); ++j) {
        StateSet ext(assignments);
        for (int v = 0; v < assignments; ++v)
          if (v & (1 << j)) ext.set(v);
        space->valuation[letter_list[j]] = ext;
      }
      validate_space(*space);
      SatResult result;
      result.satisfiable = true;
      result.model = space;
      result.state = a;
      result.witness_label =
          "constant-kernel model at " + render(assignment_formula(letter_list, a));
      return result;
    }
  }
  return {};
}

}  // namespace

SatResult sat(const Formula& f, Logic logic) {
  check_belief_formula(f);
  return logic == Logic::SigmaH ? sat_sigma_h(f) : sat_sigma_plus(f);
}

ValidityResult valid(const Formula& f, Logic logic) {
  SatResult counter = sat(Formula::neg(f), logic);
  ValidityResult result;
  result.is_valid = !counter.satisfiable;
  result.counterexample = std::move(counter);
  return result;
}

// ---------------------------------------------------------------------------
// Unique extension

Bracket unique_extension_brackets(const CanonicalModel& model, int atom,
                                  const StateSet& event) {
  const CanonAtom& a = model.atoms.at(atom);
  int mask = 0;
  for (int v = 0; v < model.assignment_count(); ++v)
    if (event.test(model.atom_index(v, a.spec))) mask |= 1 << v;
  return model.specs[a.spec].brackets[mask];
}

UxReport verify_unique_extension(int q, const std::vector<int>& letters, int threads) {
  auto model = build_canonical_model(q, letters);
  const int assignments = model->assignment_count();
  const int spec_count = (int)model->specs.size();
  const int sub_events = 1 << assignments;
  const auto reps = orbit_representatives(assignments);
  const auto candidates = grid_brackets(q);

  // Work item (spec s, assignment-set F): extremize mu(F) under the closed
  // depth-0 constraints of s and check that exactly one grid bracket is
  // jointly feasible with the strict constraints.
  struct Verdict {
    bool ok = false;
    std::string detail;
  };
  std::vector<Verdict> verdicts(spec_count * sub_events);

  parallel_for((long long)spec_count * sub_events, threads, [&](long long idx) {
    int s = (int)(idx / sub_events);
    int fmask = (int)(idx % sub_events);
    const ProbabilitySpec& spec = model->specs[s];

    auto base = [&](bool strict) {
      LinearSystem sys = base_system(assignments);
      for (int rep : reps)
        add_bracket_constraints(sys, rep, spec.brackets[rep], assignments, strict);
      return sys;
    };

    std::vector<Rat> indicator(assignments, Rat(0));
    for (int v = 0; v < assignments; ++v)
      if (fmask & (1 << v)) indicator[v] = 1;

    LinearSystem closed = base(false);
    closed.objective = indicator;
    Rat mn = lp_extremize(closed, Direction::Minimize);
    Rat mx = lp_extremize(closed, Direction::Maximize);

    const Bracket& predicted = spec.brackets[fmask];
    Verdict& v = verdicts[idx];
    bool span_ok = predicted.is_point() ? (mn == predicted.lo() && mx == predicted.lo())
                                        : (mn == predicted.lo() && mx == predicted.hi());

    int feasible_count = 0;
    bool predicted_feasible = false;
    for (const Bracket& cand : candidates) {
      LinearSystem sys = base(true);
      add_bracket_constraints(sys, fmask, cand, assignments, /*strict=*/true);
      if (lp_feasible(sys).feasible) {
        feasible_count++;
        if (cand == predicted) predicted_feasible = true;
      }
    }
    v.ok = span_ok && feasible_count == 1 && predicted_feasible;
    if (!v.ok)
      v.detail = "spec " + std::to_string(s) + ", F=" + std::to_string(fmask) +
                 ": span [" + rat_short_string(mn) + "," + rat_short_string(mx) +
                 "], predicted " + predicted.to_string() + ", " +
                 std::to_string(feasible_count) + " feasible brackets";
  });

  UxReport report;
  auto record = [&](int s, int fmask) {
    report.pairs_checked++;
    const Verdict& v = verdicts[s * sub_events + fmask];
    if (!v.ok) {
      report.failures++;
      if (report.failure_details.size() < 20) report.failure_details.push_back(v.detail);
    }
  };

  int atom_count = model->space.num_states;
  if (atom_count <= 16) {
    // Every (atom, depth-1 event) pair; mu(E) only depends on E inside the group.
    for (int atom = 0; atom < atom_count; ++atom) {
      const CanonAtom& a = model->atoms[atom];
      for (uint64_t emask = 0; emask < (1ull << atom_count); ++emask) {
        int fmask = 0;
        for (int v = 0; v < assignments; ++v)
          if (emask & (1ull << model->atom_index(v, a.spec))) fmask |= 1 << v;
        record(a.spec, fmask);
      }
    }
  } else {
    for (int s = 0; s < spec_count; ++s)
      for (int fmask = 0; fmask < sub_events; ++fmask) record(s, fmask);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Entailment oracle and export

bool atom_entails(const CanonicalModel& model, int atom, const Formula& f) {
  if (depth(f) > 1)
    throw std::invalid_argument("entailment oracle covers depth <= 1 only");
  check_belief_formula(f);
  const CanonAtom& a = model.atoms.at(atom);
  std::function<bool(const Formula&)> walk = [&](const Formula& g) -> bool {
    switch (g.kind()) {
      case Kind::Letter: {
        auto it = std::find(model.letters.begin(), model.letters.end(), g.letter_id());
        if (it == model.letters.end())
          throw ModelError("letter not in the model language");
        return a.prop & (1 << (it - model.letters.begin()));
      }
      case Kind::Not:
        return !walk(g.lhs());
      case Kind::And:
        return walk(g.lhs()) && walk(g.rhs());
      case Kind::AtLeast: {
        int event = model.depth0_event(g.lhs());
        return g.index() <= model.specs[a.spec].brackets[event].lo();
      }
      default:
        throw std::logic_error("non-core connective");
    }
  };
  return walk(core(f));
}

nlohmann::json atoms_to_json(const CanonicalModel& model) {
  nlohmann::json j;
  j["q"] = model.q;
  nlohmann::json letter_names = nlohmann::json::array();
  for (int id : model.letters) letter_names.push_back("p" + std::to_string(id));
  j["letters"] = std::move(letter_names);
  j["count"] = (int)model.atoms.size();
  nlohmann::json atoms = nlohmann::json::array();
  for (size_t i = 0; i < model.atoms.size(); ++i) {
    const CanonAtom& a = model.atoms[i];
    nlohmann::json entry;
    entry["id"] = (int)i;
    nlohmann::json assignment = nlohmann::json::object();
    for (size_t bit = 0; bit < model.letters.size(); ++bit)
      assignment["p" + std::to_string(model.letters[bit])] =
          (a.prop & (1 << bit)) != 0;
    entry["assignment"] = std::move(assignment);
    nlohmann::json brackets = nlohmann::json::object();
    for (int rep : orbit_representatives(model.assignment_count())) {
      const Bracket& b = model.specs[a.spec].brackets[rep];
      nlohmann::json jb;
      if (b.is_point()) {
        jb["kind"] = "point";
        jb["value"] = rat_fraction_string(b.lo());
      } else {
        jb["kind"] = "open";
        jb["lo"] = rat_fraction_string(b.lo());
        jb["hi"] = rat_fraction_string(b.hi());
      }
      brackets[render(event_formula(model.letters, rep))] = std::move(jb);
    }
    entry["brackets"] = std::move(brackets);
    atoms.push_back(std::move(entry));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

}  // namespace plogic
