#include "plogic/rewrite.hpp"

#include <algorithm>

#include "plogic/errors.hpp"

namespace plogic {

namespace {

bool is_boolean(Kind k) {
  return k == Kind::Not || k == Kind::And || k == Kind::Or ||
         k == Kind::Implies || k == Kind::Iff;
}

bool single_agent_belief(const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter:
      return true;
    case Kind::Knows:
      return false;
    case Kind::AtLeast:
    case Kind::AtMost:
      return f.agent() == 1 && single_agent_belief(f.lhs());
    case Kind::Not:
      return single_agent_belief(f.lhs());
    default:
      return single_agent_belief(f.lhs()) && single_agent_belief(f.rhs());
  }
}

// Boolean combination whose leaves are all L-formulas; optionally requires
// every leaf index positive and every leaf normal.
bool is_l_combination(const Formula& f, bool positive_only, bool check_normal) {
  if (f.kind() == Kind::AtLeast) {
    if (positive_only && f.index() == 0) return false;
    return !check_normal || is_normal(f);
  }
  if (f.kind() == Kind::Not) return is_l_combination(f.lhs(), positive_only, check_normal);
  if (f.is_binary())
    return is_l_combination(f.lhs(), positive_only, check_normal) &&
           is_l_combination(f.rhs(), positive_only, check_normal);
  return false;
}

bool is_normal_desugared(const Formula& f) {
  if (depth(f) <= 1) return true;
  if (is_boolean(f.kind()))
    return is_l_combination(f, /*positive_only=*/false, /*check_normal=*/true);
  if (f.kind() == Kind::AtLeast) {
    if (f.index() == 0) return false;
    Formula body = f.lhs();
    if (is_l_combination(body, /*positive_only=*/true, /*check_normal=*/true))
      return true;
    if (body.kind() == Kind::And || body.kind() == Kind::Or) {
      Formula x = body.lhs(), y = body.rhs();
      auto side_ok = [&](const Formula& phi, const Formula& psi) {
        return is_l_combination(psi, true, true) &&
               is_normal_desugared(Formula::at_least(1, ProbIndex(f.index()), phi));
      };
      return side_ok(x, y) || side_ok(y, x);
    }
    return false;
  }
  return false;
}

}  // namespace

bool is_normal(const Formula& f) {
  if (!single_agent_belief(f)) return false;
  return is_normal_desugared(desugar_m(f));
}

namespace {

Formula denest_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Letter:
      return f;
    case Kind::Not:
      return Formula::neg(denest_rec(f.lhs()));
    case Kind::And:
      return Formula::conj(denest_rec(f.lhs()), denest_rec(f.rhs()));
    case Kind::Or:
      return Formula::disj(denest_rec(f.lhs()), denest_rec(f.rhs()));
    case Kind::Implies:
      return Formula::impl(denest_rec(f.lhs()), denest_rec(f.rhs()));
    case Kind::Iff:
      return Formula::iff(denest_rec(f.lhs()), denest_rec(f.rhs()));
    case Kind::AtLeast: {
      Formula body = denest_rec(f.lhs());
      if (depth(body) == 0)
        return Formula::at_least(f.agent(), ProbIndex(f.index()), body);
      // body has depth 1 and, on normal input, f.index() > 0.
      if (is_l_combination(body, false, false)) return body;  // drop the modality
      if (body.kind() == Kind::And || body.kind() == Kind::Or) {
        Formula x = body.lhs(), y = body.rhs();
        bool x_comb = is_l_combination(x, false, false);
        bool y_comb = is_l_combination(y, false, false);
        Formula phi = y_comb ? x : y;
        Formula psi = y_comb ? y : x;
        if (x_comb || y_comb) {
          Formula lifted =
              denest_rec(Formula::at_least(f.agent(), ProbIndex(f.index()), phi));
          return body.kind() == Kind::And ? Formula::conj(lifted, psi)
                                          : Formula::disj(lifted, psi);
        }
      }
      throw std::invalid_argument("denest reached a non-normal shape");
    }
    default:
      throw std::logic_error("unexpected connective in denest");
  }
}

}  // namespace

Formula denest(const Formula& f) {
  if (!is_normal(f)) throw std::invalid_argument("denest needs a normal formula");
  if (depth(f) <= 1) return f;
  return denest_rec(desugar_m(f));
}

// ---------------------------------------------------------------------------
// Statements

Statement statement_of(const CanonicalModel& model, int atom) {
  if (model.letters.empty())
    throw std::invalid_argument("statements need at least one letter");
  const CanonAtom& a = model.atoms.at(atom);
  Statement st;
  st.prop_part = assignment_formula(model.letters, a.prop);

  Formula prob;
  bool first = true;
  auto append = [&](Formula conjunct) {
    prob = first ? conjunct : Formula::conj(prob, std::move(conjunct));
    first = false;
  };
  for (int mask : orbit_representatives(model.assignment_count())) {
    const Bracket& b = model.specs[a.spec].brackets[mask];
    Formula phi = event_formula(model.letters, mask);
    if (b.is_point()) {
      append(Formula::at_least(1, ProbIndex(b.lo()), phi));
      append(Formula::at_most(1, ProbIndex(b.lo()), phi));
    } else {
      append(Formula::at_least(1, ProbIndex(b.lo()), phi));
      append(Formula::neg(Formula::at_most(1, ProbIndex(b.lo()), phi)));
      append(Formula::at_most(1, ProbIndex(b.hi()), phi));
      append(Formula::neg(Formula::at_least(1, ProbIndex(b.hi()), phi)));
    }
  }
  st.prob_part = prob;
  return st;
}

std::vector<Statement> normal_form(const Formula& f, const LocalLanguage& lang) {
  if (!lang.contains(f))
    throw std::invalid_argument("formula is outside the requested local language");
  std::vector<int> letter_list(lang.letters.begin(), lang.letters.end());
  auto model = build_canonical_model(lang.q, letter_list);
  StateSet sat_states = extension(model->space, f);
  std::vector<Statement> out;
  for (auto w = sat_states.find_first(); w != StateSet::npos;
       w = sat_states.find_next(w))
    out.push_back(statement_of(*model, (int)w));
  return out;
}

}  // namespace plogic
