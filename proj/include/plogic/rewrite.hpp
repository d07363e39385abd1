#ifndef PLOGIC_REWRITE_HPP
#define PLOGIC_REWRITE_HPP

#include <vector>

#include "plogic/canon.hpp"
#include "plogic/formula.hpp"

namespace plogic {

// Normal formulas, by the three-clause induction: anything of depth <= 1;
// Boolean combinations of normal L-formulas; and L_r psi, L_r(phi & psi),
// L_r(phi | psi) for r > 0 where psi is a Boolean combination of normal
// L-formulas with strictly positive indices and L_r phi is normal.
// Single-agent and knowledge-free inputs only; anything else is not normal.
bool is_normal(const Formula& f);

// Depth <= 1 equivalent of a normal formula. Inputs of depth <= 1 are
// returned untouched; deeper inputs are rewritten innermost-first by the
// three introspective denesting equivalences (M desugared first). Throws
// std::invalid_argument on non-normal input.
Formula denest(const Formula& f);

// Canonical conjunction form of an atom, split into its literal part and its
// bracket part.
struct Statement {
  Formula prop_part;
  Formula prob_part;
  Formula joined() const { return Formula::conj(prop_part, prob_part); }
};

Statement statement_of(const CanonicalModel& model, int atom);

// The statements of exactly those atoms of L(lang.q, 1, lang.letters) whose
// canonical-model state satisfies f.
std::vector<Statement> normal_form(const Formula& f, const LocalLanguage& lang);

}  // namespace plogic

#endif
