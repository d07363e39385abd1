#ifndef PLOGIC_FORMULA_HPP
#define PLOGIC_FORMULA_HPP

#include <memory>
#include <set>
#include <string>

#include "plogic/rational.hpp"

namespace plogic {

// Probability index r of a modality L_r / M_r. Exact rational in [0, 1],
// kept in lowest terms by the underlying representation.
class ProbIndex {
 public:
  ProbIndex(Rat value);  // NOLINT: implicit by design
  ProbIndex(int num, int den) : ProbIndex(Rat(num, den)) {}
  const Rat& value() const { return value_; }

 private:
  Rat value_;
};

enum class Kind {
  Letter,
  Not,
  And,
  Or,       // derived, kept for faithful printing
  Implies,  // derived
  Iff,      // derived
  AtLeast,  // L_r
  AtMost,   // M_r, derived: M_r f == L_{1-r} ~f
  Knows     // K
};

// Immutable agent-indexed belief/knowledge formula. Cheap to copy; nodes are
// shared and never mutated, so formulas are safe to use across threads.
class Formula {
 public:
  Formula() = default;

  static Formula letter(int id);
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula impl(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula at_least(int agent, ProbIndex r, Formula f);  // L_r^agent
  static Formula at_most(int agent, ProbIndex r, Formula f);   // M_r^agent
  static Formula knows(int agent, Formula f);                  // K_agent

  bool empty() const { return node_ == nullptr; }
  Kind kind() const;
  int letter_id() const;        // Letter only
  int agent() const;            // AtLeast/AtMost/Knows only
  const Rat& index() const;     // AtLeast/AtMost only
  Formula lhs() const;          // first child of any non-letter node
  Formula rhs() const;          // second child of binary nodes

  bool is_binary() const;
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: letters p<digits> (bare "p" means p1); `~`; `&`, `|`, `->`, `<->`
// with precedence ~ > & > | > -> > <-> and right-associative arrows;
// modalities L[num/den], M[num/den], K with optional agent subscript
// (L_2[1/3], K_2); agent defaults to 1; parentheses.
Formula parse(const std::string& text);

// Minimal-parentheses rendering; parse(render(f)) is structurally f.
std::string render(const Formula& f);

// Modal depth: letters 0, Boolean connectives transparent, L/M/K add one.
int depth(const Formula& f);

// Least q such that every modal index in f is a multiple of 1/q (1 if none).
Int accuracy(const Formula& f);

// Rewrites every M_r g into L_{1-r} ~g; leaves everything else intact.
Formula desugar_m(const Formula& f);

// Semantic core: eliminates M, Or, Implies, Iff, leaving ~, &, L, K.
Formula core(const Formula& f);

std::set<int> letters(const Formula& f);
std::set<int> agents(const Formula& f);

// Finite local language: indices multiples of 1/q, depth at most max_depth,
// letters drawn from the given set.
struct LocalLanguage {
  int q = 1;
  int max_depth = 1;
  std::set<int> letters;

  bool contains(const Formula& f) const;
};

}  // namespace plogic

#endif
