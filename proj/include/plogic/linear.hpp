#ifndef PLOGIC_LINEAR_HPP
#define PLOGIC_LINEAR_HPP

#include <optional>
#include <vector>

#include "plogic/rational.hpp"

namespace plogic {

// Relation of a linear constraint a.x REL b. Less is strict.
enum class Rel { LessEq, Equal, Less };

struct LinearConstraint {
  std::vector<Rat> coeffs;
  Rel rel = Rel::LessEq;
  Rat rhs;
};

// A system over variables x_0..x_{n-1}, all implicitly >= 0.
// Coefficient vectors shorter than num_vars are padded with zeros.
struct LinearSystem {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
  std::optional<std::vector<Rat>> objective;

  explicit LinearSystem(int n = 0) : num_vars(n) {}
  void add(std::vector<Rat> coeffs, Rel rel, Rat rhs);
  void add_eq(std::vector<Rat> coeffs, Rat rhs) { add(std::move(coeffs), Rel::Equal, std::move(rhs)); }
  void add_le(std::vector<Rat> coeffs, Rat rhs) { add(std::move(coeffs), Rel::LessEq, std::move(rhs)); }
  void add_lt(std::vector<Rat> coeffs, Rat rhs) { add(std::move(coeffs), Rel::Less, std::move(rhs)); }
};

struct FeasibilityReport {
  bool feasible = false;
  std::optional<std::vector<Rat>> witness;
  // Maximized shared margin of the strict constraints (capped at 1).
  // Present iff the system has strict constraints; feasible iff it is > 0.
  std::optional<Rat> slack;
};

// Exact feasibility. Strict constraints a.x < b are replaced by
// a.x + eps <= b for one shared eps which is then maximized; the system is
// feasible iff the optimum eps is positive, and the witness is the optimal
// basic solution (for a one-dimensional open interval this is its midpoint).
FeasibilityReport lp_feasible(const LinearSystem& sys);

enum class Direction { Minimize, Maximize };

// Exact optimum of the objective over the closed relaxation of the feasible
// region (strict constraints weakened to <=). Throws LpError on infeasible
// or unbounded systems.
Rat lp_extremize(const LinearSystem& sys, Direction dir);

}  // namespace plogic

#endif
