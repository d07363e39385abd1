#include "plogic/linear.hpp"

#include <algorithm>
#include <cassert>

#include "plogic/errors.hpp"

namespace plogic {

void LinearSystem::add(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
  if ((int)coeffs.size() > num_vars)
    throw std::invalid_argument("constraint has more coefficients than variables");
  coeffs.resize(num_vars, Rat(0));
  constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

enum class Status { Optimal, Infeasible, Unbounded };

struct SolveResult {
  Status status = Status::Infeasible;
  Rat value;
  std::vector<Rat> x;
};

// Dense two-phase primal simplex over exact rationals, Bland's rule for
// anti-cycling. Maximizes c.x subject to the given LessEq/Equal rows and
// x >= 0. Problem sizes in this project are tiny (tens of variables).
class Simplex {
 public:
  Simplex(int n, const std::vector<LinearConstraint>& rows, const std::vector<Rat>& c)
      : n_(n) {
    // Normalize rows to rhs >= 0, recording which need surplus/artificial.
    struct Row {
      std::vector<Rat> a;
      Rat b;
      int type;  // 0 = <=, 1 = >=, 2 = ==
    };
    std::vector<Row> norm;
    for (const auto& r : rows) {
      Row row{r.coeffs, r.rhs, r.rel == Rel::Equal ? 2 : 0};
      assert(r.rel != Rel::Less);
      if (row.b < 0) {
        for (auto& v : row.a) v = -v;
        row.b = -row.b;
        if (row.type == 0) row.type = 1;
      }
      norm.push_back(std::move(row));
    }
    m_ = (int)norm.size();
    int slacks = 0, artificials = 0;
    for (const auto& r : norm) {
      if (r.type == 0) slacks++;
      else if (r.type == 1) { slacks++; artificials++; }
      else artificials++;
    }
    cols_ = n_ + slacks + artificials;
    first_artificial_ = n_ + slacks;
    tab_.assign(m_, std::vector<Rat>(cols_ + 1, Rat(0)));
    basis_.assign(m_, -1);

    int slack_at = n_, art_at = first_artificial_;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = norm[i].a[j];
      tab_[i][cols_] = norm[i].b;
      if (norm[i].type == 0) {
        tab_[i][slack_at] = 1;
        basis_[i] = slack_at++;
      } else if (norm[i].type == 1) {
        tab_[i][slack_at] = -1;
        slack_at++;
        tab_[i][art_at] = 1;
        basis_[i] = art_at++;
      } else {
        tab_[i][art_at] = 1;
        basis_[i] = art_at++;
      }
    }

    // Phase-2 objective row (reduced costs for maximizing c.x).
    obj_.assign(cols_ + 1, Rat(0));
    for (int j = 0; j < n_ && j < (int)c.size(); ++j) obj_[j] = c[j];

    // Phase-1 objective: maximize -sum(artificials).
    phase1_.assign(cols_ + 1, Rat(0));
    for (int j = first_artificial_; j < cols_; ++j) phase1_[j] = -1;
    // Price out the basic artificials so reduced costs start consistent.
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= first_artificial_) add_row_to(phase1_, i, Rat(1));
  }

  SolveResult solve() {
    if (first_artificial_ < cols_) {
      if (!iterate(phase1_, /*phase1=*/true)) return {Status::Unbounded, Rat(0), {}};
      if (phase1_[cols_] != 0) return {Status::Infeasible, Rat(0), {}};
      pivot_out_artificials();
    }
    // Price out basic columns from the phase-2 objective.
    for (int i = 0; i < m_; ++i)
      if (obj_[basis_[i]] != 0) add_row_to(obj_, i, -obj_[basis_[i]]);
    if (!iterate(obj_, /*phase1=*/false)) return {Status::Unbounded, Rat(0), {}};

    SolveResult res;
    res.status = Status::Optimal;
    res.x.assign(n_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = tab_[i][cols_];
    res.value = -obj_[cols_];  // the reduced-cost row carries the negated value
    return res;
  }

 private:
  // obj row convention: obj[j] is the reduced cost of column j; obj[cols_]
  // accumulates the objective value of the current basis.
  void add_row_to(std::vector<Rat>& obj, int row, const Rat& factor) {
    for (int j = 0; j <= cols_; ++j)
      if (tab_[row][j] != 0) obj[j] += factor * tab_[row][j];
  }

  void pivot(std::vector<Rat>& obj, int row, int col) {
    Rat inv = Rat(1) / tab_[row][col];
    for (int j = 0; j <= cols_; ++j) tab_[row][j] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      Rat f = tab_[i][col];
      for (int j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    if (obj[col] != 0) {
      Rat f = obj[col];
      for (int j = 0; j <= cols_; ++j) obj[j] -= f * tab_[row][j];
    }
    // Keep the inactive objective row consistent too.
    std::vector<Rat>* other = (&obj == &phase1_) ? &obj_ : &phase1_;
    if ((*other)[col] != 0) {
      Rat f = (*other)[col];
      for (int j = 0; j <= cols_; ++j) (*other)[j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  // Bland: entering = lowest-index improving column, leaving = minimal
  // ratio with lowest basis index on ties. Returns false on unboundedness.
  bool iterate(std::vector<Rat>& obj, bool phase1) {
    for (;;) {
      int enter = -1;
      int limit = phase1 ? cols_ : first_artificial_;
      for (int j = 0; j < limit; ++j) {
        if (obj[j] > 0) { enter = j; break; }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rat ratio = tab_[i][cols_] / tab_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(obj, leave, enter);
    }
  }

  // After phase 1 the artificials are all zero; swap any still-basic ones for
  // a structural column, or leave them parked on redundant rows.
  void pivot_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (tab_[i][j] != 0) { col = j; break; }
      if (col >= 0) pivot(phase1_, i, col);
    }
  }

  int n_, m_, cols_, first_artificial_;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> obj_, phase1_;
  std::vector<int> basis_;
};

SolveResult simplex_max(int n, const std::vector<LinearConstraint>& rows,
                        const std::vector<Rat>& c) {
  return Simplex(n, rows, c).solve();
}

}  // namespace

FeasibilityReport lp_feasible(const LinearSystem& sys) {
  bool has_strict = std::any_of(
      sys.constraints.begin(), sys.constraints.end(),
      [](const LinearConstraint& c) { return c.rel == Rel::Less; });

  FeasibilityReport report;
  if (!has_strict) {
    auto res = simplex_max(sys.num_vars, sys.constraints,
                           std::vector<Rat>(sys.num_vars, Rat(0)));
    report.feasible = res.status == Status::Optimal;
    if (report.feasible) report.witness = std::move(res.x);
    return report;
  }

  // Shared slack variable eps as the last column; maximize it. eps is capped
  // at 1, which is never binding for the probability systems built here.
  int n = sys.num_vars + 1;
  std::vector<LinearConstraint> rows;
  rows.reserve(sys.constraints.size() + 1);
  for (const auto& c : sys.constraints) {
    LinearConstraint row{c.coeffs, c.rel, c.rhs};
    row.coeffs.resize(n, Rat(0));
    if (c.rel == Rel::Less) {
      row.coeffs[n - 1] = 1;
      row.rel = Rel::LessEq;
    }
    rows.push_back(std::move(row));
  }
  {
    LinearConstraint cap;
    cap.coeffs.assign(n, Rat(0));
    cap.coeffs[n - 1] = 1;
    cap.rel = Rel::LessEq;
    cap.rhs = 1;
    rows.push_back(std::move(cap));
  }
  std::vector<Rat> obj(n, Rat(0));
  obj[n - 1] = 1;
  auto res = simplex_max(n, rows, obj);
  if (res.status == Status::Infeasible) return report;
  assert(res.status == Status::Optimal);
  report.slack = res.value;
  report.feasible = res.value > 0;
  if (report.feasible) {
    res.x.resize(sys.num_vars);
    report.witness = std::move(res.x);
  }
  return report;
}

Rat lp_extremize(const LinearSystem& sys, Direction dir) {
  if (!sys.objective)
    throw std::invalid_argument("lp_extremize: system has no objective");
  std::vector<LinearConstraint> rows = sys.constraints;
  for (auto& r : rows)
    if (r.rel == Rel::Less) r.rel = Rel::LessEq;

  std::vector<Rat> obj = *sys.objective;
  obj.resize(sys.num_vars, Rat(0));
  if (dir == Direction::Minimize)
    for (auto& v : obj) v = -v;

  auto res = simplex_max(sys.num_vars, rows, obj);
  if (res.status == Status::Infeasible) throw LpError("lp_extremize: infeasible system");
  if (res.status == Status::Unbounded) throw LpError("lp_extremize: unbounded objective");
  return dir == Direction::Minimize ? -res.value : res.value;
}

}  // namespace plogic
