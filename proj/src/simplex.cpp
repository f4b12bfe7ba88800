// Dense bounded-variable primal simplex.
//
// The LP is brought to equality form A x = b with one slack per inequality
// (slack >= 0; coefficient +1 for <= rows, -1 for >= rows). Artificial
// columns complete the starting basis where the slack cannot; phase 1 drives
// them to zero, phase 2 optimizes the real objective. The tableau B^-1 A is
// kept explicitly and rebuilt from the original matrix periodically and at
// every phase end, so the returned point is computed from a fresh
// factorization rather than from accumulated pivot updates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ohres/milp.hpp"

namespace ohres::milp {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr std::size_t kRefactorEvery = 120;
constexpr std::size_t kBlandAfter = 40;

enum class ColState : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

class DenseSimplex {
 public:
  // `a` is m x n row-major. Column bounds may be infinite on either side.
  DenseSimplex(std::size_t m, std::size_t n, std::vector<double> a, std::vector<double> b,
               std::vector<double> lower, std::vector<double> upper,
               std::vector<double> cost, std::vector<std::int8_t> slack_sign,
               std::vector<std::size_t> slack_col, double feas_tol)
      : m_(m), n_(n), b_(std::move(b)), feas_tol_(feas_tol) {
    // Append artificial columns lazily: count first.
    lower_ = std::move(lower);
    upper_ = std::move(upper);
    real_cost_ = std::move(cost);
    real_cost_.resize(n_, 0.0);

    x_.assign(n_, 0.0);
    state_.assign(n_, ColState::AtLower);
    for (std::size_t j = 0; j < n_; ++j) {
      if (std::isfinite(lower_[j])) {
        x_[j] = lower_[j];
        state_[j] = ColState::AtLower;
      } else if (std::isfinite(upper_[j])) {
        x_[j] = upper_[j];
        state_[j] = ColState::AtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = ColState::FreeZero;
      }
    }

    // Residual of each row with all columns nonbasic.
    std::vector<double> r(b_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = &a[i * n_];
      for (std::size_t j = 0; j < n_; ++j) {
        if (row[j] != 0.0) r[i] -= row[j] * x_[j];
      }
    }

    basis_.assign(m_, 0);
    std::vector<std::size_t> art_rows;
    std::vector<double> art_sign;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t s = slack_col[i];
      if (s != kNone && x_[s] == 0.0 && r[i] * slack_sign[i] >= 0.0) {
        basis_[i] = s;
        x_[s] = r[i] * slack_sign[i];
        state_[s] = ColState::Basic;
      } else {
        art_rows.push_back(i);
        art_sign.push_back(r[i] >= 0.0 ? 1.0 : -1.0);
      }
    }

    first_art_ = n_;
    cols_ = n_ + art_rows.size();
    a0_.assign(m_ * cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(a.begin() + i * n_, a.begin() + (i + 1) * n_, a0_.begin() + i * cols_);
    }
    lower_.resize(cols_, 0.0);
    upper_.resize(cols_, kInfinity);
    real_cost_.resize(cols_, 0.0);
    x_.resize(cols_, 0.0);
    state_.resize(cols_, ColState::AtLower);
    for (std::size_t k = 0; k < art_rows.size(); ++k) {
      const std::size_t i = art_rows[k];
      const std::size_t col = n_ + k;
      a0_[i * cols_ + col] = art_sign[k];
      basis_[i] = col;
      state_[col] = ColState::Basic;
      x_[col] = std::abs(r[i]);
    }

    // Starting basis is diagonal +-1, so B^-1 A is a row-signed copy of A.
    t_ = a0_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double diag = a0_[i * cols_ + basis_[i]];
      if (diag < 0.0) {
        double* row = &t_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) row[j] = -row[j];
      }
    }
    iteration_cap_ = 50 * (m_ + cols_) + 1000;
  }

  LpStatus run() {
    if (cols_ > n_) {
      cost_.assign(cols_, 0.0);
      for (std::size_t j = first_art_; j < cols_; ++j) cost_[j] = 1.0;
      LpStatus st = optimize();
      if (st != LpStatus::Optimal) {
        throw NumericalError("phase 1 reported an unbounded ray");
      }
      double infeas = 0.0;
      for (std::size_t j = first_art_; j < cols_; ++j) infeas = std::max(infeas, x_[j]);
      if (infeas > feas_tol_) return LpStatus::Infeasible;
      drive_out_artificials();
      for (std::size_t j = first_art_; j < cols_; ++j) {
        upper_[j] = 0.0;
        if (state_[j] != ColState::Basic) {
          state_[j] = ColState::AtLower;
          x_[j] = 0.0;
        }
      }
    }
    cost_ = real_cost_;
    return optimize();
  }

  const std::vector<double>& values() const noexcept { return x_; }
  std::size_t iterations() const noexcept { return iterations_; }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

 private:
  double& t(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  double t(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

  bool fixed(std::size_t j) const { return upper_[j] - lower_[j] <= 0.0; }

  // Runs simplex iterations with cost_ until no improving column remains,
  // confirming optimality on a freshly rebuilt tableau.
  LpStatus optimize() {
    refactor();
    for (int confirm = 0; confirm < 8; ++confirm) {
      LpStatus st = iterate();
      if (st != LpStatus::Optimal) return st;
      refactor();
      if (!has_entering_candidate()) return LpStatus::Optimal;
    }
    throw NumericalError("simplex failed to confirm optimality after refactorization");
  }

  bool has_entering_candidate() const {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (eligible_direction(j) != 0) return true;
    }
    return false;
  }

  int eligible_direction(std::size_t j) const {
    if (state_[j] == ColState::Basic || fixed(j)) return 0;
    const double dj = d_[j];
    switch (state_[j]) {
      case ColState::AtLower:
        return dj < -kOptTol ? 1 : 0;
      case ColState::AtUpper:
        return dj > kOptTol ? -1 : 0;
      case ColState::FreeZero:
        return dj < -kOptTol ? 1 : (dj > kOptTol ? -1 : 0);
      case ColState::Basic:
        break;
    }
    return 0;
  }

  LpStatus iterate() {
    std::size_t since_refactor = 0;
    std::size_t degenerate_run = 0;
    for (;;) {
      if (since_refactor >= kRefactorEvery) {
        refactor();
        since_refactor = 0;
      }
      const bool bland = degenerate_run >= kBlandAfter;

      // Pricing: Dantzig, or lowest index under Bland's rule.
      std::size_t q = kNone;
      int dir = 0;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const int dj_dir = eligible_direction(j);
        if (dj_dir == 0) continue;
        if (bland) {
          q = j;
          dir = dj_dir;
          break;
        }
        const double score = std::abs(d_[j]);
        if (score > best) {
          best = score;
          q = j;
          dir = dj_dir;
        }
      }
      if (q == kNone) return LpStatus::Optimal;

      if (++iterations_ > iteration_cap_) {
        throw NumericalError("simplex iteration limit exceeded (cycling suspected)");
      }

      // Ratio test (Harris two-pass; plain minimum ratio under Bland).
      const double range = upper_[q] - lower_[q];
      double theta_max = kInfinity;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t(i, q) * dir;
        const std::size_t bj = basis_[i];
        const double slack = bland ? 0.0 : feas_tol_;
        if (a > kPivotTol && std::isfinite(lower_[bj])) {
          theta_max = std::min(theta_max, (x_[bj] - lower_[bj] + slack) / a);
        } else if (a < -kPivotTol && std::isfinite(upper_[bj])) {
          theta_max = std::min(theta_max, (upper_[bj] - x_[bj] + slack) / -a);
        }
      }

      if (!std::isfinite(theta_max) && !std::isfinite(range)) {
        return LpStatus::Unbounded;
      }

      std::size_t p = kNone;
      double step = 0.0;
      if (range <= theta_max) {
        step = range;  // bound flip
      } else {
        double best_pivot = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
          const double a = t(i, q) * dir;
          const std::size_t bj = basis_[i];
          double ratio;
          if (a > kPivotTol && std::isfinite(lower_[bj])) {
            ratio = (x_[bj] - lower_[bj]) / a;
          } else if (a < -kPivotTol && std::isfinite(upper_[bj])) {
            ratio = (upper_[bj] - x_[bj]) / -a;
          } else {
            continue;
          }
          if (ratio > theta_max) continue;
          const bool better = bland ? (p == kNone || ratio < step ||
                                       (ratio == step && bj < basis_[p]))
                                    : std::abs(a) > best_pivot;
          if (better) {
            best_pivot = std::abs(a);
            p = i;
            step = ratio;
          }
        }
        if (p == kNone) throw NumericalError("ratio test found no pivot row");
        step = std::max(step, 0.0);
      }

      degenerate_run = step <= kDegenerateStep ? degenerate_run + 1 : 0;

      // Primal update.
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t(i, q);
        if (a != 0.0) x_[basis_[i]] -= a * dir * step;
      }
      x_[q] += dir * step;

      if (p == kNone) {
        if (dir > 0) {
          state_[q] = ColState::AtUpper;
          x_[q] = upper_[q];
        } else {
          state_[q] = ColState::AtLower;
          x_[q] = lower_[q];
        }
        continue;
      }

      const std::size_t leaving = basis_[p];
      const double a_leave = t(p, q) * dir;
      if (a_leave > 0.0) {
        state_[leaving] = ColState::AtLower;
        x_[leaving] = lower_[leaving];
      } else {
        state_[leaving] = ColState::AtUpper;
        x_[leaving] = upper_[leaving];
      }
      pivot(p, q);
      ++since_refactor;
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    double* prow = &t_[p * cols_];
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == p) continue;
      double* row = &t_[i * cols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) {
        double v = row[j] - f * prow[j];
        row[j] = std::abs(v) < 1e-14 ? 0.0 : v;
      }
      row[q] = 0.0;
    }
    const double fd = d_[q];
    if (fd != 0.0) {
      for (std::size_t j : nz_) d_[j] -= fd * prow[j];
    }
    d_[q] = 0.0;
    basis_[p] = q;
    state_[q] = ColState::Basic;
  }

  // Rebuilds B^-1 A and the basic values from the original matrix by
  // Gauss-Jordan elimination with partial pivoting over the basic columns.
  void refactor() {
    const std::size_t w = cols_ + 1;
    std::vector<double> work(m_ * w);
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(a0_.begin() + i * cols_, a0_.begin() + (i + 1) * cols_, work.begin() + i * w);
      double rhs = b_[i];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] != ColState::Basic) {
          const double a = a0_[i * cols_ + j];
          if (a != 0.0 && x_[j] != 0.0) rhs -= a * x_[j];
        }
      }
      work[i * w + cols_] = rhs;
    }

    std::vector<std::size_t> basic_cols(basis_);
    std::sort(basic_cols.begin(), basic_cols.end());
    std::vector<char> row_used(m_, 0);
    std::vector<std::size_t> new_basis(m_, kNone);
    for (std::size_t col : basic_cols) {
      std::size_t pr = kNone;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (row_used[i]) continue;
        const double v = std::abs(work[i * w + col]);
        if (v > best) {
          best = v;
          pr = i;
        }
      }
      if (pr == kNone || best < 1e-11) {
        throw NumericalError("basis matrix is numerically singular");
      }
      row_used[pr] = 1;
      new_basis[pr] = col;
      double* prow = &work[pr * w];
      const double inv = 1.0 / prow[col];
      for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
      prow[col] = 1.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == pr) continue;
        double* row = &work[i * w];
        const double f = row[col];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < w; ++j) {
          if (prow[j] != 0.0) row[j] -= f * prow[j];
        }
        row[col] = 0.0;
      }
    }

    basis_ = new_basis;
    for (std::size_t i = 0; i < m_; ++i) {
      double* row = &work[i * w];
      std::copy(row, row + cols_, t_.begin() + i * cols_);
      x_[basis_[i]] = row[cols_];
    }
    for (double& v : t_) {
      if (std::abs(v) < 1e-14) v = 0.0;
    }

    // Reduced costs d = c - c_B' B^-1 A.
    d_ = cost_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (row[j] != 0.0) d_[j] -= cb * row[j];
      }
    }
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  // Pivots zero-valued basic artificials out in favour of real columns.
  // Rows where no real column has a usable entry are redundant; their
  // artificial stays basic, pinned to zero.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      std::size_t q = kNone;
      double best = 1e-7;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (state_[j] == ColState::Basic) continue;
        const double v = std::abs(t(i, j));
        if (v > best) {
          best = v;
          q = j;
        }
      }
      if (q == kNone) continue;
      const std::size_t leaving = basis_[i];
      // The artificial is ~0, so the entering column keeps its bound value.
      state_[leaving] = ColState::AtLower;
      x_[leaving] = 0.0;
      d_.assign(cols_, 0.0);
      pivot(i, q);
    }
    refactor();
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_art_ = 0;
  std::vector<double> a0_;
  std::vector<double> b_;
  std::vector<double> t_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> real_cost_;
  std::vector<double> cost_;
  std::vector<double> d_;
  std::vector<double> x_;
  std::vector<ColState> state_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
  double feas_tol_;
  std::size_t iterations_ = 0;
  std::size_t iteration_cap_ = 0;
};

}  // namespace

LpSolution solve_lp(const MilpProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (!(options.feas_tol > 0.0) || !(options.int_tol > 0.0) || !(options.gap_tol > 0.0)) {
    throw DimensionError("solver tolerances must be > 0");
  }
  const std::size_t nv = problem.num_vars();
  LpSolution out;

  // Presolve: substitute fixed variables.
  std::vector<std::size_t> col_of(nv, DenseSimplex::kNone);
  std::vector<double> value(nv, 0.0);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = problem.lower_bounds[j];
    const double up = problem.upper_bounds[j];
    if (lo > up + options.feas_tol) return out;  // empty box
    if (up - lo <= 0.0 || (lo > up)) {
      value[j] = lo;
    } else {
      col_of[j] = ncols++;
    }
  }
  const std::size_t nstruct = ncols;

  // Keep non-empty rows; check empty ones directly.
  struct Kept {
    std::size_t row;
    double rhs;
  };
  std::vector<Kept> kept;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const Row& row = problem.constraints[i];
    double rhs = row.rhs;
    bool nonempty = false;
    for (const Term& t : row.terms) {
      if (t.coef == 0.0) continue;
      if (col_of[t.var] == DenseSimplex::kNone) {
        rhs -= t.coef * value[t.var];
      } else {
        nonempty = true;
      }
    }
    if (nonempty) {
      kept.push_back({i, rhs});
      continue;
    }
    const bool ok = row.relation == Relation::LessEqual ? 0.0 <= rhs + options.feas_tol
                    : row.relation == Relation::Equal   ? std::abs(rhs) <= options.feas_tol
                                                        : 0.0 >= rhs - options.feas_tol;
    if (!ok) return out;
  }

  const std::size_t m = kept.size();
  std::vector<std::size_t> slack_col(m, DenseSimplex::kNone);
  std::vector<std::int8_t> slack_sign(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const Relation rel = problem.constraints[kept[k].row].relation;
    if (rel == Relation::Equal) continue;
    slack_col[k] = ncols++;
    slack_sign[k] = rel == Relation::LessEqual ? 1 : -1;
  }

  std::vector<double> a(m * ncols, 0.0);
  std::vector<double> b(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (const Term& t : problem.constraints[kept[k].row].terms) {
      const std::size_t c = col_of[t.var];
      if (c != DenseSimplex::kNone) a[k * ncols + c] += t.coef;
    }
    if (slack_col[k] != DenseSimplex::kNone) a[k * ncols + slack_col[k]] = slack_sign[k];
    b[k] = kept[k].rhs;
  }
  std::vector<double> lower(ncols, 0.0), upper(ncols, kInfinity), cost(ncols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    const std::size_t c = col_of[j];
    if (c == DenseSimplex::kNone) continue;
    lower[c] = problem.lower_bounds[j];
    upper[c] = problem.upper_bounds[j];
    cost[c] = problem.objective[j];
  }

  DenseSimplex simplex(m, ncols, std::move(a), std::move(b), std::move(lower),
                       std::move(upper), std::move(cost), std::move(slack_sign),
                       std::move(slack_col), options.feas_tol);
  out.status = simplex.run();
  out.iterations = simplex.iterations();
  if (out.status != LpStatus::Optimal) return out;

  const auto& x = simplex.values();
  out.values = value;
  for (std::size_t j = 0; j < nv; ++j) {
    const std::size_t c = col_of[j];
    if (c == DenseSimplex::kNone) continue;
    // Basic values may sit a rounding error outside their box.
    out.values[j] = std::clamp(x[c], problem.lower_bounds[j], problem.upper_bounds[j]);
  }
  (void)nstruct;
  out.objective_value = evaluate_objective(problem, out.values);
  const PointReport report = check_point(problem, out.values);
  out.max_primal_residual = std::max(report.max_row_violation(), report.max_bound_violation);
  if (out.max_primal_residual > options.feas_tol) {
    throw NumericalError("LP optimum violates constraints by " +
                         std::to_string(out.max_primal_residual) +
                         " (row " + std::to_string(report.worst_row) + ")");
  }
  return out;
}

}  // namespace ohres::milp
