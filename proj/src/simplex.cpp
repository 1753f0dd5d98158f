// SPDX-License-Identifier: Apache-2.0
#include "qcorr/simplex.hpp"

#include <cassert>
#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr::lp {

namespace {

constexpr double kDualTol = 1e-10;   // reduced-cost optimality tolerance
constexpr double kPivotTol = 1e-11;  // smallest usable pivot element
constexpr double kPhase1Tol = 1e-9;  // residual artificial mass => infeasible
constexpr int kBlandAfter = 4000;    // switch to Bland's rule here
constexpr int kMaxIterations = 200000;

class Tableau {
 public:
  explicit Tableau(const Problem& p) : n_struct_(p.num_vars) {
    rows_ = static_cast<int>(p.constraints.size());

    int n_slack = 0;
    for (const auto& c : p.constraints)
      if (c.rel != Relation::Equal) ++n_slack;

    // Column layout: structural | slack/surplus | artificial, then rhs.
    base_cols_ = n_struct_ + n_slack;
    stride_ = base_cols_ + rows_ + 1;  // room for one artificial per row
    a_.assign(static_cast<std::size_t>(rows_) * stride_, 0.0);
    basis_.assign(rows_, -1);

    int slack = 0;
    for (int i = 0; i < rows_; ++i) {
      const Constraint& c = p.constraints[i];
      assert(static_cast<int>(c.coeffs.size()) == n_struct_);
      const double sign = (c.rhs < 0.0) ? -1.0 : 1.0;  // keep rhs nonnegative
      for (int j = 0; j < n_struct_; ++j) at(i, j) = sign * c.coeffs[j];
      rhs(i) = sign * c.rhs;
      if (c.rel != Relation::Equal) {
        const double s = (c.rel == Relation::LessEq) ? 1.0 : -1.0;
        at(i, n_struct_ + slack) = sign * s;
        ++slack;
      }
    }

    // Initial basis: any column holding a lone +1 serves directly; rows left
    // uncovered get an artificial variable.
    std::vector<int> count(base_cols_, 0);
    std::vector<int> row_of(base_cols_, -1);
    std::vector<double> val_of(base_cols_, 0.0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < base_cols_; ++j)
        if (at(i, j) != 0.0) {
          ++count[j];
          row_of[j] = i;
          val_of[j] = at(i, j);
        }
    for (int j = 0; j < base_cols_; ++j)
      if (count[j] == 1 && std::abs(val_of[j] - 1.0) < 1e-14 && basis_[row_of[j]] < 0)
        basis_[row_of[j]] = j;

    n_artificial_ = 0;
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] >= 0) continue;
      at(i, base_cols_ + n_artificial_) = 1.0;
      basis_[i] = base_cols_ + n_artificial_;
      ++n_artificial_;
    }
    total_cols_ = base_cols_ + n_artificial_;
    in_basis_.assign(total_cols_, 0);
    for (int i = 0; i < rows_; ++i) in_basis_[basis_[i]] = 1;
  }

  void price_out(const std::vector<double>& cost) {
    z_.assign(total_cols_, 0.0);
    zrhs_ = 0.0;
    for (int j = 0; j < total_cols_ && j < static_cast<int>(cost.size()); ++j)
      z_[j] = cost[j];
    for (int i = 0; i < rows_; ++i) {
      const int b = basis_[i];
      const double cb = (b < static_cast<int>(cost.size())) ? cost[b] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j < total_cols_; ++j) z_[j] -= cb * at(i, j);
      zrhs_ -= cb * rhs(i);
    }
  }

  /// Run the current phase to optimality. Returns false when unbounded.
  bool iterate(bool exclude_artificial, int& iterations) {
    const int limit = exclude_artificial ? base_cols_ : total_cols_;
    for (;;) {
      if (iterations >= kMaxIterations)
        throw qcorr::Error("simplex iteration limit exceeded");
      const bool bland = iterations >= kBlandAfter;

      int enter = -1;
      double best = -kDualTol;
      for (int j = 0; j < limit; ++j) {
        if (in_basis_[j]) continue;
        if (z_[j] < best) {
          enter = j;
          best = z_[j];
          if (bland) break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < rows_; ++i) {
        const double aij = at(i, enter);
        if (aij <= kPivotTol) continue;
        const double ratio = rhs(i) / aij;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;

      pivot(leave, enter);
      ++iterations;
    }
  }

  /// Remove leftover artificials from the basis; rows without an eligible
  /// pivot are (numerically) redundant and stay inert.
  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < base_cols_) continue;
      for (int j = 0; j < base_cols_; ++j) {
        if (in_basis_[j]) continue;
        if (std::abs(at(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective_value() const { return -zrhs_; }

  std::vector<double> extract(int n) const {
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < rows_; ++i)
      if (basis_[i] < n) x[basis_[i]] = rhs(i);
    return x;
  }

  int artificials() const { return n_artificial_; }
  int columns() const { return total_cols_; }

 private:
  double& at(int r, int c) { return a_[static_cast<std::size_t>(r) * stride_ + c]; }
  double at(int r, int c) const { return a_[static_cast<std::size_t>(r) * stride_ + c]; }
  double& rhs(int r) { return a_[static_cast<std::size_t>(r) * stride_ + stride_ - 1]; }
  double rhs(int r) const { return a_[static_cast<std::size_t>(r) * stride_ + stride_ - 1]; }

  void pivot(int row, int col) {
    double* pr = &a_[static_cast<std::size_t>(row) * stride_];
    const double inv = 1.0 / pr[col];
    for (int j = 0; j < stride_; ++j) pr[j] *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      double* ri = &a_[static_cast<std::size_t>(i) * stride_];
      const double f = ri[col];
      if (f == 0.0) continue;
      for (int j = 0; j < stride_; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    const double zf = z_[col];
    if (zf != 0.0) {
      for (int j = 0; j < total_cols_; ++j) z_[j] -= zf * pr[j];
      zrhs_ -= zf * pr[stride_ - 1];
      z_[col] = 0.0;
    }
    in_basis_[basis_[row]] = 0;
    in_basis_[col] = 1;
    basis_[row] = col;
  }

  int n_struct_;
  int rows_;
  int base_cols_;
  int n_artificial_ = 0;
  int total_cols_ = 0;
  int stride_;
  double zrhs_ = 0.0;
  std::vector<double> a_;
  std::vector<double> z_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
};

}  // namespace

Solution minimize(const Problem& problem) {
  Tableau t(problem);
  Solution sol;
  int iterations = 0;

  if (t.artificials() > 0) {
    std::vector<double> phase1(t.columns(), 0.0);
    for (int j = t.columns() - t.artificials(); j < t.columns(); ++j) phase1[j] = 1.0;
    t.price_out(phase1);
    if (!t.iterate(/*exclude_artificial=*/false, iterations))
      throw qcorr::Error("phase-1 LP unbounded");
    if (t.objective_value() > kPhase1Tol) {
      sol.status = Status::Infeasible;
      sol.iterations = iterations;
      return sol;
    }
    t.drive_out_artificials();
  }

  t.price_out(problem.objective);
  if (!t.iterate(/*exclude_artificial=*/true, iterations)) {
    sol.status = Status::Unbounded;
    sol.iterations = iterations;
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x = t.extract(problem.num_vars);
  for (double& v : sol.x)
    if (v < 0.0 && v > -1e-11) v = 0.0;
  sol.objective = 0.0;
  for (int j = 0; j < problem.num_vars; ++j)
    sol.objective += problem.objective[j] * sol.x[j];
  sol.iterations = iterations;
  return sol;
}

}  // namespace qcorr::lp
