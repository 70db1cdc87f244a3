#pragma once

// Dense linear program  max c.x  s.t.  a_i.x <= b_i  with rows added over
// time (cutting planes). It is solved through its dual
//   min b.y  s.t.  A^T y = c, y >= 0
// by a revised primal simplex: the basis holds d rows, x are the simplex
// multipliers, and a violated row is an entering column. Rows added later
// simply join the pricing pool, so every solve is warm-started.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "toepsys/error.hpp"

namespace toepsys {

class RowLP {
 public:
  /// Starts from the box |x_j| <= bound, whose rows sign(c_j) e_j form a
  /// dual-feasible basis.
  RowLP(Eigen::VectorXd c, double bound) : c_(std::move(c)), d_(c_.size()) {
    require(d_ >= 1, ErrorKind::invalid_argument, "RowLP: empty objective");
    require(bound > 0.0, ErrorKind::invalid_argument, "RowLP: box bound must be positive");
    for (Eigen::Index j = 0; j < d_; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d_);
      e(j) = 1.0;
      add_row(e, bound);
      add_row(-e, bound);
      basis_.push_back(c_(j) >= 0.0 ? 2 * j : 2 * j + 1);
    }
    refactor();
  }

  void add_row(const Eigen::VectorXd& a, double b) {
    rows_.push_back(a);
    rhs_.push_back(b);
    in_basis_.push_back(false);
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  const Eigen::VectorXd& x() const noexcept { return x_; }
  double value() const { return c_.dot(x_); }

  /// Pivots until no row is violated by more than `feas_tol` (absolute).
  /// Returns the number of pivots.
  int solve(double feas_tol = 1e-12, int max_pivots = 100000) {
    int pivots = 0, stall = 0;
    double last = std::numeric_limits<double>::infinity();
    while (pivots < max_pivots) {
      const bool bland = stall > 2 * static_cast<int>(d_);
      // Pricing: reduced cost of row i is b_i - a_i.x (negative = violated).
      Eigen::Index enter = -1;
      double most = -feas_tol;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (in_basis_[i]) continue;
        const double rc = rhs_[i] - rows_[i].dot(x_);
        if (rc < most) {
          enter = static_cast<Eigen::Index>(i);
          most = rc;
          if (bland) break;
        }
      }
      if (enter < 0) break;

      // Ratio test on B dir = a_enter (B has the basic rows as columns).
      const Eigen::VectorXd dir = lu_.solve(rows_[static_cast<std::size_t>(enter)]);
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < d_; ++j) {
        if (dir(j) <= 1e-12) continue;
        const double ratio = y_(j) / dir(j);
        if (ratio < best - 1e-15 || (bland && ratio <= best + 1e-15 && leave >= 0 &&
                                     basis_[static_cast<std::size_t>(j)] < basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = j;
        }
      }
      require(leave >= 0, ErrorKind::numerical, "RowLP: dual unbounded (primal infeasible)");
      in_basis_[basis_[static_cast<std::size_t>(leave)]] = false;
      basis_[static_cast<std::size_t>(leave)] = static_cast<std::size_t>(enter);
      refactor();
      ++pivots;
      const double v = value();
      stall = v < last - 1e-14 * (1.0 + std::abs(v)) ? 0 : stall + 1;
      last = std::min(last, v);
    }
    return pivots;
  }

 private:
  void refactor() {
    in_basis_.assign(rows_.size(), false);
    Eigen::MatrixXd b(d_, d_);
    Eigen::VectorXd rb(d_);
    for (Eigen::Index j = 0; j < d_; ++j) {
      const std::size_t r = basis_[static_cast<std::size_t>(j)];
      in_basis_[r] = true;
      b.col(j) = rows_[r];
      rb(j) = rhs_[r];
    }
    lu_.compute(b);
    y_ = lu_.solve(c_);
    for (Eigen::Index j = 0; j < d_; ++j) y_(j) = std::max(y_(j), 0.0);
    x_ = lu_.transpose().solve(rb);
  }

  Eigen::VectorXd c_;
  Eigen::Index d_;
  std::vector<Eigen::VectorXd> rows_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd y_, x_;
};

}  // namespace toepsys
