#pragma once

#include <Eigen/Core>

namespace pdcont {

/// Thin singular value decomposition A = V diag(sigma) W^T with
/// k = min(m, n) singular values sorted non-increasingly; V is m x k and W is
/// n x k. Columns belonging to zero singular values may be zero.
struct Svd {
  Eigen::MatrixXd v;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd w;
};

/// One-sided Jacobi iterations on the shorter dimension, swept until every
/// pair of columns is orthogonal to machine precision.
Svd svd(const Eigen::MatrixXd& a);

/// Singular values only, non-increasing.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

struct PinvSolution {
  Eigen::VectorXd x;
  /// Some singular value was treated as zero.
  bool rank_deficient = false;
  Eigen::VectorXd sigma;
};

/// Minimum-norm least-squares solution x = A^+ b. Singular values below
/// relative_cutoff * sigma_1 are treated as zero.
PinvSolution pinv_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                        double relative_cutoff = 1e-12);

/// The Moore-Penrose pseudo-inverse with the same cutoff rule.
Eigen::MatrixXd pinv(const Eigen::MatrixXd& a, double relative_cutoff = 1e-12);

}  // namespace pdcont
