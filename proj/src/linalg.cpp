#include "pdcont/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace pdcont {

namespace {

constexpr int kMaxSweeps = 80;

/// Rotates the columns of b (accumulating into r) until they are mutually
/// orthogonal: b_in * r = b_out.
void jacobi_columns(Eigen::MatrixXd& b, Eigen::MatrixXd& r) {
  const Eigen::Index q = b.cols();
  r = Eigen::MatrixXd::Identity(q, q);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < q; ++i) {
      for (Eigen::Index j = i + 1; j < q; ++j) {
        const double alpha = b.col(i).squaredNorm();
        const double beta = b.col(j).squaredNorm();
        const double gamma = b.col(i).dot(b.col(j));
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (auto* m : {&b, &r}) {
          const Eigen::VectorXd ci = m->col(i);
          m->col(i) = c * ci - s * m->col(j);
          m->col(j) = s * ci + c * m->col(j);
        }
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

Svd svd(const Eigen::MatrixXd& a) {
  const bool wide = a.rows() <= a.cols();
  Eigen::MatrixXd b = wide ? Eigen::MatrixXd(a.transpose()) : a;
  Eigen::MatrixXd r;
  jacobi_columns(b, r);
  const Eigen::Index k = b.cols();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd norms(k);
  for (Eigen::Index i = 0; i < k; ++i) norms[i] = b.col(i).norm();
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return norms[x] > norms[y]; });

  // b = U S with U the normalised columns; r is orthogonal.
  Eigen::MatrixXd u(b.rows(), k), rr(k, k);
  Eigen::VectorXd sigma(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    sigma[c] = norms[src];
    u.col(c) = sigma[c] > 0 ? Eigen::VectorXd(b.col(src) / sigma[c]) : Eigen::VectorXd::Zero(b.rows());
    rr.col(c) = r.col(src);
  }
  Svd out;
  out.sigma = sigma;
  if (wide) {
    // A^T R = U S  =>  A = R S U^T.
    out.v = rr;
    out.w = u;
  } else {
    // A R = U S  =>  A = U S R^T.
    out.v = u;
    out.w = rr;
  }
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) { return svd(a).sigma; }

PinvSolution pinv_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double relative_cutoff) {
  const Svd s = svd(a);
  PinvSolution out;
  out.sigma = s.sigma;
  out.x = Eigen::VectorXd::Zero(a.cols());
  const double cutoff = s.sigma.size() ? relative_cutoff * s.sigma[0] : 0.0;
  for (Eigen::Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma[i] <= cutoff || s.sigma[i] == 0.0) {
      out.rank_deficient = true;
      continue;
    }
    out.x += s.w.col(i) * (s.v.col(i).dot(b) / s.sigma[i]);
  }
  return out;
}

Eigen::MatrixXd pinv(const Eigen::MatrixXd& a, double relative_cutoff) {
  const Svd s = svd(a);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(a.cols(), a.rows());
  const double cutoff = s.sigma.size() ? relative_cutoff * s.sigma[0] : 0.0;
  for (Eigen::Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma[i] <= cutoff || s.sigma[i] == 0.0) continue;
    x += s.w.col(i) * s.v.col(i).transpose() / s.sigma[i];
  }
  return x;
}

}  // namespace pdcont
