#include "pdcont/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "pdcont/error.hpp"
#include "pdcont/random.hpp"

namespace pdcont {

// ---------------------------------------------------------------------------
// Simplex

Simplex::Simplex(std::initializer_list<int> vertices)
    : Simplex(std::span<const int>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const int> vertices) {
  if (vertices.empty() || vertices.size() > kMaxVertices) {
    throw Error(ErrorCode::InvalidArgument,
                "simplex must have 1 to 4 vertices, got " + std::to_string(vertices.size()));
  }
  size_ = static_cast<int>(vertices.size());
  std::copy(vertices.begin(), vertices.end(), v_.begin());
  std::sort(v_.begin(), v_.begin() + size_);
  for (int i = 0; i < size_; ++i) {
    if (v_[i] < 0 || (i > 0 && v_[i] == v_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "simplex vertices must be distinct and non-negative");
    }
  }
}

Simplex Simplex::face(int k) const {
  std::array<int, kMaxVertices> w{};
  int n = 0;
  for (int i = 0; i < size_; ++i) {
    if (i != k) w[n++] = v_[i];
  }
  return Simplex(std::span<const int>(w.data(), static_cast<std::size_t>(n)));
}

bool Simplex::contains(int vertex) const noexcept {
  return std::find(v_.begin(), v_.begin() + size_, vertex) != v_.begin() + size_;
}

bool Simplex::contains(const Simplex& face) const noexcept {
  return std::includes(v_.begin(), v_.begin() + size_, face.v_.begin(),
                       face.v_.begin() + face.size_);
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = static_cast<std::size_t>(s.size());
  for (int v : s.vertices()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Configuration

Configuration::Configuration(std::vector<Point3> points, bool gauge)
    : points_(std::move(points)), gauge_(gauge) {
  if (points_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a configuration needs at least one point");
  }
  if (!gauge_) return;
  if (points_.size() < 3) {
    throw Error(ErrorCode::GaugeViolation, "the symmetry gauge needs at least 3 points");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) {
      if (!is_free(i, a) && points_[i][a] != 0.0) {
        throw Error(ErrorCode::GaugeViolation,
                    "gauge-fixed coordinate " + std::to_string(a) + " of point " +
                        std::to_string(i) + " is nonzero");
      }
    }
  }
}

std::size_t Configuration::free_dim() const noexcept {
  return gauge_ ? 3 * points_.size() - 6 : 3 * points_.size();
}

bool Configuration::is_free(std::size_t point, int axis) const noexcept {
  if (!gauge_ || point >= 3) return true;
  // point 0: nothing free; point 1: x only; point 2: x and y.
  return axis < static_cast<int>(point);
}

std::ptrdiff_t Configuration::free_index(std::size_t point, int axis) const noexcept {
  if (!is_free(point, axis)) return -1;
  if (!gauge_) return static_cast<std::ptrdiff_t>(3 * point) + axis;
  if (point == 1) return 0;
  if (point == 2) return 1 + axis;
  return static_cast<std::ptrdiff_t>(3 * point - 6) + axis;
}

Eigen::VectorXd Configuration::pack() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(free_dim()));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const auto idx = free_index(i, a);
      if (idx >= 0) {
        out[idx] = points_[i][a];
      } else if (points_[i][a] != 0.0) {
        throw Error(ErrorCode::GaugeViolation, "gauge-fixed coordinate is nonzero");
      }
    }
  }
  return out;
}

Configuration Configuration::unpack(const Eigen::VectorXd& packed) const {
  if (static_cast<std::size_t>(packed.size()) != free_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "packed vector has length " + std::to_string(packed.size()) + ", expected " +
                    std::to_string(free_dim()));
  }
  std::vector<Point3> pts(points_.size(), Point3::Zero());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const auto idx = free_index(i, a);
      if (idx >= 0) pts[i][a] = packed[idx];
    }
  }
  return Configuration(std::move(pts), gauge_);
}

double Configuration::scale() const {
  Point3 lo = points_.front();
  Point3 hi = points_.front();
  for (const auto& p : points_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

Configuration to_gauge_frame(std::vector<Point3> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::DegenerateInput, "the gauge frame needs at least 3 points");
  }
  const Point3 origin = points[0];
  for (auto& p : points) p -= origin;
  const double scale = Configuration(points, false).scale();

  const double len1 = points[1].norm();
  if (len1 <= kDegeneracyThreshold * scale || len1 == 0.0) {
    throw Error(ErrorCode::DegenerateInput, "points 0 and 1 coincide; cannot fix the gauge");
  }
  const Point3 ex = points[1] / len1;
  const Point3 w = points[2] - points[2].dot(ex) * ex;
  const double len2 = w.norm();
  if (len2 <= kDegeneracyThreshold * scale) {
    throw Error(ErrorCode::DegenerateInput, "points 0, 1, 2 are collinear; cannot fix the gauge");
  }
  const Point3 ey = w / len2;
  const Point3 ez = ex.cross(ey);
  Eigen::Matrix3d rot;
  rot.row(0) = ex.transpose();
  rot.row(1) = ey.transpose();
  rot.row(2) = ez.transpose();
  for (auto& p : points) p = rot * p;

  points[0].setZero();
  points[1].y() = 0.0;
  points[1].z() = 0.0;
  points[2].z() = 0.0;
  return Configuration(std::move(points), true);
}

std::vector<Point3> jitter(std::vector<Point3> points, std::uint64_t seed, double relative) {
  if (points.empty()) return points;
  const double mag = relative * Configuration(points, false).scale();
  Rng rng(seed);
  for (auto& p : points) {
    for (int a = 0; a < 3; ++a) p[a] += mag * rng.uniform(-1.0, 1.0);
  }
  return points;
}

// ---------------------------------------------------------------------------
// Circumradius via determinants M^{i1..ik}_{j1..jk}; column index 0 is the
// constant 1, 1..3 are x, y, z and 4 is |u|^2.

namespace {

double entry(const Point3& u, int col) {
  switch (col) {
    case 0: return 1.0;
    case 4: return u.squaredNorm();
    default: return u[col - 1];
  }
}

double entry_derivative(const Point3& u, int col, int axis) {
  if (col == 4) return 2.0 * u[axis];
  return col == axis + 1 ? 1.0 : 0.0;
}

template <int K>
struct Minor {
  double value = 0.0;
  Eigen::Matrix<double, K, 3> grad = Eigen::Matrix<double, K, 3>::Zero();
};

template <int K>
Minor<K> minor_det(const std::array<Point3, K>& u, const std::array<int, K>& cols) {
  Eigen::Matrix<double, K, K> m;
  for (int r = 0; r < K; ++r) {
    for (int c = 0; c < K; ++c) m(r, c) = entry(u[r], cols[c]);
  }
  Minor<K> out;
  out.value = m.determinant();
  for (int r = 0; r < K; ++r) {
    for (int c = 0; c < K; ++c) {
      Eigen::Matrix<double, K - 1, K - 1> sub;
      for (int rr = 0, si = 0; rr < K; ++rr) {
        if (rr == r) continue;
        for (int cc = 0, sj = 0; cc < K; ++cc) {
          if (cc == c) continue;
          sub(si, sj++) = m(rr, cc);
        }
        ++si;
      }
      const double cofactor = (((r + c) % 2) ? -1.0 : 1.0) * sub.determinant();
      for (int a = 0; a < 3; ++a) {
        out.grad(r, a) += cofactor * entry_derivative(u[r], cols[c], a);
      }
    }
  }
  return out;
}

// Sum over z of (M^{ab}_{z0})^2, i.e. the squared edge length, with gradient
// with respect to both endpoints.
Minor<2> squared_edge(const Point3& a, const Point3& b) {
  Minor<2> out;
  const std::array<Point3, 2> u{a, b};
  for (int z = 1; z <= 3; ++z) {
    const auto m = minor_det<2>(u, {z, 0});
    out.value += m.value * m.value;
    out.grad += 2.0 * m.value * m.grad;
  }
  return out;
}

double bbox_diagonal(std::span<const Point3> pts) {
  Point3 lo = pts.front();
  Point3 hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

[[noreturn]] void degenerate(std::size_t k) {
  throw Error(ErrorCode::DegenerateSimplex,
              "degenerate " + std::to_string(k) + "-vertex simplex: circumradius undefined");
}

// rho^2 and its gradient (one row per vertex). Coordinates are shifted by the
// first vertex, which leaves rho and its gradient unchanged.
template <int K>
std::pair<double, Eigen::Matrix<double, K, 3>> squared_radius(std::span<const Point3> in) {
  std::array<Point3, K> u;
  for (int i = 0; i < K; ++i) u[i] = in[i] - in[0];
  const double scale = bbox_diagonal(in);
  Eigen::Matrix<double, K, 3> grad = Eigen::Matrix<double, K, 3>::Zero();

  if constexpr (K == 2) {
    const auto s = squared_edge(u[0], u[1]);
    if (!(s.value > 0.0)) degenerate(2);
    grad = s.grad / 4.0;
    return {s.value / 4.0, grad};
  } else if constexpr (K == 3) {
    const std::array<std::array<int, 2>, 3> edges{{{0, 1}, {1, 2}, {2, 0}}};
    double num = 1.0;
    std::array<Minor<2>, 3> e;
    for (int i = 0; i < 3; ++i) {
      e[i] = squared_edge(u[edges[i][0]], u[edges[i][1]]);
      num *= e[i].value;
    }
    double den = 0.0;
    Eigen::Matrix<double, 3, 3> den_grad = Eigen::Matrix<double, 3, 3>::Zero();
    for (const auto& cols : {std::array<int, 3>{2, 3, 0}, std::array<int, 3>{1, 3, 0},
                             std::array<int, 3>{1, 2, 0}}) {
      const auto m = minor_det<3>(u, cols);
      den += m.value * m.value;
      den_grad += 2.0 * m.value * m.grad;
    }
    if (std::sqrt(den) < kDegeneracyThreshold * scale * scale || num == 0.0) degenerate(3);
    const double rho2 = num / (4.0 * den);
    for (int i = 0; i < 3; ++i) {
      const auto [a, b] = edges[i];
      grad.row(a) += rho2 * e[i].grad.row(0) / e[i].value;
      grad.row(b) += rho2 * e[i].grad.row(1) / e[i].value;
    }
    grad -= rho2 * den_grad / den;
    return {rho2, grad};
  } else {
    const auto m2340 = minor_det<4>(u, {2, 3, 4, 0});
    const auto m1340 = minor_det<4>(u, {1, 3, 4, 0});
    const auto m1240 = minor_det<4>(u, {1, 2, 4, 0});
    const auto m1230 = minor_det<4>(u, {1, 2, 3, 0});
    const auto m1234 = minor_det<4>(u, {1, 2, 3, 4});
    if (std::abs(m1230.value) < kDegeneracyThreshold * scale * scale * scale) degenerate(4);
    const double num = m2340.value * m2340.value + m1340.value * m1340.value +
                       m1240.value * m1240.value + 4.0 * m1230.value * m1234.value;
    const Eigen::Matrix<double, 4, 3> num_grad =
        2.0 * m2340.value * m2340.grad + 2.0 * m1340.value * m1340.grad +
        2.0 * m1240.value * m1240.grad + 4.0 * (m1230.grad * m1234.value + m1230.value * m1234.grad);
    const double den = 4.0 * m1230.value * m1230.value;
    const Eigen::Matrix<double, 4, 3> den_grad = 8.0 * m1230.value * m1230.grad;
    const double rho2 = num / den;
    grad = (num_grad - rho2 * den_grad) / den;
    return {rho2, grad};
  }
}

template <typename Fn>
decltype(auto) dispatch(std::span<const Point3> vertices, Fn&& fn) {
  switch (vertices.size()) {
    case 2: return fn(squared_radius<2>(vertices));
    case 3: return fn(squared_radius<3>(vertices));
    case 4: return fn(squared_radius<4>(vertices));
    default:
      throw Error(ErrorCode::InvalidArgument,
                  "circumradius needs 2, 3 or 4 vertices, got " + std::to_string(vertices.size()));
  }
}

}  // namespace

double circumradius(std::span<const Point3> vertices) {
  return dispatch(vertices, [](const auto& r) { return std::sqrt(r.first); });
}

CircumradiusGradient circumradius_gradient(std::span<const Point3> vertices) {
  return dispatch(vertices, [](const auto& r) {
    CircumradiusGradient out;
    out.radius = std::sqrt(r.first);
    const auto& g2 = r.second;
    out.gradient.resize(static_cast<std::size_t>(g2.rows()));
    for (Eigen::Index i = 0; i < g2.rows(); ++i) {
      // d rho = d(rho^2) / (2 rho)
      out.gradient[static_cast<std::size_t>(i)] = g2.row(i).transpose() / (2.0 * out.radius);
    }
    return out;
  });
}

Point3 circumcenter(std::span<const Point3> vertices) {
  const auto k = static_cast<Eigen::Index>(vertices.size());
  if (k == 1) return vertices[0];
  // c = p0 + A^T y with (A A^T) y = |A_i|^2 / 2, rows of A being p_i - p0.
  Eigen::MatrixXd a(k - 1, 3);
  for (Eigen::Index i = 1; i < k; ++i) a.row(i - 1) = (vertices[i] - vertices[0]).transpose();
  const Eigen::MatrixXd gram = a * a.transpose();
  const Eigen::VectorXd rhs = 0.5 * a.rowwise().squaredNorm();
  const Eigen::VectorXd y = gram.ldlt().solve(rhs);
  return vertices[0] + a.transpose() * y;
}

std::vector<Point3> simplex_points(const Simplex& simplex, const Configuration& config) {
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(simplex.size()));
  for (int v : simplex.vertices()) pts.push_back(config.point(static_cast<std::size_t>(v)));
  return pts;
}

double half_distance(const Point3& a, const Point3& b) { return 0.5 * (a - b).norm(); }

RipsRadius rips_birth_radius(const Simplex& simplex, const Configuration& config) {
  RipsRadius out;
  out.attaching = simplex;
  if (simplex.size() == 1) return out;
  bool first = true;
  for (int i = 0; i < simplex.size(); ++i) {
    for (int j = i + 1; j < simplex.size(); ++j) {
      const double r = half_distance(config.point(static_cast<std::size_t>(simplex[i])),
                                     config.point(static_cast<std::size_t>(simplex[j])));
      if (first || r > out.radius) {
        out.radius = r;
        out.attaching = Simplex{simplex[i], simplex[j]};
        out.tie = false;
        first = false;
      } else if (r == out.radius) {
        out.tie = true;
      }
    }
  }
  return out;
}

}  // namespace pdcont
