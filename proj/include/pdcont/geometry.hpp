#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pdcont {

using Point3 = Eigen::Vector3d;

/// Relative threshold on the circumradius denominator determinants. A simplex
/// whose denominator falls below kDegeneracyThreshold * scale^power is rejected
/// as DegenerateSimplex.
inline constexpr double kDegeneracyThreshold = 1e-12;

/// Default absolute tolerance on radii when looking for general-position ties.
inline constexpr double kTieTolerance = 1e-9;

/// An abstract simplex: 1 to 4 strictly increasing vertex indices. Ordering is
/// lexicographic on the vertex tuple, which is also the filtration tie-break.
class Simplex {
 public:
  static constexpr int kMaxVertices = 4;

  Simplex() = default;
  Simplex(std::initializer_list<int> vertices);
  explicit Simplex(std::span<const int> vertices);

  int size() const noexcept { return size_; }
  int dim() const noexcept { return size_ - 1; }
  int operator[](int i) const noexcept { return v_[static_cast<std::size_t>(i)]; }
  std::span<const int> vertices() const noexcept {
    return {v_.data(), static_cast<std::size_t>(size_)};
  }

  /// The face obtained by removing the vertex at position k.
  Simplex face(int k) const;
  bool contains(int vertex) const noexcept;
  bool contains(const Simplex& face) const noexcept;

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;

 private:
  std::array<int, kMaxVertices> v_{-1, -1, -1, -1};
  int size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// An ordered point cloud in R^3 together with the symmetry gauge. With the
/// gauge active, point 0 sits at the origin, point 1 on the x axis and point 2
/// in the xy plane; only the remaining 3M-6 coordinates are free.
class Configuration {
 public:
  Configuration() = default;
  /// Throws GaugeViolation if `gauge` is set and a fixed coordinate is nonzero.
  Configuration(std::vector<Point3> points, bool gauge);

  const std::vector<Point3>& points() const noexcept { return points_; }
  const Point3& point(std::size_t i) const { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  bool gauge() const noexcept { return gauge_; }

  std::size_t free_dim() const noexcept;
  bool is_free(std::size_t point, int axis) const noexcept;
  /// Column of coordinate (point, axis) in the packed vector, or -1 if fixed.
  std::ptrdiff_t free_index(std::size_t point, int axis) const noexcept;

  /// Free coordinates in point order: x1, x2, y2, x3, y3, z3, ...
  Eigen::VectorXd pack() const;
  /// Same gauge, coordinates taken from a packed vector of length free_dim().
  Configuration unpack(const Eigen::VectorXd& packed) const;

  /// Diagonal of the axis-aligned bounding box.
  double scale() const;

 private:
  std::vector<Point3> points_;
  bool gauge_ = false;
};

/// Moves a cloud rigidly into the gauge frame (point 0 at the origin, point 1
/// on +x, point 2 in the upper xy half-plane) and returns it gauged.
Configuration to_gauge_frame(std::vector<Point3> points);

/// Uniform jitter of size `relative * scale` per coordinate, reproducible from
/// the seed.
std::vector<Point3> jitter(std::vector<Point3> points, std::uint64_t seed,
                           double relative = 1e-9);

/// Radius of the smallest sphere through 2, 3 or 4 affinely independent points,
/// evaluated with the determinant formulas in the coordinates (1, x, y, z, |u|^2).
double circumradius(std::span<const Point3> vertices);

struct CircumradiusGradient {
  double radius = 0.0;
  /// d(radius)/d(vertex k), one row per vertex.
  std::vector<Point3> gradient;
};

/// Radius and its gradient with respect to every vertex coordinate, obtained by
/// differentiating the determinant formulas through their cofactors.
CircumradiusGradient circumradius_gradient(std::span<const Point3> vertices);

/// Center of the smallest circumsphere (lies in the affine hull).
Point3 circumcenter(std::span<const Point3> vertices);

std::vector<Point3> simplex_points(const Simplex& simplex, const Configuration& config);

struct RipsRadius {
  double radius = 0.0;
  /// Longest edge; for a vertex, the vertex itself.
  Simplex attaching;
  /// Another edge of the simplex has the same length.
  bool tie = false;
};

/// Half the largest pairwise distance, with the edge attaining it. Among
/// exactly tied edges the lexicographically smallest one is returned.
RipsRadius rips_birth_radius(const Simplex& simplex, const Configuration& config);

/// Two-vertex convenience: half the Euclidean distance.
double half_distance(const Point3& a, const Point3& b);

}  // namespace pdcont
