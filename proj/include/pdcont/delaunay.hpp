#pragma once

#include <array>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "pdcont/geometry.hpp"

namespace pdcont {

/// The Delaunay triangulation of a point cloud as an abstract simplicial
/// complex, closed under faces.
class DelaunayComplex {
 public:
  DelaunayComplex() = default;

  /// Builds the complex from its top-dimensional simplices (all faces are
  /// added). `points` is the number of input points.
  DelaunayComplex(std::size_t points, std::vector<Simplex> top);

  std::size_t point_count() const noexcept { return point_count_; }
  /// Simplices of one dimension (0..3), sorted lexicographically.
  const std::vector<Simplex>& simplices(int dim) const { return by_dim_.at(dim); }
  /// All simplices ordered by dimension, then lexicographically.
  std::vector<Simplex> all_simplices() const;
  /// Tetrahedra (empty when the input spans fewer than three dimensions).
  const std::vector<Simplex>& tetrahedra() const { return by_dim_[3]; }
  std::size_t size() const noexcept;
  int dim() const noexcept;

  bool contains(const Simplex& simplex) const;
  /// Simplices of one dimension higher that contain `simplex`.
  const std::vector<Simplex>& cofacets(const Simplex& simplex) const;

  bool operator==(const DelaunayComplex& other) const { return by_dim_ == other.by_dim_; }

 private:
  std::size_t point_count_ = 0;
  std::array<std::vector<Simplex>, 4> by_dim_;
  std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash> cofacets_;
};

/// Delaunay triangulation by incremental insertion with exact predicates.
///
/// Clouds of 1 to 3 points yield a vertex, an edge or a triangle. From four
/// points on the cloud must span R^3.
///
/// Throws DegenerateInput for coincident points, collinear triangles or
/// coplanar clouds, and GeneralPositionViolation when five points are
/// cospherical on an empty sphere so that the triangulation is not unique.
DelaunayComplex delaunay3(const Configuration& config);

/// True iff the smallest circumsphere of `simplex` has no point of the cloud
/// strictly inside. Exact.
bool is_attaching(const Simplex& simplex, const Configuration& config);

/// Same, restricted to a complex the simplex must belong to (throws
/// InvalidArgument otherwise).
bool is_attaching(const Simplex& simplex, const Configuration& config,
                  const DelaunayComplex& complex);

/// Writes an OFF-like listing: a header line "TETS <points> <tetrahedra>",
/// one "x y z" line per point and one "4 i j k l" line per tetrahedron.
void write_off(std::ostream& out, const Configuration& config, const DelaunayComplex& complex);

}  // namespace pdcont
