#pragma once

#include <vector>

#include "pdcont/geometry.hpp"
#include "pdcont/persistence.hpp"

namespace pdcont {

/// Infinity-norm distance of a diagram point to the diagonal, (d - b) / 2.
double diagonal_distance(const DiagramPoint& p);

/// Bottleneck distance. Finite points may be matched to the diagonal;
/// points with infinite death are matched among themselves by birth.
/// Throws InfinityMismatch if the numbers of infinite points differ.
double bottleneck(const Diagram& a, const Diagram& b);

/// Hausdorff distance between two finite point clouds (Euclidean).
double hausdorff(const std::vector<Point3>& p, const std::vector<Point3>& q);

/// Smallest distance of a finite point of the diagram to the diagonal.
/// Throws EmptyDiagram if there is no finite point.
double diag_distance(const Diagram& d);

struct TriangleRatio {
  double birth = 0.0;
  double death = 0.0;
  double ratio = 0.0;
};

/// The single one-dimensional alpha pair of a triangle and its death/birth
/// ratio. Throws NotAcute unless all three angles are acute, DimensionMismatch
/// unless the configuration has exactly three points.
TriangleRatio triangle_ratio_check(const Configuration& config);

}  // namespace pdcont
