#pragma once

#include <string>
#include <vector>

#include "pdcont/filtration.hpp"

namespace pdcont {

struct GeneralPositionIssue {
  enum class Type { CoincidentPoints, Cospherical, EqualRadii };
  Type type;
  /// The offending simplices (two for EqualRadii, one point set otherwise).
  std::vector<Simplex> simplices;
  std::vector<double> radii;
  std::string message;
};

struct GeneralPositionReport {
  FiltrationKind kind = FiltrationKind::Alpha;
  double tolerance = kTieTolerance;
  std::vector<GeneralPositionIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
};

/// Checks the non-degeneracy conditions behind the smoothness of the radius
/// map. Vietoris-Rips: distinct points, and distinct lengths (within
/// `tolerance` on radii) among the edges that attain the maximum of a simplex
/// of dimension >= 2. Alpha: no point on the smallest circumsphere of a
/// Delaunay simplex it does not belong to, and distinct radii among attaching
/// simplices of dimension >= 1. Never throws on degenerate input; the problem
/// is reported instead.
GeneralPositionReport check_general_position(const Configuration& config, FiltrationKind kind,
                                             double tolerance = kTieTolerance, int max_dim = 3);

}  // namespace pdcont
