#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdcont/geometry.hpp"
#include "pdcont/solver.hpp"

namespace pdcont {

/// A packaged continuation run: cloud, filtration settings and target.
struct ExampleRun {
  int number = 0;
  std::string title;
  std::vector<Point3> points;
  ContinuationOptions options;
  /// Explicit target, or empty when the target is an offset of one pair.
  Eigen::VectorXd target;
  /// Offset added to the birth and death of the pair with the largest
  /// persistence when `target` is empty.
  double offset = 0.0;
};

inline constexpr std::uint64_t kDefaultJitterSeed = 20240601;

/// Regular dodecahedron with circumradius sqrt(3).
std::vector<Point3> dodecahedron();
/// n points on the unit sphere along the Fibonacci spiral.
std::vector<Point3> fibonacci_sphere(std::size_t n);

/// Examples 1 to 6; throws InvalidArgument for other numbers.
ExampleRun example_run(int number, std::uint64_t jitter_seed = kDefaultJitterSeed);

/// The target of a run given the diagram of its starting cloud.
Eigen::VectorXd example_target(const ExampleRun& run, const PersistenceData& start);

/// The starting configuration of a run in the symmetry gauge.
Configuration example_configuration(const ExampleRun& run);

/// (longest - shortest) / shortest over all pairwise distances.
double edge_spread(const Configuration& config);

/// Infinity-norm distance between the target and the diagram of the final
/// cloud, recomputed from scratch and matched to the final layout.
double final_residual(const ContinuationTrace& trace, const Eigen::VectorXd& target,
                      const SolverOptions& options);

struct VerdictCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExampleVerdict {
  std::vector<VerdictCheck> checks;
  bool pass() const noexcept;
};

/// Checks a finished run against the expected outcome of its example:
/// reaching the target (1, 4, 5, 6), stopping at the boundary of the image
/// near a regular tetrahedron (2), or approaching the diagonal (3).
ExampleVerdict example_verdict(const ExampleRun& run, const ContinuationTrace& trace,
                               const Eigen::VectorXd& target);

}  // namespace pdcont
