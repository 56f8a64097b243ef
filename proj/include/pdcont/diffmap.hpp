#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdcont/geometry.hpp"
#include "pdcont/persistence.hpp"

namespace pdcont {

enum class Coordinate { Birth, Death, Essential };

struct JacobianRow {
  /// Index into PersistenceData::pairs (or ::essentials for Essential rows).
  std::size_t item = 0;
  Coordinate role = Coordinate::Birth;
  /// The simplex whose radius function is differentiated.
  Simplex attaching;
  double radius = 0.0;
};

/// Derivative of the persistence vector with respect to the free coordinates.
struct PersistenceJacobian {
  Eigen::MatrixXd matrix;
  std::vector<JacobianRow> rows;
  /// Attaching radii that coincide within the tie tolerance; the derivative is
  /// taken from the simplex chosen by the filtration order.
  std::vector<std::string> warnings;
};

/// Gradient of the radius of `attaching` as a row over the free coordinates.
Eigen::RowVectorXd radius_gradient_row(const Configuration& config, const Simplex& attaching);

/// One row per coordinate of data.vector(with_essentials), in the same order.
PersistenceJacobian jacobian(const Configuration& config, const PersistenceData& data,
                             bool with_essentials = false, double tie_tolerance = kTieTolerance);

/// A scalar constraint g(u) = 0 with its gradient over the free coordinates.
struct Constraint {
  std::string name;
  std::function<double(const Configuration&)> value;
  std::function<Eigen::RowVectorXd(const Configuration&)> gradient;
};

/// mean_i p_i[axis] - target.
Constraint centroid_constraint(int axis, double target);
/// |p_i - p_j| - target.
Constraint distance_constraint(std::size_t i, std::size_t j, double target);

/// (f(u) - v, g_1(u), ..., g_r(u)) and its Jacobian stacked below Df.
struct ConstrainedSystem {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
};

/// Throws DimensionMismatch if the target length differs from the number of
/// Jacobian rows.
ConstrainedSystem constrained_system(const Configuration& config, const PersistenceData& data,
                                     const PersistenceJacobian& df, const Eigen::VectorXd& target,
                                     const std::vector<Constraint>& constraints,
                                     bool with_essentials = false);

/// Dense matrix as CSV, 17 significant digits.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix);

}  // namespace pdcont
