#include "pdcont/diffmap.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pdcont/error.hpp"

namespace pdcont {

namespace {

std::string describe(const Simplex& s) {
  std::ostringstream out;
  out << '{';
  for (int i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << '}';
  return out.str();
}

void check_ties(const PersistenceData& data, const JacobianRow& row, double tol,
                std::vector<std::string>& warnings) {
  if (row.attaching.size() < 2) return;
  for (const auto& fs : data.complex.simplices()) {
    if (fs.simplex.size() < 2 || fs.attaching != fs.simplex || fs.simplex == row.attaching) continue;
    if (std::abs(fs.radius - row.radius) <= tol) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "attaching simplices " << describe(row.attaching) << " and "
          << describe(fs.simplex) << " have radii " << row.radius << " and " << fs.radius
          << "; using " << describe(row.attaching);
      warnings.push_back(msg.str());
    }
  }
}

}  // namespace

Eigen::RowVectorXd radius_gradient_row(const Configuration& config, const Simplex& attaching) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(config.free_dim()));
  if (attaching.size() < 2) return row;
  const auto g = circumradius_gradient(simplex_points(attaching, config));
  for (int k = 0; k < attaching.size(); ++k) {
    const auto v = static_cast<std::size_t>(attaching[k]);
    for (int a = 0; a < 3; ++a) {
      const auto col = config.free_index(v, a);
      if (col >= 0) row[col] += g.gradient[static_cast<std::size_t>(k)][a];
    }
  }
  return row;
}

PersistenceJacobian jacobian(const Configuration& config, const PersistenceData& data,
                             bool with_essentials, double tie_tolerance) {
  PersistenceJacobian out;
  for (std::size_t i = 0; i < data.pairs.size(); ++i) {
    const auto& p = data.pairs[i];
    out.rows.push_back({i, Coordinate::Birth, p.birth_attaching, p.birth});
    out.rows.push_back({i, Coordinate::Death, p.death_attaching, p.death});
  }
  if (with_essentials) {
    for (std::size_t i = 0; i < data.essentials.size(); ++i) {
      const auto& e = data.essentials[i];
      out.rows.push_back({i, Coordinate::Essential, e.attaching, e.birth});
    }
  }
  out.matrix.resize(static_cast<Eigen::Index>(out.rows.size()),
                    static_cast<Eigen::Index>(config.free_dim()));
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    out.matrix.row(static_cast<Eigen::Index>(r)) = radius_gradient_row(config, out.rows[r].attaching);
    check_ties(data, out.rows[r], tie_tolerance, out.warnings);
  }
  return out;
}

Constraint centroid_constraint(int axis, double target) {
  if (axis < 0 || axis > 2) throw Error(ErrorCode::InvalidArgument, "axis must be 0, 1 or 2");
  Constraint c;
  c.name = "centroid_" + std::string(1, "xyz"[axis]);
  c.value = [axis, target](const Configuration& config) {
    double sum = 0.0;
    for (const auto& p : config.points()) sum += p[axis];
    return sum / static_cast<double>(config.size()) - target;
  };
  c.gradient = [axis](const Configuration& config) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(config.free_dim()));
    for (std::size_t i = 0; i < config.size(); ++i) {
      const auto col = config.free_index(i, axis);
      if (col >= 0) row[col] = 1.0 / static_cast<double>(config.size());
    }
    return row;
  };
  return c;
}

Constraint distance_constraint(std::size_t i, std::size_t j, double target) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "distance constraint needs two distinct points");
  Constraint c;
  c.name = "distance_" + std::to_string(i) + "_" + std::to_string(j);
  c.value = [i, j, target](const Configuration& config) {
    return (config.point(i) - config.point(j)).norm() - target;
  };
  c.gradient = [i, j](const Configuration& config) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(config.free_dim()));
    const Point3 d = config.point(i) - config.point(j);
    const Point3 unit = d / d.norm();
    for (int a = 0; a < 3; ++a) {
      if (const auto col = config.free_index(i, a); col >= 0) row[col] += unit[a];
      if (const auto col = config.free_index(j, a); col >= 0) row[col] -= unit[a];
    }
    return row;
  };
  return c;
}

ConstrainedSystem constrained_system(const Configuration& config, const PersistenceData& data,
                                     const PersistenceJacobian& df, const Eigen::VectorXd& target,
                                     const std::vector<Constraint>& constraints,
                                     bool with_essentials) {
  const Eigen::VectorXd v = data.vector(with_essentials);
  if (v.size() != target.size() || v.size() != df.matrix.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "target has " + std::to_string(target.size()) + " coordinates, the diagram has " +
                    std::to_string(v.size()));
  }
  const auto m = v.size();
  const auto r = static_cast<Eigen::Index>(constraints.size());
  ConstrainedSystem out;
  out.residual.resize(m + r);
  out.jacobian.resize(m + r, df.matrix.cols());
  out.residual.head(m) = v - target;
  out.jacobian.topRows(m) = df.matrix;
  for (Eigen::Index k = 0; k < r; ++k) {
    const auto& c = constraints[static_cast<std::size_t>(k)];
    out.residual[m + k] = c.value(config);
    const Eigen::RowVectorXd g = c.gradient(config);
    if (g.size() != df.matrix.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "constraint " + c.name + " has a gradient of the wrong length");
    }
    out.jacobian.row(m + k) = g;
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) out << (j ? "," : "") << matrix(i, j);
    out << '\n';
  }
}

}  // namespace pdcont
