#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdcont/diffmap.hpp"
#include "pdcont/error.hpp"
#include "pdcont/filtration.hpp"
#include "pdcont/persistence.hpp"

namespace pdcont {

struct SolverOptions {
  FiltrationKind kind = FiltrationKind::Alpha;
  int dim = 2;
  double epsilon = 0.0;
  /// Infinity norm of the residual that counts as converged.
  double tol = 1e-10;
  int max_iter = 50;
  /// Singular values below sigma_cutoff * sigma_1 are treated as zero.
  double sigma_cutoff = 1e-12;
  /// Smallest singular value below which the iteration stops.
  double singular_floor = 1e-12;
  /// Smallest singular value below which a warning is logged.
  double singular_warning = 1e-8;
  /// Consecutive residual increases that count as divergence.
  int divergence_window = 5;
  std::vector<Constraint> constraints;
};

/// Identity of a diagram point: the simplices whose pairing created it.
struct PairKey {
  Simplex birth;
  Simplex death;
  bool operator==(const PairKey&) const = default;
};

/// Layout of the persistence vector: which pair occupies each slot.
using Layout = std::vector<PairKey>;

Layout layout_of(const PersistenceData& data);

/// Reorders data.pairs so that slot k continues slot k of the previous layout.
/// Pairs are matched by key first; the rest by the assignment of least total
/// infinity-norm distance to the previous coordinates. Throws
/// DiagramCardinalityChanged if the number of pairs differs and
/// AmbiguousMatching if two assignments cost the same within 1e-12.
void follow_layout(PersistenceData& data, const Layout& previous, const Eigen::VectorXd& previous_v);

/// Persistence data of one configuration plus the Delaunay complex it used
/// (empty for Rips).
struct Evaluation {
  PersistenceData data;
  std::optional<DelaunayComplex> delaunay;
};

Evaluation evaluate(const Configuration& config, const SolverOptions& options);

enum class NewtonStatus { Converged, MaxIterations, Diverged, SingularJacobian, CardinalityChanged, Failed };

std::string_view to_string(NewtonStatus status) noexcept;

struct NewtonReport {
  NewtonStatus status = NewtonStatus::Failed;
  int iterations = 0;
  double residual = 0.0;
  /// Singular values of the last Jacobian.
  Eigen::VectorXd singular_values;
  bool rank_deficient = false;
  /// Number of iterations at which the Delaunay complex changed.
  int delaunay_changes = 0;
  std::string message;
  std::vector<std::string> warnings;
};

struct NewtonResult {
  Configuration config;
  /// Diagram at config, laid out like the input.
  PersistenceData data;
  Layout layout;
  NewtonReport report;
};

/// Pseudo-inverse Newton iteration u <- u - A^+ F(u) towards f(u) = target,
/// recomputing the filtration, pairing and Jacobian at every iterate. The
/// layout fixes which pair each coordinate of the target refers to.
NewtonResult newton_pinv(const Configuration& start, const Layout& layout, const Eigen::VectorXd& target,
                         const SolverOptions& options);

struct ContinuationOptions : SolverOptions {
  /// Length of each target increment.
  double step = 0.01;
  /// Number of increments; overrides step when positive.
  int steps = 0;
  /// Halve the increment after a failed solve, at most max_halvings times.
  bool adaptive = false;
  int max_halvings = 6;
};

struct ContinuationStep {
  int k = 0;
  /// Position of the target along the path, from 0 to 1.
  double t = 0.0;
  Eigen::VectorXd v_target;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  std::vector<DiagramPoint> pairs;
  Eigen::VectorXd singular_values;
  int newton_iters = 0;
  double residual = 0.0;
  /// Radii of every attaching simplex of positive dimension, sorted.
  std::vector<double> attaching_radii;
};

enum class Termination { ReachedTarget, FailedAtStep };

struct ContinuationTrace {
  std::vector<ContinuationStep> steps;
  Termination termination = Termination::FailedAtStep;
  /// Index of the step that could not be solved.
  int failed_step = -1;
  NewtonStatus failure = NewtonStatus::Converged;
  std::string reason;
  Configuration final_config;
  Layout final_layout;
  std::vector<std::string> log;
};

/// Continuation from the diagram of `start` to `target` along the straight
/// segment, each solve seeded with the previous solution. `on_step` is called
/// after every accepted step.
ContinuationTrace continue_cloud(const Configuration& start, const Eigen::VectorXd& target,
                                 const ContinuationOptions& options,
                                 const std::function<void(const ContinuationStep&)>& on_step = {});

}  // namespace pdcont
