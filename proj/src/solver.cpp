#include "pdcont/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "pdcont/linalg.hpp"

namespace pdcont {

namespace {

constexpr std::size_t kMaxAssignment = 8;
constexpr double kAmbiguity = 1e-12;
constexpr std::size_t kHistory = 64;

double linf(const PersistencePair& p, const Eigen::VectorXd& v, std::size_t slot) {
  const auto k = static_cast<Eigen::Index>(2 * slot);
  return std::max(std::abs(p.birth - v[k]), std::abs(p.death - v[k + 1]));
}

/// Remembers which simplices each coordinate has been attached to during the
/// current solve, most recent last.
void record_attaching(const PersistenceJacobian& df, std::vector<std::vector<Simplex>>& history) {
  for (std::size_t r = 0; r < df.rows.size() && r < history.size(); ++r) {
    auto& h = history[r];
    const Simplex& s = df.rows[r].attaching;
    h.erase(std::remove(h.begin(), h.end(), s), h.end());
    h.push_back(s);
    if (h.size() > kHistory) h.erase(h.begin());
  }
}

/// A coordinate whose attaching simplex alternates sits on a kink of the
/// radius function: the coordinate is the larger of several radii that all
/// want the same value. Newton steps that only move the current maximum
/// converge linearly there, so the earlier simplices are asked to reach the
/// same target as well.
ConstrainedSystem with_alternates(const Configuration& config, const PersistenceData& data,
                                  const PersistenceJacobian& df, const Eigen::VectorXd& target,
                                  const ConstrainedSystem& system,
                                  const std::vector<std::vector<Simplex>>& history) {
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> values;
  for (std::size_t r = 0; r < df.rows.size() && r < history.size(); ++r) {
    for (const auto& s : history[r]) {
      if (s == df.rows[r].attaching || s.size() < 2) continue;
      const auto idx = data.complex.index_of(s);
      if (!idx || data.complex[*idx].attaching != s) continue;
      const auto g = circumradius_gradient(simplex_points(s, config));
      rows.push_back(radius_gradient_row(config, s));
      values.push_back(g.radius - target[static_cast<Eigen::Index>(r)]);
    }
  }
  if (rows.empty()) return system;
  ConstrainedSystem out;
  const auto m = system.residual.size(), extra = static_cast<Eigen::Index>(rows.size());
  out.residual.resize(m + extra);
  out.jacobian.resize(m + extra, system.jacobian.cols());
  out.residual.head(m) = system.residual;
  out.jacobian.topRows(m) = system.jacobian;
  for (Eigen::Index k = 0; k < extra; ++k) {
    out.residual[m + k] = values[static_cast<std::size_t>(k)];
    out.jacobian.row(m + k) = rows[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace

Layout layout_of(const PersistenceData& data) {
  Layout out;
  for (const auto& p : data.pairs) out.push_back({p.birth_simplex, p.death_simplex});
  return out;
}

void follow_layout(PersistenceData& data, const Layout& previous, const Eigen::VectorXd& previous_v) {
  const std::size_t s = previous.size();
  if (data.pairs.size() != s) {
    throw Error(ErrorCode::DiagramCardinalityChanged,
                "the diagram has " + std::to_string(data.pairs.size()) + " pairs, expected " +
                    std::to_string(s));
  }
  std::vector<std::ptrdiff_t> slot_of(s, -1);
  std::vector<char> used(s, 0);
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t i = 0; i < s; ++i) {
      if (!used[i] && data.pairs[i].birth_simplex == previous[k].birth &&
          data.pairs[i].death_simplex == previous[k].death) {
        slot_of[k] = static_cast<std::ptrdiff_t>(i);
        used[i] = 1;
        break;
      }
    }
  }
  std::vector<std::size_t> open_slots, free_pairs;
  for (std::size_t k = 0; k < s; ++k) {
    if (slot_of[k] < 0) open_slots.push_back(k);
    if (!used[k]) free_pairs.push_back(k);
  }
  if (!open_slots.empty()) {
    if (open_slots.size() > kMaxAssignment) {
      throw Error(ErrorCode::AmbiguousMatching,
                  std::to_string(open_slots.size()) + " pairs changed their generating simplices at once");
    }
    std::vector<std::size_t> perm(free_pairs.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity(), second = best;
    std::vector<std::size_t> best_perm;
    do {
      double cost = 0.0;
      for (std::size_t a = 0; a < open_slots.size(); ++a) {
        cost += linf(data.pairs[free_pairs[perm[a]]], previous_v, open_slots[a]);
      }
      if (cost < best) {
        second = best;
        best = cost;
        best_perm = perm;
      } else if (cost < second) {
        second = cost;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (second - best <= kAmbiguity) {
      throw Error(ErrorCode::AmbiguousMatching,
                  "two assignments of the diagram points to the previous layout cost the same");
    }
    for (std::size_t a = 0; a < open_slots.size(); ++a) {
      slot_of[open_slots[a]] = static_cast<std::ptrdiff_t>(free_pairs[best_perm[a]]);
    }
  }
  std::vector<PersistencePair> ordered;
  ordered.reserve(s);
  for (std::size_t k = 0; k < s; ++k) ordered.push_back(data.pairs[static_cast<std::size_t>(slot_of[k])]);
  data.pairs = std::move(ordered);
}

Evaluation evaluate(const Configuration& config, const SolverOptions& options) {
  Evaluation ev;
  FilteredComplex fc;
  if (options.kind == FiltrationKind::Alpha) {
    ev.delaunay = delaunay3(config);
    fc = build_alpha(config, *ev.delaunay);
  } else {
    fc = build_rips(config, options.dim + 1);
  }
  ev.data = persistence_data(reduce(boundary_matrix(fc)), fc, options.dim, options.epsilon);
  return ev;
}

std::string_view to_string(NewtonStatus status) noexcept {
  switch (status) {
    case NewtonStatus::Converged: return "Converged";
    case NewtonStatus::MaxIterations: return "MaxIterations";
    case NewtonStatus::Diverged: return "Diverged";
    case NewtonStatus::SingularJacobian: return "SingularJacobian";
    case NewtonStatus::CardinalityChanged: return "DiagramCardinalityChanged";
    case NewtonStatus::Failed: return "Failed";
  }
  return "Failed";
}

NewtonResult newton_pinv(const Configuration& start, const Layout& layout, const Eigen::VectorXd& target,
                         const SolverOptions& options) {
  if (target.size() != static_cast<Eigen::Index>(2 * layout.size())) {
    throw Error(ErrorCode::DimensionMismatch,
                "target has " + std::to_string(target.size()) + " coordinates, the layout has " +
                    std::to_string(2 * layout.size()));
  }
  NewtonResult out;
  out.config = start;
  out.layout = layout;
  auto& report = out.report;
  std::optional<DelaunayComplex> previous_complex;
  Eigen::VectorXd reference = target;
  double previous_residual = std::numeric_limits<double>::infinity();
  int increases = 0;
  std::vector<std::vector<Simplex>> history(2 * layout.size());

  for (int it = 0;; ++it) {
    Evaluation ev;
    try {
      ev = evaluate(out.config, options);
      follow_layout(ev.data, out.layout, reference);
    } catch (const Error& e) {
      report.status = e.code() == ErrorCode::DiagramCardinalityChanged ? NewtonStatus::CardinalityChanged
                                                                       : NewtonStatus::Failed;
      report.message = e.what();
      return out;
    }
    if (ev.delaunay && previous_complex && !(*ev.delaunay == *previous_complex)) {
      ++report.delaunay_changes;
      report.warnings.push_back("Delaunay complex changed at iteration " + std::to_string(it));
    }
    previous_complex = std::move(ev.delaunay);
    out.data = std::move(ev.data);
    out.layout = layout_of(out.data);
    reference = out.data.vector();

    const auto df = jacobian(out.config, out.data);
    for (auto& w : df.warnings) report.warnings.push_back(std::move(w));
    const auto system = constrained_system(out.config, out.data, df, target, options.constraints);
    report.residual = system.residual.size() ? system.residual.lpNorm<Eigen::Infinity>() : 0.0;
    report.iterations = it;
    record_attaching(df, history);
    const auto augmented = with_alternates(out.config, out.data, df, target, system, history);
    const auto solution = pinv_apply(augmented.jacobian, augmented.residual, options.sigma_cutoff);
    report.singular_values = solution.sigma;
    report.rank_deficient = solution.rank_deficient;

    if (report.residual <= options.tol) {
      report.status = NewtonStatus::Converged;
      return out;
    }
    if (it >= options.max_iter) {
      report.status = NewtonStatus::MaxIterations;
      report.message = "no convergence after " + std::to_string(it) + " iterations";
      return out;
    }
    increases = report.residual > previous_residual ? increases + 1 : 0;
    previous_residual = report.residual;
    if (increases >= options.divergence_window) {
      report.status = NewtonStatus::Diverged;
      report.message = "the residual grew " + std::to_string(increases) + " times in a row";
      return out;
    }
    const double smallest = solution.sigma.size() ? solution.sigma.minCoeff() : 0.0;
    if (smallest < options.singular_floor) {
      report.status = NewtonStatus::SingularJacobian;
      std::ostringstream msg;
      msg << "smallest singular value " << smallest << " is below " << options.singular_floor;
      report.message = msg.str();
      return out;
    }
    if (smallest < options.singular_warning) {
      std::ostringstream msg;
      msg << "smallest singular value " << smallest << " at iteration " << it;
      report.warnings.push_back(msg.str());
    }
    out.config = out.config.unpack(out.config.pack() - solution.x);
  }
}

namespace {

ContinuationStep make_step(int k, double t, const Eigen::VectorXd& v_target, const NewtonResult& r) {
  ContinuationStep step;
  step.k = k;
  step.t = t;
  step.v_target = v_target;
  step.u = r.config.pack();
  step.v = r.data.vector();
  for (const auto& p : r.data.pairs) step.pairs.push_back({p.birth, p.death});
  step.singular_values = r.report.singular_values;
  step.newton_iters = r.report.iterations;
  step.residual = r.report.residual;
  for (const auto& fs : r.data.complex.simplices()) {
    if (fs.simplex.size() > 1 && fs.attaching == fs.simplex) step.attaching_radii.push_back(fs.radius);
  }
  std::sort(step.attaching_radii.begin(), step.attaching_radii.end());
  return step;
}

}  // namespace

ContinuationTrace continue_cloud(const Configuration& start, const Eigen::VectorXd& target,
                                 const ContinuationOptions& options,
                                 const std::function<void(const ContinuationStep&)>& on_step) {
  ContinuationTrace trace;
  const auto initial = evaluate(start, options);
  const Eigen::VectorXd v_start = initial.data.vector();
  if (v_start.size() != target.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "target has " + std::to_string(target.size()) + " coordinates, the diagram has " +
                    std::to_string(v_start.size()));
  }
  const Eigen::VectorXd delta = target - v_start;
  int n = options.steps;
  if (n <= 0) {
    if (!(options.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
    n = std::max(1, static_cast<int>(std::ceil(delta.norm() / options.step - 1e-12)));
  }

  // Step 0 solves for the starting diagram itself, which also checks the layout.
  auto current = newton_pinv(start, layout_of(initial.data), v_start, options);
  if (current.report.status != NewtonStatus::Converged) {
    trace.failed_step = 0;
    trace.failure = current.report.status;
    trace.reason = current.report.message;
    trace.final_config = start;
    return trace;
  }
  trace.steps.push_back(make_step(0, 0.0, v_start, current));
  if (on_step) on_step(trace.steps.back());

  double t = 0.0;
  double h = 1.0 / n;
  int halvings = 0;
  int k = 0;
  while (t < 1.0) {
    double t_next = options.adaptive ? t + h : static_cast<double>(k + 1) / n;
    if (t_next > 1.0 - 1e-12) t_next = 1.0;
    const Eigen::VectorXd v_k = v_start + t_next * delta;
    auto next = newton_pinv(current.config, current.layout, v_k, options);
    for (const auto& w : next.report.warnings) trace.log.push_back("step " + std::to_string(k + 1) + ": " + w);
    if (next.report.status == NewtonStatus::Converged) {
      ++k;
      t = t_next;
      current = std::move(next);
      trace.steps.push_back(make_step(k, t, v_k, current));
      if (on_step) on_step(trace.steps.back());
      continue;
    }
    if (options.adaptive && halvings < options.max_halvings) {
      ++halvings;
      h /= 2.0;
      trace.log.push_back("step " + std::to_string(k + 1) + ": " + std::string(to_string(next.report.status)) +
                          ", halving the increment");
      continue;
    }
    trace.failed_step = k + 1;
    trace.failure = next.report.status;
    trace.reason = next.report.message;
    break;
  }
  if (trace.failed_step < 0) trace.termination = Termination::ReachedTarget;
  trace.final_config = current.config;
  trace.final_layout = current.layout;
  return trace;
}

}  // namespace pdcont
