#include "pdcont/examples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdcont/error.hpp"

namespace pdcont {

std::vector<Point3> dodecahedron() {
  const double phi = std::numbers::phi;
  const double inv = 1.0 / phi;
  std::vector<Point3> out;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) out.emplace_back(sx, sy, sz);
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      out.emplace_back(0, s1 * inv, s2 * phi);
      out.emplace_back(s1 * inv, s2 * phi, 0);
      out.emplace_back(s1 * phi, 0, s2 * inv);
    }
  }
  return out;
}

std::vector<Point3> fibonacci_sphere(std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Point3> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(1.0 - z * z);
    const double a = golden * static_cast<double>(i);
    out.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return out;
}

ExampleRun example_run(int number, std::uint64_t jitter_seed) {
  ExampleRun run;
  run.number = number;
  auto& o = run.options;
  o.kind = FiltrationKind::Alpha;
  o.dim = 2;
  switch (number) {
    case 1:
      run.title = "Deformation of a tetrahedron";
      run.points = {{0, 0, 0}, {8, 0, 0}, {5, 6, 0}, {4, 2, 6}};
      run.target = Eigen::Vector2d(8.42719, 8.89015);
      o.step = 0.01;
      break;
    case 2:
      run.title = "Image of the persistence map";
      run.points = {{0, 0, 0}, {8, 0, 0}, {5, 6, 0}, {4, 2, 6}};
      run.target = Eigen::Vector2d(6.42719, 7.09015);
      o.step = 0.001;
      o.adaptive = true;
      break;
    case 3:
      run.title = "Towards the diagonal";
      run.points = {{0, 0, 0}, {9.991, 0, 0}, {4.9955, 8.65246, 0}, {4.9955, 2.88415, 8.15762}};
      run.target = Eigen::Vector2d(5.94841, 5.94841);
      o.step = 0.001;
      break;
    case 4:
      run.title = "Continuation of D1";
      run.points = {{0, 0, 0}, {1, 0, 0}, {1.1, 1.2, 0}, {0.5, 0.6, 1.3}};
      run.target = Eigen::Vector4d(0.770801, 0.817236, 0.798346, 0.863075);
      o.dim = 1;
      o.step = 0.001;
      break;
    case 5:
      run.title = "Deformation of a dodecahedron";
      run.points = jitter(dodecahedron(), jitter_seed, 1e-9);
      run.offset = 0.5;
      o.epsilon = 1e-3;
      o.step = 0.01;
      break;
    case 6: {
      run.title = "Deformation of a sphere";
      auto pts = fibonacci_sphere(100);
      const double scale = Configuration(pts, false).scale();
      run.points = jitter(std::move(pts), jitter_seed, 1e-3 / scale);
      run.offset = 0.3;
      o.epsilon = 1e-5;
      o.step = 0.03;
      // Raising the death radius moves the whole sphere outwards, a few points
      // per iteration, so a step needs far more than the default iterations.
      // Small transient voids can appear mid-step; a shorter step avoids them.
      o.max_iter = 400;
      o.adaptive = true;
      break;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "examples are numbered 1 to 6, got " + std::to_string(number));
  }
  return run;
}

Configuration example_configuration(const ExampleRun& run) { return to_gauge_frame(run.points); }

Eigen::VectorXd example_target(const ExampleRun& run, const PersistenceData& start) {
  if (run.target.size() > 0) return run.target;
  Eigen::VectorXd v = start.vector();
  if (start.pairs.empty()) throw Error(ErrorCode::EmptyDiagram, "the starting diagram has no finite pairs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < start.pairs.size(); ++i) {
    if (start.pairs[i].persistence() > start.pairs[best].persistence()) best = i;
  }
  v[static_cast<Eigen::Index>(2 * best)] += run.offset;
  v[static_cast<Eigen::Index>(2 * best + 1)] += run.offset;
  return v;
}

double edge_spread(const Configuration& config) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      const double d = (config.point(i) - config.point(j)).norm();
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  return (hi - lo) / lo;
}

double final_residual(const ContinuationTrace& trace, const Eigen::VectorXd& target,
                      const SolverOptions& options) {
  auto data = evaluate(trace.final_config, options).data;
  follow_layout(data, trace.final_layout, target);
  return (data.vector() - target).lpNorm<Eigen::Infinity>();
}

bool ExampleVerdict::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const VerdictCheck& c) { return c.pass; });
}

namespace {

std::string describe(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

double median(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

ExampleVerdict example_verdict(const ExampleRun& run, const ContinuationTrace& trace,
                               const Eigen::VectorXd& target) {
  ExampleVerdict v;
  auto add = [&](std::string name, bool pass, std::string detail) {
    v.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const bool reached = trace.termination == Termination::ReachedTarget;
  double residual = std::numeric_limits<double>::infinity();
  if (reached) {
    try {
      residual = final_residual(trace, target, run.options);
    } catch (const Error&) {
    }
  }

  if (run.number == 2) {
    add("stops before the target", !reached && trace.failed_step > 0,
        reached ? "reached the target" : "failed at step " + std::to_string(trace.failed_step));
    // Step 0 only confirms the starting diagram.
    std::vector<int> iters;
    for (std::size_t k = 1; k < trace.steps.size(); ++k) iters.push_back(trace.steps[k].newton_iters);
    bool growth = iters.size() >= 20;
    double first = 0.0;
    int last_min = 0;
    if (growth) {
      first = median(std::vector<int>(iters.begin(), iters.begin() + 10));
      last_min = *std::min_element(iters.end() - 10, iters.end());
      growth = last_min > first;
    }
    add("Newton iterations grow", growth,
        "median of the first 10: " + describe(first) + ", least of the last 10: " + std::to_string(last_min));
    const double spread = edge_spread(trace.final_config);
    add("terminal edge spread < 1%", spread < 0.01, describe(spread));
    double ratio = 0.0;
    if (!trace.steps.empty() && trace.steps.back().v.size() == 2) {
      ratio = trace.steps.back().v[1] / trace.steps.back().v[0];
    }
    const double regular = 3.0 / (2.0 * std::sqrt(2.0));
    add("terminal d/b within 2% of 3/(2 sqrt 2)", std::abs(ratio / regular - 1.0) < 0.02, describe(ratio));
    return v;
  }

  add("reaches the target", reached,
      reached ? std::to_string(trace.steps.size() - 1) + " steps"
              : "failed at step " + std::to_string(trace.failed_step) + ": " + trace.reason);
  add("final residual <= 1e-8", residual <= 1e-8, describe(residual));
  if (run.number == 3) {
    double smallest = std::numeric_limits<double>::infinity();
    if (!trace.steps.empty() && trace.steps.back().singular_values.size() > 0) {
      smallest = trace.steps.back().singular_values.minCoeff();
    }
    add("final smallest singular value < 1e-2", smallest < 1e-2, describe(smallest));
    const std::size_t n = trace.steps.size();
    bool monotone = n >= 5;
    for (std::size_t k = n - n / 5; monotone && k < n; ++k) {
      monotone = trace.steps[k].singular_values.minCoeff() < trace.steps[k - 1].singular_values.minCoeff();
    }
    add("smallest singular value decreases over the last 20% of steps", monotone, "");
  } else {
    bool constant = true;
    for (const auto& s : trace.steps) constant = constant && s.pairs.size() == trace.steps.front().pairs.size();
    add("diagram size stays constant", constant, "");
  }
  return v;
}

}  // namespace pdcont
