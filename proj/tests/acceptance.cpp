// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pdcont/diffmap.hpp"
#include "pdcont/error.hpp"
#include "pdcont/examples.hpp"
#include "pdcont/general_position.hpp"
#include "pdcont/linalg.hpp"
#include "pdcont/metrics.hpp"
#include "pdcont/solver.hpp"

using namespace pdcont;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << ']';
    }
  }
};

int failures = 0;

void report(int number, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << ']';
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %s:%s\n", out.pass ? "PASS" : "FAIL", number, title.c_str(), out.detail.str().c_str());
  std::fflush(stdout);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Runs a packaged example end to end.
struct ExampleOutcome {
  ExampleRun run;
  Eigen::VectorXd target;
  ContinuationTrace trace;
  double seconds = 0.0;
};

ExampleOutcome run_example(int n) {
  ExampleOutcome out;
  out.run = example_run(n);
  const auto t0 = Clock::now();
  const auto config = example_configuration(out.run);
  const auto start = evaluate(config, out.run.options).data;
  out.target = example_target(out.run, start);
  out.trace = continue_cloud(config, out.target, out.run.options);
  out.seconds = seconds_since(t0);
  return out;
}

void describe_verdict(Outcome& o, const ExampleOutcome& ex) {
  const auto verdict = example_verdict(ex.run, ex.trace, ex.target);
  for (const auto& c : verdict.checks) {
    o.require(c.pass, "example " + std::to_string(ex.run.number) + ": " + c.name +
                          (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
}

/// Central differences of the persistence map itself: the diagram is
/// recomputed at each shifted cloud and its pairs matched to the base layout.
Eigen::MatrixXd finite_difference_jacobian(const Configuration& c, const PersistenceData& base,
                                           const SolverOptions& o, double h) {
  const Eigen::VectorXd u = c.pack();
  const Layout layout = layout_of(base);
  const Eigen::VectorXd v = base.vector();
  Eigen::MatrixXd fd(v.size(), u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    Eigen::VectorXd up = u, um = u;
    up[j] += h;
    um[j] -= h;
    auto dp = evaluate(c.unpack(up), o).data;
    auto dm = evaluate(c.unpack(um), o).data;
    follow_layout(dp, layout, v);
    follow_layout(dm, layout, v);
    fd.col(j) = (dp.vector() - dm.vector()) / (2.0 * h);
  }
  return fd;
}

Eigen::MatrixXd random_matrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  return a;
}

}  // namespace

int main() {
  report(1, "tetrahedron diagram", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto d = diagram(example_configuration(example_run(1)), FiltrationKind::Alpha, 2);
    const double secs = seconds_since(t0);
    o.require(d.pairs.size() == 1, "one pair");
    if (d.pairs.size() == 1) {
      o.detail << " (" << format9(d.pairs[0].birth) << ", " << format9(d.pairs[0].death) << ")";
      o.require(near(d.pairs[0].birth, 4.42719, 5e-5) && near(d.pairs[0].death, 4.59015, 5e-5),
                "values within 5e-5");
    }
    o.detail << " in " << secs << " s";
    o.require(secs < 1.0, "runtime < 1 s");
  });

  report(2, "near-regular tetrahedron and one-dimensional diagrams", [](Outcome& o) {
    auto t0 = Clock::now();
    const auto d3 = diagram(example_configuration(example_run(3)), FiltrationKind::Alpha, 2);
    const double s3 = seconds_since(t0);
    t0 = Clock::now();
    const auto d4 = diagram(example_configuration(example_run(4)), FiltrationKind::Alpha, 1);
    const double s4 = seconds_since(t0);
    o.require(d3.pairs.size() == 1, "one two-dimensional pair");
    if (d3.pairs.size() == 1) {
      o.detail << " D2 (" << format9(d3.pairs[0].birth) << ", " << format9(d3.pairs[0].death) << ")";
      o.require(near(d3.pairs[0].birth, 5.76831, 5e-5) && near(d3.pairs[0].death, 6.11821, 5e-5),
                "D2 within 5e-5");
    }
    o.require(d4.pairs.size() == 2, "two one-dimensional pairs");
    if (d4.pairs.size() == 2) {
      const std::array<double, 4> expected{0.758288, 0.803195, 0.776209, 0.834393};
      o.detail << " D1";
      for (std::size_t k = 0; k < 2; ++k) {
        o.detail << " (" << format9(d4.pairs[k].birth) << ", " << format9(d4.pairs[k].death) << ")";
        o.require(near(d4.pairs[k].birth, expected[2 * k], 5e-5) && near(d4.pairs[k].death, expected[2 * k + 1], 5e-5),
                  "D1 pair " + std::to_string(k) + " within 5e-5");
      }
    }
    o.detail << " in " << s3 << " s and " << s4 << " s";
    o.require(s3 < 1.0 && s4 < 1.0, "runtime < 1 s each");
  });

  report(3, "continuation reaches the target (examples 1, 4, 5, 6)", [](Outcome& o) {
    for (int n : {1, 4, 5, 6}) {
      const auto ex = run_example(n);
      const bool reached = ex.trace.termination == Termination::ReachedTarget;
      const double residual = reached ? final_residual(ex.trace, ex.target, ex.run.options) : INFINITY;
      o.detail << " #" << n << ": " << (reached ? "reached" : "failed") << ", residual " << residual << ", "
               << ex.seconds << " s;";
      o.require(reached, "example " + std::to_string(n) + " reaches the target");
      o.require(residual <= 1e-8, "example " + std::to_string(n) + " residual <= 1e-8");
      const double limit = n == 1 || n == 4 ? 10.0 : 600.0;
      o.require(ex.seconds < limit, "example " + std::to_string(n) + " runtime");
    }
  });

  report(4, "continuation stops at the boundary of the image (example 2)", [](Outcome& o) {
    const auto ex = run_example(2);
    o.detail << " stopped at step " << ex.trace.failed_step << " after " << ex.seconds << " s, edge spread "
             << edge_spread(ex.trace.final_config);
    if (!ex.trace.steps.empty()) o.detail << ", d/b " << ex.trace.steps.back().v[1] / ex.trace.steps.back().v[0];
    describe_verdict(o, ex);
  });

  report(5, "continuation towards the diagonal (example 3)", [](Outcome& o) {
    const auto ex = run_example(3);
    if (!ex.trace.steps.empty()) {
      o.detail << " final smallest singular value " << ex.trace.steps.back().singular_values.minCoeff();
    }
    describe_verdict(o, ex);
  });

  report(6, "Jacobian against finite differences", [](Outcome& o) {
    Rng rng(606);
    int clouds = 0, attempts = 0;
    double worst = 0.0;
    while (clouds < 50 && attempts < 500) {
      ++attempts;
      const auto m = static_cast<std::size_t>(rng.integer(4, 10));
      const auto c = to_gauge_frame(oracle::random_points(rng, m));
      if (!check_general_position(c, FiltrationKind::Alpha).ok() ||
          !check_general_position(c, FiltrationKind::Rips).ok()) {
        continue;
      }
      for (auto kind : {FiltrationKind::Alpha, FiltrationKind::Rips}) {
        for (int dim = 0; dim <= 2; ++dim) {
          SolverOptions so;
          so.kind = kind;
          so.dim = dim;
          const auto data = evaluate(c, so).data;
          if (data.pairs.empty()) continue;
          const auto df = jacobian(c, data).matrix;
          const auto fd = finite_difference_jacobian(c, data, so, 1e-6);
          worst = std::max(worst, (df - fd).cwiseAbs().maxCoeff() / df.cwiseAbs().maxCoeff());
        }
      }
      ++clouds;
    }
    o.detail << " " << clouds << " clouds, largest relative error " << worst;
    o.require(clouds == 50, "50 general-position clouds");
    o.require(worst <= 1e-6, "relative error <= 1e-6");
  });

  report(7, "planar four-point Rips closed form", [](Outcome& o) {
    Rng rng(707);
    int found = 0;
    double worst = 0.0;
    while (found < 20) {
      std::vector<Point3> pts;
      for (int i = 0; i < 4; ++i) pts.emplace_back(rng.uniform(), rng.uniform(), 0.0);
      // Label the points A, B, C, D so that the sides AB, BC, CD are the
      // shortest distances and AD < BD < AC.
      std::array<std::size_t, 4> l{0, 1, 2, 3};
      bool ok = false;
      do {
        const auto d = [&](int i, int j) { return (pts[l[static_cast<std::size_t>(i)]] - pts[l[static_cast<std::size_t>(j)]]).norm(); };
        ok = std::max({d(0, 1), d(1, 2), d(2, 3)}) < d(0, 3) && d(0, 3) < d(1, 3) && d(1, 3) < d(0, 2);
      } while (!ok && std::next_permutation(l.begin(), l.end()));
      if (!ok) continue;
      std::vector<Point3> abcd;
      for (std::size_t i : l) abcd.push_back(pts[i]);
      const Configuration c(abcd, false);
      const auto pd = diagram(c, FiltrationKind::Rips, 1);
      if (pd.pairs.size() != 1) {
        o.require(false, "a single one-dimensional pair");
        return;
      }
      const double cos_theta = (abcd[0] - abcd[3]).normalized().dot((abcd[1] - abcd[3]).normalized());
      // Diameter convention: birth and death are the lengths AD and BD.
      const Eigen::MatrixXd df = 2.0 * jacobian(c, pd).matrix;
      const Eigen::Matrix2d g = df * df.transpose();
      const auto s = singular_values(df);
      const double c_abs = std::abs(cos_theta);
      worst = std::max({worst, std::abs(g(0, 0) - 2.0), std::abs(g(1, 1) - 2.0), std::abs(g(0, 1) - cos_theta),
                        std::abs(g(1, 0) - cos_theta), std::abs(s[0] - std::sqrt(2.0 + c_abs)),
                        std::abs(s[1] - std::sqrt(2.0 - c_abs))});
      ++found;
    }
    o.detail << " " << found << " clouds, largest deviation " << worst;
    o.require(worst <= 1e-10, "deviation <= 1e-10");
  });

  report(8, "stability of alpha diagrams", [](Outcome& o) {
    Rng rng(808);
    double margin = -INFINITY, coord_gap = -INFINITY;
    for (int trial = 0; trial < 200; ++trial) {
      const auto m = static_cast<std::size_t>(rng.integer(4, 12));
      const auto p = oracle::random_points(rng, m);
      auto q = p;
      const double size = std::pow(10.0, rng.uniform(-4.0, -1.0));
      for (auto& x : q) x += Point3(rng.normal(), rng.normal(), rng.normal()) * size;
      const double dh = hausdorff(p, q);
      Eigen::VectorXd u(3 * static_cast<Eigen::Index>(m)), w(3 * static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        u.segment<3>(3 * static_cast<Eigen::Index>(i)) = p[i];
        w.segment<3>(3 * static_cast<Eigen::Index>(i)) = q[i];
      }
      coord_gap = std::max(coord_gap, dh - (u - w).norm());
      for (int dim = 0; dim <= 2; ++dim) {
        const auto a = diagram(Configuration(p, false), FiltrationKind::Alpha, dim).diagram();
        const auto b = diagram(Configuration(q, false), FiltrationKind::Alpha, dim).diagram();
        margin = std::max(margin, bottleneck(a, b) - dh);
      }
    }
    o.detail << " max(d_b - d_H) = " << margin << ", max(d_H - |u - w|) = " << coord_gap;
    o.require(margin <= 1e-10, "bottleneck <= Hausdorff + 1e-10");
    o.require(coord_gap <= 0.0, "Hausdorff <= coordinate distance");
  });

  report(9, "reduction against the rank-function oracle", [](Outcome& o) {
    Rng rng(909);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = static_cast<std::size_t>(rng.integer(3, 7));
      const Configuration c(oracle::random_points(rng, m), false);
      const auto kind = trial % 2 ? FiltrationKind::Rips : FiltrationKind::Alpha;
      const auto fc = build_filtration(c, kind, 3);
      const auto r = reduce(boundary_matrix(fc));
      for (int dim = 0; dim <= 2; ++dim) {
        std::vector<oracle::Interval> got;
        for (const auto& [i, j] : r.pairs) {
          if (fc[i].simplex.dim() == dim && fc[j].radius > fc[i].radius) got.push_back({fc[i].radius, fc[j].radius});
        }
        for (std::size_t e : r.essentials) {
          if (fc[e].simplex.dim() == dim) got.push_back({fc[e].radius, INFINITY});
        }
        std::sort(got.begin(), got.end());
        mismatches += got != oracle::rank_function_intervals(fc, dim);
      }
    }
    o.detail << " " << mismatches << " mismatching diagrams out of 300";
    o.require(mismatches == 0, "exact agreement");
  });

  report(10, "death/birth ratio of triangles", [](Outcome& o) {
    Rng rng(1010);
    const double bound = 2.0 / std::sqrt(3.0);
    int acute = 0, obtuse = 0;
    double largest = 0.0;
    bool obtuse_empty = true;
    while (acute < 1000 || obtuse < 200) {
      const auto pts = oracle::random_points(rng, 3);
      bool is_acute = true;
      for (int i = 0; i < 3; ++i) {
        const Point3 a = pts[static_cast<std::size_t>((i + 1) % 3)] - pts[static_cast<std::size_t>(i)];
        const Point3 b = pts[static_cast<std::size_t>((i + 2) % 3)] - pts[static_cast<std::size_t>(i)];
        is_acute = is_acute && a.dot(b) > 0.0;
      }
      const Configuration c(pts, false);
      if (is_acute && acute < 1000) {
        largest = std::max(largest, triangle_ratio_check(c).ratio);
        ++acute;
      } else if (!is_acute && obtuse < 200) {
        obtuse_empty = obtuse_empty && diagram(c, FiltrationKind::Alpha, 1).pairs.empty();
        ++obtuse;
      }
    }
    const Configuration equilateral({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}}, false);
    const double eq = triangle_ratio_check(equilateral).ratio;
    o.detail << " largest ratio " << largest << ", equilateral " << eq;
    o.require(largest <= bound + 1e-12, "ratio <= 2/sqrt(3)");
    o.require(std::abs(eq - bound) <= 1e-12, "equilateral attains 2/sqrt(3)");
    o.require(obtuse_empty, "non-acute triangles have no one-dimensional pair");
  });

  report(11, "pseudo-inverse satisfies the Penrose equations", [](Outcome& o) {
    Rng rng(1111);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = rng.integer(1, 12);
      const int m = rng.integer(1, n);
      Eigen::MatrixXd a = random_matrix(rng, m, n);
      // Every fourth matrix is rank deficient.
      if (trial % 4 == 3 && m > 1) {
        const int r = rng.integer(1, m - 1);
        a = random_matrix(rng, m, r) * random_matrix(rng, r, n);
      }
      const Eigen::MatrixXd x = pinv(a);
      const Eigen::MatrixXd ax = a * x, xa = x * a;
      worst = std::max({worst, (a * x * a - a).cwiseAbs().maxCoeff(), (x * a * x - x).cwiseAbs().maxCoeff(),
                        (ax - ax.transpose()).cwiseAbs().maxCoeff(), (xa - xa.transpose()).cwiseAbs().maxCoeff()});
    }
    o.detail << " largest residual " << worst;
    o.require(worst <= 1e-11, "all four equations to 1e-11");
  });

  return failures == 0 ? 0 : 1;
}
