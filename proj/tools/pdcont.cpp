#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "pdcont/delaunay.hpp"
#include "pdcont/diffmap.hpp"
#include "pdcont/error.hpp"
#include "pdcont/examples.hpp"
#include "pdcont/general_position.hpp"
#include "pdcont/io.hpp"
#include "pdcont/linalg.hpp"
#include "pdcont/persistence.hpp"
#include "pdcont/solver.hpp"

using namespace pdcont;

namespace {

/// Exit codes beyond the error classes.
constexpr int kStoppedBeforeTarget = 20;
constexpr int kVerdictFailed = 21;

struct RunConfig {
  std::string input;
  std::string filtration = "alpha";
  int dim = 2;
  double epsilon = 0.0;
  double step = 0.01;
  int steps = 0;
  double tol = 1e-10;
  int max_iter = 50;
  double sigma_cutoff = 1e-12;
  bool no_gauge = false;
  bool adaptive = false;
  std::optional<std::uint64_t> jitter_seed;
  std::string out;
  std::string final_cloud;
  std::string target;
  std::string format = "json";
  bool with_essentials = false;
  bool verbose = false;
  int example = 0;
};

/// Writes to the file named by `path`, or to stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<Point3> load(const RunConfig& rc) {
  auto pts = read_cloud(rc.input);
  if (rc.jitter_seed) pts = jitter(std::move(pts), *rc.jitter_seed);
  return pts;
}

Configuration gauged(std::vector<Point3> pts, const RunConfig& rc) {
  return rc.no_gauge ? Configuration(std::move(pts), false) : to_gauge_frame(std::move(pts));
}

ContinuationOptions solver_options(const RunConfig& rc) {
  ContinuationOptions o;
  o.kind = parse_filtration_kind(rc.filtration);
  o.dim = rc.dim;
  o.epsilon = rc.epsilon;
  o.tol = rc.tol;
  o.max_iter = rc.max_iter;
  o.sigma_cutoff = rc.sigma_cutoff;
  o.step = rc.step;
  o.steps = rc.steps;
  o.adaptive = rc.adaptive;
  return o;
}

void report_general_position(std::ostream& out, const GeneralPositionReport& report) {
  if (report.ok()) {
    out << "general position: ok\n";
    return;
  }
  out << "general position: " << report.issues.size() << " issue(s)\n";
  for (const auto& issue : report.issues) out << "  " << issue.message << '\n';
}

int cmd_diagram(const RunConfig& rc) {
  const Configuration config(load(rc), false);
  const auto kind = parse_filtration_kind(rc.filtration);
  const auto data = diagram(config, kind, rc.dim, rc.epsilon);
  Output out(rc.out);
  if (rc.format == "csv") {
    write_diagram_csv(out.stream(), data);
  } else {
    write_diagram_json(out.stream(), data);
  }
  report_general_position(std::cerr, check_general_position(config, kind));
  return 0;
}

int cmd_check(const RunConfig& rc) {
  const Configuration config(load(rc), false);
  const auto report = check_general_position(config, parse_filtration_kind(rc.filtration));
  report_general_position(std::cout, report);
  return report.ok() ? 0 : exit_code(ErrorCode::GeneralPositionViolation);
}

int cmd_filtration(const RunConfig& rc) {
  const Configuration config(load(rc), false);
  Output out(rc.out);
  write_csv(out.stream(), build_filtration(config, parse_filtration_kind(rc.filtration), rc.dim + 1));
  return 0;
}

int cmd_delaunay(const RunConfig& rc) {
  const Configuration config(load(rc), false);
  Output out(rc.out);
  write_off(out.stream(), config, delaunay3(config));
  return 0;
}

int cmd_jacobian(const RunConfig& rc) {
  const auto config = gauged(load(rc), rc);
  const auto o = solver_options(rc);
  const auto data = evaluate(config, o).data;
  const auto df = jacobian(config, data, rc.with_essentials);
  Output out(rc.out);
  write_matrix_csv(out.stream(), df.matrix);
  for (const auto& w : df.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << "singular values:";
  if (df.matrix.size() > 0) {
    const auto sigma = singular_values(df.matrix);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) std::cerr << ' ' << format9(sigma[i]);
  }
  std::cerr << '\n';
  return 0;
}

/// Runs a continuation, streaming the trace as JSON Lines.
ContinuationTrace run_continuation(const Configuration& start, const Eigen::VectorXd& target,
                                   const ContinuationOptions& o, const RunConfig& rc) {
  Output out(rc.out);
  auto trace = continue_cloud(start, target, o, [&](const ContinuationStep& s) {
    write_step_record(out.stream(), s);
    out.stream().flush();
  });
  write_summary_record(out.stream(), trace);
  if (rc.verbose) {
    for (const auto& line : trace.log) std::cerr << line << '\n';
  }
  if (!rc.final_cloud.empty()) {
    Output cloud(rc.final_cloud);
    write_cloud_json(cloud.stream(), trace.final_config.points());
  }
  return trace;
}

void summarize(std::ostream& out, const ContinuationTrace& trace) {
  if (trace.termination == Termination::ReachedTarget) {
    out << "reached the target in " << trace.steps.size() - 1 << " steps\n";
  } else {
    out << "stopped at step " << trace.failed_step << " (" << to_string(trace.failure) << "): " << trace.reason
        << '\n';
  }
}

int cmd_continue(const RunConfig& rc) {
  const auto config = gauged(load(rc), rc);
  const auto target = parse_target(rc.target);
  const auto trace = run_continuation(config, target, solver_options(rc), rc);
  summarize(std::cerr, trace);
  if (trace.termination == Termination::ReachedTarget) return 0;
  return trace.failure == NewtonStatus::CardinalityChanged ? exit_code(ErrorCode::DiagramCardinalityChanged)
                                                           : kStoppedBeforeTarget;
}

int cmd_example(const RunConfig& rc, const CLI::App& sub) {
  auto run = example_run(rc.example, rc.jitter_seed.value_or(kDefaultJitterSeed));
  // Options given on the command line replace the packaged ones.
  auto& o = run.options;
  if (sub.count("--step")) o.step = rc.step;
  if (sub.count("--steps")) o.steps = rc.steps;
  if (sub.count("--tol")) o.tol = rc.tol;
  if (sub.count("--max-iter")) o.max_iter = rc.max_iter;
  if (sub.count("--sigma-cutoff")) o.sigma_cutoff = rc.sigma_cutoff;
  if (sub.count("--adaptive")) o.adaptive = true;

  const auto config = example_configuration(run);
  const auto start = evaluate(config, o).data;
  const auto target = example_target(run, start);
  std::cout << "example " << run.number << ": " << run.title << '\n';
  RunConfig streams = rc;
  if (streams.out.empty()) streams.out = "example" + std::to_string(run.number) + ".jsonl";
  const auto trace = run_continuation(config, target, o, streams);
  summarize(std::cout, trace);
  const auto verdict = example_verdict(run, trace, target);
  for (const auto& c : verdict.checks) {
    std::cout << (c.pass ? "  ok    " : "  FAIL  ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
    std::cout << '\n';
  }
  std::cout << "verdict: " << (verdict.pass() ? "PASS" : "FAIL") << '\n';
  return verdict.pass() ? 0 : kVerdictFailed;
}

void add_input(CLI::App* sub, RunConfig& rc) {
  sub->add_option("input", rc.input, "Point cloud (JSON array of triples or x y z lines)")->required();
}

void add_filtration(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--filtration", rc.filtration, "alpha or rips")->check(CLI::IsMember({"alpha", "rips", "vr"}));
  sub->add_option("--dim", rc.dim, "Homology dimension")->check(CLI::Range(0, 2));
  sub->add_option("--epsilon", rc.epsilon, "Drop pairs closer than this to the diagonal")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--jitter-seed", rc.jitter_seed, "Perturb the input slightly with this seed");
}

void add_solver(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--step", rc.step, "Length of each target increment")->check(CLI::PositiveNumber);
  sub->add_option("--steps", rc.steps, "Number of increments (overrides --step)")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol", rc.tol, "Residual tolerance (infinity norm)")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", rc.max_iter, "Newton iterations per step")->check(CLI::NonNegativeNumber);
  sub->add_option("--sigma-cutoff", rc.sigma_cutoff, "Relative singular value cutoff")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--adaptive", rc.adaptive, "Halve the increment after a failed step");
  sub->add_option("--final", rc.final_cloud, "Write the final cloud here (JSON)");
  sub->add_flag("--verbose", rc.verbose, "Print solver warnings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistence diagram continuation for point clouds in R^3"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* diag = app.add_subcommand("diagram", "Persistence diagram of a cloud");
  add_input(diag, rc);
  add_filtration(diag, rc);
  diag->add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  diag->add_option("--out", rc.out, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Report general position violations");
  add_input(check, rc);
  add_filtration(check, rc);

  auto* filt = app.add_subcommand("filtration", "Filtered simplices as CSV");
  add_input(filt, rc);
  add_filtration(filt, rc);
  filt->add_option("--out", rc.out, "Output file (default stdout)");

  auto* del = app.add_subcommand("delaunay", "Delaunay tetrahedralization as OFF");
  add_input(del, rc);
  del->add_option("--jitter-seed", rc.jitter_seed, "Perturb the input slightly with this seed");
  del->add_option("--out", rc.out, "Output file (default stdout)");

  auto* jac = app.add_subcommand("jacobian", "Jacobian of the persistence map as CSV");
  add_input(jac, rc);
  add_filtration(jac, rc);
  jac->add_flag("--no-gauge", rc.no_gauge, "Keep all 3M coordinates free");
  jac->add_flag("--with-essentials", rc.with_essentials, "Add rows for essential classes");
  jac->add_option("--out", rc.out, "Output file (default stdout)");

  auto* cont = app.add_subcommand("continue", "Deform a cloud until its diagram reaches a target");
  add_input(cont, rc);
  add_filtration(cont, rc);
  add_solver(cont, rc);
  cont->add_option("--target", rc.target, "Target as b1,d1,b2,d2,... or a JSON array")->required();
  cont->add_flag("--no-gauge", rc.no_gauge, "Keep all 3M coordinates free");
  cont->add_option("--out", rc.out, "Trace file, JSON Lines (default stdout)");

  auto* ex = app.add_subcommand("example", "Run a packaged example and check its outcome");
  ex->add_option("n", rc.example, "Example number")->required()->check(CLI::Range(1, 6));
  add_solver(ex, rc);
  ex->add_option("--jitter-seed", rc.jitter_seed, "Seed of the jitter for examples 5 and 6");
  ex->add_option("--out", rc.out, "Trace file, JSON Lines (default example<n>.jsonl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*diag) return cmd_diagram(rc);
    if (*check) return cmd_check(rc);
    if (*filt) return cmd_filtration(rc);
    if (*del) return cmd_delaunay(rc);
    if (*jac) return cmd_jacobian(rc);
    if (*cont) return cmd_continue(rc);
    if (*ex) return cmd_example(rc, *ex);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 1;
}
