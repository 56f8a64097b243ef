#include "pdcont/general_position.hpp"

#include <algorithm>
#include <set>

#include "pdcont/error.hpp"
#include "pdcont/predicates.hpp"

namespace pdcont {

namespace {

using Issue = GeneralPositionIssue;

std::string describe(const Simplex& s) {
  std::string out = "{";
  for (int i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Reports consecutive members of a radius-sorted list that are within tol.
void report_ties(std::vector<std::pair<double, Simplex>> radii, double tol,
                 std::vector<Issue>& issues) {
  std::sort(radii.begin(), radii.end());
  for (std::size_t i = 1; i < radii.size(); ++i) {
    const auto& [ra, a] = radii[i - 1];
    const auto& [rb, b] = radii[i];
    if (rb - ra <= tol) {
      issues.push_back({Issue::Type::EqualRadii, {a, b}, {ra, rb},
                        "attaching simplices " + describe(a) + " and " + describe(b) +
                            " have equal radii"});
    }
  }
}

void check_coincident(const Configuration& config, std::vector<Issue>& issues) {
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      if (config.point(i) == config.point(j)) {
        const Simplex s{static_cast<int>(i), static_cast<int>(j)};
        issues.push_back({Issue::Type::CoincidentPoints, {s}, {}, "points " + describe(s) + " coincide"});
      }
    }
  }
}

}  // namespace

GeneralPositionReport check_general_position(const Configuration& config, FiltrationKind kind,
                                             double tolerance, int max_dim) {
  GeneralPositionReport report;
  report.kind = kind;
  report.tolerance = tolerance;
  auto& issues = report.issues;
  check_coincident(config, issues);
  if (!issues.empty()) return report;

  if (kind == FiltrationKind::Rips) {
    std::set<Simplex> edges;
    const auto fc = build_rips(config, max_dim);
    for (const auto& fs : fc.simplices()) {
      if (fs.simplex.dim() >= 2) edges.insert(fs.attaching);
    }
    std::vector<std::pair<double, Simplex>> radii;
    for (const auto& e : edges) radii.emplace_back(rips_birth_radius(e, config).radius, e);
    report_ties(std::move(radii), tolerance, issues);
    return report;
  }

  DelaunayComplex dc;
  try {
    dc = delaunay3(config);
  } catch (const Error& e) {
    issues.push_back({Issue::Type::Cospherical, {}, {}, e.what()});
    return report;
  }
  for (const auto& s : dc.all_simplices()) {
    if (s.size() < 2 || s.size() > 3) continue;
    const auto pts = simplex_points(s, config);
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (s.contains(static_cast<int>(i))) continue;
      if (predicates::circumsphere_side(pts, config.point(i)) == 0) {
        issues.push_back({Issue::Type::Cospherical, {s, Simplex{static_cast<int>(i)}}, {},
                          "point " + std::to_string(i) + " lies on the circumsphere of " +
                              describe(s)});
      }
    }
  }
  const auto fc = build_alpha(config, dc);
  std::vector<std::pair<double, Simplex>> radii;
  for (const auto& fs : fc.simplices()) {
    if (fs.simplex.dim() >= 1 && fs.attaching == fs.simplex) radii.emplace_back(fs.radius, fs.simplex);
  }
  report_ties(std::move(radii), tolerance, issues);
  return report;
}

}  // namespace pdcont
