#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pdcont/geometry.hpp"
#include "pdcont/solver.hpp"

namespace pdcont {

/// A cloud is either a JSON array of [x, y, z] triples or whitespace separated
/// numbers read three at a time ('#' starts a comment). Throws ParseError.
std::vector<Point3> parse_cloud(std::string_view text);
std::vector<Point3> read_cloud(const std::string& path);

/// JSON array of triples with 17 significant digits.
void write_cloud_json(std::ostream& out, const std::vector<Point3>& points);
/// One "x y z" line per point.
void write_cloud_xyz(std::ostream& out, const std::vector<Point3>& points);

/// A target vector given as "b1,d1,b2,d2" or as a JSON array of numbers or of
/// [b, d] pairs. Throws ParseError.
Eigen::VectorXd parse_target(std::string_view text);

/// One JSON Lines record per continuation step:
/// {"k", "t", "v_target", "u", "pairs", "singular_values", "newton_iters",
///  "residual", "attaching_radii"}.
void write_step_record(std::ostream& out, const ContinuationStep& step);
/// Final record: {"summary": true, "termination", "failed_step", "reason",
/// "steps", "final_residual"}.
void write_summary_record(std::ostream& out, const ContinuationTrace& trace);

}  // namespace pdcont
