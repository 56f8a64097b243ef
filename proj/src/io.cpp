#include "pdcont/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "pdcont/error.hpp"

namespace pdcont {

namespace {

using nlohmann::json;

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' || c == '{';
  }
  return false;
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

std::vector<Point3> parse_cloud(std::string_view text) {
  std::vector<Point3> out;
  if (looks_like_json(text)) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid JSON cloud: ") + e.what());
    }
    if (doc.is_object() && doc.contains("points")) doc = doc["points"];
    if (!doc.is_array()) throw Error(ErrorCode::ParseError, "a JSON cloud must be an array of [x, y, z]");
    for (const auto& p : doc) {
      if (!p.is_array() || p.size() != 3) {
        throw Error(ErrorCode::ParseError, "point " + std::to_string(out.size()) + " is not an [x, y, z] triple");
      }
      Point3 q;
      for (int a = 0; a < 3; ++a) {
        if (!p[static_cast<std::size_t>(a)].is_number()) {
          throw Error(ErrorCode::ParseError, "point " + std::to_string(out.size()) + " has a non-numeric coordinate");
        }
        q[a] = p[static_cast<std::size_t>(a)].get<double>();
      }
      out.push_back(q);
    }
  } else {
    std::vector<double> values;
    std::istringstream lines{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream in(line);
      std::string token;
      while (in >> token) {
        try {
          std::size_t used = 0;
          values.push_back(std::stod(token, &used));
          if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": '" + token + "' is not a number");
        }
      }
    }
    if (values.size() % 3 != 0) {
      throw Error(ErrorCode::ParseError, "the number of coordinates (" + std::to_string(values.size()) +
                                             ") is not a multiple of 3");
    }
    for (std::size_t i = 0; i < values.size(); i += 3) out.emplace_back(values[i], values[i + 1], values[i + 2]);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "the cloud has no points");
  for (const auto& p : out) {
    if (!p.allFinite()) throw Error(ErrorCode::ParseError, "the cloud has a non-finite coordinate");
  }
  return out;
}

std::vector<Point3> read_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_cloud(text.str());
}

void write_cloud_json(std::ostream& out, const std::vector<Point3>& points) {
  out << std::setprecision(17) << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << (i ? ",\n " : "") << '[' << points[i].x() << ", " << points[i].y() << ", " << points[i].z() << ']';
  }
  out << "]\n";
}

void write_cloud_xyz(std::ostream& out, const std::vector<Point3>& points) {
  out << std::setprecision(17);
  for (const auto& p : points) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
}

Eigen::VectorXd parse_target(std::string_view text) {
  std::vector<double> values;
  if (looks_like_json(text)) {
    try {
      const auto doc = json::parse(text);
      if (!doc.is_array()) throw Error(ErrorCode::ParseError, "target must be an array");
      for (const auto& x : doc) {
        if (x.is_array()) {
          for (const auto& y : x) values.push_back(y.get<double>());
        } else {
          values.push_back(x.get<double>());
        }
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid target: ") + e.what());
    }
  } else {
    std::string s(text);
    for (char& c : s) {
      if (c == ',' || c == ';') c = ' ';
    }
    std::istringstream in(s);
    std::string token;
    while (in >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "'" + token + "' in the target is not a number");
      }
    }
  }
  if (values.empty()) throw Error(ErrorCode::ParseError, "the target is empty");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_step_record(std::ostream& out, const ContinuationStep& step) {
  json pairs = json::array();
  for (const auto& p : step.pairs) pairs.push_back({p.birth, p.death});
  json rec;
  rec["k"] = step.k;
  rec["t"] = step.t;
  rec["v_target"] = to_json(step.v_target);
  rec["u"] = to_json(step.u);
  rec["pairs"] = pairs;
  rec["singular_values"] = to_json(step.singular_values);
  rec["newton_iters"] = step.newton_iters;
  rec["residual"] = step.residual;
  rec["attaching_radii"] = step.attaching_radii;
  out << rec.dump() << '\n';
}

void write_summary_record(std::ostream& out, const ContinuationTrace& trace) {
  json rec;
  rec["summary"] = true;
  rec["termination"] = trace.termination == Termination::ReachedTarget ? "ReachedTarget" : "FailedAtStep";
  rec["failed_step"] = trace.failed_step;
  rec["failure"] = trace.failed_step >= 0 ? std::string(to_string(trace.failure)) : std::string();
  rec["reason"] = trace.reason;
  rec["steps"] = trace.steps.size();
  rec["final_residual"] = trace.steps.empty() ? 0.0 : trace.steps.back().residual;
  out << rec.dump() << '\n';
}

}  // namespace pdcont
