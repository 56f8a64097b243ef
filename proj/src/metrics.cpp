#include "pdcont/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "pdcont/error.hpp"

namespace pdcont {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Maximum bipartite matching (Hopcroft-Karp) on an adjacency list.
class Matcher {
 public:
  explicit Matcher(const std::vector<std::vector<int>>& adj, int right)
      : adj_(adj), left_match_(adj.size(), -1), right_match_(static_cast<std::size_t>(right), -1),
        level_(adj.size()) {}

  int run() {
    int size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (left_match_[u] < 0 && dfs(static_cast<int>(u))) ++size;
      }
    }
    return size;
  }

 private:
  bool bfs() {
    std::queue<int> queue;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      level_[u] = left_match_[u] < 0 ? 0 : -1;
      if (level_[u] == 0) queue.push(static_cast<int>(u));
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        const int w = right_match_[static_cast<std::size_t>(v)];
        if (w < 0) {
          found = true;
        } else if (level_[static_cast<std::size_t>(w)] < 0) {
          level_[static_cast<std::size_t>(w)] = level_[static_cast<std::size_t>(u)] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[static_cast<std::size_t>(u)]) {
      const int w = right_match_[static_cast<std::size_t>(v)];
      if (w < 0 || (level_[static_cast<std::size_t>(w)] == level_[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        left_match_[static_cast<std::size_t>(u)] = v;
        right_match_[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    level_[static_cast<std::size_t>(u)] = -1;
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> left_match_, right_match_, level_;
};

double linf(const DiagramPoint& p, const DiagramPoint& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

// Left vertices: a_0..a_{n-1}, then diagonal copies of b_0..b_{m-1}.
// Right vertices: b_0..b_{m-1}, then diagonal copies of a_0..a_{n-1}.
bool perfect_at(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double t) {
  const int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + m));
  for (int i = 0; i < n; ++i) {
    auto& row = adj[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      if (linf(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]) <= t) row.push_back(j);
    }
    if (diagonal_distance(a[static_cast<std::size_t>(i)]) <= t) row.push_back(m + i);
  }
  for (int j = 0; j < m; ++j) {
    auto& row = adj[static_cast<std::size_t>(n + j)];
    if (diagonal_distance(b[static_cast<std::size_t>(j)]) <= t) row.push_back(j);
    for (int i = 0; i < n; ++i) row.push_back(m + i);
  }
  return Matcher(adj, n + m).run() == n + m;
}

}  // namespace

double diagonal_distance(const DiagramPoint& p) { return (p.death - p.birth) / 2.0; }

double bottleneck(const Diagram& a, const Diagram& b) {
  std::vector<DiagramPoint> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : a) (std::isinf(p.death) ? ea.push_back(p.birth) : fa.push_back(p));
  for (const auto& p : b) (std::isinf(p.death) ? eb.push_back(p.birth) : fb.push_back(p));
  if (ea.size() != eb.size()) {
    throw Error(ErrorCode::InfinityMismatch, "diagrams have " + std::to_string(ea.size()) + " and " +
                                                 std::to_string(eb.size()) + " points at infinity");
  }
  // Points at infinity: the optimal matching pairs births in sorted order.
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  // The optimum is one of the pairwise or diagonal distances.
  std::vector<double> candidates{0.0};
  for (const auto& p : fa) {
    candidates.push_back(diagonal_distance(p));
    for (const auto& q : fb) candidates.push_back(linf(p, q));
  }
  for (const auto& q : fb) candidates.push_back(diagonal_distance(q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_at(fa, fb, candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return std::max(essential, candidates[lo]);
}

double hausdorff(const std::vector<Point3>& p, const std::vector<Point3>& q) {
  if (p.empty() || q.empty()) {
    if (p.empty() && q.empty()) return 0.0;
    return kInf;
  }
  auto directed = [](const std::vector<Point3>& x, const std::vector<Point3>& y) {
    double worst = 0.0;
    for (const auto& a : x) {
      double best = kInf;
      for (const auto& b : y) best = std::min(best, (a - b).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(p, q), directed(q, p));
}

double diag_distance(const Diagram& d) {
  double best = kInf;
  for (const auto& p : d) {
    if (!std::isinf(p.death)) best = std::min(best, diagonal_distance(p));
  }
  if (std::isinf(best)) throw Error(ErrorCode::EmptyDiagram, "diagram has no finite points");
  return best;
}

TriangleRatio triangle_ratio_check(const Configuration& config) {
  if (config.size() != 3) {
    throw Error(ErrorCode::DimensionMismatch,
                "triangle check needs 3 points, got " + std::to_string(config.size()));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const Point3 u = config.point((i + 1) % 3) - config.point(i);
    const Point3 v = config.point((i + 2) % 3) - config.point(i);
    if (!(u.dot(v) > 0.0)) {
      throw Error(ErrorCode::NotAcute, "the angle at vertex " + std::to_string(i) + " is not acute");
    }
  }
  const auto data = diagram(config, FiltrationKind::Alpha, 1);
  if (data.pairs.size() != 1) {
    throw Error(ErrorCode::NotAcute, "the triangle has no one-dimensional class");
  }
  const auto& p = data.pairs.front();
  return {p.birth, p.death, p.death / p.birth};
}

}  // namespace pdcont
