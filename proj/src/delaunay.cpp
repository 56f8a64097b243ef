#include "pdcont/delaunay.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>

#include "pdcont/error.hpp"
#include "pdcont/predicates.hpp"

namespace pdcont {

namespace pred = predicates;

DelaunayComplex::DelaunayComplex(std::size_t points, std::vector<Simplex> top)
    : point_count_(points) {
  for (std::size_t i = 0; i < points; ++i) by_dim_[0].push_back(Simplex{static_cast<int>(i)});
  for (const auto& t : top) {
    by_dim_[static_cast<std::size_t>(t.dim())].push_back(t);
  }
  for (int d = 3; d >= 1; --d) {
    auto& layer = by_dim_[static_cast<std::size_t>(d)];
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    auto& below = by_dim_[static_cast<std::size_t>(d - 1)];
    for (const auto& s : layer) {
      for (int k = 0; k < s.size(); ++k) {
        const Simplex f = s.face(k);
        if (d - 1 > 0) below.push_back(f);
        cofacets_[f].push_back(s);
      }
    }
  }
  for (auto& [face, co] : cofacets_) std::sort(co.begin(), co.end());
}

std::vector<Simplex> DelaunayComplex::all_simplices() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (const auto& layer : by_dim_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::size_t DelaunayComplex::size() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : by_dim_) n += layer.size();
  return n;
}

int DelaunayComplex::dim() const noexcept {
  for (int d = 3; d >= 0; --d) {
    if (!by_dim_[static_cast<std::size_t>(d)].empty()) return d;
  }
  return -1;
}

bool DelaunayComplex::contains(const Simplex& simplex) const {
  const auto& layer = by_dim_.at(static_cast<std::size_t>(simplex.dim()));
  return std::binary_search(layer.begin(), layer.end(), simplex);
}

const std::vector<Simplex>& DelaunayComplex::cofacets(const Simplex& simplex) const {
  static const std::vector<Simplex> none;
  const auto it = cofacets_.find(simplex);
  return it == cofacets_.end() ? none : it->second;
}

// ---------------------------------------------------------------------------
// Bowyer-Watson with ghost cells. A finite cell (a, b, c, d) is stored with
// orient3d(a, b, c, d) > 0. The hull is covered by ghost cells (a, b, c, kInf)
// whose outer side x satisfies orient3d(a, b, c, x) > 0, so that a ghost cell
// behaves like a positively oriented cell with a vertex at infinity.

namespace {

constexpr int kInf = -1;
using Cell = std::array<int, 4>;

std::string indices(std::initializer_list<int> ids) {
  std::string s;
  for (int i : ids) {
    if (!s.empty()) s += ", ";
    s += std::to_string(i);
  }
  return s;
}

class Triangulator {
 public:
  explicit Triangulator(const std::vector<Point3>& pts) : pts_(pts) {}

  std::vector<Simplex> run();

 private:
  const Point3& p(int i) const { return pts_[static_cast<std::size_t>(i)]; }
  bool in_conflict(const Cell& cell, int q) const;
  void insert(int q);

  const std::vector<Point3>& pts_;
  std::vector<Cell> cells_;
};

bool Triangulator::in_conflict(const Cell& c, int q) const {
  if (c[3] == kInf) {
    const int o = pred::orient3d(p(c[0]), p(c[1]), p(c[2]), p(q));
    if (o != 0) return o > 0;
    const int s = pred::incircle_coplanar(p(c[0]), p(c[1]), p(c[2]), p(q));
    if (s == 0) {
      throw Error(ErrorCode::GeneralPositionViolation,
                  "points " + indices({c[0], c[1], c[2], q}) + " are coplanar and cocircular");
    }
    return s > 0;
  }
  const int s = pred::insphere(p(c[0]), p(c[1]), p(c[2]), p(c[3]), p(q));
  if (s == 0) {
    throw Error(ErrorCode::GeneralPositionViolation,
                "points " + indices({c[0], c[1], c[2], c[3], q}) + " are cospherical");
  }
  return s > 0;
}

void Triangulator::insert(int q) {
  std::vector<Cell> keep;
  std::vector<Cell> conflict;
  keep.reserve(cells_.size() + 16);
  for (const auto& c : cells_) (in_conflict(c, q) ? conflict : keep).push_back(c);

  // A face of the cavity boundary belongs to exactly one conflicting cell.
  std::map<std::array<int, 3>, int> face_count;
  auto face_key = [](const Cell& c, int slot) {
    std::array<int, 3> f{};
    for (int i = 0, n = 0; i < 4; ++i) {
      if (i != slot) f[static_cast<std::size_t>(n++)] = c[static_cast<std::size_t>(i)];
    }
    std::sort(f.begin(), f.end());
    return f;
  };
  for (const auto& c : conflict) {
    for (int slot = 0; slot < 4; ++slot) ++face_count[face_key(c, slot)];
  }
  for (const auto& c : conflict) {
    for (int slot = 0; slot < 4; ++slot) {
      if (face_count[face_key(c, slot)] != 1) continue;
      Cell n = c;
      n[static_cast<std::size_t>(slot)] = q;
      if (n[3] != kInf &&
          pred::orient3d(p(n[0]), p(n[1]), p(n[2]), p(n[3])) <= 0) {
        throw Error(ErrorCode::GeneralPositionViolation,
                    "cavity of point " + std::to_string(q) + " is not star-shaped");
      }
      keep.push_back(n);
    }
  }
  cells_ = std::move(keep);
}

std::vector<Simplex> Triangulator::run() {
  const int m = static_cast<int>(pts_.size());

  // Initial tetrahedron: the first four affinely independent points in order.
  std::vector<int> base{0};
  for (int i = 1; i < m && base.size() < 4; ++i) {
    const auto sz = base.size();
    if (sz == 1 && p(i) != p(base[0])) base.push_back(i);
    else if (sz == 2 && !pred::collinear(p(base[0]), p(base[1]), p(i))) base.push_back(i);
    else if (sz == 3 && pred::orient3d(p(base[0]), p(base[1]), p(base[2]), p(i)) != 0)
      base.push_back(i);
  }
  if (base.size() < 4) {
    throw Error(ErrorCode::DegenerateInput, "all points are coplanar; no 3D triangulation exists");
  }
  Cell first{base[0], base[1], base[2], base[3]};
  if (pred::orient3d(p(first[0]), p(first[1]), p(first[2]), p(first[3])) < 0) {
    std::swap(first[0], first[1]);
  }
  cells_.push_back(first);
  for (int slot = 0; slot < 4; ++slot) {
    Cell g{};
    for (int i = 0, n = 0; i < 4; ++i) {
      if (i != slot) g[static_cast<std::size_t>(n++)] = first[static_cast<std::size_t>(i)];
    }
    g[3] = kInf;
    const int opposite = first[static_cast<std::size_t>(slot)];
    if (pred::orient3d(p(g[0]), p(g[1]), p(g[2]), p(opposite)) > 0) std::swap(g[0], g[1]);
    cells_.push_back(g);
  }

  for (int i = 0; i < m; ++i) {
    if (std::find(base.begin(), base.end(), i) == base.end()) insert(i);
  }

  std::vector<Simplex> tets;
  for (const auto& c : cells_) {
    if (c[3] != kInf) tets.emplace_back(std::span<const int>(c.data(), 4));
  }
  return tets;
}

}  // namespace

DelaunayComplex delaunay3(const Configuration& config) {
  const auto& pts = config.points();
  const int m = static_cast<int>(pts.size());

  std::vector<int> order(pts.size());
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = pts[static_cast<std::size_t>(a)];
    const auto& pb = pts[static_cast<std::size_t>(b)];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pts[static_cast<std::size_t>(order[i])] == pts[static_cast<std::size_t>(order[i - 1])]) {
      throw Error(ErrorCode::DegenerateInput,
                  "points " + indices({order[i - 1], order[i]}) + " coincide");
    }
  }

  if (m <= 2) {
    std::vector<Simplex> top;
    if (m == 2) top.push_back(Simplex{0, 1});
    return DelaunayComplex(pts.size(), std::move(top));
  }
  if (m == 3) {
    if (pred::collinear(pts[0], pts[1], pts[2])) {
      throw Error(ErrorCode::DegenerateInput, "the three points are collinear");
    }
    return DelaunayComplex(pts.size(), {Simplex{0, 1, 2}});
  }
  return DelaunayComplex(pts.size(), Triangulator(pts).run());
}

bool is_attaching(const Simplex& simplex, const Configuration& config) {
  const auto verts = simplex_points(simplex, config);
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (simplex.contains(static_cast<int>(i))) continue;
    if (pred::circumsphere_side(verts, config.point(i)) < 0) return false;
  }
  return true;
}

bool is_attaching(const Simplex& simplex, const Configuration& config,
                  const DelaunayComplex& complex) {
  if (!complex.contains(simplex)) {
    throw Error(ErrorCode::InvalidArgument, "simplex is not in the Delaunay complex");
  }
  return is_attaching(simplex, config);
}

void write_off(std::ostream& out, const Configuration& config, const DelaunayComplex& complex) {
  out << "TETS " << config.size() << ' ' << complex.tetrahedra().size() << '\n';
  out << std::setprecision(17);
  for (const auto& q : config.points()) out << q.x() << ' ' << q.y() << ' ' << q.z() << '\n';
  for (const auto& t : complex.tetrahedra()) {
    out << 4;
    for (int v : t.vertices()) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace pdcont
