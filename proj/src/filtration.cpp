#include "pdcont/filtration.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <string>

#include "pdcont/error.hpp"
#include "pdcont/predicates.hpp"

namespace pdcont {

std::string_view to_string(FiltrationKind kind) noexcept {
  return kind == FiltrationKind::Rips ? "rips" : "alpha";
}

FiltrationKind parse_filtration_kind(std::string_view name) {
  if (name == "rips" || name == "vr") return FiltrationKind::Rips;
  if (name == "alpha") return FiltrationKind::Alpha;
  throw Error(ErrorCode::InvalidArgument,
              "unknown filtration '" + std::string(name) + "' (expected alpha or rips)");
}

FilteredComplex::FilteredComplex(FiltrationKind kind, std::vector<FilteredSimplex> simplices)
    : kind_(kind), simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end(),
            [](const FilteredSimplex& a, const FilteredSimplex& b) {
              if (a.radius != b.radius) return a.radius < b.radius;
              if (a.simplex.dim() != b.simplex.dim()) return a.simplex.dim() < b.simplex.dim();
              return a.simplex < b.simplex;
            });
  index_.reserve(simplices_.size());
  for (std::size_t i = 0; i < simplices_.size(); ++i) index_.emplace(simplices_[i].simplex, i);
}

double FilteredComplex::saturation_radius() const noexcept {
  return simplices_.empty() ? 0.0 : simplices_.back().radius;
}

std::optional<std::size_t> FilteredComplex::index_of(const Simplex& simplex) const {
  const auto it = index_.find(simplex);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FilteredComplex::max_dim() const noexcept {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, s.simplex.dim());
  return d;
}

FilteredComplex build_rips(const Configuration& config, int max_dim) {
  if (max_dim < 0) throw Error(ErrorCode::InvalidArgument, "max_dim must be non-negative");
  const int m = static_cast<int>(config.size());
  const int top = std::min(max_dim, std::min(3, m - 1));
  std::vector<FilteredSimplex> out;
  std::vector<int> stack;
  // Depth-first enumeration of increasing index tuples of size <= top + 1.
  auto visit = [&](auto&& self, int next) -> void {
    if (!stack.empty()) {
      const Simplex s{std::span<const int>(stack)};
      const auto r = rips_birth_radius(s, config);
      out.push_back({s, r.radius, r.attaching});
    }
    if (static_cast<int>(stack.size()) == top + 1) return;
    for (int v = next; v < m; ++v) {
      stack.push_back(v);
      self(self, v + 1);
      stack.pop_back();
    }
  };
  visit(visit, 0);
  return FilteredComplex(FiltrationKind::Rips, std::move(out));
}

FilteredComplex build_alpha(const Configuration& config) {
  return build_alpha(config, delaunay3(config));
}

FilteredComplex build_alpha(const Configuration& config, const DelaunayComplex& complex) {
  const auto all = complex.all_simplices();
  std::unordered_map<Simplex, std::size_t, SimplexHash> at;
  at.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) at.emplace(all[i], i);

  // all_simplices() is ordered by dimension, so faces are handled first.
  std::vector<double> rho(all.size(), 0.0);
  std::vector<char> attaching(all.size(), 1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Simplex& s = all[i];
    if (s.size() == 1) continue;
    const auto pts = simplex_points(s, config);
    rho[i] = circumradius(pts);
    attaching[i] = is_attaching(s, config) ? 1 : 0;
    if (s.size() < 3) continue;
    // A vertex on the circumsphere of the opposite facet means both share the
    // same smallest sphere; reuse the facet value so the radii tie exactly.
    for (int k = 0; k < s.size(); ++k) {
      const Simplex f = s.face(k);
      const auto fpts = simplex_points(f, config);
      if (predicates::circumsphere_side(fpts, pts[static_cast<std::size_t>(k)]) == 0) {
        rho[i] = rho[at.at(f)];
      }
    }
  }

  std::vector<FilteredSimplex> out(all.size());
  for (std::size_t i = all.size(); i-- > 0;) {
    const Simplex& s = all[i];
    auto& fs = out[i];
    fs.simplex = s;
    fs.radius = rho[i];
    fs.attaching = s;
    if (attaching[i]) continue;
    bool found = false;
    for (const auto& co : complex.cofacets(s)) {
      const auto& c = out[at.at(co)];
      if (!found || c.radius < fs.radius) {
        fs.radius = c.radius;
        fs.attaching = c.attaching;
        found = true;
      }
    }
  }

  // Guard the prefix property against rounding in nearly tied radii.
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Simplex& s = all[i];
    if (s.size() == 1) continue;
    for (int k = 0; k < s.size(); ++k) {
      out[i].radius = std::max(out[i].radius, out[at.at(s.face(k))].radius);
    }
  }
  return FilteredComplex(FiltrationKind::Alpha, std::move(out));
}

FilteredComplex build_filtration(const Configuration& config, FiltrationKind kind, int max_dim) {
  return kind == FiltrationKind::Rips ? build_rips(config, max_dim) : build_alpha(config);
}

namespace {

void write_vertices(std::ostream& out, const Simplex& s) {
  for (int i = 0; i < s.size(); ++i) {
    if (i) out << ' ';
    out << s[i];
  }
}

}  // namespace

void write_csv(std::ostream& out, const FilteredComplex& complex) {
  out << "dim,vertices,birth_radius,attaching_vertices\n";
  out << std::setprecision(17);
  for (const auto& fs : complex.simplices()) {
    out << fs.simplex.dim() << ',';
    write_vertices(out, fs.simplex);
    out << ',' << fs.radius << ',';
    write_vertices(out, fs.attaching);
    out << '\n';
  }
}

}  // namespace pdcont
