#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pdcont/delaunay.hpp"
#include "pdcont/geometry.hpp"

namespace pdcont {

enum class FiltrationKind { Rips, Alpha };

std::string_view to_string(FiltrationKind kind) noexcept;
/// Accepts "rips"/"vr" and "alpha" (throws InvalidArgument otherwise).
FiltrationKind parse_filtration_kind(std::string_view name);

struct FilteredSimplex {
  Simplex simplex;
  double radius = 0.0;
  /// The simplex whose own radius function gives `radius`: the longest edge in
  /// Vietoris-Rips, the attaching coface (or the simplex itself) in alpha.
  Simplex attaching;
};

/// Simplices sorted by (radius, dimension, vertex tuple). Every prefix is a
/// subcomplex.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(FiltrationKind kind, std::vector<FilteredSimplex> simplices);

  FiltrationKind kind() const noexcept { return kind_; }
  const std::vector<FilteredSimplex>& simplices() const noexcept { return simplices_; }
  const FilteredSimplex& operator[](std::size_t i) const { return simplices_[i]; }
  std::size_t size() const noexcept { return simplices_.size(); }
  /// Radius after which nothing changes (0 for a single vertex).
  double saturation_radius() const noexcept;
  /// Position of a simplex in the order, if present.
  std::optional<std::size_t> index_of(const Simplex& simplex) const;
  int max_dim() const noexcept;

 private:
  FiltrationKind kind_ = FiltrationKind::Alpha;
  std::vector<FilteredSimplex> simplices_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
};

/// Vietoris-Rips filtration with every simplex of dimension <= max_dim.
FilteredComplex build_rips(const Configuration& config, int max_dim = 3);

/// Alpha filtration on the Delaunay complex. Attaching simplices are born at
/// their circumradius; the others inherit the smallest birth radius among
/// their cofacets.
FilteredComplex build_alpha(const Configuration& config);
FilteredComplex build_alpha(const Configuration& config, const DelaunayComplex& complex);

FilteredComplex build_filtration(const Configuration& config, FiltrationKind kind,
                                 int max_dim = 3);

/// CSV with header "dim,vertices,birth_radius,attaching_vertices"; vertex
/// lists are space separated.
void write_csv(std::ostream& out, const FilteredComplex& complex);

}  // namespace pdcont
