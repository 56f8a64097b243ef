#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "pdcont/filtration.hpp"

namespace pdcont {

/// Sparse boundary matrix of a filtered complex over the rationals. Column j
/// holds the faces of simplex j as (row, coefficient) with rows increasing;
/// the face obtained by dropping the k-th vertex has coefficient (-1)^k.
struct BoundaryMatrix {
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> columns;
  /// Dimension of each simplex, in filtration order.
  std::vector<int> dims;

  std::size_t size() const noexcept { return columns.size(); }
};

BoundaryMatrix boundary_matrix(const FilteredComplex& complex);

/// Pivot pairs (i, j): the reduced column j has its lowest nonzero in row i.
/// Essential indices: zero reduced columns that are not the row of any pair.
struct Reduction {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> essentials;
};

/// Standard left-to-right column reduction with exact rational arithmetic.
Reduction reduce(const BoundaryMatrix& matrix);
/// Same pairing computed dimension by dimension from the top, clearing the
/// columns of simplices already known to be paired as births.
Reduction reduce_twist(const BoundaryMatrix& matrix);
/// Left-to-right reduction with coefficients in the field of two elements.
Reduction reduce_mod2(const BoundaryMatrix& matrix);

struct PersistencePair {
  std::size_t birth_index = 0;
  std::size_t death_index = 0;
  Simplex birth_simplex;
  Simplex death_simplex;
  /// Simplices whose radius functions give the two coordinates.
  Simplex birth_attaching;
  Simplex death_attaching;
  double birth = 0.0;
  double death = 0.0;

  double persistence() const noexcept { return death - birth; }
};

struct EssentialClass {
  std::size_t index = 0;
  Simplex simplex;
  Simplex attaching;
  double birth = 0.0;
};

struct DiagramPoint {
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();

  auto operator<=>(const DiagramPoint&) const = default;
};

/// A persistence diagram as a multiset of points; essential classes have an
/// infinite death.
using Diagram = std::vector<DiagramPoint>;

/// The finite and essential classes of one homology dimension, after removing
/// zero-length intervals and pairs closer than epsilon to the diagonal.
struct PersistenceData {
  FiltrationKind kind = FiltrationKind::Alpha;
  int dim = 0;
  double epsilon = 0.0;
  /// The filtration the data was extracted from.
  FilteredComplex complex;
  /// Full pairing and essential indices of the reduction (all dimensions).
  Reduction reduction;
  /// Retained finite pairs of dimension `dim`, sorted by (birth, death) unless
  /// reordered to follow an earlier layout.
  std::vector<PersistencePair> pairs;
  std::vector<EssentialClass> essentials;

  /// (b1, d1, ..., bs, ds) followed by the essential births when requested.
  Eigen::VectorXd vector(bool with_essentials = false) const;
  std::size_t coordinate_count(bool with_essentials = false) const noexcept {
    return 2 * pairs.size() + (with_essentials ? essentials.size() : 0);
  }
  Diagram diagram() const;
};

PersistenceData persistence_data(Reduction reduction, const FilteredComplex& complex, int dim,
                                 double epsilon);

/// Filtration, boundary matrix, reduction and extraction in one call. For
/// Vietoris-Rips only simplices up to dimension dim + 1 are generated.
PersistenceData diagram(const Configuration& config, FiltrationKind kind, int dim,
                        double epsilon = 0.0);

/// {"dim": l, "epsilon": e, "pairs": [[b, d], ...], "essential": [b, ...]}
/// with 9 significant digits.
void write_diagram_json(std::ostream& out, const PersistenceData& data);
/// Header "birth,death"; essential classes have death "inf".
void write_diagram_csv(std::ostream& out, const PersistenceData& data);

/// Formats a number with 9 significant digits ("inf" for infinity).
std::string format9(double value);

}  // namespace pdcont
