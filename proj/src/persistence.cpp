#include "pdcont/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "pdcont/error.hpp"

namespace pdcont {

BoundaryMatrix boundary_matrix(const FilteredComplex& complex) {
  BoundaryMatrix b;
  b.columns.resize(complex.size());
  b.dims.resize(complex.size());
  for (std::size_t j = 0; j < complex.size(); ++j) {
    const Simplex& s = complex[j].simplex;
    b.dims[j] = s.dim();
    if (s.size() == 1) continue;
    auto& col = b.columns[j];
    for (int k = 0; k < s.size(); ++k) {
      const auto row = complex.index_of(s.face(k));
      if (!row) throw Error(ErrorCode::InvalidArgument, "filtration is not closed under faces");
      if (*row >= j) throw Error(ErrorCode::InvalidArgument, "a face appears after its coface");
      col.emplace_back(*row, mpq_class(k % 2 == 0 ? 1 : -1));
    }
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return b;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Gf2 {
  bool one = false;
};

bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
bool is_zero(Gf2 v) { return !v.one; }

template <typename F>
F convert(const mpq_class& v);
template <>
mpq_class convert<mpq_class>(const mpq_class& v) { return v; }
template <>
Gf2 convert<Gf2>(const mpq_class& v) {
  // Entries are +-1; both are 1 modulo 2.
  return Gf2{!is_zero(v)};
}

template <typename F>
using Column = std::vector<std::pair<std::size_t, F>>;

// target -= factor * source, both sorted by row.
template <typename F>
void eliminate(Column<F>& target, const Column<F>& source, const F& factor) {
  Column<F> out;
  out.reserve(target.size() + source.size());
  std::size_t a = 0, b = 0;
  while (a < target.size() || b < source.size()) {
    if (b == source.size() || (a < target.size() && target[a].first < source[b].first)) {
      out.push_back(std::move(target[a++]));
    } else if (a == target.size() || source[b].first < target[a].first) {
      if constexpr (std::is_same_v<F, Gf2>) {
        out.emplace_back(source[b].first, source[b].second);
      } else {
        out.emplace_back(source[b].first, F(-factor * source[b].second));
      }
      ++b;
    } else {
      F v;
      if constexpr (std::is_same_v<F, Gf2>) {
        v = Gf2{target[a].second.one != source[b].second.one};
      } else {
        v = target[a].second - factor * source[b].second;
      }
      if (!is_zero(v)) out.emplace_back(target[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  target = std::move(out);
}

template <typename F>
F pivot_ratio(const F& num, const F& den) {
  if constexpr (std::is_same_v<F, Gf2>) {
    return Gf2{true};
  } else {
    return num / den;
  }
}

template <typename F>
Reduction reduce_impl(const BoundaryMatrix& matrix, bool twist) {
  const std::size_t n = matrix.size();
  std::vector<Column<F>> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [row, v] : matrix.columns[j]) cols[j].emplace_back(row, convert<F>(v));
  }
  std::vector<std::size_t> pivot_owner(n, kNone);
  std::vector<char> cleared(n, 0);

  auto reduce_column = [&](std::size_t j) {
    auto& col = cols[j];
    while (!col.empty()) {
      const std::size_t low = col.back().first;
      const std::size_t k = pivot_owner[low];
      if (k == kNone) {
        pivot_owner[low] = j;
        if (twist) {
          cleared[low] = 1;
          cols[low].clear();
        }
        return;
      }
      const F factor = pivot_ratio(col.back().second, cols[k].back().second);
      eliminate(col, cols[k], factor);
    }
  };

  if (twist) {
    int top = 0;
    for (int d : matrix.dims) top = std::max(top, d);
    for (int d = top; d >= 1; --d) {
      for (std::size_t j = 0; j < n; ++j) {
        if (matrix.dims[j] == d && !cleared[j]) reduce_column(j);
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) reduce_column(j);
  }

  Reduction out;
  std::vector<char> is_birth(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (pivot_owner[i] != kNone) {
      out.pairs.emplace_back(i, pivot_owner[i]);
      is_birth[i] = 1;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (cols[j].empty() && !is_birth[j]) out.essentials.push_back(j);
  }
  return out;
}

}  // namespace

Reduction reduce(const BoundaryMatrix& matrix) { return reduce_impl<mpq_class>(matrix, false); }
Reduction reduce_twist(const BoundaryMatrix& matrix) { return reduce_impl<mpq_class>(matrix, true); }
Reduction reduce_mod2(const BoundaryMatrix& matrix) { return reduce_impl<Gf2>(matrix, false); }

Eigen::VectorXd PersistenceData::vector(bool with_essentials) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coordinate_count(with_essentials)));
  Eigen::Index k = 0;
  for (const auto& p : pairs) {
    v[k++] = p.birth;
    v[k++] = p.death;
  }
  if (with_essentials) {
    for (const auto& e : essentials) v[k++] = e.birth;
  }
  return v;
}

Diagram PersistenceData::diagram() const {
  Diagram d;
  for (const auto& p : pairs) d.push_back({p.birth, p.death});
  for (const auto& e : essentials) d.push_back({e.birth, std::numeric_limits<double>::infinity()});
  return d;
}

PersistenceData persistence_data(Reduction reduction, const FilteredComplex& complex, int dim,
                                 double epsilon) {
  if (dim < 0) throw Error(ErrorCode::InvalidArgument, "homology dimension must be non-negative");
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");
  PersistenceData data;
  data.kind = complex.kind();
  data.dim = dim;
  data.epsilon = epsilon;
  for (const auto& [i, j] : reduction.pairs) {
    const auto& b = complex[i];
    const auto& d = complex[j];
    if (b.simplex.dim() != dim) continue;
    // Zero-length intervals are not part of the diagram.
    if (!(d.radius > b.radius)) continue;
    if ((d.radius - b.radius) / 2.0 < epsilon) continue;
    data.pairs.push_back({i, j, b.simplex, d.simplex, b.attaching, d.attaching, b.radius, d.radius});
  }
  std::sort(data.pairs.begin(), data.pairs.end(), [](const auto& x, const auto& y) {
    if (x.birth != y.birth) return x.birth < y.birth;
    if (x.death != y.death) return x.death < y.death;
    return x.birth_index < y.birth_index;
  });
  for (std::size_t i : reduction.essentials) {
    const auto& s = complex[i];
    if (s.simplex.dim() == dim) data.essentials.push_back({i, s.simplex, s.attaching, s.radius});
  }
  data.complex = complex;
  data.reduction = std::move(reduction);
  return data;
}

PersistenceData diagram(const Configuration& config, FiltrationKind kind, int dim, double epsilon) {
  const auto fc = build_filtration(config, kind, dim + 1);
  return persistence_data(reduce(boundary_matrix(fc)), fc, dim, epsilon);
}

std::string format9(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_diagram_json(std::ostream& out, const PersistenceData& data) {
  out << "{\"dim\": " << data.dim << ", \"epsilon\": " << format9(data.epsilon) << ", \"pairs\": [";
  for (std::size_t k = 0; k < data.pairs.size(); ++k) {
    if (k) out << ", ";
    out << '[' << format9(data.pairs[k].birth) << ", " << format9(data.pairs[k].death) << ']';
  }
  out << "], \"essential\": [";
  for (std::size_t k = 0; k < data.essentials.size(); ++k) {
    if (k) out << ", ";
    out << format9(data.essentials[k].birth);
  }
  out << "]}\n";
}

void write_diagram_csv(std::ostream& out, const PersistenceData& data) {
  out << "birth,death\n";
  for (const auto& p : data.pairs) out << format9(p.birth) << ',' << format9(p.death) << '\n';
  for (const auto& e : data.essentials) out << format9(e.birth) << ",inf\n";
}

}  // namespace pdcont
