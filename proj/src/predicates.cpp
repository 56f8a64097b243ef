#include "pdcont/predicates.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <gmpxx.h>

#include "pdcont/error.hpp"

namespace pdcont::predicates {

namespace {

// Error-bound constants from Shewchuk's adaptive predicates (round-to-nearest
// doubles, epsilon = 2^-53).
constexpr double kEpsilon = 0x1.0p-53;
constexpr double kOrient3dBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;
constexpr double kInsphereBound = (16.0 + 224.0 * kEpsilon) * kEpsilon;

template <typename T>
int sign(const T& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

// det[a-d; b-d; c-d] in the reference layout; its sign is the negative of
// orient3d as defined in the header.
template <typename T>
T orient_det(const T& adx, const T& ady, const T& adz, const T& bdx, const T& bdy, const T& bdz,
             const T& cdx, const T& cdy, const T& cdz) {
  return adz * (bdx * cdy - cdx * bdy) + bdz * (cdx * ady - adx * cdy) +
         cdz * (adx * bdy - bdx * ady);
}

int orient_exact(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  std::array<mpq_class, 9> v;
  for (int i = 0; i < 3; ++i) {
    v[i] = mpq_class(a[i]) - mpq_class(d[i]);
    v[3 + i] = mpq_class(b[i]) - mpq_class(d[i]);
    v[6 + i] = mpq_class(c[i]) - mpq_class(d[i]);
  }
  const mpq_class det = orient_det<mpq_class>(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]);
  return -sign(det);
}

template <typename T>
T insphere_det(const std::array<std::array<T, 3>, 4>& p) {
  const auto& [aex, aey, aez] = p[0];
  const auto& [bex, bey, bez] = p[1];
  const auto& [cex, cey, cez] = p[2];
  const auto& [dex, dey, dez] = p[3];
  const T ab = aex * bey - bex * aey;
  const T bc = bex * cey - cex * bey;
  const T cd = cex * dey - dex * cey;
  const T da = dex * aey - aex * dey;
  const T ac = aex * cey - cex * aey;
  const T bd = bex * dey - dex * bey;
  const T abc = aez * bc - bez * ac + cez * ab;
  const T bcd = bez * cd - cez * bd + dez * bc;
  const T cda = cez * da + dez * ac + aez * cd;
  const T dab = dez * ab + aez * bd + bez * da;
  const T alift = aex * aex + aey * aey + aez * aez;
  const T blift = bex * bex + bey * bey + bez * bez;
  const T clift = cex * cex + cey * cey + cez * cez;
  const T dlift = dex * dex + dey * dey + dez * dez;
  return (dlift * abc - clift * dab) + (blift * cda - alift * bcd);
}

// Magnitude arithmetic: evaluating a polynomial with every input replaced by
// its absolute value and every subtraction by an addition bounds the rounding
// error of the floating-point evaluation (times depth * epsilon).
struct Magnitude {
  double v;
  Magnitude(double x) : v(std::abs(x)) {}  // NOLINT(google-explicit-constructor)
};
Magnitude operator+(Magnitude a, Magnitude b) { return Magnitude(a.v + b.v); }
Magnitude operator-(Magnitude a, Magnitude b) { return Magnitude(a.v + b.v); }
Magnitude operator*(Magnitude a, Magnitude b) { return Magnitude(a.v * b.v); }

template <typename T>
std::array<T, 3> diff(const Point3& x, const Point3& y) {
  return {T(x[0]) - T(y[0]), T(x[1]) - T(y[1]), T(x[2]) - T(y[2])};
}

template <typename T>
T dot(const std::array<T, 3>& x, const std::array<T, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

template <typename T>
std::array<T, 3> cross(const std::array<T, 3>& x, const std::array<T, 3>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

// (a - p) . (b - p): negative iff p is strictly inside the diametral sphere.
template <typename T>
T edge_power(const Point3& a, const Point3& b, const Point3& p) {
  return dot(diff<T>(a, p), diff<T>(b, p));
}

// |p - c|^2 - rho^2 scaled by |n|^2 > 0, where c is the circumcenter of abc
// in its plane and n = (b - a) x (c - a).
template <typename T>
T triangle_power(const Point3& a, const Point3& b, const Point3& c, const Point3& p) {
  const auto u = diff<T>(b, a);
  const auto v = diff<T>(c, a);
  const auto w = diff<T>(p, a);
  const auto n = cross(u, v);
  const T uu = dot(u, u);
  const T vv = dot(v, v);
  const std::array<T, 3> x{uu * v[0] - vv * u[0], uu * v[1] - vv * u[1], uu * v[2] - vv * u[2]};
  return dot(w, w) * dot(n, n) - dot(w, cross(x, n));
}

template <typename Fn>
int filtered_sign(Fn&& fn, double depth) {
  const double approx = fn(double{});
  const double bound = depth * kEpsilon * (1.0 + 4.0 * kEpsilon) * fn(Magnitude(0.0)).v;
  if (approx > bound) return 1;
  if (-approx > bound) return -1;
  return sign(fn(mpq_class{}));
}

}  // namespace

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y(), adz = a.z() - d.z();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y(), bdz = b.z() - d.z();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y(), cdz = c.z() - d.z();

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double bound = kOrient3dBound * permanent;
  if (det > bound || -det > bound) return -sign(det);
  return orient_exact(a, b, c, d);
}

int insphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& e) {
  std::array<std::array<double, 3>, 4> p;
  const std::array<const Point3*, 4> src{&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) p[i][k] = (*src[i])[k] - e[k];
  }
  const double det = insphere_det<double>(p);

  const auto& [aex, aey, aez] = p[0];
  const auto& [bex, bey, bez] = p[1];
  const auto& [cex, cey, cez] = p[2];
  const auto& [dex, dey, dez] = p[3];
  const double aexbey = std::abs(aex * bey), bexaey = std::abs(bex * aey);
  const double bexcey = std::abs(bex * cey), cexbey = std::abs(cex * bey);
  const double cexdey = std::abs(cex * dey), dexcey = std::abs(dex * cey);
  const double dexaey = std::abs(dex * aey), aexdey = std::abs(aex * dey);
  const double aexcey = std::abs(aex * cey), cexaey = std::abs(cex * aey);
  const double bexdey = std::abs(bex * dey), dexbey = std::abs(dex * bey);
  const double alift = aex * aex + aey * aey + aez * aez;
  const double blift = bex * bex + bey * bey + bez * bez;
  const double clift = cex * cex + cey * cey + cez * cez;
  const double dlift = dex * dex + dey * dey + dez * dez;
  const double az = std::abs(aez), bz = std::abs(bez), cz = std::abs(cez), dz = std::abs(dez);
  const double permanent =
      ((cexdey + dexcey) * bz + (dexbey + bexdey) * cz + (bexcey + cexbey) * dz) * alift +
      ((dexaey + aexdey) * cz + (aexcey + cexaey) * dz + (cexdey + dexcey) * az) * blift +
      ((aexbey + bexaey) * dz + (bexdey + dexbey) * az + (dexaey + aexdey) * bz) * clift +
      ((bexcey + cexbey) * az + (cexaey + aexcey) * bz + (aexbey + bexaey) * cz) * dlift;
  const double bound = kInsphereBound * permanent;
  // The reference determinant is positive for "inside" only on negatively
  // oriented tetrahedra in our convention, hence the sign flip.
  if (det > bound || -det > bound) return -sign(det);

  std::array<std::array<mpq_class, 3>, 4> q;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) q[i][k] = mpq_class((*src[i])[k]) - mpq_class(e[k]);
  }
  return -sign(insphere_det<mpq_class>(q));
}

int incircle_coplanar(const Point3& a, const Point3& b, const Point3& c, const Point3& p) {
  // Any sphere through the circumcircle of abc cuts the plane of abc exactly
  // in that circle, so lift one extra point off the plane and test p against
  // the sphere through the four points.
  const Point3 normal = (b - a).cross(c - a);
  for (double scale : {1.0, 2.0, 0.5, 4.0}) {
    const Point3 lifted = a + scale * normal;
    const int o = orient3d(a, b, c, lifted);
    if (o > 0) return insphere(a, b, c, lifted, p);
    if (o < 0) return insphere(a, c, b, lifted, p);
  }
  return 0;
}

int circumsphere_side(std::span<const Point3> simplex, const Point3& p) {
  switch (simplex.size()) {
    case 1:
      return simplex[0] == p ? 0 : 1;
    case 2: {
      const auto& a = simplex[0];
      const auto& b = simplex[1];
      if (a == b) break;
      return filtered_sign(
          [&]<typename T>(T) { return edge_power<T>(a, b, p); }, 8.0);
    }
    case 3: {
      const auto& a = simplex[0];
      const auto& b = simplex[1];
      const auto& c = simplex[2];
      if (collinear(a, b, c)) break;
      return filtered_sign(
          [&]<typename T>(T) { return triangle_power<T>(a, b, c, p); }, 32.0);
    }
    case 4: {
      const int o = orient3d(simplex[0], simplex[1], simplex[2], simplex[3]);
      if (o > 0) return -insphere(simplex[0], simplex[1], simplex[2], simplex[3], p);
      if (o < 0) return -insphere(simplex[1], simplex[0], simplex[2], simplex[3], p);
      break;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "simplex must have 1 to 4 vertices");
  }
  throw Error(ErrorCode::DegenerateSimplex, "circumsphere of a degenerate simplex is undefined");
}

bool collinear(const Point3& a, const Point3& b, const Point3& c) {
  // Any cross-product component clearly away from zero settles it.
  const Point3 du = b - a, dv = c - a;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double x = du[j] * dv[k] - du[k] * dv[j];
    if (std::abs(x) > 8.0 * eps * (std::abs(du[j] * dv[k]) + std::abs(du[k] * dv[j]))) return false;
  }
  std::array<mpq_class, 3> u, v;
  for (int i = 0; i < 3; ++i) {
    u[i] = mpq_class(b[i]) - mpq_class(a[i]);
    v[i] = mpq_class(c[i]) - mpq_class(a[i]);
  }
  return u[1] * v[2] - u[2] * v[1] == 0 && u[2] * v[0] - u[0] * v[2] == 0 &&
         u[0] * v[1] - u[1] * v[0] == 0;
}

}  // namespace pdcont::predicates
