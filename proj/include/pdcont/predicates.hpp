#pragma once

#include <span>

#include "pdcont/geometry.hpp"

namespace pdcont::predicates {

/// Sign of det[b-a; c-a; d-a]: +1 when (a, b, c, d) is right-handed, i.e. d lies
/// on the side of plane abc that (b-a) x (c-a) points to.
///
/// Evaluated in double precision with a static error bound; when the bound
/// cannot certify the sign, the determinant is recomputed exactly over the
/// rationals from the input doubles. The result is always exact.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

/// +1 if e lies strictly inside the sphere through a, b, c, d, -1 if strictly
/// outside, 0 if on it. (a, b, c, d) must be positively oriented.
int insphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& e);

/// For p coplanar with triangle abc: +1 if p is strictly inside the
/// circumcircle of abc, 0 on it, -1 outside. Exact.
int incircle_coplanar(const Point3& a, const Point3& b, const Point3& c, const Point3& p);

/// Position of p relative to the smallest circumsphere of a simplex with 1 to 4
/// vertices: -1 strictly inside, 0 on the sphere, +1 strictly outside. A
/// single vertex has the degenerate sphere of radius 0. Exact.
int circumsphere_side(std::span<const Point3> simplex, const Point3& p);

/// True if the three points are exactly collinear.
bool collinear(const Point3& a, const Point3& b, const Point3& c);

}  // namespace pdcont::predicates
