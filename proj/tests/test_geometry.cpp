#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "doctest.h"
#include "oracles.hpp"
#include "pdcont/error.hpp"
#include "pdcont/geometry.hpp"

using namespace pdcont;

namespace {

std::vector<Point3> example1() {
  return {{0, 0, 0}, {8, 0, 0}, {5, 6, 0}, {4, 2, 6}};
}

Eigen::Matrix3d random_rotation(Rng& rng) {
  Eigen::Vector4d q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
}

}  // namespace

TEST_CASE("pack uses the gauge layout") {
  Configuration c({{0, 0, 0}, {1, 0, 0}, {0.5, 0.5, 0}}, true);
  const auto v = c.pack();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.5);
  CHECK(v[2] == 0.5);

  Configuration ex1(example1(), true);
  CHECK(ex1.free_dim() == 6);
  CHECK(ex1.pack().size() == 6);
  CHECK(Configuration(example1(), false).free_dim() == 12);
}

TEST_CASE("pack and unpack round-trip bit for bit") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = oracle::random_points(rng, 7, -3, 3);
    const auto c = to_gauge_frame(pts);
    const auto back = c.unpack(c.pack());
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(back.point(i) == c.point(i));
  }
}

TEST_CASE("gauge violations are rejected") {
  CHECK_THROWS_AS(Configuration({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}}, true), Error);
  try {
    Configuration({{0, 0, 0}, {1, 0.1, 0}, {0, 1, 0}}, true);
    FAIL("expected GaugeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GaugeViolation);
  }
  Configuration c({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, true);
  CHECK_THROWS_AS(c.unpack(Eigen::VectorXd::Zero(4)), Error);
}

TEST_CASE("gauge frame preserves distances") {
  Rng rng(5);
  const auto pts = oracle::random_points(rng, 6, -2, 2);
  const auto c = to_gauge_frame(pts);
  CHECK(c.point(0) == Point3::Zero());
  CHECK(c.point(1).y() == 0.0);
  CHECK(c.point(1).z() == 0.0);
  CHECK(c.point(2).z() == 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      CHECK((c.point(i) - c.point(j)).norm() ==
            doctest::Approx((pts[i] - pts[j]).norm()).epsilon(1e-13));
    }
  }
}

TEST_CASE("circumradius of reference simplices") {
  const std::vector<Point3> edge{{0, 0, 0}, {2, 0, 0}};
  CHECK(circumradius(edge) == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<Point3> tri{{0, 0, 0}, {2, 0, 0}, {1, std::sqrt(3.0), 0}};
  CHECK(circumradius(tri) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

  // Regular tetrahedron of side 1.
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Point3> reg{{0.5, 0, 0}, {-0.5, 0, 0}, {0, 0.5, s}, {0, -0.5, s}};
  CHECK(circumradius(reg) == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-12));
  CHECK(circumradius(reg) == doctest::Approx(oracle::circumsphere(reg).radius).epsilon(1e-12));
}

TEST_CASE("circumradius agrees with the circumsphere oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const auto p = oracle::random_points(rng, k, -5, 5);
      const double expected = oracle::circumsphere(p).radius;
      CHECK(circumradius(p) == doctest::Approx(expected).epsilon(1e-9));
      const Point3 c = circumcenter(p);
      CHECK((c - oracle::circumsphere(p).center).norm() <= 1e-8 * (1 + expected));
    }
  }
}

TEST_CASE("circumradius rejects degenerate simplices") {
  const std::vector<Point3> same{{1, 1, 1}, {1, 1, 1}};
  CHECK_THROWS_AS(circumradius(same), Error);
  const std::vector<Point3> line{{0, 0, 0}, {1, 0, 0}, {3, 0, 0}};
  CHECK_THROWS_AS(circumradius(line), Error);
  const std::vector<Point3> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  try {
    circumradius(flat);
    FAIL("expected DegenerateSimplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSimplex);
  }
}

TEST_CASE("edge gradient is half the unit vector") {
  const Point3 a(1, 2, 3), b(-1, 0.5, 4);
  const std::vector<Point3> edge{a, b};
  const auto g = circumradius_gradient(edge);
  const Point3 expected = 0.5 * (a - b) / (a - b).norm();
  CHECK((g.gradient[0] - expected).norm() < 1e-15);
  CHECK((g.gradient[1] + expected).norm() < 1e-15);
}

TEST_CASE("equilateral triangle gradient is translation invariant") {
  const std::vector<Point3> tri{{0, 0, 0}, {2, 0, 0}, {1, std::sqrt(3.0), 0}};
  const auto g = circumradius_gradient(tri);
  double sx = 0, sy = 0, sz = 0;
  for (const auto& row : g.gradient) {
    sx += row.x();
    sy += row.y();
    sz += row.z();
  }
  CHECK(std::abs(sx) < 1e-14);
  CHECK(std::abs(sy) < 1e-14);
  CHECK(std::abs(sz) < 1e-14);
}

TEST_CASE("circumradius gradient matches finite differences and the barycentric oracle") {
  Rng rng(3);
  double worst_fd = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const auto p = oracle::random_points(rng, k, -2, 2);
      const auto g = circumradius_gradient(p);
      const auto bary = oracle::radius_gradient(p);

      std::vector<double> x;
      for (const auto& q : p) x.insert(x.end(), {q.x(), q.y(), q.z()});
      auto f = [k](const std::vector<double>& y) {
        std::vector<Point3> q(k);
        for (std::size_t i = 0; i < k; ++i) q[i] = Point3(y[3 * i], y[3 * i + 1], y[3 * i + 2]);
        return oracle::circumsphere(q).radius;
      };
      const auto fd = oracle::fd_gradient(f, x);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        CHECK((g.gradient[i] - bary[i]).norm() <= 1e-8 * (1.0 + bary[i].norm()));
        for (int a = 0; a < 3; ++a) {
          num = std::max(num, std::abs(g.gradient[i][a] - fd[3 * i + static_cast<std::size_t>(a)]));
          den = std::max(den, std::abs(fd[3 * i + static_cast<std::size_t>(a)]));
        }
      }
      worst_fd = std::max(worst_fd, num / den);
    }
  }
  CHECK(worst_fd <= 1e-6);
}

TEST_CASE("circumradius is invariant under rigid motions") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 3);
    auto p = oracle::random_points(rng, k, -1, 1);
    const double rho = circumradius(p);
    const auto rot = random_rotation(rng);
    const Point3 t(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (auto& q : p) q = rot * q + t;
    CHECK(std::abs(circumradius(p) - rho) <= 1e-12 * rho);
  }
}

TEST_CASE("circumradius gradient is orthogonal to rigid motions") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 3);
    const auto p = oracle::random_points(rng, k, -1, 1);
    const auto g = circumradius_gradient(p);
    for (int axis = 0; axis < 3; ++axis) {
      Point3 e = Point3::Zero();
      e[axis] = 1.0;
      double translate = 0.0, rotate = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        translate += g.gradient[i].dot(e);
        rotate += g.gradient[i].dot(e.cross(p[i]));
      }
      CHECK(std::abs(translate) < 1e-9);
      CHECK(std::abs(rotate) < 1e-9);
    }
  }
}

TEST_CASE("rips birth radius") {
  Configuration tri({{0, 0, 0}, {3, 0, 0}, {0, 4, 0}}, false);
  CHECK(rips_birth_radius(Simplex{1}, tri).radius == 0.0);
  const auto r = rips_birth_radius(Simplex{0, 1, 2}, tri);
  CHECK(r.radius == doctest::Approx(2.5));
  CHECK(r.attaching == Simplex{1, 2});
  CHECK_FALSE(r.tie);

  Configuration ex1(example1(), false);
  double longest = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      longest = std::max(longest, (ex1.point(static_cast<std::size_t>(i)) -
                                   ex1.point(static_cast<std::size_t>(j))).norm());
    }
  }
  CHECK(rips_birth_radius(Simplex{0, 1, 2, 3}, ex1).radius == doctest::Approx(longest / 2));

  Configuration square({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, false);
  CHECK(rips_birth_radius(Simplex{0, 1, 2, 3}, square).tie);
}

TEST_CASE("rips radius is monotone under taking faces") {
  Rng rng(4);
  const Configuration c(oracle::random_points(rng, 6), false);
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int d = b + 1; d < 6; ++d)
        for (int e = d + 1; e < 6; ++e) {
          const Simplex s{a, b, d, e};
          const double r = rips_birth_radius(s, c).radius;
          for (int k = 0; k < 4; ++k) CHECK(rips_birth_radius(s.face(k), c).radius <= r);
        }
}

TEST_CASE("jitter is reproducible and small") {
  const auto pts = example1();
  const auto a = jitter(pts, 42);
  const auto b = jitter(pts, 42);
  const double scale = Configuration(pts, false).scale();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK((a[i] - pts[i]).lpNorm<Eigen::Infinity>() <= 1e-9 * scale);
  }
}
