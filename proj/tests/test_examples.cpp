#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pdcont/error.hpp"
#include "pdcont/examples.hpp"

using namespace pdcont;

namespace {

PersistenceData start_data(const ExampleRun& run) {
  return evaluate(example_configuration(run), run.options).data;
}

}  // namespace

TEST_CASE("dodecahedron") {
  const auto pts = dodecahedron();
  REQUIRE(pts.size() == 20);
  for (const auto& p : pts) CHECK(p.norm() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  // Each vertex has three neighbours at the edge length 2 / phi.
  const double edge = 2.0 / std::numbers::phi;
  for (const auto& p : pts) {
    int near = 0;
    double nearest = 1e9;
    for (const auto& q : pts) {
      if (&p == &q) continue;
      const double d = (p - q).norm();
      nearest = std::min(nearest, d);
      near += std::abs(d - edge) < 1e-12;
    }
    CHECK(near == 3);
    CHECK(nearest == doctest::Approx(edge).epsilon(1e-14));
  }
}

TEST_CASE("fibonacci sphere") {
  const auto pts = fibonacci_sphere(100);
  REQUIRE(pts.size() == 100);
  for (const auto& p : pts) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-14));
  Point3 mean = Point3::Zero();
  for (const auto& p : pts) mean += p;
  CHECK((mean / 100.0).norm() < 0.02);
}

TEST_CASE("example inputs and starting diagrams") {
  SUBCASE("tetrahedron") {
    const auto d = start_data(example_run(1));
    REQUIRE(d.pairs.size() == 1);
    CHECK(d.pairs[0].birth == doctest::Approx(4.42719).epsilon(1e-5));
    CHECK(d.pairs[0].death == doctest::Approx(4.59015).epsilon(1e-5));
  }
  SUBCASE("near-regular tetrahedron") {
    const auto d = start_data(example_run(3));
    REQUIRE(d.pairs.size() == 1);
    CHECK(std::abs(d.pairs[0].birth - 5.76831) < 5e-5);
    CHECK(std::abs(d.pairs[0].death - 6.11821) < 5e-5);
  }
  SUBCASE("one-dimensional pairs") {
    const auto d = start_data(example_run(4));
    REQUIRE(d.pairs.size() == 2);
    CHECK(std::abs(d.pairs[0].birth - 0.758288) < 5e-5);
    CHECK(std::abs(d.pairs[1].death - 0.834393) < 5e-5);
  }
  SUBCASE("dodecahedron: face circumradius to circumradius") {
    const auto run = example_run(5);
    const auto d = start_data(run);
    REQUIRE(d.pairs.size() == 1);
    const double face = (2.0 / std::numbers::phi) / (2.0 * std::sin(std::numbers::pi / 5.0));
    CHECK(std::abs(d.pairs[0].birth - face) < 1e-6);
    CHECK(std::abs(d.pairs[0].death - std::sqrt(3.0)) < 1e-6);
    const auto target = example_target(run, d);
    CHECK(target[0] == doctest::Approx(d.pairs[0].birth + 0.5));
    CHECK(target[1] == doctest::Approx(d.pairs[0].death + 0.5));
  }
  SUBCASE("sphere: one dominant void") {
    const auto run = example_run(6);
    const auto full = evaluate(example_configuration(run), {.kind = FiltrationKind::Alpha, .dim = 2}).data;
    std::vector<double> pers;
    for (const auto& p : full.pairs) pers.push_back(p.persistence());
    std::sort(pers.rbegin(), pers.rend());
    REQUIRE(pers.size() >= 1);
    if (pers.size() > 1) CHECK(pers[0] >= 5.0 * pers[1]);
    const auto d = start_data(run);
    CHECK(d.pairs.size() == 1);
  }
}

TEST_CASE("examples are reproducible from the seed") {
  CHECK(example_run(6, 7).points == example_run(6, 7).points);
  CHECK(example_run(6, 7).points != example_run(6, 8).points);
  CHECK(example_run(5).points == example_run(5, kDefaultJitterSeed).points);
}

TEST_CASE("explicit targets and errors") {
  const auto run = example_run(4);
  CHECK(example_target(run, start_data(run)) == run.target);
  CHECK_THROWS_AS(example_run(0), Error);
  CHECK_THROWS_AS(example_run(7), Error);
  ExampleRun empty;
  empty.offset = 1.0;
  CHECK_THROWS_AS(example_target(empty, PersistenceData{}), Error);
}
