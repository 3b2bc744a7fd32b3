#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mcs/errors.hpp"
#include "mcs/geo.hpp"

using namespace mcs;

namespace {

Location geo(double lon, double lat) {
  return {CoordMode::geographic, lon, lat};
}
Location planar(double x, double y) {
  return {CoordMode::planar, x, y};
}

}  // namespace

TEST_CASE("distance identity and simple values") {
  CHECK(distance(planar(4, 9), planar(4, 9)) == 0.0);
  CHECK(distance(geo(12, -7), geo(12, -7)) == 0.0);
  CHECK(distance(planar(0, 0), planar(3, 4)) == doctest::Approx(5.0));
  // One degree of latitude along a meridian: pi * R / 180.
  CHECK(std::abs(distance(geo(0, 0), geo(0, 1)) - 111194.93) < 0.01);
}

TEST_CASE("mixed modes are rejected") {
  CHECK_THROWS_AS(distance(geo(0, 0), planar(0, 0)), ModeMismatchError);
  CHECK_THROWS_AS(build_distance_matrix({geo(0, 0), planar(0, 0)}),
                  ModeMismatchError);
}

TEST_CASE("location validation") {
  CHECK_THROWS_AS(validate(geo(0, 91)), ParameterError);
  CHECK_THROWS_AS(validate(geo(181, 0)), ParameterError);
  CHECK_NOTHROW(validate(geo(-180, -90)));
  CHECK_THROWS_AS(validate(planar(std::nan(""), 0)), ParameterError);
}

TEST_CASE("distance matrix basics") {
  const auto single = build_distance_matrix({planar(5, 5)});
  CHECK(single.n == 1);
  CHECK(single.at(0, 0) == 0.0);

  const auto two = build_distance_matrix({planar(0, 0), planar(0, 70)});
  CHECK(two.at(0, 1) == doctest::Approx(70.0));
  CHECK(two.at(1, 0) == doctest::Approx(70.0));

  CHECK_THROWS_AS(build_distance_matrix({}), ParameterError);
}

TEST_CASE("matrix entries match pairwise calls") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-80, 80);
  std::vector<Location> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(geo(lon(rng), lat(rng)));
  const auto m = build_distance_matrix(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      CHECK(m.at(i, j) == distance(pts[i], pts[j]));
    }
  }
}

TEST_CASE("metric properties on random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lon(-179, 179), lat(-85, 85);
  for (int trial = 0; trial < 200; ++trial) {
    const Location a = geo(lon(rng), lat(rng));
    const Location b = geo(lon(rng), lat(rng));
    const Location c = geo(lon(rng), lat(rng));
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, a) == 0.0);
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-6);
  }
}

TEST_CASE("longitude translation invariance") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> lon(-90, 90), lat(-85, 85), off(-80, 80);
  for (int trial = 0; trial < 200; ++trial) {
    const double shift = off(rng);
    const Location a = geo(lon(rng), lat(rng));
    const Location b = geo(lon(rng), lat(rng));
    const Location a2 = geo(a.x + shift, a.y);
    const Location b2 = geo(b.x + shift, b.y);
    CHECK(std::abs(distance(a, b) - distance(a2, b2)) < 1e-6);
  }
}
