#include "mcs/geo.hpp"

#include <cmath>

#include "mcs/errors.hpp"

namespace mcs {

void validate(const Location& loc) {
  if (!std::isfinite(loc.x) || !std::isfinite(loc.y)) {
    throw ParameterError("location coordinates must be finite");
  }
  if (loc.mode == CoordMode::geographic) {
    if (loc.y < -90.0 || loc.y > 90.0) {
      throw ParameterError("latitude out of [-90, 90]");
    }
    if (loc.x < -180.0 || loc.x > 180.0) {
      throw ParameterError("longitude out of [-180, 180]");
    }
  }
}

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

double haversine(const Location& a, const Location& b) {
  const double lat1 = a.y * kDegToRad;
  const double lat2 = b.y * kDegToRad;
  const double dlat = (b.y - a.y) * kDegToRad;
  const double dlon = (b.x - a.x) * kDegToRad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace

double distance(const Location& a, const Location& b) {
  if (a.mode != b.mode) {
    throw ModeMismatchError("cannot mix geographic and planar locations");
  }
  if (a.x == b.x && a.y == b.y) {
    return 0.0;
  }
  if (a.mode == CoordMode::geographic) {
    return haversine(a, b);
  }
  return std::hypot(b.x - a.x, b.y - a.y);
}

DistanceMatrix build_distance_matrix(const std::vector<Location>& points) {
  const std::size_t n = points.size();
  if (n == 0) {
    throw ParameterError("distance matrix needs at least one point");
  }
  for (const auto& p : points) {
    if (p.mode != points.front().mode) {
      throw ModeMismatchError("all points must share one coordinate mode");
    }
  }
  DistanceMatrix m;
  m.n = n;
  m.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(points[i], points[j]);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  }
  return m;
}

}  // namespace mcs
