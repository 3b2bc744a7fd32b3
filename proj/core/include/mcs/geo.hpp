#pragma once

#include <cstddef>
#include <vector>

namespace mcs {

enum class CoordMode { geographic, planar };

// A point on the sphere (lon/lat degrees) or in a local planar frame (meters).
struct Location {
  CoordMode mode = CoordMode::planar;
  double x = 0.0;  // degrees longitude (geographic) or meters east (planar)
  double y = 0.0;  // degrees latitude (geographic) or meters north (planar)

  bool operator==(const Location&) const = default;
};

// Throws ParameterError if the location violates its mode's coordinate ranges.
void validate(const Location& loc);

// Symmetric pairwise distances in meters, zero diagonal.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> entries;  // row-major n*n

  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

inline constexpr double kEarthRadiusMeters = 6371000.0;

// Great-circle (haversine, sphere radius 6,371,000 m) in geographic mode,
// straight-line in planar mode. Throws ModeMismatchError on mixed modes.
double distance(const Location& a, const Location& b);

DistanceMatrix build_distance_matrix(const std::vector<Location>& points);

}  // namespace mcs
