#pragma once

namespace gridsight {

/// Mean earth radius (IUGG) used by every metric computation in the library.
inline constexpr double kEarthRadiusMeters = 6'371'008.8;

/// Absolute tolerance, in meters, for all distance comparisons.
inline constexpr double kDistanceEpsilon = 1e-6;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid_geographic(GeoPoint point) noexcept;

/// Great-circle distance in meters.
double haversine_distance(GeoPoint a, GeoPoint b) noexcept;

/// Flat-plane distance for synthetic fixtures: `lon` is x and `lat` is y, both in meters.
double planar_distance(GeoPoint a, GeoPoint b) noexcept;

enum class Metric { kHaversine, kPlanar };

double metric_distance(Metric metric, GeoPoint a, GeoPoint b) noexcept;

/// True when `value` does not exceed `limit` under the library-wide tolerance.
inline bool within(double value, double limit) noexcept { return value <= limit + kDistanceEpsilon; }

}  // namespace gridsight
