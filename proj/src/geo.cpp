#include "gridsight/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gridsight {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

bool is_valid_geographic(GeoPoint point) noexcept {
  return std::isfinite(point.lat) && std::isfinite(point.lon) && point.lat >= -90.0 &&
         point.lat <= 90.0 && point.lon >= -180.0 && point.lon <= 180.0;
}

double haversine_distance(GeoPoint a, GeoPoint b) noexcept {
  if (a == b) return 0.0;
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s_phi = std::sin(dphi / 2.0);
  const double s_lambda = std::sin(dlambda / 2.0);
  double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

double planar_distance(GeoPoint a, GeoPoint b) noexcept {
  return std::hypot(b.lon - a.lon, b.lat - a.lat);
}

double metric_distance(Metric metric, GeoPoint a, GeoPoint b) noexcept {
  return metric == Metric::kPlanar ? planar_distance(a, b) : haversine_distance(a, b);
}

}  // namespace gridsight
