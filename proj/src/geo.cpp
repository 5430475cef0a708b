#include "gpsched/geo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpsched {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

double wrap_lon(double lon_deg) {
  while (lon_deg <= -180.0) lon_deg += 360.0;
  while (lon_deg > 180.0) lon_deg -= 360.0;
  return lon_deg;
}

GeoPoint::GeoPoint(double lat_deg, double lon_deg) : lat(lat_deg), lon(lon_deg) {
  if (!std::isfinite(lat_deg) || lat_deg < -90.0 || lat_deg > 90.0) {
    throw std::invalid_argument("latitude out of range: " + std::to_string(lat_deg));
  }
  if (!std::isfinite(lon_deg) || lon_deg <= -180.0 || lon_deg > 180.0) {
    throw std::invalid_argument("longitude out of range: " + std::to_string(lon_deg));
  }
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlam = (b.lon - a.lon) * kDegToRad;

  const double sp = std::sin(dphi / 2.0);
  const double sl = std::sin(dlam / 2.0);
  const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  const double c = 2.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
  return kEarthRadiusM * c;
}

double derived_speed_mph(const Fix& a, const Fix& b) {
  if (b.timestamp <= a.timestamp) {
    throw std::invalid_argument("non-increasing time");
  }
  const double dt = static_cast<double>(b.timestamp - a.timestamp);
  const double mps = haversine_m(a.point, b.point) / dt;
  return mps / kMphToMps;
}

}  // namespace gpsched
