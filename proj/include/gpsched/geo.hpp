#ifndef GPSCHED_GEO_HPP
#define GPSCHED_GEO_HPP

#include <cstdint>
#include <optional>

namespace gpsched {

// Spherical Earth, mean radius. Good to well under GPS noise at city scale.
inline constexpr double kEarthRadiusM = 6'371'000.0;

inline constexpr double kMphToMps = 0.44704;
inline constexpr double kKnotsToMph = 1.150779;

/// A validated WGS-ish coordinate: lat in [-90, 90], lon in (-180, 180].
/// Construction with out-of-range or non-finite values throws.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  GeoPoint() = default;
  GeoPoint(double lat_deg, double lon_deg);
};

/// One GPS sample. Timestamps are integer UTC seconds (1 Hz source data);
/// speed is receiver-reported and absent when the source carried none.
struct Fix {
  GeoPoint point;
  std::int64_t timestamp = 0;
  std::optional<double> speed_mph;
};

/// Great-circle distance in meters (haversine on the kEarthRadiusM sphere).
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Straight-line speed between two fixes in mph. Throws std::invalid_argument
/// ("non-increasing time") unless b.timestamp > a.timestamp.
double derived_speed_mph(const Fix& a, const Fix& b);

/// Wraps a longitude into (-180, 180].
double wrap_lon(double lon_deg);

}  // namespace gpsched

#endif  // GPSCHED_GEO_HPP
