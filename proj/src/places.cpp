#include "gpsched/places.hpp"

#include <limits>

namespace gpsched {

Track filter_moving(const Track& track, double threshold_mph) {
  Track out;
  const std::size_t n = track.fixes.size();
  for (std::size_t i = 0; i < n; ++i) {
    Fix fix = track.fixes[i];
    if (!fix.speed_mph) {
      if (i > 0) {
        fix.speed_mph = derived_speed_mph(track.fixes[i - 1], fix);
      } else if (n > 1) {
        fix.speed_mph = derived_speed_mph(fix, track.fixes[1]);
      } else {
        fix.speed_mph = 0.0;
      }
    }
    if (*fix.speed_mph >= threshold_mph) {
      out.fixes.push_back(fix);
    }
  }
  return out;
}

std::vector<PlacePoint> extract_places(const Track& track, double gap_seconds) {
  std::vector<PlacePoint> places;
  const std::size_t n = track.fixes.size();
  if (n == 0) return places;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gap = static_cast<double>(track.fixes[i + 1].timestamp -
                                           track.fixes[i].timestamp);
    if (gap >= gap_seconds) {
      places.push_back({track.fixes[i], gap});
    }
  }
  // end of data is an unbounded gap
  places.push_back({track.fixes[n - 1], std::numeric_limits<double>::infinity()});
  return places;
}

}  // namespace gpsched
