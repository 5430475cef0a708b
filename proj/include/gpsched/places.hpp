#ifndef GPSCHED_PLACES_HPP
#define GPSCHED_PLACES_HPP

#include <vector>

#include "gpsched/track.hpp"

namespace gpsched {

inline constexpr double kDefaultSpeedThresholdMph = 1.0;
inline constexpr double kDefaultGapSeconds = 600.0;  // 10 minutes

/// Keeps exactly the fixes moving at or above the threshold. Fixes without a
/// receiver-reported speed are judged by (and returned carrying) the speed
/// derived from the previous fix; the first fix uses the speed to the next.
Track filter_moving(const Track& track,
                    double threshold_mph = kDefaultSpeedThresholdMph);

/// Extracts candidate significant places from a moving-filtered track: every
/// fix whose successor is at least `gap_seconds` later (inclusive), plus the
/// final fix with gap_seconds = +inf.
std::vector<PlacePoint> extract_places(const Track& track,
                                       double gap_seconds = kDefaultGapSeconds);

}  // namespace gpsched

#endif  // GPSCHED_PLACES_HPP
