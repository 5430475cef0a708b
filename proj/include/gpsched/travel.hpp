#ifndef GPSCHED_TRAVEL_HPP
#define GPSCHED_TRAVEL_HPP

#include <vector>

#include "gpsched/clustering.hpp"
#include "gpsched/track.hpp"

namespace gpsched {

/// One journey between two distinct locations: the place point left behind,
/// the place point arrived at, and every moving fix in between.
struct Trip {
  int from_loc = 0;
  int to_loc = 0;
  Fix depart_fix;
  Fix arrive_fix;
  std::vector<Fix> en_route;
};

struct TripEstimate {
  double seconds = 0.0;
  bool low_confidence = false;  // no usable en-route fix; fallback speed used
  bool rejected = false;        // degenerate (zero observed speed over distance)
  double observed_path_m = 0.0;
  double observed_seconds = 0.0;
};

/// Averaged travel time for an ordered location pair.
struct TravelEdge {
  int from = 0;
  int to = 0;
  double mean_seconds = 0.0;
  int n_samples = 0;
  double mean_speed_mph = 0.0;  // total path length / total elapsed time
};

/// Used when no trip anywhere produced an observed speed.
inline constexpr double kDefaultSpeedMph = 30.0;
inline constexpr double kDefaultDetourFactor = 1.5;

/// Pairs up consecutive place points assigned to different locations.
/// Unlocated places are skipped (the trip spans to the next located one);
/// same-location pairs are dropped. `moving_track` must be the filtered
/// track the places were extracted from.
std::vector<Trip> segment_trips(const Track& moving_track,
                                const std::vector<PlacePoint>& places,
                                const std::vector<Location>& locations);

/// Gap-compensated trip time. With A the departure place, C the arrival
/// place and B the first en-route fix faster than 1 mph:
///   T = dist(A,B) / avg_speed(B..C) + (t_C - t_B)
/// where avg_speed is path length over elapsed time. Without a usable B the
/// estimate falls back to dist(A,C) / fallback_speed_mps, low-confidence.
TripEstimate estimate_trip_time(const Trip& trip, double fallback_speed_mps);

/// Estimates every trip, deriving the fallback speed from the mean observed
/// speed of the full-confidence trips (default_speed_mph when none exist).
std::vector<TripEstimate> estimate_trips(const std::vector<Trip>& trips,
                                         double default_speed_mph = kDefaultSpeedMph);

/// Per ordered pair: arithmetic mean of accepted estimates. Low-confidence
/// samples count only when a pair has no full-confidence sample.
std::vector<TravelEdge> build_edges(const std::vector<Trip>& trips,
                                    const std::vector<TripEstimate>& estimates);
std::vector<TravelEdge> build_edges(const std::vector<Trip>& trips,
                                    double default_speed_mph = kDefaultSpeedMph);

/// Travel time in seconds from an arbitrary position to a location:
/// 0 inside the destination; the learned edge when x sits in a location with
/// one; otherwise straight-line distance over the best detour-feasible known
/// path's speed. Throws UntrainedModelError when no edges exist.
double travel_time_from(const GeoPoint& x, int dest,
                        const std::vector<TravelEdge>& edges,
                        const std::vector<Location>& locations,
                        double detour_factor = kDefaultDetourFactor);

}  // namespace gpsched

#endif  // GPSCHED_TRAVEL_HPP
