#ifndef GPSCHED_PIPELINE_HPP
#define GPSCHED_PIPELINE_HPP

#include "gpsched/places.hpp"
#include "gpsched/schedule.hpp"

namespace gpsched {

struct LearnParams {
  double gap_seconds = kDefaultGapSeconds;
  double speed_threshold_mph = kDefaultSpeedThresholdMph;
  double radius_min_m = 50.0;
  double radius_max_m = 1000.0;
  double radius_step_m = 25.0;
  std::uint64_t seed = 0;
  int smooth_window = 5;
  double knee_factor = 3.0;
  int jobs = 1;
  int tz_offset_min = 0;
  double default_speed_mph = kDefaultSpeedMph;
};

struct LearnResult {
  Track moving;
  std::vector<PlacePoint> places;
  RadiusSweep sweep;
  std::vector<Location> locations;
  std::vector<Trip> trips;
  std::vector<TripEstimate> estimates;
  std::vector<TravelEdge> edges;
  std::vector<Event> events;
  ScheduleModel schedule;
};

/// The full learning pass: moving filter, place extraction, radius sweep and
/// knee, clustering at the chosen radius (with that radius's sweep seed),
/// trips, edges, events, schedule. Throws ParseError when the track yields
/// no places.
LearnResult learn(const Track& track, const LearnParams& params = {});

}  // namespace gpsched

#endif  // GPSCHED_PIPELINE_HPP
