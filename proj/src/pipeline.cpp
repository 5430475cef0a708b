#include "gpsched/pipeline.hpp"

#include <cmath>

#include "gpsched/rng.hpp"

namespace gpsched {

LearnResult learn(const Track& track, const LearnParams& params) {
  LearnResult r;
  r.moving = filter_moving(track, params.speed_threshold_mph);
  r.places = extract_places(r.moving, params.gap_seconds);

  SweepParams sp;
  sp.smooth_window = params.smooth_window;
  sp.knee_factor = params.knee_factor;
  sp.jobs = params.jobs;
  const std::vector<double> radii =
      make_radii(params.radius_min_m, params.radius_max_m, params.radius_step_m);
  r.sweep = sweep_radii(r.places, radii, params.seed, sp);

  // reuse the sweep's per-radius seed so the final clustering matches the
  // count recorded in the curve
  std::size_t chosen_idx = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] == r.sweep.chosen_radius_m) {
      chosen_idx = i;
      break;
    }
  }
  r.locations = cluster_at_radius(r.places, r.sweep.chosen_radius_m,
                                  mix_seed(params.seed, chosen_idx));

  r.trips = segment_trips(r.moving, r.places, r.locations);
  r.estimates = estimate_trips(r.trips, params.default_speed_mph);
  r.edges = build_edges(r.trips, r.estimates);
  r.events = infer_events(r.places, r.locations, r.edges, r.trips, r.estimates,
                          track.fixes.back().timestamp);
  r.schedule = build_schedule(r.events, observed_days(track, params.tz_offset_min),
                              params.tz_offset_min);
  return r;
}

}  // namespace gpsched
