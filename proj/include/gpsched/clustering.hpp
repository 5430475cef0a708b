#ifndef GPSCHED_CLUSTERING_HPP
#define GPSCHED_CLUSTERING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gpsched/track.hpp"

namespace gpsched {

/// A significant location: a circle with a center and a radius shared by all
/// locations of one clustering run. `members` are indices into the place list
/// that lie within the circle (membership may overlap between locations).
struct Location {
  int id = 0;
  GeoPoint center;
  double radius_m = 0.0;
  std::vector<std::size_t> members;
};

/// Result of the radius search: cluster count per radius, the smoothed curve,
/// and the knee-selected radius.
struct RadiusSweep {
  std::vector<double> radii_m;
  std::vector<int> raw_counts;
  std::vector<double> smoothed_counts;
  double chosen_radius_m = 0.0;
  bool no_knee = false;
  std::uint64_t seed = 0;
};

struct SweepParams {
  int smooth_window = 5;
  double knee_factor = 3.0;
  int jobs = 1;  // >1 clusters radii in parallel; results identical to serial
};

/// Variable-radius k-means: seeds a cluster at a random unclaimed place,
/// iterates members-within-radius / recenter-on-mean until the center moves
/// less than 1 m (or 100 iterations), claims the members, and repeats until
/// every place is claimed. Clusters that own no unique point are dropped,
/// their points falling to the nearest surviving center. Deterministic given
/// (places, radius, seed); clusters come back sorted by descending member
/// count with ids in that order.
std::vector<Location> cluster_at_radius(const std::vector<PlacePoint>& places,
                                        double radius_m, std::uint64_t seed);

/// Ascending radii [min_m, max_m] in steps of step_m (inclusive).
std::vector<double> make_radii(double min_m = 50.0, double max_m = 1000.0,
                               double step_m = 25.0);

/// Clusters at every radius (independent per-radius derived seeds), smooths
/// the count curve, and picks the knee. Throws ParseError("nothing to sweep")
/// on an empty place list.
RadiusSweep sweep_radii(const std::vector<PlacePoint>& places,
                        const std::vector<double>& radii_m, std::uint64_t seed,
                        const SweepParams& params = {});

/// Centered moving average; the window is clipped at the ends.
std::vector<double> smooth_counts(const std::vector<int>& counts,
                                  int window = 5);

struct KneeResult {
  double radius_m = 0.0;
  bool no_knee = false;
};

/// Scans the smoothed curve right to left for the first radius where the
/// derivative magnitude exceeds knee_factor times the flat-tail baseline
/// (mean |d| over the rightmost 25% of steps; if that is zero, one tenth of
/// the global mean |d|). A curve with no such point yields the median radius
/// and the no_knee flag. Requires at least 4 radii.
KneeResult select_knee(const std::vector<double>& radii_m,
                       const std::vector<double>& smoothed,
                       double knee_factor = 3.0);

/// The location containing p whose center is nearest (ties -> lower id),
/// or nullopt if p is outside every location's radius.
std::optional<int> assign_location(const GeoPoint& p,
                                   const std::vector<Location>& locations);

}  // namespace gpsched

#endif  // GPSCHED_CLUSTERING_HPP
