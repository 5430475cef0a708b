#include "gpsched/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

#include "gpsched/errors.hpp"
#include "gpsched/rng.hpp"

namespace gpsched {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kConvergedM = 1.0;
constexpr int kMaxIterations = 100;

double wrap_delta(double d) {
  if (d > 180.0) return d - 360.0;
  if (d <= -180.0) return d + 360.0;
  return d;
}

// Arithmetic mean of places[idx] in an equirectangular tangent plane about
// `ref`; accurate to centimeters at the sub-kilometer radii used here.
GeoPoint tangent_mean(const std::vector<PlacePoint>& places,
                      const std::vector<std::size_t>& idx, const GeoPoint& ref) {
  const double cos0 = std::max(std::cos(ref.lat * kDegToRad), 1e-12);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i : idx) {
    const GeoPoint& p = places[i].fix.point;
    sx += wrap_delta(p.lon - ref.lon) * cos0;
    sy += p.lat - ref.lat;
  }
  const double n = static_cast<double>(idx.size());
  return GeoPoint(ref.lat + sy / n, wrap_lon(ref.lon + sx / n / cos0));
}

std::vector<std::size_t> members_within(const std::vector<PlacePoint>& places,
                                        const GeoPoint& center, double radius_m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (haversine_m(center, places[i].fix.point) <= radius_m) out.push_back(i);
  }
  return out;
}

struct RawCluster {
  GeoPoint center;
  std::vector<std::size_t> members;
};

}  // namespace

std::vector<Location> cluster_at_radius(const std::vector<PlacePoint>& places,
                                        double radius_m, std::uint64_t seed) {
  if (radius_m <= 0.0) throw std::invalid_argument("radius must be positive");
  const std::size_t n = places.size();
  std::vector<Location> result;
  if (n == 0) return result;

  Rng rng(seed);
  std::vector<bool> claimed(n, false);
  std::vector<std::size_t> unclaimed(n);
  std::iota(unclaimed.begin(), unclaimed.end(), 0);
  std::vector<RawCluster> clusters;

  while (!unclaimed.empty()) {
    const std::size_t start = unclaimed[rng.bounded(unclaimed.size())];
    GeoPoint center = places[start].fix.point;

    std::vector<std::size_t> members;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      members = members_within(places, center, radius_m);
      if (members.empty()) break;  // degenerate boundary geometry
      const GeoPoint next = tangent_mean(places, members, center);
      const double moved = haversine_m(center, next);
      center = next;
      if (moved < kConvergedM) break;
    }
    // final membership against the converged center
    members = members_within(places, center, radius_m);

    claimed[start] = true;  // consumed even if refinement drifted off it
    for (std::size_t i : members) claimed[i] = true;
    unclaimed.erase(std::remove_if(unclaimed.begin(), unclaimed.end(),
                                   [&](std::size_t i) { return claimed[i]; }),
                    unclaimed.end());
    if (!members.empty()) clusters.push_back({center, std::move(members)});
  }

  // Drop clusters owning no unique point, one at a time so that every member
  // of the dropped cluster stays covered by a survivor.
  std::vector<bool> alive(clusters.size(), true);
  for (;;) {
    std::vector<int> membership_count(n, 0);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (!alive[c]) continue;
      for (std::size_t i : clusters[c].members) ++membership_count[i];
    }
    std::ptrdiff_t victim = -1;
    std::size_t victim_size = 0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (!alive[c]) continue;
      bool has_unique = false;
      for (std::size_t i : clusters[c].members) {
        if (membership_count[i] == 1) {
          has_unique = true;
          break;
        }
      }
      if (!has_unique &&
          (victim < 0 || clusters[c].members.size() <= victim_size)) {
        victim = static_cast<std::ptrdiff_t>(c);
        victim_size = clusters[c].members.size();
      }
    }
    if (victim < 0) break;
    alive[static_cast<std::size_t>(victim)] = false;
  }

  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (alive[c]) order.push_back(c);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clusters[a].members.size() > clusters[b].members.size();
  });

  result.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    Location loc;
    loc.id = static_cast<int>(k);
    loc.center = clusters[order[k]].center;
    loc.radius_m = radius_m;
    loc.members = std::move(clusters[order[k]].members);
    result.push_back(std::move(loc));
  }
  return result;
}

std::vector<double> make_radii(double min_m, double max_m, double step_m) {
  if (min_m <= 0.0 || step_m <= 0.0 || max_m < min_m) {
    throw std::invalid_argument("bad radius range");
  }
  std::vector<double> radii;
  for (double r = min_m; r <= max_m + 1e-9; r += step_m) radii.push_back(r);
  return radii;
}

RadiusSweep sweep_radii(const std::vector<PlacePoint>& places,
                        const std::vector<double>& radii_m, std::uint64_t seed,
                        const SweepParams& params) {
  if (places.empty()) throw ParseError("nothing to sweep");
  if (radii_m.empty() || !std::is_sorted(radii_m.begin(), radii_m.end())) {
    throw std::invalid_argument("radii must be ascending and non-empty");
  }

  RadiusSweep sweep;
  sweep.radii_m = radii_m;
  sweep.seed = seed;
  sweep.raw_counts.assign(radii_m.size(), 0);

  auto count_at = [&](std::size_t i) {
    return static_cast<int>(
        cluster_at_radius(places, radii_m[i], mix_seed(seed, i)).size());
  };

  if (params.jobs > 1) {
    std::vector<std::future<void>> work;
    std::atomic<std::size_t> next{0};
    for (int j = 0; j < params.jobs; ++j) {
      work.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < radii_m.size();) {
          sweep.raw_counts[i] = count_at(i);
        }
      }));
    }
    for (auto& w : work) w.get();
  } else {
    for (std::size_t i = 0; i < radii_m.size(); ++i) {
      sweep.raw_counts[i] = count_at(i);
    }
  }

  sweep.smoothed_counts = smooth_counts(sweep.raw_counts, params.smooth_window);
  const KneeResult knee =
      select_knee(sweep.radii_m, sweep.smoothed_counts, params.knee_factor);
  sweep.chosen_radius_m = knee.radius_m;
  sweep.no_knee = knee.no_knee;
  return sweep;
}

std::vector<double> smooth_counts(const std::vector<int>& counts, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(counts.size());
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(counts.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    double sum = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += counts[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

KneeResult select_knee(const std::vector<double>& radii_m,
                       const std::vector<double>& smoothed, double knee_factor) {
  const std::size_t n = radii_m.size();
  if (n < 4 || smoothed.size() != n) {
    throw std::invalid_argument("select_knee needs at least 4 radii");
  }

  std::vector<double> deriv(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    deriv[i - 1] = std::abs((smoothed[i] - smoothed[i - 1]) /
                            (radii_m[i] - radii_m[i - 1]));
  }
  const std::size_t m = deriv.size();
  const std::size_t tail = std::max<std::size_t>(1, (m + 3) / 4);

  double baseline = 0.0;
  for (std::size_t i = m - tail; i < m; ++i) baseline += deriv[i];
  baseline /= static_cast<double>(tail);
  if (baseline == 0.0) {
    const double global =
        std::accumulate(deriv.begin(), deriv.end(), 0.0) / static_cast<double>(m);
    baseline = global / 10.0;
  }

  const double median_radius = radii_m[(n - 1) / 2];
  if (baseline == 0.0) return {median_radius, true};  // perfectly flat curve

  for (std::size_t i = m; i-- > 0;) {
    if (deriv[i] > knee_factor * baseline) return {radii_m[i + 1], false};
  }
  return {median_radius, true};
}

std::optional<int> assign_location(const GeoPoint& p,
                                   const std::vector<Location>& locations) {
  std::optional<int> best;
  double best_dist = 0.0;
  for (const Location& loc : locations) {
    const double d = haversine_m(p, loc.center);
    if (d > loc.radius_m) continue;
    if (!best || d < best_dist || (d == best_dist && loc.id < *best)) {
      best = loc.id;
      best_dist = d;
    }
  }
  return best;
}

}  // namespace gpsched
