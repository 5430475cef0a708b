#include "gpsched/travel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gpsched/errors.hpp"

namespace gpsched {

namespace {

constexpr double kMovingMph = 1.0;  // "first data point ... with speed above 1 mph"

double path_length_m(const Fix& first, const std::vector<Fix>& rest,
                     std::size_t rest_begin, const Fix& last) {
  double len = 0.0;
  const Fix* prev = &first;
  for (std::size_t i = rest_begin; i < rest.size(); ++i) {
    len += haversine_m(prev->point, rest[i].point);
    prev = &rest[i];
  }
  len += haversine_m(prev->point, last.point);
  return len;
}

const Location* find_location(const std::vector<Location>& locations, int id) {
  for (const Location& loc : locations) {
    if (loc.id == id) return &loc;
  }
  return nullptr;
}

}  // namespace

std::vector<Trip> segment_trips(const Track& moving_track,
                                const std::vector<PlacePoint>& places,
                                const std::vector<Location>& locations) {
  struct Located {
    const PlacePoint* place;
    int loc;
  };
  std::vector<Located> located;
  for (const PlacePoint& p : places) {
    if (auto id = assign_location(p.fix.point, locations)) {
      located.push_back({&p, *id});
    }
  }

  std::vector<Trip> trips;
  for (std::size_t i = 1; i < located.size(); ++i) {
    const Located& a = located[i - 1];
    const Located& b = located[i];
    if (a.loc == b.loc) continue;

    Trip trip;
    trip.from_loc = a.loc;
    trip.to_loc = b.loc;
    trip.depart_fix = a.place->fix;
    trip.arrive_fix = b.place->fix;
    const auto& fixes = moving_track.fixes;
    auto lo = std::upper_bound(fixes.begin(), fixes.end(),
                               trip.depart_fix.timestamp,
                               [](std::int64_t t, const Fix& f) { return t < f.timestamp; });
    for (; lo != fixes.end() && lo->timestamp < trip.arrive_fix.timestamp; ++lo) {
      trip.en_route.push_back(*lo);
    }
    trips.push_back(std::move(trip));
  }
  return trips;
}

TripEstimate estimate_trip_time(const Trip& trip, double fallback_speed_mps) {
  TripEstimate est;

  std::size_t b = trip.en_route.size();
  for (std::size_t i = 0; i < trip.en_route.size(); ++i) {
    if (trip.en_route[i].speed_mph.value_or(0.0) > kMovingMph) {
      b = i;
      break;
    }
  }

  if (b == trip.en_route.size()) {
    // journey entirely unobserved
    est.low_confidence = true;
    est.observed_path_m = haversine_m(trip.depart_fix.point, trip.arrive_fix.point);
    est.seconds = fallback_speed_mps > 0.0 ? est.observed_path_m / fallback_speed_mps : 0.0;
    est.observed_seconds = est.seconds;
    return est;
  }

  const Fix& fix_b = trip.en_route[b];
  est.observed_seconds =
      static_cast<double>(trip.arrive_fix.timestamp - fix_b.timestamp);
  est.observed_path_m = path_length_m(fix_b, trip.en_route, b + 1, trip.arrive_fix);
  const double gap_m = haversine_m(trip.depart_fix.point, fix_b.point);
  const double speed_mps = est.observed_path_m / est.observed_seconds;

  if (speed_mps <= 0.0) {
    if (gap_m > 0.0) {
      est.rejected = true;
      return est;
    }
    est.seconds = est.observed_seconds;
    return est;
  }
  est.seconds = gap_m / speed_mps + est.observed_seconds;
  return est;
}

std::vector<TripEstimate> estimate_trips(const std::vector<Trip>& trips,
                                         double default_speed_mph) {
  // first pass over observable trips fixes the fallback speed
  double sum_path = 0.0, sum_sec = 0.0;
  for (const Trip& trip : trips) {
    const TripEstimate probe = estimate_trip_time(trip, 1.0);
    if (!probe.low_confidence && !probe.rejected) {
      sum_path += probe.observed_path_m;
      sum_sec += probe.observed_seconds;
    }
  }
  const double fallback_mps =
      sum_sec > 0.0 ? sum_path / sum_sec : default_speed_mph * kMphToMps;

  std::vector<TripEstimate> out;
  out.reserve(trips.size());
  for (const Trip& trip : trips) {
    out.push_back(estimate_trip_time(trip, fallback_mps));
  }
  return out;
}

std::vector<TravelEdge> build_edges(const std::vector<Trip>& trips,
                                    const std::vector<TripEstimate>& estimates) {
  if (trips.size() != estimates.size()) {
    throw std::invalid_argument("trips/estimates size mismatch");
  }
  struct Acc {
    double sec = 0.0, path = 0.0, elapsed = 0.0;
    int n = 0;
  };
  std::map<std::pair<int, int>, Acc> full, low;
  for (std::size_t i = 0; i < trips.size(); ++i) {
    const TripEstimate& e = estimates[i];
    if (e.rejected) continue;
    Acc& acc = (e.low_confidence ? low : full)[{trips[i].from_loc, trips[i].to_loc}];
    acc.sec += e.seconds;
    acc.path += e.observed_path_m;
    acc.elapsed += e.observed_seconds;
    acc.n += 1;
  }

  std::vector<TravelEdge> edges;
  auto emit = [&edges](std::pair<int, int> key, const Acc& acc) {
    TravelEdge edge;
    edge.from = key.first;
    edge.to = key.second;
    edge.mean_seconds = acc.sec / acc.n;
    edge.n_samples = acc.n;
    edge.mean_speed_mph =
        acc.elapsed > 0.0 ? acc.path / acc.elapsed / kMphToMps : 0.0;
    edges.push_back(edge);
  };
  for (const auto& [key, acc] : full) emit(key, acc);
  for (const auto& [key, acc] : low) {
    if (!full.count(key)) emit(key, acc);
  }
  std::sort(edges.begin(), edges.end(), [](const TravelEdge& a, const TravelEdge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  return edges;
}

std::vector<TravelEdge> build_edges(const std::vector<Trip>& trips,
                                    double default_speed_mph) {
  return build_edges(trips, estimate_trips(trips, default_speed_mph));
}

double travel_time_from(const GeoPoint& x, int dest,
                        const std::vector<TravelEdge>& edges,
                        const std::vector<Location>& locations,
                        double detour_factor) {
  if (edges.empty()) throw UntrainedModelError("untrained travel model");
  const Location* dest_loc = find_location(locations, dest);
  if (!dest_loc) throw std::invalid_argument("unknown destination location");

  const std::optional<int> cur = assign_location(x, locations);
  if (cur && *cur == dest) return 0.0;
  if (cur) {
    for (const TravelEdge& e : edges) {
      if (e.from == *cur && e.to == dest) return e.mean_seconds;
    }
  }

  // on-the-fly: fastest detour-feasible known path toward the destination
  const double direct_m = haversine_m(x, dest_loc->center);
  const TravelEdge* best = nullptr;
  double best_speed = 0.0;
  for (const TravelEdge& e : edges) {
    if (e.to != dest) continue;
    const Location* via = find_location(locations, e.from);
    if (!via) continue;
    const double detour_m =
        haversine_m(x, via->center) + haversine_m(via->center, dest_loc->center);
    if (detour_m > detour_factor * direct_m) continue;
    if (!best || e.mean_speed_mph > best_speed ||
        (e.mean_speed_mph == best_speed && e.from < best->from)) {
      best = &e;
      best_speed = e.mean_speed_mph;
    }
  }

  double speed_mph = best ? best_speed : 0.0;
  if (!best) {
    double sum = 0.0;
    for (const TravelEdge& e : edges) sum += e.mean_speed_mph;
    speed_mph = sum / static_cast<double>(edges.size());
  }
  if (speed_mph <= 0.0) speed_mph = kDefaultSpeedMph;
  return direct_m / (speed_mph * kMphToMps);
}

}  // namespace gpsched
