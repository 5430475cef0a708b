#ifndef GPSCHED_SCHEDULE_HPP
#define GPSCHED_SCHEDULE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "gpsched/time_util.hpp"
#include "gpsched/travel.hpp"

namespace gpsched {

/// A stay at a location: arrival observed, end inferred (next arrival minus
/// the travel time between the two locations).
struct Event {
  int location = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
  bool zero_travel = false;  // subtraction clamped; no travel data for the hop
};

/// Per-(weekday, minute) occupancy counts plus per-weekday coverage.
/// weekday 0 = Monday. Buckets are local civil time under tz_offset_min.
struct ScheduleModel {
  std::array<int, 7> coverage{};
  std::vector<std::map<int, int>> counts;  // [weekday*1440 + minute] -> loc -> days
  int tz_offset_min = 0;

  ScheduleModel() : counts(7 * kMinutesPerDay) {}

  const std::map<int, int>& at(int weekday, int minute) const {
    return counts[static_cast<std::size_t>(weekday) * kMinutesPerDay + minute];
  }
  std::map<int, int>& at(int weekday, int minute) {
    return counts[static_cast<std::size_t>(weekday) * kMinutesPerDay + minute];
  }
};

struct QueryResult {
  double p = 0.0;
  bool in_coverage = false;
};

/// Builds the event list from located place points. Each located place opens
/// an event at its timestamp; it ends at the next event's start minus the
/// learned edge time for the hop (falling back to that hop's own trip
/// estimate, then to zero travel, clamped so end >= start). The final event
/// ends at the last fix of the whole track.
std::vector<Event> infer_events(const std::vector<PlacePoint>& places,
                                const std::vector<Location>& locations,
                                const std::vector<TravelEdge>& edges,
                                const std::vector<Trip>& trips,
                                const std::vector<TripEstimate>& estimates,
                                std::int64_t last_fix_ts);

/// Local calendar days spanned by a track (first fix date .. last fix date).
std::vector<std::int64_t> observed_days(const Track& track, int tz_offset_min);

/// Counts, for every minute an event covers, one occupancy of its location at
/// that (weekday, minute-of-day); events spanning midnight contribute to both
/// days. Coverage per weekday = number of observed days falling on it.
ScheduleModel build_schedule(const std::vector<Event>& events,
                             const std::vector<std::int64_t>& observed_days,
                             int tz_offset_min = 0);

/// P(user at `location` | weekday, minute) as an empirical frequency;
/// in_coverage is false when no observed day covers the bucket.
QueryResult query(const ScheduleModel& model, int weekday, int minute,
                  int location);

/// Weekly grid of per-segment mean probabilities, zero-mean locations
/// omitted; cells[weekday][segment] lists (location, mean p) by location id.
struct SegmentGrid {
  int segment_minutes = 30;
  std::array<std::vector<std::vector<std::pair<int, double>>>, 7> cells;
};

SegmentGrid segment_averages(const ScheduleModel& model, int segment_minutes = 30);

}  // namespace gpsched

#endif  // GPSCHED_SCHEDULE_HPP
