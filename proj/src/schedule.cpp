#include "gpsched/schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include "gpsched/clustering.hpp"

namespace gpsched {

std::vector<Event> infer_events(const std::vector<PlacePoint>& places,
                                const std::vector<Location>& locations,
                                const std::vector<TravelEdge>& edges,
                                const std::vector<Trip>& trips,
                                const std::vector<TripEstimate>& estimates,
                                std::int64_t last_fix_ts) {
  struct Stay {
    int loc;
    std::int64_t start;
  };
  std::vector<Stay> stays;
  for (const PlacePoint& p : places) {
    if (auto id = assign_location(p.fix.point, locations)) {
      stays.push_back({*id, p.fix.timestamp});
    }
  }

  auto edge_seconds = [&](int from, int to) -> double {
    for (const TravelEdge& e : edges) {
      if (e.from == from && e.to == to) return e.mean_seconds;
    }
    return -1.0;
  };
  auto trip_seconds = [&](std::int64_t depart_ts, std::int64_t arrive_ts) -> double {
    for (std::size_t i = 0; i < trips.size() && i < estimates.size(); ++i) {
      if (trips[i].depart_fix.timestamp == depart_ts &&
          trips[i].arrive_fix.timestamp == arrive_ts && !estimates[i].rejected) {
        return estimates[i].seconds;
      }
    }
    return -1.0;
  };

  std::vector<Event> events;
  events.reserve(stays.size());
  for (std::size_t i = 0; i < stays.size(); ++i) {
    Event ev;
    ev.location = stays[i].loc;
    ev.start = stays[i].start;
    if (i + 1 < stays.size()) {
      const std::int64_t next_start = stays[i + 1].start;
      double travel = 0.0;
      if (stays[i].loc != stays[i + 1].loc) {
        travel = edge_seconds(stays[i].loc, stays[i + 1].loc);
        if (travel < 0.0) travel = trip_seconds(ev.start, next_start);
        if (travel < 0.0) {
          travel = 0.0;
          ev.zero_travel = true;
        }
      }
      ev.end = next_start - static_cast<std::int64_t>(travel);
      if (ev.end <= ev.start) {
        ev.end = next_start;
        ev.zero_travel = true;
      }
    } else {
      ev.end = last_fix_ts;
      if (ev.end <= ev.start) continue;  // empty terminal stay, nothing to count
    }
    events.push_back(ev);
  }
  return events;
}

std::vector<std::int64_t> observed_days(const Track& track, int tz_offset_min) {
  std::vector<std::int64_t> days;
  if (track.empty()) return days;
  const std::int64_t first = local_day(track.fixes.front().timestamp, tz_offset_min);
  const std::int64_t last = local_day(track.fixes.back().timestamp, tz_offset_min);
  for (std::int64_t d = first; d <= last; ++d) days.push_back(d);
  return days;
}

ScheduleModel build_schedule(const std::vector<Event>& events,
                             const std::vector<std::int64_t>& observed_days,
                             int tz_offset_min) {
  ScheduleModel model;
  model.tz_offset_min = tz_offset_min;
  for (std::int64_t d : observed_days) ++model.coverage[weekday_of_day(d)];

  const std::int64_t off = std::int64_t{tz_offset_min} * 60;
  for (const Event& ev : events) {
    // every minute whose start lies in [start, end), in local civil time
    const std::int64_t first_min = floor_div(ev.start + off + 59, 60);
    const std::int64_t end_min = floor_div(ev.end + off + 59, 60);
    for (std::int64_t m = first_min; m < end_min; ++m) {
      const std::int64_t day = floor_div(m, kMinutesPerDay);
      const int wd = weekday_of_day(day);
      const int minute = static_cast<int>(m - day * kMinutesPerDay);
      model.at(wd, minute)[ev.location] += 1;
    }
  }
  return model;
}

QueryResult query(const ScheduleModel& model, int weekday, int minute,
                  int location) {
  if (weekday < 0 || weekday > 6 || minute < 0 || minute >= kMinutesPerDay) {
    throw std::invalid_argument("weekday/minute out of range");
  }
  const int cov = model.coverage[weekday];
  if (cov == 0) return {0.0, false};
  const auto& cell = model.at(weekday, minute);
  const auto it = cell.find(location);
  const int count = it == cell.end() ? 0 : it->second;
  return {static_cast<double>(count) / cov, true};
}

SegmentGrid segment_averages(const ScheduleModel& model, int segment_minutes) {
  if (segment_minutes < 1 || kMinutesPerDay % segment_minutes != 0) {
    throw std::invalid_argument("segment_minutes must divide 1440");
  }
  SegmentGrid grid;
  grid.segment_minutes = segment_minutes;
  const int segments = kMinutesPerDay / segment_minutes;

  for (int wd = 0; wd < 7; ++wd) {
    grid.cells[wd].resize(segments);
    for (int seg = 0; seg < segments; ++seg) {
      std::map<int, double> sums;
      for (int m = seg * segment_minutes; m < (seg + 1) * segment_minutes; ++m) {
        for (const auto& [loc, count] : model.at(wd, m)) {
          if (model.coverage[wd] > 0) {
            sums[loc] += static_cast<double>(count) / model.coverage[wd];
          }
        }
      }
      for (const auto& [loc, sum] : sums) {
        const double mean = sum / segment_minutes;
        if (mean > 0.0) grid.cells[wd][seg].emplace_back(loc, mean);
      }
    }
  }
  return grid;
}

}  // namespace gpsched
