#ifndef GPSCHED_ALERTS_HPP
#define GPSCHED_ALERTS_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gpsched/travel.hpp"

namespace gpsched {

struct Appointment {
  std::string title;
  int location = 0;
  std::int64_t start = 0;
  bool recurs_weekly = false;
};

struct Alert {
  std::size_t appointment_index = 0;
  std::string title;
  std::int64_t occurrence_start = 0;
  std::int64_t issued_at = 0;
  double travel_seconds = 0.0;
  double slack_seconds = 0.0;  // start - issued_at - travel; negative when late
};

struct ReplayParams {
  int tick_seconds = 15;
  int lookahead_seconds = 7'200;
  double safety_buffer_seconds = 0.0;
  double detour_factor = kDefaultDetourFactor;
};

/// One pass of the alert loop: for every appointment occurrence with
/// now < start <= now + lookahead, predicts the travel time from the current
/// position and alerts when now + travel (+ buffer) overruns the start.
std::vector<Alert> check(std::int64_t now, const Fix& current_fix,
                         const std::vector<Appointment>& calendar,
                         const std::vector<TravelEdge>& edges,
                         const std::vector<Location>& locations,
                         const ReplayParams& params = {});

/// Replays a track against the calendar on a simulated clock stepping
/// tick_seconds from the first to the last fix; the current position is the
/// latest fix at or before each tick. Each appointment occurrence alerts at
/// most once per continuous lateness episode (re-arming when slack recovers).
std::vector<Alert> replay(const Track& track,
                          const std::vector<Appointment>& calendar,
                          const std::vector<TravelEdge>& edges,
                          const std::vector<Location>& locations,
                          const ReplayParams& params = {});

/// Calendar CSV: `start_iso8601,location_id,title,recurs_weekly(0|1)`.
std::vector<Appointment> read_calendar_csv(std::istream& in);

/// Alert log CSV:
/// `issued_at_iso8601,appointment_title,appointment_start,travel_seconds,slack_seconds`.
void write_alerts_csv(const std::vector<Alert>& alerts, std::ostream& out);

}  // namespace gpsched

#endif  // GPSCHED_ALERTS_HPP
