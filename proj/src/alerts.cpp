#include "gpsched/alerts.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>

#include "gpsched/csv.hpp"
#include "gpsched/errors.hpp"
#include "gpsched/time_util.hpp"

namespace gpsched {

namespace {

// Earliest occurrence of the appointment strictly after `now`.
std::int64_t next_occurrence(const Appointment& appt, std::int64_t now) {
  if (appt.start > now) return appt.start;
  if (!appt.recurs_weekly) return -1;
  const std::int64_t behind = now - appt.start;
  const std::int64_t k = behind / kSecondsPerWeek + 1;
  return appt.start + k * kSecondsPerWeek;
}

}  // namespace

std::vector<Alert> check(std::int64_t now, const Fix& current_fix,
                         const std::vector<Appointment>& calendar,
                         const std::vector<TravelEdge>& edges,
                         const std::vector<Location>& locations,
                         const ReplayParams& params) {
  std::vector<Alert> alerts;
  for (std::size_t i = 0; i < calendar.size(); ++i) {
    const std::int64_t occ = next_occurrence(calendar[i], now);
    if (occ < 0 || occ > now + params.lookahead_seconds) continue;

    const double travel =
        travel_time_from(current_fix.point, calendar[i].location, edges,
                         locations, params.detour_factor);
    const double slack = static_cast<double>(occ - now) - travel;
    if (slack - params.safety_buffer_seconds < 0.0) {
      Alert alert;
      alert.appointment_index = i;
      alert.title = calendar[i].title;
      alert.occurrence_start = occ;
      alert.issued_at = now;
      alert.travel_seconds = travel;
      alert.slack_seconds = slack;
      alerts.push_back(std::move(alert));
    }
  }
  return alerts;
}

std::vector<Alert> replay(const Track& track,
                          const std::vector<Appointment>& calendar,
                          const std::vector<TravelEdge>& edges,
                          const std::vector<Location>& locations,
                          const ReplayParams& params) {
  std::vector<Alert> log;
  if (track.empty() || calendar.empty()) return log;

  std::map<std::pair<std::size_t, std::int64_t>, bool> firing;  // episode state
  std::size_t fix_idx = 0;

  const std::int64_t t0 = track.fixes.front().timestamp;
  const std::int64_t t1 = track.fixes.back().timestamp;
  for (std::int64_t now = t0; now <= t1; now += params.tick_seconds) {
    while (fix_idx + 1 < track.fixes.size() &&
           track.fixes[fix_idx + 1].timestamp <= now) {
      ++fix_idx;
    }
    const Fix& here = track.fixes[fix_idx];

    // mark everything quiet unless this tick's check says otherwise
    std::vector<Alert> due = check(now, here, calendar, edges, locations, params);
    std::map<std::pair<std::size_t, std::int64_t>, const Alert*> due_by_key;
    for (const Alert& a : due) {
      due_by_key[{a.appointment_index, a.occurrence_start}] = &a;
    }
    for (auto& [key, active] : firing) {
      if (!due_by_key.count(key)) active = false;  // re-arm
    }
    for (const auto& [key, alert] : due_by_key) {
      bool& active = firing[key];
      if (!active) {
        log.push_back(*alert);
        active = true;
      }
    }
  }
  return log;
}

std::vector<Appointment> read_calendar_csv(std::istream& in) {
  std::vector<Appointment> calendar;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (line_no == 1 && t.rfind("start_iso8601", 0) == 0) continue;  // header
    const std::vector<std::string> f = split_csv_line(t);
    if (f.size() != 4) {
      throw ParseError("calendar row needs 4 fields", line_no);
    }
    Appointment appt;
    try {
      appt.start = parse_iso8601(f[0]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    char* end = nullptr;
    appt.location = static_cast<int>(std::strtol(f[1].c_str(), &end, 10));
    if (f[1].empty() || end != f[1].c_str() + f[1].size()) {
      throw ParseError("bad location id '" + f[1] + "'", line_no);
    }
    appt.title = f[2];
    if (f[3] == "1") {
      appt.recurs_weekly = true;
    } else if (f[3] != "0") {
      throw ParseError("recurs_weekly must be 0 or 1", line_no);
    }
    calendar.push_back(std::move(appt));
  }
  return calendar;
}

void write_alerts_csv(const std::vector<Alert>& alerts, std::ostream& out) {
  out << "issued_at_iso8601,appointment_title,appointment_start,travel_seconds,"
         "slack_seconds\n";
  char buf[64];
  for (const Alert& a : alerts) {
    out << format_iso8601(a.issued_at) << ',' << csv_escape(a.title) << ','
        << format_iso8601(a.occurrence_start);
    std::snprintf(buf, sizeof buf, ",%.1f,%.1f", a.travel_seconds,
                  a.slack_seconds);
    out << buf << "\n";
  }
}

}  // namespace gpsched
