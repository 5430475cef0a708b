#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gpsched/alerts.hpp"
#include "gpsched/errors.hpp"
#include "gpsched/time_util.hpp"

using namespace gpsched;

namespace {

constexpr double kLat = 33.75;

GeoPoint east_of(const GeoPoint& origin, double meters) {
  const double dlon =
      meters / (kEarthRadiusM * std::cos(kLat * M_PI / 180.0)) * 180.0 / M_PI;
  return GeoPoint(origin.lat, origin.lon + dlon);
}

struct World {
  std::vector<Location> locations;
  std::vector<TravelEdge> edges;
};

// Two known locations with a learned edge of `travel_s` between them.
World make_world(double travel_s) {
  World w;
  w.locations.resize(2);
  w.locations[0].id = 0;
  w.locations[0].center = GeoPoint(kLat, -84.40);
  w.locations[0].radius_m = 150.0;
  w.locations[1].id = 1;
  w.locations[1].center = east_of(w.locations[0].center, 12'000.0);
  w.locations[1].radius_m = 150.0;
  w.edges = {{0, 1, travel_s, 2, 30.0}};
  return w;
}

Fix fix_at(const GeoPoint& p, std::int64_t ts) {
  Fix f;
  f.point = p;
  f.timestamp = ts;
  f.speed_mph = 0.0;
  return f;
}

// user parked at `p` emitting a fix every 30 s
Track parked_track(const GeoPoint& p, std::int64_t from, std::int64_t until) {
  Track t;
  for (std::int64_t ts = from; ts <= until; ts += 30) {
    t.fixes.push_back(fix_at(p, ts));
  }
  return t;
}

}  // namespace

TEST_CASE("check: ample slack, predicted lateness, and the two-hour window") {
  const World w = make_world(600.0);
  const std::int64_t now = 1'100'000;
  const Fix here = fix_at(w.locations[0].center, now);

  // appointment in 1800 s, travel 600 s: slack +1200, no alert
  CHECK(check(now, here, {{"ok", 1, now + 1800, false}}, w.edges, w.locations)
            .empty());

  // travel 2400 s: slack -600, alert
  const World slow = make_world(2400.0);
  const auto alerts =
      check(now, here, {{"late", 1, now + 1800, false}}, slow.edges, slow.locations);
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].slack_seconds == -600.0);
  CHECK(alerts[0].travel_seconds == 2400.0);
  CHECK(alerts[0].occurrence_start == now + 1800);

  // appointment in 10800 s with travel 14400 s: outside the window, no alert
  const World doomed = make_world(14'400.0);
  CHECK(check(now, here, {{"far", 1, now + 10'800, false}}, doomed.edges,
              doomed.locations)
            .empty());

  // an appointment starting exactly now is not checked
  CHECK(check(now, here, {{"now", 1, now, false}}, slow.edges, slow.locations)
            .empty());
}

TEST_CASE("check: weekly recurrence rolls occurrences forward") {
  const World w = make_world(2400.0);
  const std::int64_t first = 1'000'000;
  const Fix here = fix_at(w.locations[0].center, first);
  const std::vector<Appointment> cal = {{"standup", 1, first, true}};

  // three weeks later, 30 minutes before the occurrence
  const std::int64_t now = first + 3 * kSecondsPerWeek - 1800;
  const auto alerts = check(now, here, cal, w.edges, w.locations);
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].occurrence_start == first + 3 * kSecondsPerWeek);

  // non-recurring: the past appointment never comes back
  const std::vector<Appointment> once = {{"standup", 1, first, false}};
  CHECK(check(now, here, once, w.edges, w.locations).empty());
}

TEST_CASE("check propagates the untrained-model error") {
  const World w = make_world(600.0);
  const Fix here = fix_at(w.locations[0].center, 1000);
  CHECK_THROWS_AS(check(1000, here, {{"x", 1, 2000, false}}, {}, w.locations),
                  UntrainedModelError);
}

TEST_CASE("replay: one alert, within one tick of the condition's onset") {
  const double travel = 1800.0;
  const World w = make_world(travel);
  const std::int64_t t0 = 2'000'000;
  const std::int64_t t1 = t0 + 3600;
  const Track track = parked_track(w.locations[0].center, t0, t1);

  // start such that lateness begins mid-replay: condition now + 1800 > start
  const std::int64_t start = t0 + 1200 + 1800;
  const std::vector<Appointment> cal = {{"meeting", 1, start, false}};

  ReplayParams params;
  const auto log = replay(track, cal, w.edges, w.locations, params);
  REQUIRE(log.size() == 1);

  // oracle: scan every tick, computing the condition directly
  std::int64_t first_late = -1;
  for (std::int64_t now = t0; now <= t1; now += params.tick_seconds) {
    if (now < start && start <= now + params.lookahead_seconds &&
        static_cast<double>(now) + travel > static_cast<double>(start)) {
      first_late = now;
      break;
    }
  }
  REQUIRE(first_late >= 0);
  CHECK(log[0].issued_at >= first_late);
  CHECK(log[0].issued_at - first_late <= params.tick_seconds);
  CHECK(log[0].slack_seconds < 0.0);
}

TEST_CASE("replay: on-time user triggers nothing") {
  const World w = make_world(600.0);
  const std::int64_t t0 = 2'000'000;
  const Track track = parked_track(w.locations[0].center, t0, t0 + 900);
  const std::vector<Appointment> cal = {{"later", 1, t0 + 3600, false}};
  CHECK(replay(track, cal, w.edges, w.locations).empty());
}

TEST_CASE("replay: appointment beyond the window never alerts") {
  const World w = make_world(14'400.0);
  const std::int64_t t0 = 2'000'000;
  const Track track = parked_track(w.locations[0].center, t0, t0 + 1200);
  // stays > 7200 s away through the whole replay
  const std::vector<Appointment> cal = {{"far", 1, t0 + 1200 + 7201, false}};
  CHECK(replay(track, cal, w.edges, w.locations).empty());
}

TEST_CASE("replay re-arms after slack recovers, then alerts again") {
  const World w = make_world(2400.0);
  const std::int64_t t0 = 3'000'000;
  const std::int64_t start = t0 + 3000;
  // late at home, then inside the destination (slack recovers),
  // then back out before the start
  Track track;
  for (std::int64_t ts = t0; ts < t0 + 900; ts += 30) {
    track.fixes.push_back(fix_at(w.locations[0].center, ts));
  }
  for (std::int64_t ts = t0 + 900; ts < t0 + 1800; ts += 30) {
    track.fixes.push_back(fix_at(w.locations[1].center, ts));
  }
  for (std::int64_t ts = t0 + 1800; ts <= t0 + 2900; ts += 30) {
    track.fixes.push_back(fix_at(w.locations[0].center, ts));
  }
  const std::vector<Appointment> cal = {{"flaky", 1, start, false}};
  const auto log = replay(track, cal, w.edges, w.locations);
  CHECK(log.size() == 2);
}

TEST_CASE("replay is pure: identical inputs give byte-identical logs") {
  const World w = make_world(2400.0);
  const std::int64_t t0 = 2'500'000;
  const Track track = parked_track(w.locations[0].center, t0, t0 + 2400);
  const std::vector<Appointment> cal = {{"m1", 1, t0 + 2000, false},
                                        {"m2", 1, t0 + 4000, false}};
  std::ostringstream a, b;
  write_alerts_csv(replay(track, cal, w.edges, w.locations), a);
  write_alerts_csv(replay(track, cal, w.edges, w.locations), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("m2") != std::string::npos);
}

TEST_CASE("replay of empty track or empty calendar is an empty log") {
  const World w = make_world(600.0);
  const Track track = parked_track(w.locations[0].center, 1000, 2000);
  CHECK(replay(Track{}, {{"x", 1, 5000, false}}, w.edges, w.locations).empty());
  CHECK(replay(track, {}, w.edges, w.locations).empty());
}

TEST_CASE("calendar CSV parsing, including quoted titles") {
  std::istringstream in(
      "start_iso8601,location_id,title,recurs_weekly\n"
      "2004-05-14T09:00:00Z,2,\"standup, daily\",1\n"
      "2004-05-15T13:30:00Z,0,dentist,0\n");
  const auto cal = read_calendar_csv(in);
  REQUIRE(cal.size() == 2);
  CHECK(cal[0].title == "standup, daily");
  CHECK(cal[0].location == 2);
  CHECK(cal[0].recurs_weekly);
  CHECK(cal[1].start == parse_iso8601("2004-05-15T13:30:00Z"));
  CHECK(!cal[1].recurs_weekly);

  std::istringstream bad("2004-05-15T13:30:00Z,0,dentist,2\n");
  CHECK_THROWS_AS(read_calendar_csv(bad), ParseError);
}

TEST_CASE("alert log CSV format") {
  Alert a;
  a.title = "meeting";
  a.occurrence_start = parse_iso8601("2004-05-14T10:00:00Z");
  a.issued_at = parse_iso8601("2004-05-14T09:30:00Z");
  a.travel_seconds = 2400.0;
  a.slack_seconds = -600.0;
  std::ostringstream out;
  write_alerts_csv({a}, out);
  CHECK(out.str() ==
        "issued_at_iso8601,appointment_title,appointment_start,travel_seconds,"
        "slack_seconds\n"
        "2004-05-14T09:30:00Z,meeting,2004-05-14T10:00:00Z,2400.0,-600.0\n");
}
