#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gpsched/errors.hpp"
#include "gpsched/pipeline.hpp"
#include "gpsched/synth.hpp"
#include "gpsched/time_util.hpp"
#include "gpsched/track_csv.hpp"

using namespace gpsched;

namespace {

const std::int64_t kMonday = days_from_civil(2004, 5, 3);

GeoPoint north_of(const GeoPoint& p, double meters) {
  return GeoPoint(p.lat + meters / kEarthRadiusM * 180.0 / M_PI, p.lon);
}

RoutineSpec three_stop_day() {
  RoutineSpec spec;
  const GeoPoint home(33.7000, -84.4000);
  spec.locations = {{"home", home},
                    {"office", north_of(home, 5000.0)},
                    {"gym", north_of(home, 11000.0)}};
  spec.pattern = {{0, 8 * 60, 9 * 60, "home", 1.0},
                  {0, 10 * 60, 12 * 60, "office", 1.0},
                  {0, 14 * 60, 15 * 60, "gym", 1.0}};
  spec.speed_mph = 30.0;
  spec.weeks = 1;
  spec.seed = 5;
  spec.start_day = kMonday;
  return spec;
}

}  // namespace

TEST_CASE("one interior stay, zero noise, dropout: one gap spanning the stay") {
  const RoutineSpec spec = three_stop_day();
  const auto [track, truth] = generate(spec);
  REQUIRE(truth.stays.size() == 3);
  REQUIRE(truth.legs.size() == 2);

  // the only timestamp jumps are the office stay bounded by its legs
  const TrueStay& office = truth.stays[1];
  CHECK(office.label == "office");
  std::vector<std::pair<std::int64_t, std::int64_t>> gaps;
  for (std::size_t i = 1; i < track.fixes.size(); ++i) {
    if (track.fixes[i].timestamp - track.fixes[i - 1].timestamp > 1) {
      gaps.emplace_back(track.fixes[i - 1].timestamp, track.fixes[i].timestamp);
    }
  }
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0].first == office.start);
  CHECK(gaps[0].second == office.end);
}

TEST_CASE("a one-mile leg at 30 mph lasts exactly 120 seconds") {
  RoutineSpec spec;
  const GeoPoint a(33.7000, -84.4000);
  spec.locations = {{"a", a}, {"b", north_of(a, 1609.344)}};
  spec.pattern = {{0, 8 * 60, 9 * 60, "a", 1.0}, {0, 10 * 60, 11 * 60, "b", 1.0}};
  spec.speed_mph = 30.0;
  spec.start_day = kMonday;
  const auto [track, truth] = generate(spec);
  REQUIRE(truth.legs.size() == 1);
  CHECK(truth.legs[0].arrive - truth.legs[0].depart == 120);
  // 1 Hz fixes from departure to arrival inclusive
  CHECK(track.size() == 121);
  CHECK(track.fixes.front().timestamp == truth.legs[0].depart);
  CHECK(track.fixes.back().timestamp == truth.legs[0].arrive);
  CHECK(*track.fixes[5].speed_mph == 30.0);
}

TEST_CASE("same seed regenerates the track bit-for-bit") {
  RoutineSpec spec = three_stop_day();
  spec.noise_sigma_m = 30.0;
  spec.weeks = 2;
  const auto [t1, g1] = generate(spec);
  const auto [t2, g2] = generate(spec);
  std::ostringstream a, b;
  emit_track_csv(t1, a);
  emit_track_csv(t2, b);
  CHECK(a.str() == b.str());
  CHECK(g1.attendance == g2.attendance);

  spec.seed = 6;
  const auto [t3, g3] = generate(spec);
  std::ostringstream c;
  emit_track_csv(t3, c);
  CHECK(a.str() != c.str());  // noise actually depends on the seed
}

TEST_CASE("infeasible pattern hops are rejected by name") {
  RoutineSpec spec;
  const GeoPoint a(33.7000, -84.4000);
  spec.locations = {{"a", a}, {"far", north_of(a, 80'000.0)}};
  // 80 km at 30 mph takes ~100 min; only 60 are available
  spec.pattern = {{0, 8 * 60, 9 * 60, "a", 1.0},
                  {0, 10 * 60, 11 * 60, "far", 1.0}};
  spec.start_day = kMonday;
  CHECK_THROWS_WITH_AS(generate(spec),
                       "infeasible pattern: cannot reach 'far' from 'a' in time",
                       ParseError);
}

TEST_CASE("attendance probabilities skip visits; skipped stays extend") {
  RoutineSpec spec = three_stop_day();
  spec.pattern[1].attendance_p = 0.5;
  spec.weeks = 40;
  spec.seed = 11;
  const auto [track, truth] = generate(spec);

  int attended = 0;
  for (int w = 0; w < spec.weeks; ++w) {
    if (truth.attendance[w][1]) ++attended;
  }
  CHECK(attended > 5);
  CHECK(attended < 35);

  // every office stay in the truth corresponds to an attended week
  int office_stays = 0;
  for (const TrueStay& s : truth.stays) {
    if (s.label == "office") ++office_stays;
  }
  CHECK(office_stays == attended);
}

TEST_CASE("sigma 0 with dropout: the pipeline recovers the stay structure") {
  RoutineSpec spec = three_stop_day();
  spec.weeks = 3;
  const auto [track, truth] = generate(spec);

  LearnParams params;
  params.radius_min_m = 50.0;
  params.radius_max_m = 500.0;
  params.radius_step_m = 25.0;
  const LearnResult r = learn(track, params);

  REQUIRE(r.locations.size() == 3);

  // map each learned location to the nearest true location, exactly
  std::map<int, std::string> names;
  for (const Location& loc : r.locations) {
    for (const auto& [label, point] : truth.locations) {
      if (haversine_m(loc.center, point) < 1.0) names[loc.id] = label;
    }
  }
  REQUIRE(names.size() == 3);

  // events reproduce the interior true stays exactly (the first stay has no
  // arrival fix; the last has no minutes after its arrival)
  std::vector<TrueStay> want(truth.stays.begin() + 1, truth.stays.end() - 1);
  REQUIRE(r.events.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(names.at(r.events[i].location) == want[i].label);
    CHECK(r.events[i].start == want[i].start);
    CHECK(r.events[i].end == want[i].end);
  }
}

TEST_CASE("dropout off: jitter fixes fill stays yet the pipeline still works") {
  RoutineSpec spec = three_stop_day();
  spec.dropout = false;
  spec.noise_sigma_m = 15.0;
  spec.weeks = 2;
  spec.seed = 3;
  const auto [track, truth] = generate(spec);

  // stays now emit sub-1-mph fixes, so the raw track has no long gaps
  std::int64_t max_gap = 0;
  for (std::size_t i = 1; i < track.fixes.size(); ++i) {
    max_gap = std::max(max_gap,
                       track.fixes[i].timestamp - track.fixes[i - 1].timestamp);
  }
  CHECK(max_gap <= 1);

  LearnParams params;
  params.seed = 3;
  const LearnResult r = learn(track, params);
  CHECK(r.locations.size() == 3);
  CHECK(!r.edges.empty());

  // the gaps reappear after the moving filter strips the jitter
  REQUIRE(r.places.size() > 2);
}

TEST_CASE("routine spec file parses into a validated spec") {
  std::istringstream in(
      "# demo routine\n"
      "[locations]\n"
      "home = 33.700000,-84.400000\n"
      "office = 33.745000,-84.400000\n"
      "\n"
      "[pattern]\n"
      "mon 08:00 09:00 home\n"
      "mon 10:00 12:00 office 0.75\n"
      "\n"
      "[options]\n"
      "speed_mph = 25\n"
      "noise_sigma_m = 10\n"
      "dropout = 1\n"
      "weeks = 2\n"
      "seed = 9\n"
      "start_date = 2004-05-03\n");
  const RoutineSpec spec = load_routine_spec(in);
  CHECK(spec.locations.size() == 2);
  REQUIRE(spec.pattern.size() == 2);
  CHECK(spec.pattern[1].attendance_p == 0.75);
  CHECK(spec.pattern[0].weekday == 0);
  CHECK(spec.pattern[0].start_minute == 480);
  CHECK(spec.speed_mph == 25.0);
  CHECK(spec.weeks == 2);
  CHECK(spec.seed == 9);
  CHECK(weekday_of_day(spec.start_day) == 0);

  std::istringstream tuesday(
      "[locations]\nhome = 33.7,-84.4\n[pattern]\nmon 08:00 09:00 home\n"
      "[options]\nstart_date = 2004-05-04\n");
  CHECK_THROWS_WITH_AS(load_routine_spec(tuesday), "start_date must be a Monday",
                       ParseError);

  std::istringstream overlap(
      "[locations]\nhome = 33.7,-84.4\n[pattern]\n"
      "mon 08:00 10:00 home\nmon 09:00 11:00 home\n"
      "[options]\nstart_date = 2004-05-03\n");
  CHECK_THROWS_AS(load_routine_spec(overlap), ParseError);

  std::istringstream unknown_label(
      "[locations]\nhome = 33.7,-84.4\n[pattern]\nmon 08:00 09:00 work\n"
      "[options]\nstart_date = 2004-05-03\n");
  CHECK_THROWS_AS(load_routine_spec(unknown_label), ParseError);
}

TEST_CASE("ground truth CSV lists locations, stays, legs and attendance") {
  RoutineSpec spec = three_stop_day();
  spec.pattern[2].attendance_p = 0.0;  // gym never happens
  const auto [track, truth] = generate(spec);
  std::ostringstream out;
  write_ground_truth_csv(truth, out);
  const std::string csv = out.str();
  CHECK(csv.find("location,home") != std::string::npos);
  CHECK(csv.find("stay,office") != std::string::npos);
  CHECK(csv.find("leg,home,office") != std::string::npos);
  CHECK(csv.find("attend,2,0,,,,,0") != std::string::npos);
}
