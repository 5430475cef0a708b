#include "gpsched/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "gpsched/csv.hpp"
#include "gpsched/errors.hpp"
#include "gpsched/rng.hpp"
#include "gpsched/time_util.hpp"

namespace gpsched {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kStayJitterMph = 0.5;

const char* kWeekdayNames[7] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

GeoPoint offset_point(const GeoPoint& p, double east_m, double north_m) {
  const double lat = p.lat + north_m / kEarthRadiusM / kDegToRad;
  const double cosl = std::max(std::cos(p.lat * kDegToRad), 1e-12);
  const double lon = wrap_lon(p.lon + east_m / (kEarthRadiusM * cosl) / kDegToRad);
  return GeoPoint(lat, lon);
}

// whole seconds to drive `dist` at `mps`; tolerant of float noise so that
// an exact division stays exact
std::int64_t travel_seconds_for(double dist_m, double mps) {
  return static_cast<std::int64_t>(std::ceil(dist_m / mps - 1e-9));
}

GeoPoint lerp_point(const GeoPoint& a, const GeoPoint& b, double f) {
  if (f <= 0.0) return a;  // exact endpoints
  if (f >= 1.0) return b;
  const double dlon = b.lon - a.lon;  // routines stay far from the antimeridian
  return GeoPoint(a.lat + (b.lat - a.lat) * f, a.lon + dlon * f);
}

struct Visit {
  std::size_t entry;  // index into spec.pattern
  int week;
  std::int64_t start;
  std::int64_t end;
  GeoPoint where;
  std::string label;
};

}  // namespace

void RoutineSpec::validate() const {
  if (weeks < 1) throw ParseError("weeks must be >= 1");
  if (speed_mph <= 0.0) throw ParseError("speed_mph must be positive");
  if (noise_sigma_m < 0.0) throw ParseError("noise_sigma_m must be >= 0");
  if (locations.empty()) throw ParseError("no locations defined");
  if (pattern.empty()) throw ParseError("empty weekly pattern");
  if (weekday_of_day(start_day) != 0) {
    throw ParseError("start_date must be a Monday");
  }

  std::map<std::string, int> labels;
  for (const auto& [label, point] : locations) {
    if (!labels.emplace(label, 1).second) {
      throw ParseError("duplicate location label '" + label + "'");
    }
    (void)point;
  }

  const PatternEntry* prev = nullptr;
  for (const PatternEntry& e : pattern) {
    if (e.weekday < 0 || e.weekday > 6 || e.start_minute < 0 ||
        e.end_minute > kMinutesPerDay || e.start_minute >= e.end_minute) {
      throw ParseError("bad pattern entry '" + e.label + "'");
    }
    if (e.attendance_p < 0.0 || e.attendance_p > 1.0) {
      throw ParseError("attendance probability out of [0,1] for '" + e.label + "'");
    }
    if (!labels.count(e.label)) {
      throw ParseError("pattern references unknown location '" + e.label + "'");
    }
    if (prev && std::pair(e.weekday, e.start_minute) <
                    std::pair(prev->weekday, prev->start_minute)) {
      throw ParseError("pattern entries must be sorted by weekday and time");
    }
    if (prev && prev->weekday == e.weekday && e.start_minute < prev->end_minute) {
      throw ParseError("overlapping pattern entries on " +
                       std::string(kWeekdayNames[e.weekday]));
    }
    prev = &e;
  }
}

std::pair<Track, GroundTruth> generate(const RoutineSpec& spec) {
  spec.validate();

  std::map<std::string, GeoPoint> by_label(spec.locations.begin(),
                                           spec.locations.end());

  // Feasibility over the full weekly cycle; skipped visits only widen gaps.
  const double speed_mps = spec.speed_mph * kMphToMps;
  for (std::size_t i = 0; i < spec.pattern.size(); ++i) {
    const PatternEntry& a = spec.pattern[i];
    const PatternEntry& b = spec.pattern[(i + 1) % spec.pattern.size()];
    std::int64_t gap_s = (std::int64_t{b.weekday} - a.weekday) * kSecondsPerDay +
                         (b.start_minute - a.end_minute) * 60;
    if (i + 1 == spec.pattern.size()) gap_s += kSecondsPerWeek;
    const std::int64_t travel_s = travel_seconds_for(
        haversine_m(by_label.at(a.label), by_label.at(b.label)), speed_mps);
    if (travel_s > gap_s) {
      throw ParseError("infeasible pattern: cannot reach '" + b.label +
                       "' from '" + a.label + "' in time");
    }
  }

  Rng rng(spec.seed);
  GroundTruth truth;
  truth.locations = spec.locations;
  truth.attendance.assign(spec.weeks, std::vector<bool>(spec.pattern.size(), false));

  std::vector<Visit> visits;
  for (int w = 0; w < spec.weeks; ++w) {
    for (std::size_t e = 0; e < spec.pattern.size(); ++e) {
      const PatternEntry& entry = spec.pattern[e];
      const bool attend = rng.uniform() < entry.attendance_p;
      truth.attendance[w][e] = attend;
      if (!attend) continue;
      const std::int64_t day = spec.start_day + std::int64_t{w} * 7 + entry.weekday;
      visits.push_back({e, w, day * kSecondsPerDay + entry.start_minute * 60,
                        day * kSecondsPerDay + entry.end_minute * 60,
                        by_label.at(entry.label), entry.label});
    }
  }

  Track track;
  auto emit = [&](const GeoPoint& p, std::int64_t t, double speed) {
    Fix fix;
    fix.point = spec.noise_sigma_m > 0.0
                    ? offset_point(p, rng.gaussian() * spec.noise_sigma_m,
                                   rng.gaussian() * spec.noise_sigma_m)
                    : p;
    fix.timestamp = t;
    fix.speed_mph = speed;
    track.fixes.push_back(fix);
  };
  auto emit_stay = [&](const Visit& v, std::int64_t from, std::int64_t until) {
    if (spec.dropout) return;
    for (std::int64_t t = from; t <= until; ++t) emit(v.where, t, kStayJitterMph);
  };

  if (visits.empty()) return {track, truth};

  std::size_t i = 0;
  std::int64_t stay_start = visits[0].start;
  bool arrived_by_leg = false;  // the arrival fix already carries stay_start
  while (i < visits.size()) {
    // contiguous run of visits at one location becomes a single stay
    std::size_t j = i;
    while (j + 1 < visits.size() && visits[j + 1].label == visits[i].label) ++j;

    const std::int64_t stay_fix_from = stay_start + (arrived_by_leg ? 1 : 0);
    std::int64_t depart = visits[j].end;
    if (j + 1 < visits.size()) {
      const Visit& next = visits[j + 1];
      const std::int64_t travel_s =
          travel_seconds_for(haversine_m(visits[i].where, next.where), speed_mps);
      depart = next.start - travel_s;
      if (depart < visits[j].end) {
        throw ParseError("infeasible pattern: cannot reach '" + next.label +
                         "' from '" + visits[j].label + "' in time");
      }

      emit_stay(visits[i], stay_fix_from, depart - 1);
      truth.stays.push_back({visits[i].label, stay_start, depart});
      for (std::int64_t t = depart; t <= next.start; ++t) {
        const double f = travel_s == 0
                             ? 1.0
                             : static_cast<double>(t - depart) / travel_s;
        emit(lerp_point(visits[i].where, next.where, f), t, spec.speed_mph);
      }
      truth.legs.push_back({visits[j].label, next.label, depart, next.start});
      stay_start = next.start;
      arrived_by_leg = true;
    } else {
      emit_stay(visits[i], stay_fix_from, depart);
      truth.stays.push_back({visits[i].label, stay_start, depart});
    }
    i = j + 1;
  }

  return {track, truth};
}

namespace {

int parse_weekday(const std::string& s) {
  for (int i = 0; i < 7; ++i) {
    if (s == kWeekdayNames[i]) return i;
  }
  throw ParseError("unknown weekday '" + s + "'");
}

int parse_hhmm(const std::string& s, std::size_t line_no) {
  int h, m;
  if (std::sscanf(s.c_str(), "%d:%d", &h, &m) != 2 || h < 0 || h > 24 || m < 0 ||
      m > 59) {
    throw ParseError("bad time '" + s + "'", line_no);
  }
  return h * 60 + m;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

RoutineSpec load_routine_spec(std::istream& in) {
  RoutineSpec spec;
  std::string line, section;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      continue;
    }

    if (section == "locations") {
      const std::size_t eq = t.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'label = lat,lon'", line_no);
      const std::string label = trim(t.substr(0, eq));
      const std::vector<std::string> ll = split_csv_line(trim(t.substr(eq + 1)));
      if (ll.size() != 2) throw ParseError("expected 'lat,lon'", line_no);
      try {
        spec.locations.emplace_back(
            label, GeoPoint(std::atof(ll[0].c_str()), std::atof(ll[1].c_str())));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
      }
    } else if (section == "pattern") {
      const std::vector<std::string> f = split_ws(t);
      if (f.size() != 4 && f.size() != 5) {
        throw ParseError("expected 'weekday hh:mm hh:mm label [attendance]'",
                         line_no);
      }
      PatternEntry entry;
      entry.weekday = parse_weekday(f[0]);
      entry.start_minute = parse_hhmm(f[1], line_no);
      entry.end_minute = parse_hhmm(f[2], line_no);
      entry.label = f[3];
      if (f.size() == 5) entry.attendance_p = std::atof(f[4].c_str());
      spec.pattern.push_back(std::move(entry));
    } else if (section == "options") {
      const std::size_t eq = t.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
      const std::string key = trim(t.substr(0, eq));
      const std::string val = trim(t.substr(eq + 1));
      if (key == "speed_mph") {
        spec.speed_mph = std::atof(val.c_str());
      } else if (key == "noise_sigma_m") {
        spec.noise_sigma_m = std::atof(val.c_str());
      } else if (key == "dropout") {
        spec.dropout = val == "1" || val == "true";
      } else if (key == "weeks") {
        spec.weeks = std::atoi(val.c_str());
      } else if (key == "seed") {
        spec.seed = std::strtoull(val.c_str(), nullptr, 10);
      } else if (key == "start_date") {
        int y, mo, d;
        if (std::sscanf(val.c_str(), "%d-%d-%d", &y, &mo, &d) != 3) {
          throw ParseError("bad start_date '" + val + "'", line_no);
        }
        spec.start_day = days_from_civil(y, mo, d);
      } else {
        throw ParseError("unknown option '" + key + "'", line_no);
      }
    } else {
      throw ParseError("content outside any [section]", line_no);
    }
  }

  spec.validate();
  return spec;
}

void write_ground_truth_csv(const GroundTruth& truth, std::ostream& out) {
  out << "record,label,aux,start_iso,end_iso,lat,lon,value\n";
  char buf[96];
  for (const auto& [label, point] : truth.locations) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", point.lat, point.lon);
    out << "location," << csv_escape(label) << ",,,," << buf << ",\n";
  }
  for (const TrueStay& s : truth.stays) {
    out << "stay," << csv_escape(s.label) << ",," << format_iso8601(s.start)
        << ',' << format_iso8601(s.end) << ",,,\n";
  }
  for (const TrueLeg& l : truth.legs) {
    out << "leg," << csv_escape(l.from) << ',' << csv_escape(l.to) << ','
        << format_iso8601(l.depart) << ',' << format_iso8601(l.arrive) << ",,,"
        << (l.arrive - l.depart) << "\n";
  }
  for (std::size_t w = 0; w < truth.attendance.size(); ++w) {
    for (std::size_t e = 0; e < truth.attendance[w].size(); ++e) {
      out << "attend," << e << ',' << w << ",,,,," << (truth.attendance[w][e] ? 1 : 0)
          << "\n";
    }
  }
}

}  // namespace gpsched
