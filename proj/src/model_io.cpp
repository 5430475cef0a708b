#include "gpsched/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "gpsched/csv.hpp"
#include "gpsched/errors.hpp"

namespace gpsched {

namespace {

struct CsvReader {
  std::istream& in;
  std::size_t line_no = 0;

  bool next(std::vector<std::string>* fields) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      *fields = split_csv_line(t);
      return true;
    }
    return false;
  }
};

void expect_version(std::istream& in, const std::string& kind, std::size_t* line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty " + kind + " file");
  *line_no = 1;
  if (trim(line) != "# gpsched " + kind + " v1") {
    throw ParseError("expected '# gpsched " + kind + " v1' header", 1);
  }
}

double to_double(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError("bad number '" + s + "'", line_no);
  }
  return v;
}

long to_long(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError("bad integer '" + s + "'", line_no);
  }
  return v;
}

}  // namespace

void write_locations_csv(const std::vector<Location>& locations, std::ostream& out) {
  out << "# gpsched locations v1\n";
  out << "id,center_lat,center_lon,radius_m,member_count\n";
  char buf[128];
  for (const Location& loc : locations) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.1f,%zu", loc.id,
                  loc.center.lat, loc.center.lon, loc.radius_m,
                  loc.members.size());
    out << buf << "\n";
  }
}

std::vector<Location> read_locations_csv(std::istream& in) {
  std::size_t header_line = 0;
  expect_version(in, "locations", &header_line);
  CsvReader reader{in, header_line};

  std::vector<Location> locations;
  std::vector<std::string> f;
  bool saw_header = false;
  while (reader.next(&f)) {
    if (!saw_header) {
      if (f.size() != 5 || f[0] != "id") {
        throw ParseError("bad locations header", reader.line_no);
      }
      saw_header = true;
      continue;
    }
    if (f.size() != 5) throw ParseError("expected 5 fields", reader.line_no);
    Location loc;
    loc.id = static_cast<int>(to_long(f[0], reader.line_no));
    loc.center = GeoPoint(to_double(f[1], reader.line_no),
                          to_double(f[2], reader.line_no));
    loc.radius_m = to_double(f[3], reader.line_no);
    // member indices are not persisted; keep the count as placeholder slots
    loc.members.resize(static_cast<std::size_t>(to_long(f[4], reader.line_no)));
    locations.push_back(std::move(loc));
  }
  return locations;
}

void write_edges_csv(const std::vector<TravelEdge>& edges, std::ostream& out) {
  out << "# gpsched edges v1\n";
  out << "from_id,to_id,mean_seconds,n_samples,mean_speed_mph\n";
  char buf[128];
  for (const TravelEdge& e : edges) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.3f,%d,%.4f", e.from, e.to,
                  e.mean_seconds, e.n_samples, e.mean_speed_mph);
    out << buf << "\n";
  }
}

std::vector<TravelEdge> read_edges_csv(std::istream& in) {
  std::size_t header_line = 0;
  expect_version(in, "edges", &header_line);
  CsvReader reader{in, header_line};

  std::vector<TravelEdge> edges;
  std::vector<std::string> f;
  bool saw_header = false;
  while (reader.next(&f)) {
    if (!saw_header) {
      if (f.size() != 5 || f[0] != "from_id") {
        throw ParseError("bad edges header", reader.line_no);
      }
      saw_header = true;
      continue;
    }
    if (f.size() != 5) throw ParseError("expected 5 fields", reader.line_no);
    TravelEdge e;
    e.from = static_cast<int>(to_long(f[0], reader.line_no));
    e.to = static_cast<int>(to_long(f[1], reader.line_no));
    e.mean_seconds = to_double(f[2], reader.line_no);
    e.n_samples = static_cast<int>(to_long(f[3], reader.line_no));
    e.mean_speed_mph = to_double(f[4], reader.line_no);
    edges.push_back(e);
  }
  return edges;
}

void write_schedule_csv(const ScheduleModel& model, std::ostream& out) {
  out << "# gpsched schedule v1\n";
  out << "# tz_offset_min=" << model.tz_offset_min << "\n";
  out << "weekday,minute,location_id,count,coverage\n";
  for (int wd = 0; wd < 7; ++wd) {
    out << wd << ",-1,-1,0," << model.coverage[wd] << "\n";
  }
  for (int wd = 0; wd < 7; ++wd) {
    for (int m = 0; m < kMinutesPerDay; ++m) {
      for (const auto& [loc, count] : model.at(wd, m)) {
        if (count > 0) {
          out << wd << ',' << m << ',' << loc << ',' << count << ','
              << model.coverage[wd] << "\n";
        }
      }
    }
  }
}

ScheduleModel read_schedule_csv(std::istream& in) {
  std::size_t header_line = 0;
  expect_version(in, "schedule", &header_line);

  ScheduleModel model;
  std::string line;
  std::size_t line_no = header_line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (t.rfind("# tz_offset_min=", 0) == 0) {
        model.tz_offset_min = std::atoi(t.c_str() + 16);
      }
      continue;
    }
    const std::vector<std::string> f = split_csv_line(t);
    if (!saw_header) {
      if (f.size() != 5 || f[0] != "weekday") {
        throw ParseError("bad schedule header", line_no);
      }
      saw_header = true;
      continue;
    }
    if (f.size() != 5) throw ParseError("expected 5 fields", line_no);
    const int wd = static_cast<int>(to_long(f[0], line_no));
    const int minute = static_cast<int>(to_long(f[1], line_no));
    const int loc = static_cast<int>(to_long(f[2], line_no));
    const int count = static_cast<int>(to_long(f[3], line_no));
    const int coverage = static_cast<int>(to_long(f[4], line_no));
    if (wd < 0 || wd > 6) throw ParseError("weekday out of range", line_no);
    if (minute == -1) {
      model.coverage[wd] = coverage;
      continue;
    }
    if (minute < 0 || minute >= kMinutesPerDay) {
      throw ParseError("minute out of range", line_no);
    }
    model.at(wd, minute)[loc] = count;
    model.coverage[wd] = coverage;
  }
  return model;
}

void write_sweep_csv(const RadiusSweep& sweep, std::ostream& out) {
  char buf[96];
  out << "# gpsched sweep v1\n";
  std::snprintf(buf, sizeof buf, "# chosen_radius_m=%.1f no_knee=%d seed=%llu",
                sweep.chosen_radius_m, sweep.no_knee ? 1 : 0,
                static_cast<unsigned long long>(sweep.seed));
  out << buf << "\n";
  out << "radius_m,raw_count,smoothed_count\n";
  for (std::size_t i = 0; i < sweep.radii_m.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.1f,%d,%.6f", sweep.radii_m[i],
                  sweep.raw_counts[i], sweep.smoothed_counts[i]);
    out << buf << "\n";
  }
}

}  // namespace gpsched
