#include "gpsched/track_csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "gpsched/csv.hpp"
#include "gpsched/errors.hpp"
#include "gpsched/time_util.hpp"

namespace gpsched {

namespace {

constexpr char kHeader[] = "timestamp,lat,lon,speed_mph";

double parse_number(const std::string& s, const char* what, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line_no);
  }
  return v;
}

}  // namespace

Track parse_track_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw ParseError("empty track CSV");
  }
  ++line_no;
  if (trim(line) != kHeader) {
    throw ParseError("expected header '" + std::string(kHeader) + "'", line_no);
  }

  Track track;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::vector<std::string> f = split_csv_line(t);
    if (f.size() != 4) {
      throw ParseError("expected 4 fields, got " + std::to_string(f.size()),
                       line_no);
    }

    Fix fix;
    std::int64_t ts;
    try {
      ts = parse_iso8601(f[0]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (ts <= 0) throw ParseError("non-positive timestamp", line_no);
    const double lat = parse_number(f[1], "latitude", line_no);
    const double lon = parse_number(f[2], "longitude", line_no);
    if (lat < -90.0 || lat > 90.0) {
      throw ParseError("latitude out of range", line_no);
    }
    if (lon <= -180.0 || lon > 180.0) {
      throw ParseError("longitude out of range", line_no);
    }
    fix.point = GeoPoint(lat, lon);
    fix.timestamp = ts;
    if (!f[3].empty()) {
      const double sp = parse_number(f[3], "speed", line_no);
      if (sp < 0.0) throw ParseError("negative speed", line_no);
      fix.speed_mph = sp;
    }

    if (!track.fixes.empty() && ts <= track.fixes.back().timestamp) {
      throw ParseError(ts == track.fixes.back().timestamp
                           ? "duplicate timestamp"
                           : "non-monotonic timestamp",
                       line_no);
    }
    track.fixes.push_back(fix);
  }
  if (in.bad()) throw ParseError("I/O failure reading track CSV");
  return track;
}

void emit_track_csv(const Track& track, std::ostream& out) {
  out << kHeader << "\n";
  char buf[96];
  for (const Fix& fix : track.fixes) {
    out << format_iso8601(fix.timestamp);
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,", fix.point.lat, fix.point.lon);
    out << buf;
    if (fix.speed_mph) {
      std::snprintf(buf, sizeof buf, "%.2f", *fix.speed_mph);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace gpsched
