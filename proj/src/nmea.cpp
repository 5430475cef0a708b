#include "gpsched/nmea.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "gpsched/csv.hpp"
#include "gpsched/errors.hpp"
#include "gpsched/time_util.hpp"

namespace gpsched {

namespace {

bool checksum_ok(const std::string& s, std::size_t star) {
  unsigned char sum = 0;
  for (std::size_t i = 1; i < star; ++i) sum ^= static_cast<unsigned char>(s[i]);
  if (star + 2 >= s.size()) return false;
  char* end = nullptr;
  const std::string hex = s.substr(star + 1, 2);
  const long given = std::strtol(hex.c_str(), &end, 16);
  if (end != hex.c_str() + 2) return false;
  return given == sum;
}

std::vector<std::string> split_fields(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// ddmm.mmmm (lat) or dddmm.mmmm (lon) -> signed degrees.
bool parse_angle(const std::string& field, char hemi, bool is_lat, double* out) {
  const std::size_t dot = field.find('.');
  const std::size_t head = dot == std::string::npos ? field.size() : dot;
  const std::size_t deg_digits = is_lat ? 2 : 3;
  if (head < deg_digits + 2) return false;
  const std::string deg_part = field.substr(0, head - 2);
  if (!all_digits(deg_part)) return false;
  char* end = nullptr;
  const std::string min_part = field.substr(head - 2);
  const double minutes = std::strtod(min_part.c_str(), &end);
  if (end != min_part.c_str() + min_part.size() || minutes >= 60.0) return false;
  double deg = std::atof(deg_part.c_str()) + minutes / 60.0;
  if (is_lat) {
    if (hemi == 'S') deg = -deg;
    else if (hemi != 'N') return false;
    if (deg < -90.0 || deg > 90.0) return false;
  } else {
    if (hemi == 'W') deg = -deg;
    else if (hemi != 'E') return false;
    if (deg < -180.0 || deg > 180.0) return false;
    deg = wrap_lon(deg);
  }
  *out = deg;
  return true;
}

bool parse_hms(const std::string& field, int* h, int* m, int* s) {
  const std::size_t dot = field.find('.');
  const std::string hms = dot == std::string::npos ? field : field.substr(0, dot);
  if (hms.size() != 6 || !all_digits(hms)) return false;
  *h = std::atoi(hms.substr(0, 2).c_str());
  *m = std::atoi(hms.substr(2, 2).c_str());
  *s = std::atoi(hms.substr(4, 2).c_str());
  return *h < 24 && *m < 60 && *s < 61;
}

bool parse_dmy(const std::string& field, int* y, int* mo, int* d) {
  if (field.size() != 6 || !all_digits(field)) return false;
  *d = std::atoi(field.substr(0, 2).c_str());
  *mo = std::atoi(field.substr(2, 2).c_str());
  const int yy = std::atoi(field.substr(4, 2).c_str());
  *y = yy < 80 ? 2000 + yy : 1900 + yy;
  return *d >= 1 && *d <= 31 && *mo >= 1 && *mo <= 12;
}

}  // namespace

Track parse_nmea(std::istream& in, NmeaStats* stats) {
  NmeaStats local;
  NmeaStats& st = stats ? *stats : local;
  st = NmeaStats{};

  // first-wins dedup keyed by timestamp; map keeps the output sorted
  std::map<std::int64_t, Fix> by_time;

  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    ++st.lines;

    if (line[0] != '$') {
      ++st.malformed;
      continue;
    }
    const std::size_t star = line.find('*');
    if (star == std::string::npos) {
      ++st.malformed;
      continue;
    }
    if (!checksum_ok(line, star)) {
      ++st.bad_checksum;
      continue;
    }

    const std::vector<std::string> f = split_fields(line.substr(1, star - 1));
    if (f[0] != "GPRMC") {
      ++st.other_sentences;
      continue;
    }
    // GPRMC,time,status,lat,N/S,lon,E/W,sog_knots,cog,date,magvar,mv E/W
    if (f.size() < 10) {
      ++st.malformed;
      continue;
    }
    if (f[2] == "V") {
      ++st.void_status;
      continue;
    }
    if (f[2] != "A") {
      ++st.malformed;
      continue;
    }

    int hh, mm, ss, year, month, day;
    double lat, lon;
    if (!parse_hms(f[1], &hh, &mm, &ss) || !parse_dmy(f[9], &year, &month, &day) ||
        !parse_angle(f[3], f[4].empty() ? '?' : f[4][0], true, &lat) ||
        !parse_angle(f[5], f[6].empty() ? '?' : f[6][0], false, &lon)) {
      ++st.malformed;
      continue;
    }

    Fix fix;
    fix.point = GeoPoint(lat, lon);
    fix.timestamp = utc_seconds(year, month, day, hh, mm, ss);
    if (!f[7].empty()) {
      char* end = nullptr;
      const double knots = std::strtod(f[7].c_str(), &end);
      if (end != f[7].c_str() + f[7].size() || knots < 0.0) {
        ++st.malformed;
        continue;
      }
      fix.speed_mph = knots * kKnotsToMph;
    }

    if (!by_time.emplace(fix.timestamp, fix).second) {
      ++st.duplicate_timestamps;
      continue;
    }
    ++st.fixes;
  }

  if (in.bad()) throw ParseError("I/O failure reading NMEA stream");
  if (st.lines > 0 && st.fixes == 0) {
    throw ParseError("no valid fixes");
  }

  Track track;
  track.fixes.reserve(by_time.size());
  for (const auto& [ts, fix] : by_time) track.fixes.push_back(fix);
  return track;
}

}  // namespace gpsched
