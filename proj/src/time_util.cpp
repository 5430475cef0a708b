#include "gpsched/time_util.hpp"

#include <cstdio>

#include "gpsched/errors.hpp"

namespace gpsched {

// Howard Hinnant's branch-free civil calendar algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::int64_t utc_seconds(int year, int month, int day, int hour, int minute,
                         int second) {
  return days_from_civil(year, month, day) * kSecondsPerDay + hour * 3600 +
         minute * 60 + second;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int weekday_of_day(std::int64_t days) {
  // Day 0 (1970-01-01) was a Thursday; 0 = Monday here.
  return static_cast<int>(((days + 3) % 7 + 7) % 7);
}

std::int64_t local_day(std::int64_t utc, int tz_offset_min) {
  return floor_div(utc + std::int64_t{tz_offset_min} * 60, kSecondsPerDay);
}

int local_minute_of_day(std::int64_t utc, int tz_offset_min) {
  const std::int64_t local = utc + std::int64_t{tz_offset_min} * 60;
  const std::int64_t sec = local - local_day(utc, tz_offset_min) * kSecondsPerDay;
  return static_cast<int>(sec / 60);
}

std::int64_t parse_iso8601(const std::string& s) {
  int y, mo, d, h, mi, se;
  char tail;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi,
                  &se, &tail) != 7 ||
      tail != 'Z') {
    throw ParseError("bad ISO-8601 timestamp '" + s + "'");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || h < 0 || mi < 0 ||
      mi > 59 || se < 0 || se > 60) {
    throw ParseError("bad ISO-8601 timestamp '" + s + "'");
  }
  return utc_seconds(y, mo, d, h, mi, se);
}

std::string format_iso8601(std::int64_t t) {
  const std::int64_t days = floor_div(t, kSecondsPerDay);
  const CivilDate cd = civil_from_days(days);
  const std::int64_t sec = t - days * kSecondsPerDay;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", cd.year,
                cd.month, cd.day, static_cast<int>(sec / 3600),
                static_cast<int>(sec % 3600 / 60), static_cast<int>(sec % 60));
  return buf;
}

}  // namespace gpsched
