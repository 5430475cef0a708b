#ifndef GPSCHED_TIME_UTIL_HPP
#define GPSCHED_TIME_UTIL_HPP

#include <cstdint>
#include <string>

namespace gpsched {

inline constexpr std::int64_t kSecondsPerDay = 86'400;
inline constexpr std::int64_t kSecondsPerWeek = 7 * kSecondsPerDay;
inline constexpr int kMinutesPerDay = 1'440;

struct CivilDate {
  int year;
  int month;  // 1..12
  int day;    // 1..31
};

// Proleptic Gregorian calendar <-> days since 1970-01-01.
std::int64_t days_from_civil(int year, int month, int day);
CivilDate civil_from_days(std::int64_t days);

std::int64_t utc_seconds(int year, int month, int day, int hour, int minute,
                         int second);

/// "YYYY-MM-DDTHH:MM:SSZ" -> UTC epoch seconds. Throws ParseError.
std::int64_t parse_iso8601(const std::string& s);
std::string format_iso8601(std::int64_t t);

std::int64_t floor_div(std::int64_t a, std::int64_t b);

/// Weekday of a day number, 0 = Monday .. 6 = Sunday.
int weekday_of_day(std::int64_t days);

/// Local civil day number of a UTC instant under a fixed UTC offset.
std::int64_t local_day(std::int64_t utc, int tz_offset_min);

/// Local minute-of-day in [0, 1440).
int local_minute_of_day(std::int64_t utc, int tz_offset_min);

}  // namespace gpsched

#endif  // GPSCHED_TIME_UTIL_HPP
