#ifndef GPSCHED_TRACK_CSV_HPP
#define GPSCHED_TRACK_CSV_HPP

#include <istream>
#include <ostream>

#include "gpsched/track.hpp"

namespace gpsched {

/// Canonical track CSV: header `timestamp,lat,lon,speed_mph`, ISO-8601 UTC
/// timestamps, strictly increasing; the speed field may be empty.
/// Throws ParseError with a 1-based line number on malformed or
/// non-monotonic rows.
Track parse_track_csv(std::istream& in);

/// Inverse of parse_track_csv. Fixed formatting: 6-decimal lat/lon,
/// 2-decimal speed, LF line endings.
void emit_track_csv(const Track& track, std::ostream& out);

}  // namespace gpsched

#endif  // GPSCHED_TRACK_CSV_HPP
