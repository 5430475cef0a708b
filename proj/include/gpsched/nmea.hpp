#ifndef GPSCHED_NMEA_HPP
#define GPSCHED_NMEA_HPP

#include <cstddef>
#include <istream>

#include "gpsched/track.hpp"

namespace gpsched {

struct NmeaStats {
  std::size_t lines = 0;             // non-blank input lines
  std::size_t fixes = 0;             // accepted GPRMC sentences
  std::size_t bad_checksum = 0;
  std::size_t void_status = 0;       // status 'V'
  std::size_t malformed = 0;         // unparseable fields / structure
  std::size_t other_sentences = 0;   // valid checksum, not GPRMC
  std::size_t duplicate_timestamps = 0;

  std::size_t skipped() const { return bad_checksum + void_status + malformed; }
};

/// Parses NMEA-0183 GPRMC sentences into a track.
///
/// Only sentences with status 'A' and a correct XOR checksum yield fixes;
/// speed over ground is converted knots -> mph. The result is sorted by
/// timestamp with duplicates dropped (first occurrence in stream order wins).
/// Throws ParseError("no valid fixes") if the stream had content but nothing
/// parsed.
Track parse_nmea(std::istream& in, NmeaStats* stats = nullptr);

}  // namespace gpsched

#endif  // GPSCHED_NMEA_HPP
