#ifndef GPSCHED_TRACK_HPP
#define GPSCHED_TRACK_HPP

#include <vector>

#include "gpsched/geo.hpp"

namespace gpsched {

/// An ordered GPS trace; timestamps strictly increasing.
struct Track {
  std::vector<Fix> fixes;

  bool empty() const { return fixes.empty(); }
  std::size_t size() const { return fixes.size(); }
};

/// A fix that precedes a data gap of at least the extraction threshold.
/// gap_seconds is +inf for the final fix of a track (end of data).
struct PlacePoint {
  Fix fix;
  double gap_seconds = 0.0;
};

}  // namespace gpsched

#endif  // GPSCHED_TRACK_HPP
