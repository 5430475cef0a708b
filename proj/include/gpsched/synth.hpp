#ifndef GPSCHED_SYNTH_HPP
#define GPSCHED_SYNTH_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gpsched/track.hpp"

namespace gpsched {

struct PatternEntry {
  int weekday = 0;       // 0 = Monday
  int start_minute = 0;  // minutes from local midnight
  int end_minute = 0;
  std::string label;
  double attendance_p = 1.0;
};

/// A scripted weekly routine with known ground truth. Legs are straight
/// lines at a constant speed; stays either drop all fixes (indoors) or emit
/// sub-1-mph jitter fixes.
struct RoutineSpec {
  std::vector<std::pair<std::string, GeoPoint>> locations;
  std::vector<PatternEntry> pattern;
  double speed_mph = 30.0;
  double noise_sigma_m = 0.0;
  bool dropout = true;
  int weeks = 1;
  std::uint64_t seed = 0;
  std::int64_t start_day = 0;  // day number of the simulation's Monday

  void validate() const;  // throws ParseError on contradictions
};

struct TrueStay {
  std::string label;
  std::int64_t start = 0;  // arrival
  std::int64_t end = 0;    // departure
};

struct TrueLeg {
  std::string from, to;
  std::int64_t depart = 0;
  std::int64_t arrive = 0;
};

struct GroundTruth {
  std::vector<std::pair<std::string, GeoPoint>> locations;
  std::vector<TrueStay> stays;
  std::vector<TrueLeg> legs;
  std::vector<std::vector<bool>> attendance;  // [week][pattern entry]
};

/// Deterministic track + ground truth for a routine. Throws ParseError when
/// a pattern hop cannot be driven in the time between its stays.
std::pair<Track, GroundTruth> generate(const RoutineSpec& spec);

/// Sectioned plain-text spec:
///   [locations]  label = lat,lon
///   [pattern]    weekday hh:mm hh:mm label [attendance]
///   [options]    speed_mph / noise_sigma_m / dropout / weeks / seed / start_date
RoutineSpec load_routine_spec(std::istream& in);

void write_ground_truth_csv(const GroundTruth& truth, std::ostream& out);

}  // namespace gpsched

#endif  // GPSCHED_SYNTH_HPP
