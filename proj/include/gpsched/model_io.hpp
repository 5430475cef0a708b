#ifndef GPSCHED_MODEL_IO_HPP
#define GPSCHED_MODEL_IO_HPP

#include <istream>
#include <ostream>

#include "gpsched/clustering.hpp"
#include "gpsched/schedule.hpp"
#include "gpsched/travel.hpp"

namespace gpsched {

// Versioned CSV round-trips for the learned models. Each file starts with a
// `# gpsched <kind> v1` comment; readers reject unknown versions.

void write_locations_csv(const std::vector<Location>& locations, std::ostream& out);
std::vector<Location> read_locations_csv(std::istream& in);

void write_edges_csv(const std::vector<TravelEdge>& edges, std::ostream& out);
std::vector<TravelEdge> read_edges_csv(std::istream& in);

/// `weekday,minute,location_id,count,coverage`; one row per non-zero count
/// plus a `wd,-1,-1,0,coverage` row per weekday carrying the denominator.
void write_schedule_csv(const ScheduleModel& model, std::ostream& out);
ScheduleModel read_schedule_csv(std::istream& in);

void write_sweep_csv(const RadiusSweep& sweep, std::ostream& out);

}  // namespace gpsched

#endif  // GPSCHED_MODEL_IO_HPP
