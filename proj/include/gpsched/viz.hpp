#ifndef GPSCHED_VIZ_HPP
#define GPSCHED_VIZ_HPP

#include <string>
#include <vector>

#include "gpsched/clustering.hpp"
#include "gpsched/schedule.hpp"

namespace gpsched {

/// Geometry of the schedule chart; exposed so output can be re-measured.
struct SvgLayout {
  static constexpr double kCellW = 96.0;
  static constexpr double kCellH = 12.0;
  static constexpr double kLeft = 56.0;
  static constexpr double kTop = 24.0;
  static constexpr double kLegendRowH = 18.0;
  static constexpr double kMargin = 8.0;
};

/// Fixed palette, cycled by location id.
extern const std::vector<std::string> kPalette;
const std::string& location_color(int id);
char location_letter(int id);

/// Weekly chart: one column per weekday, one row per segment; within each
/// cell, blocks sized by mean probability, colored per location, legend at
/// the bottom. Byte-deterministic for identical grids.
std::string render_schedule_svg(const SegmentGrid& grid);

/// Text twin of the chart; each cell shows locations as letters, one per
/// tenth of probability.
std::string render_schedule_ascii(const SegmentGrid& grid);

/// Locations as Point features (with radius_m / member_count properties) and
/// the optional track as a LineString; RFC 7946 [lon, lat] order,
/// coordinates rounded to 6 decimals.
std::string export_geojson(const std::vector<Location>& locations,
                           const Track* track = nullptr);

}  // namespace gpsched

#endif  // GPSCHED_VIZ_HPP
