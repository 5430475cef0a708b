#include "gpsched/viz.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gpsched {

const std::vector<std::string> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

const std::string& location_color(int id) {
  return kPalette[static_cast<std::size_t>(id) % kPalette.size()];
}

char location_letter(int id) { return static_cast<char>('A' + id % 26); }

namespace {

const char* kDayNames[7] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::set<int> grid_locations(const SegmentGrid& grid) {
  std::set<int> ids;
  for (int wd = 0; wd < 7; ++wd) {
    for (const auto& cell : grid.cells[wd]) {
      for (const auto& [loc, p] : cell) ids.insert(loc);
    }
  }
  return ids;
}

}  // namespace

std::string render_schedule_svg(const SegmentGrid& grid) {
  using L = SvgLayout;
  const int rows = grid.cells[0].empty() ? 0 : static_cast<int>(grid.cells[0].size());
  const std::set<int> ids = grid_locations(grid);

  const double grid_w = 7 * L::kCellW;
  const double legend_y = L::kTop + rows * L::kCellH + L::kMargin;
  const double height = legend_y + (ids.empty() ? 1 : ids.size()) * L::kLegendRowH +
                        L::kMargin;
  const double width = L::kLeft + grid_w + L::kMargin;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" font-family=\"monospace\" font-size=\"10\">\n";

  for (int wd = 0; wd < 7; ++wd) {
    svg << "<text x=\"" << num(L::kLeft + wd * L::kCellW + L::kCellW / 2)
        << "\" y=\"" << num(L::kTop - 8) << "\" text-anchor=\"middle\">"
        << kDayNames[wd] << "</text>\n";
  }

  for (int seg = 0; seg < rows; ++seg) {
    const int minute = seg * grid.segment_minutes;
    if (minute % 120 == 0) {
      char label[16];
      std::snprintf(label, sizeof label, "%02d:%02d", minute / 60, minute % 60);
      svg << "<text x=\"" << num(L::kLeft - 6) << "\" y=\""
          << num(L::kTop + seg * L::kCellH + 9) << "\" text-anchor=\"end\">"
          << label << "</text>\n";
    }
    for (int wd = 0; wd < 7; ++wd) {
      double x = L::kLeft + wd * L::kCellW;
      const double y = L::kTop + seg * L::kCellH;
      for (const auto& [loc, p] : grid.cells[wd][seg]) {
        const double w = p * L::kCellW;
        svg << "<rect class=\"blk\" data-day=\"" << wd << "\" data-seg=\"" << seg
            << "\" data-loc=\"" << loc << "\" x=\"" << num(x) << "\" y=\""
            << num(y) << "\" width=\"" << num(w) << "\" height=\""
            << num(L::kCellH) << "\" fill=\"" << location_color(loc) << "\"/>\n";
        x += w;
      }
    }
  }

  if (rows > 0) {
    svg << "<rect x=\"" << num(L::kLeft) << "\" y=\"" << num(L::kTop)
        << "\" width=\"" << num(grid_w) << "\" height=\"" << num(rows * L::kCellH)
        << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  }

  double ly = legend_y;
  for (int id : ids) {
    svg << "<rect class=\"legend\" x=\"" << num(L::kLeft) << "\" y=\"" << num(ly)
        << "\" width=\"12.00\" height=\"12.00\" fill=\"" << location_color(id)
        << "\"/>\n";
    svg << "<text x=\"" << num(L::kLeft + 18) << "\" y=\"" << num(ly + 10)
        << "\">location " << id << " (" << location_letter(id) << ")</text>\n";
    ly += L::kLegendRowH;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_schedule_ascii(const SegmentGrid& grid) {
  const int rows = grid.cells[0].empty() ? 0 : static_cast<int>(grid.cells[0].size());
  std::ostringstream out;

  out << "      ";
  for (int wd = 0; wd < 7; ++wd) out << " " << kDayNames[wd] << "       ";
  out << "\n";

  for (int seg = 0; seg < rows; ++seg) {
    const int minute = seg * grid.segment_minutes;
    char label[16];
    std::snprintf(label, sizeof label, "%02d:%02d", minute / 60, minute % 60);
    out << label << " ";
    for (int wd = 0; wd < 7; ++wd) {
      std::string cell;
      for (const auto& [loc, p] : grid.cells[wd][seg]) {
        const int tenths = static_cast<int>(std::llround(p * 10.0));
        for (int k = 0; k < tenths && cell.size() < 10; ++k) {
          cell += location_letter(loc);
        }
      }
      cell.resize(10, '.');
      out << "[" << cell << "]";
    }
    out << "\n";
  }

  for (int id : grid_locations(grid)) {
    out << location_letter(id) << " = location " << id << "\n";
  }
  return out.str();
}

std::string export_geojson(const std::vector<Location>& locations,
                           const Track* track) {
  using json = nlohmann::ordered_json;
  auto round6 = [](double v) { return std::round(v * 1e6) / 1e6; };

  json features = json::array();
  for (const Location& loc : locations) {
    json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"},
                     {"coordinates",
                      {round6(loc.center.lon), round6(loc.center.lat)}}};
    f["properties"] = {{"id", loc.id},
                       {"radius_m", loc.radius_m},
                       {"member_count", loc.members.size()}};
    features.push_back(std::move(f));
  }
  if (track && !track->empty()) {
    json coords = json::array();
    for (const Fix& fix : track->fixes) {
      coords.push_back({round6(fix.point.lon), round6(fix.point.lat)});
    }
    json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "LineString"}, {"coordinates", std::move(coords)}};
    f["properties"] = {{"kind", "track"}};
    features.push_back(std::move(f));
  }

  json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

}  // namespace gpsched
