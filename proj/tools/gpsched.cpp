// gpsched: learn significant locations, travel times and a weekly schedule
// from GPS tracks, then replay tracks against a calendar for lateness alerts.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gpsched/alerts.hpp"
#include "gpsched/errors.hpp"
#include "gpsched/model_io.hpp"
#include "gpsched/nmea.hpp"
#include "gpsched/pipeline.hpp"
#include "gpsched/synth.hpp"
#include "gpsched/track_csv.hpp"
#include "gpsched/viz.hpp"

namespace {

using namespace gpsched;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitUntrained = 3;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ParseError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) throw ParseError("cannot write '" + path + "'");
  return out;
}

Track load_track(const std::string& path, std::string format) {
  std::ifstream in = open_in(path);
  if (format == "auto") {
    format = in.peek() == '$' ? "nmea" : "csv";
  }
  if (format == "nmea") {
    NmeaStats stats;
    Track t = parse_nmea(in, &stats);
    std::fprintf(stderr, "%s: %zu fixes, %zu skipped, %zu other sentences\n",
                 path.c_str(), stats.fixes, stats.skipped(),
                 stats.other_sentences);
    return t;
  }
  if (format == "csv") return parse_track_csv(in);
  throw ParseError("unknown format '" + format + "'");
}

struct IngestArgs {
  std::string input, format = "auto", out;
};

int run_ingest(const IngestArgs& args) {
  std::ifstream in = open_in(args.input);
  std::string format = args.format;
  if (format == "auto") format = in.peek() == '$' ? "nmea" : "csv";

  Track track;
  if (format == "nmea") {
    NmeaStats stats;
    track = parse_nmea(in, &stats);
    std::printf("parsed %zu fixes (%zu skipped: %zu bad checksum, %zu void, "
                "%zu malformed; %zu other sentences, %zu duplicate timestamps)\n",
                stats.fixes, stats.skipped(), stats.bad_checksum,
                stats.void_status, stats.malformed, stats.other_sentences,
                stats.duplicate_timestamps);
  } else {
    track = parse_track_csv(in);
    std::printf("parsed %zu fixes\n", track.size());
  }
  std::ofstream out = open_out(args.out);
  emit_track_csv(track, out);
  return kExitOk;
}

struct LearnArgs {
  std::string track;
  double gap_minutes = 10.0;
  double speed_threshold = kDefaultSpeedThresholdMph;
  std::string radii = "50:1000:25";
  std::uint64_t seed = 0;
  std::string out_dir;
  int tz_offset_min = 0;
  int smooth_window = 5;
  double knee_factor = 3.0;
  int jobs = 1;
  double default_speed = kDefaultSpeedMph;
};

int run_learn(const LearnArgs& args) {
  LearnParams params;
  params.gap_seconds = args.gap_minutes * 60.0;
  params.speed_threshold_mph = args.speed_threshold;
  if (std::sscanf(args.radii.c_str(), "%lf:%lf:%lf", &params.radius_min_m,
                  &params.radius_max_m, &params.radius_step_m) != 3) {
    throw ParseError("--radii expects min:max:step, got '" + args.radii + "'");
  }
  params.seed = args.seed;
  params.tz_offset_min = args.tz_offset_min;
  params.smooth_window = args.smooth_window;
  params.knee_factor = args.knee_factor;
  params.jobs = args.jobs;
  params.default_speed_mph = args.default_speed;

  const Track track = load_track(args.track, "csv");
  const LearnResult r = learn(track, params);

  {
    std::ofstream out = open_out(args.out_dir + "/locations.csv");
    write_locations_csv(r.locations, out);
  }
  {
    std::ofstream out = open_out(args.out_dir + "/edges.csv");
    write_edges_csv(r.edges, out);
  }
  {
    std::ofstream out = open_out(args.out_dir + "/schedule.csv");
    write_schedule_csv(r.schedule, out);
  }
  {
    std::ofstream out = open_out(args.out_dir + "/sweep.csv");
    write_sweep_csv(r.sweep, out);
  }

  std::printf("places: %zu\n", r.places.size());
  std::printf("chosen radius: %.0f m%s\n", r.sweep.chosen_radius_m,
              r.sweep.no_knee ? " (no knee; median radius)" : "");
  std::printf("locations: %zu  trips: %zu  edges: %zu  events: %zu\n",
              r.locations.size(), r.trips.size(), r.edges.size(),
              r.events.size());
  return kExitOk;
}

struct ReplayArgs {
  std::string track, calendar, models_dir;
  int tick = 15;
  int lookahead = 7'200;
  double buffer = 0.0;
  double detour = kDefaultDetourFactor;
  std::string out;
};

int run_replay(const ReplayArgs& args) {
  const Track track = load_track(args.track, "csv");
  std::ifstream cal_in = open_in(args.calendar);
  const std::vector<Appointment> calendar = read_calendar_csv(cal_in);
  std::ifstream loc_in = open_in(args.models_dir + "/locations.csv");
  const std::vector<Location> locations = read_locations_csv(loc_in);
  std::ifstream edge_in = open_in(args.models_dir + "/edges.csv");
  const std::vector<TravelEdge> edges = read_edges_csv(edge_in);

  for (const Appointment& appt : calendar) {
    bool known = false;
    for (const Location& loc : locations) known |= loc.id == appt.location;
    if (!known) {
      throw ParseError("calendar references unknown location " +
                       std::to_string(appt.location));
    }
  }

  ReplayParams params;
  params.tick_seconds = args.tick;
  params.lookahead_seconds = args.lookahead;
  params.safety_buffer_seconds = args.buffer;
  params.detour_factor = args.detour;

  const std::vector<Alert> alerts = replay(track, calendar, edges, locations, params);
  std::ofstream out = open_out(args.out);
  write_alerts_csv(alerts, out);
  std::printf("%zu alerts\n", alerts.size());
  return kExitOk;  // alerts are data, not errors
}

struct RenderArgs {
  std::string schedule;
  int segment_minutes = 30;
  std::string svg, geojson, locations, track;
  bool ascii = false;
};

int run_render(const RenderArgs& args) {
  std::ifstream in = open_in(args.schedule);
  const ScheduleModel model = read_schedule_csv(in);
  const SegmentGrid grid = segment_averages(model, args.segment_minutes);

  if (!args.svg.empty()) {
    std::ofstream out = open_out(args.svg);
    out << render_schedule_svg(grid);
  }
  if (args.ascii) {
    std::cout << render_schedule_ascii(grid);
  }
  if (!args.geojson.empty()) {
    std::ifstream loc_in = open_in(args.locations);
    const std::vector<Location> locations = read_locations_csv(loc_in);
    Track track;
    const bool with_track = !args.track.empty();
    if (with_track) track = load_track(args.track, "csv");
    std::ofstream out = open_out(args.geojson);
    out << export_geojson(locations, with_track ? &track : nullptr);
  }
  return kExitOk;
}

struct SynthArgs {
  std::string spec, out_track, out_truth;
};

int run_synth(const SynthArgs& args) {
  std::ifstream in = open_in(args.spec);
  const RoutineSpec spec = load_routine_spec(in);
  const auto [track, truth] = generate(spec);

  std::ofstream track_out = open_out(args.out_track);
  emit_track_csv(track, track_out);
  if (!args.out_truth.empty()) {
    std::ofstream truth_out = open_out(args.out_truth);
    write_ground_truth_csv(truth, truth_out);
  }
  std::printf("generated %zu fixes, %zu stays, %zu legs\n", track.size(),
              truth.stays.size(), truth.legs.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gpsched: GPS location/schedule learning and lateness alerts"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file; sections match subcommands");

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand("ingest", "Parse a GPS log to canonical CSV");
  ingest->add_option("--input", ingest_args.input, "NMEA or CSV input")->required();
  ingest->add_option("--format", ingest_args.format, "nmea|csv|auto")
      ->check(CLI::IsMember({"nmea", "csv", "auto"}))
      ->capture_default_str();
  ingest->add_option("--out", ingest_args.out, "Canonical track CSV")->required();

  LearnArgs learn_args;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Learn locations, travel times and schedule");
  learn_cmd->add_option("--track", learn_args.track, "Canonical track CSV")->required();
  learn_cmd->add_option("--gap-minutes", learn_args.gap_minutes, "Place-extraction gap")
      ->capture_default_str();
  learn_cmd->add_option("--speed-threshold", learn_args.speed_threshold,
                        "Moving-filter threshold, mph")
      ->capture_default_str();
  learn_cmd->add_option("--radii", learn_args.radii, "Sweep range min:max:step, meters")
      ->capture_default_str();
  learn_cmd->add_option("--seed", learn_args.seed, "Clustering RNG seed")
      ->envname("GPSCHED_SEED")
      ->capture_default_str();
  learn_cmd->add_option("--out-dir", learn_args.out_dir, "Output directory")
      ->envname("GPSCHED_OUT_DIR")
      ->required();
  learn_cmd->add_option("--tz-offset-min", learn_args.tz_offset_min,
                        "Local time offset from UTC, minutes")
      ->capture_default_str();
  learn_cmd->add_option("--smooth-window", learn_args.smooth_window,
                        "Sweep smoothing window")
      ->capture_default_str();
  learn_cmd->add_option("--knee-factor", learn_args.knee_factor,
                        "Knee detection threshold factor")
      ->capture_default_str();
  learn_cmd->add_option("--jobs", learn_args.jobs, "Parallel sweep workers")
      ->capture_default_str();
  learn_cmd->add_option("--default-speed", learn_args.default_speed,
                        "Fallback speed when nothing was observed, mph")
      ->capture_default_str();

  ReplayArgs replay_args;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Replay a track against a calendar");
  replay_cmd->add_option("--track", replay_args.track, "Canonical track CSV")->required();
  replay_cmd->add_option("--calendar", replay_args.calendar, "Calendar CSV")->required();
  replay_cmd->add_option("--models-dir", replay_args.models_dir,
                         "Directory with locations.csv and edges.csv")
      ->required();
  replay_cmd->add_option("--tick", replay_args.tick, "Simulated clock step, seconds")
      ->capture_default_str();
  replay_cmd->add_option("--lookahead", replay_args.lookahead,
                         "Appointment window, seconds")
      ->capture_default_str();
  replay_cmd->add_option("--buffer", replay_args.buffer, "Safety buffer, seconds")
      ->capture_default_str();
  replay_cmd->add_option("--detour", replay_args.detour, "On-the-fly detour factor")
      ->capture_default_str();
  replay_cmd->add_option("--out", replay_args.out, "Alert log CSV")->required();

  RenderArgs render_args;
  CLI::App* render_cmd = app.add_subcommand("render", "Render schedule chart / GeoJSON");
  render_cmd->add_option("--schedule", render_args.schedule, "schedule.csv from learn")
      ->required();
  render_cmd->add_option("--segment-minutes", render_args.segment_minutes,
                         "Chart segment size")
      ->capture_default_str();
  render_cmd->add_option("--svg", render_args.svg, "SVG output path");
  render_cmd->add_option("--geojson", render_args.geojson, "GeoJSON output path");
  render_cmd->add_option("--locations", render_args.locations,
                         "locations.csv (for --geojson)");
  render_cmd->add_option("--track", render_args.track,
                         "Optional track CSV to include in the GeoJSON");
  render_cmd->add_flag("--ascii", render_args.ascii, "Print the text chart to stdout");

  SynthArgs synth_args;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic routine track");
  synth_cmd->add_option("--spec", synth_args.spec, "Routine spec file")->required();
  synth_cmd->add_option("--out-track", synth_args.out_track, "Track CSV output")
      ->required();
  synth_cmd->add_option("--out-truth", synth_args.out_truth, "Ground-truth CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // --help is success
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*render_cmd && !render_args.geojson.empty() && render_args.locations.empty()) {
    std::fprintf(stderr, "error: --geojson needs --locations\n");
    return kExitUsage;
  }

  try {
    if (*ingest) return run_ingest(ingest_args);
    if (*learn_cmd) return run_learn(learn_args);
    if (*replay_cmd) return run_replay(replay_args);
    if (*render_cmd) return run_render(render_args);
    if (*synth_cmd) return run_synth(synth_args);
  } catch (const UntrainedModelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUntrained;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
