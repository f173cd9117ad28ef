#include "tempnet_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tempnet/errors.hpp"
#include "tempnet/event_extraction.hpp"
#include "tempnet/hub_prediction.hpp"
#include "tempnet/session_ingest.hpp"
#include "tempnet/synth_gen.hpp"
#include "tempnet/temporal_contact.hpp"
#include "tempnet/temporal_stats.hpp"
#include "tempnet/transmission_graph.hpp"

#ifndef TEMPNET_VERSION
#define TEMPNET_VERSION "unknown"
#endif

namespace tempnet::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kMinTzOffset = -12 * 60;
constexpr int kMaxTzOffset = 14 * 60;

Json provenance(const std::string& command, const Json& parameters,
                std::optional<std::uint64_t> seed = std::nullopt) {
  Json p;
  p["tool"] = "tempnet";
  p["version"] = TEMPNET_VERSION;
  p["command"] = command;
  p["seed"] = seed ? Json(*seed) : Json(nullptr);
  p["parameters"] = parameters;
  return p;
}

// Every output goes through here so the provenance line is never skipped.
class Artifacts {
 public:
  Artifacts(fs::path dir, Json prov) : dir_(std::move(dir)), prov_(std::move(prov)) {}

  void csv(const std::string& name, const std::function<void(std::ostream&)>& body) {
    auto f = open(name);
    f << "# provenance: " << prov_.dump() << '\n';
    body(f);
  }

  void json(const std::string& name, const Json& body) {
    Json doc;
    doc["provenance"] = prov_;
    for (const auto& [key, value] : body.items()) doc[key] = value;
    auto f = open(name);
    f << doc.dump(2) << '\n';
  }

  [[nodiscard]] const std::vector<std::string>& written() const { return written_; }

 private:
  std::ofstream open(const std::string& name) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path.string());
    written_.push_back(path.string());
    return f;
  }

  fs::path dir_;
  Json prov_;
  std::vector<std::string> written_;
};

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InputError("input not found: " + path);
}

EventSet load_events(const std::string& path) {
  require_file(path);
  std::ifstream in(path, std::ios::binary);
  return read_events_csv(in);
}

void check_tz(int tz) {
  if (tz < kMinTzOffset || tz > kMaxTzOffset) {
    throw ParameterError("tz offset must be within [-720, 840] minutes");
  }
}

Window full_span(const EventSet& events) {
  if (events.empty()) return {0, 0};
  return {events.events().front().t_begin - 1, events.events().back().t_begin};
}

struct WindowArgs {
  std::optional<Timestamp> begin;
  std::optional<Timestamp> end;

  void add(CLI::App* cmd) {
    cmd->add_option("--window-begin", begin, "Exclusive window start (epoch seconds)");
    cmd->add_option("--window-end", end, "Inclusive window end (epoch seconds)");
  }

  [[nodiscard]] Window resolve(const EventSet& events) const {
    if (begin.has_value() != end.has_value()) {
      throw ParameterError("--window-begin and --window-end go together");
    }
    if (!begin) return full_span(events);
    if (*begin >= *end) throw ParameterError("window must satisfy begin < end");
    return {*begin, *end};
  }

  [[nodiscard]] Json describe() const {
    return {{"window_begin", begin ? Json(*begin) : Json(nullptr)},
            {"window_end", end ? Json(*end) : Json(nullptr)}};
  }
};

void emit_summary(std::ostream& out, const std::string& command, Json stats,
                  const Artifacts& artifacts) {
  Json s;
  s["command"] = command;
  s["artifacts"] = artifacts.written();
  for (const auto& [key, value] : stats.items()) s[key] = value;
  out << s.dump() << '\n';
}

Json histogram_summary(const Histogram& h) {
  return {{"bins", h.bins()}, {"total", h.total()}};
}

// Empty inputs are legitimate here (a window with no transmissions), so they
// produce a header-only table instead of an error.
Histogram log_or_empty(std::span<const double> values, const LogBinning& binning) {
  if (values.empty()) return {};
  return log_histogram(values, binning);
}

Histogram delta_or_empty(std::span<const double> deltas, const LogBinning& binning) {
  if (deltas.empty()) return {};
  return delta_distribution(deltas, binning);
}

Histogram days_or_empty(std::span<const double> deltas) {
  if (deltas.empty()) return {};
  return integral_day_distribution(deltas);
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> users, aps, weeks;
  bool no_timetable = false;
  std::string out_dir = ".";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("synth", "Generate a synthetic campus session log");
    cmd->add_option("--config", config, "key = value generator config file");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--users", users, "Number of users");
    cmd->add_option("--aps", aps, "Number of access points");
    cmd->add_option("--weeks", weeks, "Number of weeks");
    cmd->add_flag("--no-timetable", no_timetable, "Random session times (negative control)");
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    GeneratorConfig cfg;
    if (!config.empty()) {
      require_file(config);
      std::ifstream in(config);
      cfg = parse_generator_config(in, cfg);
    }
    if (seed) cfg.seed = *seed;
    if (users) cfg.n_users = *users;
    if (aps) cfg.n_aps = *aps;
    if (weeks) cfg.n_weeks = *weeks;
    if (no_timetable) cfg.weekly_timetable = false;
    cfg.validate();

    Json params = {{"config", config},
                   {"n_users", cfg.n_users},
                   {"n_aps", cfg.n_aps},
                   {"n_weeks", cfg.n_weeks},
                   {"slots_per_day", cfg.slots_per_day},
                   {"n_courses", cfg.n_courses},
                   {"resident_fraction", cfg.resident_fraction},
                   {"max_courses_per_user", cfg.max_courses_per_user},
                   {"attendance_prob", cfg.attendance_prob},
                   {"session_jitter_minutes", cfg.session_jitter_minutes},
                   {"heavy_tail_exponent", cfg.heavy_tail_exponent},
                   {"free_sessions_per_week", cfg.free_sessions_per_week},
                   {"free_session_min_minutes", cfg.free_session_min_minutes},
                   {"weekly_timetable", cfg.weekly_timetable},
                   {"start", cfg.start},
                   {"tz_offset_minutes", cfg.tz_offset_minutes}};
    const auto sessions = generate(cfg);
    Artifacts artifacts(out_dir, provenance("synth", params, cfg.seed));
    artifacts.csv("sessions.csv", [&](std::ostream& f) { write_sessions_csv(f, sessions); });
    emit_summary(out, "synth", {{"sessions", sessions.sessions.size()}}, artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string input;
  std::string format = "auto";
  int tz = kDefaultTzOffsetMinutes;
  std::string out_dir = ".";

  void add(CLI::App& app, const std::function<void(CLI::App*, int&)>& add_tz) {
    auto* cmd = app.add_subcommand("ingest", "Parse and clean a raw session log");
    cmd->add_option("-i,--input", input, "Session log (CSV, optionally gzip)")->required();
    cmd->add_option("--format", format, "auto, csv or gzip")
        ->check(CLI::IsMember({"auto", "csv", "gzip"}));
    add_tz(cmd, tz);
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    check_tz(tz);
    require_file(input);
    std::optional<LogFormat> fmt;
    if (format == "csv") fmt = LogFormat::csv;
    if (format == "gzip") fmt = LogFormat::csv_gzip;
    auto parsed = read_sessions(input, tz, fmt);
    const auto raw_count = parsed.sessions.sessions.size();
    const auto clean = clean_sessions(std::move(parsed.sessions));

    Json params = {{"input", input}, {"format", format}, {"tz_offset_minutes", tz}};
    Artifacts artifacts(out_dir, provenance("ingest", params));
    artifacts.csv("sessions.csv", [&](std::ostream& f) { write_sessions_csv(f, clean); });
    artifacts.csv("rejects.csv", [&](std::ostream& f) { write_rejects_csv(f, parsed.rejects); });
    emit_summary(out, "ingest",
                 {{"accepted", raw_count},
                  {"rejected", parsed.rejects.size()},
                  {"sessions", clean.sessions.size()},
                  {"dropped_by_cleaning", raw_count - clean.sessions.size()}},
                 artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- events

struct EventsArgs {
  std::string sessions;
  std::string out_dir = ".";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("events", "Extract event interactions from sessions");
    cmd->add_option("-s,--sessions", sessions, "Cleaned session CSV")->required();
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    require_file(sessions);
    const auto parsed = read_sessions(sessions);
    if (!parsed.rejects.empty()) {
      throw InputError(sessions + ": line " + std::to_string(parsed.rejects.front().line) + ": " +
                       parsed.rejects.front().reason);
    }
    const auto clean = clean_sessions(parsed.sessions);
    const auto events = extract_events(clean);

    Artifacts artifacts(out_dir, provenance("events", {{"sessions", sessions}}));
    artifacts.csv("events.csv", [&](std::ostream& f) { write_events_csv(f, events); });
    emit_summary(out, "events", {{"events", events.size()}, {"users", events.population()}},
                 artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- tcn

struct TcnArgs {
  std::string events;
  WindowArgs window;
  std::optional<std::string> user;
  std::optional<int> joint_days;
  std::string out_dir = ".";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("tcn", "Build the temporal contact network of a window");
    cmd->add_option("-e,--events", events, "Event CSV")->required();
    window.add(cmd);
    cmd->add_option("--user", user, "Report the reachability of this user");
    cmd->add_option("--joint-days", joint_days, "Also write C(d_out, d_in) for this window length");
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    const auto set = load_events(events);
    const auto w = window.resolve(set);
    if (joint_days && *joint_days <= 0) throw ParameterError("--joint-days must be positive");
    const auto tcn = build_tcn(set, w);
    std::optional<std::size_t> reach;
    if (user) {
      reach = reachability(tcn, set, *user);
      if (!reach) throw ParameterError("unknown user: " + *user);
    }

    Json params = window.describe();
    params["events"] = events;
    params["user"] = user ? Json(*user) : Json(nullptr);
    params["joint_days"] = joint_days ? Json(*joint_days) : Json(nullptr);
    Artifacts artifacts(out_dir, provenance("tcn", params));
    artifacts.csv("tcn.csv", [&](std::ostream& f) { write_tcn_csv(f, tcn, set); });
    if (joint_days) {
      const auto joint = joint_degree_distribution(set, Timestamp{*joint_days} * kSecondsPerDay);
      artifacts.csv("joint.csv", [&](std::ostream& f) { write_joint_csv(f, joint); });
    }

    Json stats = {{"window", {{"t1", w.t1}, {"t2", w.t2}}},
                  {"vertices", tcn.vertices.size()},
                  {"edges", tcn.edges.size()}};
    if (reach) stats["reachability"] = *reach;
    emit_summary(out, "tcn", stats, artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- reach

struct ReachArgs {
  std::string events;
  std::vector<int> days;
  std::vector<Timestamp> seconds;
  std::string out_dir = ".";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("reach", "Reachability curves over tiled windows");
    cmd->add_option("-e,--events", events, "Event CSV")->required();
    auto* d = cmd->add_option("--days", days, "Window lengths in days (default 1,2,3,5,7,8)")
                  ->delimiter(',');
    cmd->add_option("--seconds", seconds, "Window lengths in seconds")->delimiter(',')->excludes(d);
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    std::vector<Timestamp> lengths = seconds;
    if (lengths.empty()) {
      const auto chosen =
          days.empty() ? std::vector<int>(std::begin(kPresetWindowDays), std::end(kPresetWindowDays))
                       : days;
      for (int d : chosen) lengths.push_back(Timestamp{d} * kSecondsPerDay);
    }
    const auto set = load_events(events);
    const auto curve = reachability_curves(set, lengths);

    Json params = {{"events", events}, {"lengths_seconds", lengths}};
    Artifacts artifacts(out_dir, provenance("reach", params));
    artifacts.csv("reach.csv", [&](std::ostream& f) { write_curve_csv(f, curve); });
    Json truncated = Json::array();
    for (const auto& p : curve) {
      if (p.truncated) truncated.push_back(p.delta_t);
    }
    emit_summary(out, "reach", {{"rows", curve.size()}, {"truncated_lengths", truncated}},
                 artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- tg

struct TgArgs {
  std::string events;
  std::string out_dir = ".";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("tg", "Build the transmission graph");
    cmd->add_option("-e,--events", events, "Event CSV")->required();
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    const auto set = load_events(events);
    const auto tg = build_tg(set);
    const auto agg = aggregate_tg(tg);

    Artifacts artifacts(out_dir, provenance("tg", {{"events", events}}));
    artifacts.csv("tg.csv", [&](std::ostream& f) { write_tg_csv(f, tg, set); });
    artifacts.csv("tg_aggregate.csv", [&](std::ostream& f) { write_aggregate_csv(f, agg); });
    artifacts.csv("tg_degree.csv", [&](std::ostream& f) { write_degree_csv(f, agg); });
    emit_summary(out, "tg",
                 {{"vertices", tg.vertex_count},
                  {"edges", tg.edges.size()},
                  {"aggregated_edges", agg.edges.size()}},
                 artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- stats

Json cv_or_null(std::span<const std::size_t> values) {
  try {
    return degree_cv(values);
  } catch (const ParameterError&) {
    return nullptr;
  }
}

struct StatsArgs {
  std::string events;
  int tz = kDefaultTzOffsetMinutes;
  double log_factor = 1.5;
  std::vector<std::size_t> sizes;
  std::string out_dir = ".";

  void add(CLI::App& app, const std::function<void(CLI::App*, int&)>& add_tz) {
    auto* cmd = app.add_subcommand("stats", "Duration, size and transmission-delay distributions");
    cmd->add_option("-e,--events", events, "Event CSV")->required();
    add_tz(cmd, tz);
    cmd->add_option("--log-factor", log_factor, "Ratio between log-bin edges");
    cmd->add_option("--sizes", sizes, "Also write durations for these event sizes")
        ->delimiter(',');
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    check_tz(tz);
    if (!(log_factor > 1.0)) throw ParameterError("--log-factor must exceed 1");
    for (auto s : sizes) {
      if (s < 2) throw ParameterError("--sizes values must be at least 2");
    }
    const auto set = load_events(events);
    const LogBinning binning{log_factor, std::nullopt};
    const auto tg = build_tg(set);
    const auto agg = aggregate_tg(tg);
    const auto acn = build_acn(set, full_span(set));
    const auto deltas = transmission_durations(tg);

    std::vector<double> durations;
    for (const auto& e : set) durations.push_back(event_duration(e));
    const auto dur = log_or_empty(durations, binning);
    const auto size = set.empty() ? Histogram{} : size_distribution(set);
    const auto delta = delta_or_empty(deltas, binning);
    const auto days = days_or_empty(deltas);

    Json params = {{"events", events},
                   {"tz_offset_minutes", tz},
                   {"log_factor", log_factor},
                   {"sizes", sizes}};
    Artifacts artifacts(out_dir, provenance("stats", params));
    artifacts.csv("durations.csv", [&](std::ostream& f) { write_histogram_csv(f, dur); });
    for (auto s : sizes) {
      std::vector<double> of_size;
      for (const auto& e : set) {
        if (event_size(e) == s) of_size.push_back(event_duration(e));
      }
      const auto h = log_or_empty(of_size, binning);
      artifacts.csv("durations_size_" + std::to_string(s) + ".csv",
                    [&](std::ostream& f) { write_histogram_csv(f, h); });
    }
    artifacts.csv("sizes.csv", [&](std::ostream& f) { write_histogram_csv(f, size); });
    artifacts.csv("delta.csv", [&](std::ostream& f) { write_histogram_csv(f, delta); });
    artifacts.csv("delta_days.csv", [&](std::ostream& f) { write_histogram_csv(f, days); });

    const auto acn_degrees = acn.degrees();
    Json summary = {{"events", set.size()},
                    {"users", set.population()},
                    {"acn_vertices", acn.vertices.size()},
                    {"acn_edges", acn.edges.size()},
                    {"acn_degree_cv", cv_or_null(acn_degrees)},
                    {"tg_vertices", tg.vertex_count},
                    {"tg_edges", tg.edges.size()},
                    {"tg_degree_cv", cv_or_null(agg.degree)},
                    {"durations", histogram_summary(dur)},
                    {"delta", histogram_summary(delta)}};
    artifacts.json("stats.json", summary);
    emit_summary(out, "stats",
                 {{"acn_degree_cv", summary["acn_degree_cv"]},
                  {"tg_degree_cv", summary["tg_degree_cv"]}},
                 artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- deseason

struct DeseasonArgs {
  std::string events;
  std::string mode;
  int tz = kDefaultTzOffsetMinutes;
  std::uint64_t seed = 0;
  std::optional<std::size_t> swaps;
  std::string out_dir = ".";

  void add(CLI::App& app, const std::function<void(CLI::App*, int&)>& add_tz) {
    auto* cmd = app.add_subcommand("deseason", "Remove daily and weekly rhythm from delays");
    cmd->add_option("-e,--events", events, "Event CSV")->required();
    cmd->add_option("--mode", mode, "natural or artificial")
        ->required()
        ->check(CLI::IsMember({"natural", "artificial"}));
    add_tz(cmd, tz);
    cmd->add_option("--seed", seed, "Shuffle seed (artificial)");
    cmd->add_option("--swaps", swaps, "Swap attempts (artificial; default 10 per event)");
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    check_tz(tz);
    const auto set = load_events(events);
    Json params = {{"events", events}, {"mode", mode}, {"tz_offset_minutes", tz}};

    if (mode == "natural") {
      const auto deltas = natural_deseason(build_tg(set), tz);
      Artifacts artifacts(out_dir, provenance("deseason", params));
      const auto delta = delta_or_empty(deltas, {});
      artifacts.csv("delta_natural.csv", [&](std::ostream& f) { write_histogram_csv(f, delta); });
      emit_summary(out, "deseason", {{"same_day_edges", deltas.size()}}, artifacts);
      return kExitOk;
    }

    auto cfg = ShuffleConfig::for_events(set, seed);
    if (swaps) cfg.rounds = *swaps;
    params["swaps"] = cfg.rounds;
    const auto shuffled = artificial_deseason(set, cfg);
    const auto deltas = transmission_durations(build_tg(shuffled.events));
    const auto delta = delta_or_empty(deltas, {});
    const auto days = days_or_empty(deltas);

    Artifacts artifacts(out_dir, provenance("deseason", params, seed));
    artifacts.csv("events_shuffled.csv",
                  [&](std::ostream& f) { write_events_csv(f, shuffled.events); });
    artifacts.csv("delta_shuffled.csv", [&](std::ostream& f) { write_histogram_csv(f, delta); });
    artifacts.csv("delta_days_shuffled.csv",
                  [&](std::ostream& f) { write_histogram_csv(f, days); });
    const Json report = {{"attempted", shuffled.report.attempted},
                         {"accepted", shuffled.report.accepted},
                         {"rejected", shuffled.report.rejected}};
    artifacts.json("shuffle.json", {{"report", report}});
    emit_summary(out, "deseason", {{"report", report}}, artifacts);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string events;
  WindowArgs window;
  std::optional<double> alpha;
  bool optimize = false;
  double grid_step = 0.01;
  std::size_t top = 0;
  std::string out_dir = ".";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("predict", "Rank users by MPAP and score it against κ");
    cmd->add_option("-e,--events", events, "Event CSV")->required();
    window.add(cmd);
    auto* a = cmd->add_option("--alpha", alpha, "Fixed α in [0, 1]");
    cmd->add_flag("--optimize", optimize, "Search α over a grid")->excludes(a);
    cmd->add_option("--grid-step", grid_step, "α grid spacing for --optimize");
    cmd->add_option("--top", top, "Only report the first K degree ranks (0 = all)");
    cmd->add_option("-o,--out-dir", out_dir, "Output directory");
  }

  int operator()(std::ostream& out) const {
    if (!alpha && !optimize) throw ParameterError("one of --alpha or --optimize is required");
    if (alpha && (*alpha < 0.0 || *alpha > 1.0)) throw ParameterError("--alpha must be in [0, 1]");
    if (optimize && !(grid_step > 0.0 && grid_step < 1.0)) {
      throw ParameterError("--grid-step must be in (0, 1)");
    }
    const auto all = load_events(events);
    const auto w = window.resolve(all);
    const auto set = window.begin ? restrict_to_window(all, w) : all;
    const auto agg = aggregate_tg(build_tg(set));
    const auto report = rank_users(set, agg, w, alpha.value_or(0.0),
                                   optimize ? std::optional<double>(grid_step) : std::nullopt);

    // Users by κ descending, then name; ranks are dense over κ.
    std::vector<std::size_t> order(report.scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return report.scores[a].kappa > report.scores[b].kappa;
    });
    std::size_t max_kappa_shown = 0;
    std::vector<RankAccuracy> ranks;
    for (const auto& r : report.by_rank) {
      if (top != 0 && r.rank > top) break;
      ranks.push_back(r);
      max_kappa_shown = r.kappa;
    }

    Json users = Json::array();
    for (auto i : order) {
      const auto& s = report.scores[i];
      if (top != 0 && s.kappa < max_kappa_shown) break;
      users.push_back({{"user", set.user_name(s.user)},
                       {"kappa", s.kappa},
                       {"mpap", s.mpap},
                       {"ar", report.ar[i]}});
    }
    Json rank_rows = Json::array();
    for (const auto& r : ranks) {
      rank_rows.push_back({{"rank", r.rank},
                           {"kappa", r.kappa},
                           {"users", r.users},
                           {"mean_ar", r.mean_ar},
                           {"std_ar", r.std_ar}});
    }
    Json curve = Json::array();
    if (report.search) {
      for (const auto& p : report.search->curve) curve.push_back({{"alpha", p.alpha}, {"f", p.f}});
    }

    Json params = window.describe();
    params["events"] = events;
    params["alpha"] = alpha ? Json(*alpha) : Json(nullptr);
    params["optimize"] = optimize;
    params["grid_step"] = optimize ? Json(grid_step) : Json(nullptr);
    params["top"] = top;
    Artifacts artifacts(out_dir, provenance("predict", params));

    Json body = {{"window", {{"t1", w.t1}, {"t2", w.t2}}},
                 {"alpha", report.alpha},
                 {"alpha_star", report.search ? Json(report.search->alpha_star) : Json(nullptr)},
                 {"f", report.f},
                 {"users", users},
                 {"ranks", rank_rows},
                 {"f_curve", curve}};
    artifacts.json("predict.json", body);
    artifacts.csv("predict_users.csv", [&](std::ostream& f) {
      f.precision(17);
      f << "user,kappa,mpap,ar\n";
      for (const auto& u : users) {
        f << u["user"].get<std::string>() << ',' << u["kappa"].get<std::size_t>() << ','
          << u["mpap"].get<double>() << ',' << u["ar"].get<double>() << '\n';
      }
    });
    artifacts.csv("predict_ranks.csv", [&](std::ostream& f) {
      f.precision(17);
      f << "rank,kappa,users,mean_ar,std_ar\n";
      for (const auto& r : ranks) {
        f << r.rank << ',' << r.kappa << ',' << r.users << ',' << r.mean_ar << ',' << r.std_ar
          << '\n';
      }
    });
    if (report.search) {
      artifacts.csv("predict_curve.csv", [&](std::ostream& f) {
        f.precision(17);
        f << "alpha,f\n";
        for (const auto& p : report.search->curve) f << p.alpha << ',' << p.f << '\n';
      });
    }
    emit_summary(out, "predict", {{"alpha", report.alpha}, {"f", report.f}}, artifacts);
    return kExitOk;
  }
};

void report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  Json e = {{"error", kind}, {"message", message}, {"exit_code", code}};
  err << e.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal contact and transmission analysis of co-location session logs", "tempnet"};
  app.set_version_flag("--version", TEMPNET_VERSION);
  app.set_config("--manifest", "", "TOML/INI file with option values per subcommand");
  app.require_subcommand(1);

  auto add_tz = [](CLI::App* cmd, int& tz) {
    cmd->add_option("--tz-offset-minutes", tz, "Local time offset from UTC in minutes")
        ->envname("TEMPNET_TZ_OFFSET");
  };

  SynthArgs synth;
  IngestArgs ingest;
  EventsArgs events;
  TcnArgs tcn;
  ReachArgs reach;
  TgArgs tg;
  StatsArgs stats;
  DeseasonArgs deseason;
  PredictArgs predict;
  synth.add(app);
  ingest.add(app, add_tz);
  events.add(app);
  tcn.add(app);
  reach.add(app);
  tg.add(app);
  stats.add(app, add_tz);
  deseason.add(app, add_tz);
  predict.add(app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "parameter", e.what(), kExitParameter);
    return kExitParameter;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "synth") return synth(out);
    if (name == "ingest") return ingest(out);
    if (name == "events") return events(out);
    if (name == "tcn") return tcn(out);
    if (name == "reach") return reach(out);
    if (name == "tg") return tg(out);
    if (name == "stats") return stats(out);
    if (name == "deseason") return deseason(out);
    if (name == "predict") return predict(out);
    throw InvariantError("unhandled subcommand " + name);
  } catch (const InputError& e) {
    report_error(err, "input", e.what(), kExitInput);
    return kExitInput;
  } catch (const ParameterError& e) {
    report_error(err, "parameter", e.what(), kExitParameter);
    return kExitParameter;
  } catch (const InvariantError& e) {
    report_error(err, "invariant", e.what(), kExitInvariant);
    return kExitInvariant;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), kExitInvariant);
    return kExitInvariant;
  }
}

}  // namespace tempnet::cli
