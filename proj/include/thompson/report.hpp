#pragma once

// Experiment configuration, dispatch and CSV / JSON output. CSV bodies
// depend only on the configuration minus the thread count, which appears in
// the header comment alone.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "thompson/cogrowth.hpp"
#include "thompson/oracles.hpp"
#include "thompson/selftest.hpp"
#include "thompson/version.hpp"
#include "thompson/walks.hpp"

namespace thompson {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command;  // cogrowth, growth, escape, deadends, selftest
  std::string mode;     // exact | mc | batch for cogrowth, bfs | walk for growth
  std::string group = "f";
  std::vector<std::int64_t> lengths;
  std::vector<std::size_t> walk_lengths;
  std::uint64_t samples = 100000;
  std::uint64_t batch_size = 15000;
  std::uint64_t iterations = 100;
  std::size_t radius = 11;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t memory_budget_mb = 4096;
  std::string format = "csv";
  std::string out;  // empty: standard output

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline void to_json(ordered_json& j, const ExperimentConfig& c) {
  j = ordered_json{{"command", c.command},
                   {"mode", c.mode},
                   {"group", c.group},
                   {"lengths", c.lengths},
                   {"walk_lengths", c.walk_lengths},
                   {"samples", c.samples},
                   {"batch_size", c.batch_size},
                   {"iterations", c.iterations},
                   {"radius", c.radius},
                   {"seed", c.seed},
                   {"threads", c.threads},
                   {"memory_budget_mb", c.memory_budget_mb},
                   {"format", c.format},
                   {"out", c.out}};
}

inline void from_json(const ordered_json& j, ExperimentConfig& c) {
  j.at("command").get_to(c.command);
  j.at("mode").get_to(c.mode);
  j.at("group").get_to(c.group);
  j.at("lengths").get_to(c.lengths);
  j.at("walk_lengths").get_to(c.walk_lengths);
  j.at("samples").get_to(c.samples);
  j.at("batch_size").get_to(c.batch_size);
  j.at("iterations").get_to(c.iterations);
  j.at("radius").get_to(c.radius);
  j.at("seed").get_to(c.seed);
  j.at("threads").get_to(c.threads);
  j.at("memory_budget_mb").get_to(c.memory_budget_mb);
  j.at("format").get_to(c.format);
  j.at("out").get_to(c.out);
}

// "lo:hi:step", "lo:hi" (step 1) or a single value.
template <class T>
std::vector<T> parse_range(const std::string& text) {
  std::vector<long long> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    const std::string piece = text.substr(start, colon == std::string::npos ? colon : colon - start);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (piece.empty() || used != piece.size()) throw UsageError("bad range '" + text + "'");
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() > 3) throw UsageError("bad range '" + text + "' (expected lo:hi:step)");
  const long long lo = parts[0];
  const long long hi = parts.size() > 1 ? parts[1] : lo;
  const long long step = parts.size() > 2 ? parts[2] : 1;
  if (step <= 0 || hi < lo || lo < 0) throw UsageError("bad range '" + text + "'");
  std::vector<T> out;
  for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<T>(v));
  return out;
}

// A finished experiment: ordered rows plus extra header lines.
struct Report {
  std::vector<std::string> columns;
  std::vector<ordered_json> rows;  // keys beyond `columns` go to JSON only
  std::vector<std::string> notes;
  bool ok = true;                  // false when selftest checks fail
  std::string error;               // set when the run stopped early
  double wall_time_s = 0;
};

inline ordered_json big_to_json(const BigCount& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  return x.str();
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_quote(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

// JSON cannot hold NaN; such values become null.
inline ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline ordered_json number(const std::optional<double>& v) {
  return v ? number(*v) : ordered_json(nullptr);
}

inline std::string header_text(const ExperimentConfig& config) {
  std::string s = "# " + std::string(kArtifactName) + " " + std::string(kVersion) + "\n";
  s += "# config: " + ordered_json(config).dump() + "\n";
  return s;
}

inline void write_csv(std::ostream& out, const ExperimentConfig& config, const Report& report) {
  out << header_text(config);
  for (const auto& n : report.notes) out << "# " << n << '\n';
  if (!report.error.empty()) out << "# stopped early: " << report.error << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      out << (i ? "," : "");
      if (auto it = row.find(report.columns[i]); it != row.end()) out << csv_cell(*it);
    }
    out << '\n';
  }
}

inline ordered_json report_json(const ExperimentConfig& config, const Report& report) {
  ordered_json j;
  j["artifact"] = kArtifactName;
  j["version"] = kVersion;
  j["config"] = config;
  j["notes"] = report.notes;
  j["rows"] = report.rows;
  if (!report.error.empty()) j["error"] = report.error;
  j["ok"] = report.ok;
  j["wall_time_s"] = report.wall_time_s;
  return j;
}

inline void write_json(std::ostream& out, const ExperimentConfig& config, const Report& report) {
  out << report_json(config, report).dump(2) << '\n';
}

// ---------------------------------------------------------------------------

namespace detail {

inline ordered_json cogrowth_json(const CogrowthRow& r) {
  return ordered_json{{"group", r.group},
                      {"L", r.L},
                      {"method", r.method},
                      {"sample_size", big_to_json(r.sample_size)},
                      {"trivial_or_pairs", big_to_json(r.trivial_count)},
                      {"p_hat", number(r.p_hat)},
                      {"root_L", number(r.root_L)},
                      {"ratio_20", number(r.ratio_20)},
                      {"std_error", number(r.std_error)},
                      {"seed", r.seed}};
}

inline std::vector<std::size_t> walk_lengths_or(const ExperimentConfig& c,
                                                std::vector<std::size_t> fallback) {
  return c.walk_lengths.empty() ? fallback : c.walk_lengths;
}

inline void require_lengths(const ExperimentConfig& c) {
  if (c.lengths.empty()) throw UsageError(c.command + " " + c.mode + ": --length or --lengths is required");
}

inline void run_cogrowth(const ExperimentConfig& c, Report& rep, std::ostream& progress) {
  require_lengths(c);
  const auto budget = MemoryBudget::megabytes(c.memory_budget_mb);
  rep.columns = {"group",   "L",      "method",   "sample_size", "trivial_or_pairs",
                 "p_hat",   "root_L", "ratio_20", "std_error",   "seed"};
  std::vector<CogrowthRow> rows;
  std::vector<std::string> extra;  // exact mode: p(L)^(1/L)
  std::vector<ordered_json> extra_json;
  try {
    with_oracle(parse_group(c.group), [&](const auto& g) {
      for (auto L : c.lengths) {
        progress << "cogrowth " << c.mode << " group=" << c.group << " L=" << L << '\n';
        if (c.mode == "exact") {
          const auto ex = exact_cogrowth(g, L, budget);
          rows.push_back(exact_row(g.kName, ex));
          extra.push_back("L=" + std::to_string(L) + " trivial=" + ex.trivial.str() +
                          " total=4^" + std::to_string(L) +
                          " p_root=" + format_double(ex.root_p()));
          extra_json.push_back(ordered_json{{"p", number(ex.p().template convert_to<double>())},
                                            {"p_root", number(ex.root_p())}});
        } else if (c.mode == "mc") {
          rows.push_back(mc_trivial_proportion(g, L, c.samples, c.seed, c.threads));
        } else if (c.mode == "batch") {
          rows.push_back(batch_collision_estimate(g, L, c.batch_size, c.iterations, c.seed, c.threads));
        } else {
          throw UsageError("cogrowth: unknown method '" + c.mode + "' (expected exact, mc or batch)");
        }
      }
    });
  } catch (const ResourceError& e) {
    rep.error = std::string(e.what()) + "; reachable=" + std::to_string(e.reachable()) +
                " last_completed_step=" + std::to_string(e.last_completed());
  }
  rows = cogrowth_table(std::move(rows));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto j = cogrowth_json(rows[i]);
    if (i < extra_json.size()) j.update(extra_json[i]);
    rep.rows.push_back(std::move(j));
  }
  rep.notes.insert(rep.notes.end(), extra.begin(), extra.end());
}

inline void run_growth_bfs(const ExperimentConfig& c, Report& rep, std::ostream& progress) {
  rep.columns = {"n", "g_n", "b_n", "quotient"};
  rep.notes.push_back("reference: 2.24698 largest root of x^3-2x^2-x+1 (positive words)");
  rep.notes.push_back("reference: 2.61803 = (3+sqrt 5)/2 lower bound");
  rep.notes.push_back("reference: 2.7956043 conjectured upper bound");
  std::vector<std::uint64_t> g;
  try {
    bfs_visit(c.radius, MemoryBudget::megabytes(c.memory_budget_mb),
              [&](const NormalForm&, std::size_t depth) {
                if (depth >= g.size()) {
                  g.resize(depth + 1, 0);
                  progress << "growth bfs: sphere " << depth << '\n';
                }
                ++g[depth];
              });
  } catch (const ResourceError& e) {
    rep.error = std::string(e.what()) + "; reachable=" + std::to_string(e.reachable()) +
                " last_completed_radius=" + std::to_string(e.last_completed());
    g.resize(std::min(g.size(), e.last_completed() + 1));
  }
  std::uint64_t ball = 0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    ball += g[n];
    ordered_json row{{"n", n}, {"g_n", g[n]}, {"b_n", ball}, {"quotient", nullptr}};
    if (n > 0) row["quotient"] = static_cast<double>(g[n]) / static_cast<double>(g[n - 1]);
    rep.rows.push_back(std::move(row));
  }
}

inline void run_growth_walk(const ExperimentConfig& c, Report& rep, std::ostream& progress) {
  const auto schedule = walk_lengths_or(c, default_walk_schedule());
  rep.columns = {"lo", "hi", "words", "avg_outval", "avg_dist2", "dist2_root"};
  rep.notes.push_back("reference: 2.24698 largest root of x^3-2x^2-x+1 (positive words)");
  rep.notes.push_back("reference: 2.61803 = (3+sqrt 5)/2 lower bound");
  rep.notes.push_back("reference: 2.7956043 conjectured upper bound");
  progress << "growth walk: " << schedule.size() << " walk lengths x " << c.samples << " walks\n";
  for (const auto& r : growth_experiment(schedule, c.samples, c.seed, c.threads)) {
    rep.rows.push_back(ordered_json{{"lo", r.lo},
                                    {"hi", r.hi},
                                    {"words", r.words},
                                    {"avg_outval", r.avg_outward_valence},
                                    {"avg_dist2", r.avg_dist2},
                                    {"dist2_root", r.dist2_root}});
  }
}

inline void run_escape(const ExperimentConfig& c, Report& rep, std::ostream& progress) {
  std::vector<std::size_t> fallback;
  for (std::size_t n = 100; n <= 1000; n += 100) fallback.push_back(n);
  const auto schedule = walk_lengths_or(c, fallback);
  rep.columns = {"n", "walks", "mean", "sd", "rate"};
  progress << "escape: " << schedule.size() << " walk lengths x " << c.samples << " walks\n";
  for (const auto& r : escape_experiment(schedule, c.samples, c.seed, c.threads)) {
    rep.rows.push_back(ordered_json{
        {"n", r.n}, {"walks", r.walks}, {"mean", r.mean}, {"sd", r.sd}, {"rate", r.rate}});
  }
}

inline void run_deadends(const ExperimentConfig& c, Report& rep, std::ostream& progress) {
  const auto schedule = walk_lengths_or(c, default_walk_schedule());
  rep.columns = {"lo", "hi", "words", "deadends", "fraction"};
  progress << "deadends: " << schedule.size() << " walk lengths x " << c.samples << " walks\n";
  for (const auto& r : dead_end_census(schedule, c.samples, c.seed, c.threads)) {
    rep.rows.push_back(ordered_json{{"lo", r.lo},
                                    {"hi", r.hi},
                                    {"words", r.words},
                                    {"deadends", r.dead_ends},
                                    {"fraction", r.fraction}});
  }
}

inline void run_selftest_report(const ExperimentConfig& c, Report& rep, std::ostream& progress) {
  rep.columns = {"check", "status", "detail"};
  for (const auto& r : run_selftest(MemoryBudget::megabytes(c.memory_budget_mb), progress)) {
    rep.ok = rep.ok && r.passed;
    rep.rows.push_back(
        ordered_json{{"check", r.name}, {"status", r.passed ? "PASS" : "FAIL"}, {"detail", r.detail}});
  }
}

}  // namespace detail

inline void validate(const ExperimentConfig& c) {
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.threads == 0) throw UsageError("--threads must be >= 1");
  if (c.memory_budget_mb == 0) throw UsageError("--memory-budget must be >= 1 (MB)");
  try {
    parse_group(c.group);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const bool walks = c.command == "escape" || c.command == "deadends" ||
                     (c.command == "growth" && c.mode == "walk");
  if (walks && c.group != "f") throw UsageError(c.command + ": walk experiments run on F only");
  if (c.command == "growth" && c.mode == "bfs" && c.group != "f") {
    throw UsageError("growth bfs: sphere census runs on F only");
  }
  if ((walks || (c.command == "cogrowth" && c.mode == "mc")) && c.samples == 0) {
    throw UsageError(c.command + ": --samples must be >= 1");
  }
  if (c.command == "cogrowth" && c.mode != "exact") {
    for (auto L : c.lengths) {
      if (L % 2 != 0) throw UsageError("cogrowth " + c.mode + ": lengths must be even (got " + std::to_string(L) + ")");
    }
  }
}

// Runs an experiment. Library errors other than resource exhaustion
// propagate; resource errors stop the run and keep the rows finished so far.
inline Report run(const ExperimentConfig& c, std::ostream& progress) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  if (c.command == "cogrowth") {
    detail::run_cogrowth(c, rep, progress);
  } else if (c.command == "growth" && c.mode == "bfs") {
    detail::run_growth_bfs(c, rep, progress);
  } else if (c.command == "growth" && c.mode == "walk") {
    detail::run_growth_walk(c, rep, progress);
  } else if (c.command == "escape") {
    detail::run_escape(c, rep, progress);
  } else if (c.command == "deadends") {
    detail::run_deadends(c, rep, progress);
  } else if (c.command == "selftest") {
    detail::run_selftest_report(c, rep, progress);
  } else {
    throw UsageError("unknown command '" + c.command + (c.mode.empty() ? "" : " " + c.mode) + "'");
  }
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace thompson
