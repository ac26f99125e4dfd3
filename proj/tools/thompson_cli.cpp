// Command-line front end. Results go to standard output or --out; progress
// and diagnostics go to standard error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thompson/report.hpp"

namespace {

struct Flags {
  std::string group = "f";
  std::int64_t length = -1;
  std::string lengths;
  std::string walk_lengths;
  std::uint64_t samples = 100000;
  std::uint64_t batch_size = 15000;
  std::uint64_t iterations = 100;
  std::size_t radius = 11;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t memory_budget = 4096;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--seed", f.seed, "root seed")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads")->capture_default_str();
  cmd->add_option("--memory-budget", f.memory_budget, "memory budget in MB")->capture_default_str();
  cmd->add_option("--out", f.out, "output file (default: standard output)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_walks(CLI::App* cmd, Flags& f, const std::string& schedule_help) {
  cmd->add_option("--walk-lengths", f.walk_lengths, "walk lengths lo:hi:step (" + schedule_help + ")");
  cmd->add_option("--samples", f.samples, "walks per walk length")->capture_default_str();
}

int emit(const thompson::ExperimentConfig& config, const thompson::Report& report) {
  auto write = [&](std::ostream& os) {
    if (config.format == "json") {
      thompson::write_json(os, config, report);
    } else {
      thompson::write_csv(os, config, report);
    }
  };
  if (config.out.empty()) {
    write(std::cout);
  } else {
    std::ofstream file(config.out);
    if (!file) {
      std::cerr << "error: cannot open " << config.out << '\n';
      return 4;
    }
    write(file);
    if (config.format == "csv") {
      std::ofstream summary(config.out + ".json");
      thompson::write_json(summary, config, report);
    }
  }
  if (!report.error.empty()) {
    std::cerr << "error: " << report.error << " (partial results written)\n";
    return 3;
  }
  return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cogrowth, growth, escape and dead-end experiments on Thompson's group F"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(thompson::kVersion));
  Flags f;
  std::string method;

  auto* cogrowth = app.add_subcommand("cogrowth", "proportion of trivial balanced words");
  cogrowth->add_option("method", method, "exact, mc or batch")
      ->required()
      ->check(CLI::IsMember({"exact", "mc", "batch"}));
  cogrowth->add_option("--group", f.group, "f, zwrz or f2")
      ->check(CLI::IsMember({"f", "zwrz", "f2"}))
      ->capture_default_str();
  auto* len = cogrowth->add_option("--length", f.length, "word length L");
  auto* lens = cogrowth->add_option("--lengths", f.lengths, "word lengths lo:hi:step");
  len->excludes(lens);
  cogrowth->add_option("--samples", f.samples, "Monte Carlo samples (mc)")->capture_default_str();
  cogrowth->add_option("--batch-size", f.batch_size, "words per batch N (batch)")->capture_default_str();
  cogrowth->add_option("--iterations", f.iterations, "batches (batch)")->capture_default_str();
  add_common(cogrowth, f);

  auto* growth = app.add_subcommand("growth", "sphere census (bfs) or walk-based growth estimates (walk)");
  growth->add_option("method", method, "bfs or walk")->required()->check(CLI::IsMember({"bfs", "walk"}));
  growth->add_option("--radius", f.radius, "BFS radius")->capture_default_str();
  add_walks(growth, f, "default 50:1000:50");
  add_common(growth, f);

  auto* escape = app.add_subcommand("escape", "mean word length of random walk endpoints");
  add_walks(escape, f, "default 100:1000:100");
  add_common(escape, f);

  auto* deadends = app.add_subcommand("deadends", "dead-end incidence along random walks");
  add_walks(deadends, f, "default 50:1000:50");
  add_common(deadends, f);

  auto* selftest = app.add_subcommand("selftest", "exact checks against published data and oracles");
  add_common(selftest, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  thompson::ExperimentConfig config;
  config.command = app.get_subcommands().front()->get_name();
  config.mode = method;
  config.group = f.group;
  config.samples = f.samples;
  config.batch_size = f.batch_size;
  config.iterations = f.iterations;
  config.radius = f.radius;
  config.seed = f.seed;
  config.threads = f.threads;
  config.memory_budget_mb = f.memory_budget;
  config.format = f.format;
  config.out = f.out;
  try {
    if (f.length >= 0) config.lengths = {f.length};
    if (!f.lengths.empty()) config.lengths = thompson::parse_range<std::int64_t>(f.lengths);
    if (!f.walk_lengths.empty()) {
      config.walk_lengths = thompson::parse_range<std::size_t>(f.walk_lengths);
    }
    return emit(config, thompson::run(config, std::cerr));
  } catch (const thompson::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
