// Command line front end: run one scenario, run a suite directory, or
// rescore saved result files.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "navsim/agent/config.hpp"
#include "navsim/agent/runner.hpp"
#include "navsim/scoring/score.hpp"
#include "navsim/sim/scenario.hpp"
#include "navsim/sim/world.hpp"

namespace {

using navsim::TrackMode;

struct CommonArgs {
  std::string agent_config;
  std::optional<std::uint64_t> seed;
  std::optional<int> track;
  std::string out_dir;
};

navsim::agent::AgentConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return navsim::agent::load_agent_config(path);
}

navsim::agent::RunOptions to_options(const CommonArgs& args) {
  navsim::agent::RunOptions opt;
  opt.seed = args.seed;
  if (args.track) opt.track = static_cast<TrackMode>(*args.track);
  opt.out_dir = args.out_dir;
  return opt;
}

void print_run(const navsim::agent::RunOutput& r) {
  std::printf("route        %s\n", r.result.route_id.c_str());
  std::printf("track        %d\n", static_cast<int>(r.track));
  std::printf("seed         %llu\n",
              static_cast<unsigned long long>(r.seed));
  std::printf("completion   %.1f%%\n", 100.0 * r.result.completion);
  std::printf("infractions  %d points over %zu events\n",
              r.result.infraction_points, r.result.infractions.size());
  const double score =
      std::max(100.0 * r.result.completion - r.result.infraction_points, 0.0);
  std::printf("score        %.2f\n", score);
  std::printf("sim time     %.2f s%s\n", r.sim_time_s,
              r.result.timed_out ? " (timeout)" : "");
  std::printf("wall time    %.0f ms\n", r.wall_ms);
}

int cmd_run(const std::string& scenario_path, const CommonArgs& args) {
  const auto scenario = navsim::sim::load_scenario(scenario_path);
  const auto cfg = load_config(args.agent_config);
  const auto out = navsim::agent::run_scenario(scenario, cfg, to_options(args));
  print_run(out);
  return 0;
}

int cmd_suite(const std::string& dir, const CommonArgs& args, int workers,
              const std::string& report_path) {
  const auto cfg = load_config(args.agent_config);
  const auto out =
      navsim::agent::run_suite(dir, cfg, to_options(args), workers);
  std::cout << navsim::scoring::format_table(out.report);
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + report_path);
    f << navsim::scoring::report_json(out.report);
  }
  return 0;
}

// Rebuilds RouteResults from result.json files written by earlier runs.
int cmd_score(const std::vector<std::string>& files) {
  std::vector<navsim::scoring::RouteResult> results;
  for (const auto& path : files) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(f);
    navsim::scoring::RouteResult r;
    r.route_id = doc.at("route_id").get<std::string>();
    r.repetition = doc.value("repetition", 0);
    r.completion = doc.at("completion").get<double>();
    r.duration_s = doc.value("duration_s", 0.0);
    r.timed_out = doc.value("timed_out", false);
    for (const auto& e : doc.value("infractions", nlohmann::json::array())) {
      navsim::sim::InfractionEvent ev;
      ev.kind = navsim::sim::infraction_kind_from_name(
          e.at("kind").get<std::string>());
      ev.time = e.value("t", 0.0);
      ev.points = e.at("points").get<int>();
      ev.actor = e.value("actor", -1);
      r.infractions.push_back(ev);
    }
    r.infraction_points = navsim::scoring::total_points(r.infractions);
    results.push_back(std::move(r));
  }
  std::cout << navsim::scoring::format_table(navsim::scoring::score(results));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2d driving stack: simulation, agent and scoring"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string scenario_path, suite_dir, report_path;
  std::vector<std::string> score_files;
  int workers = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--agent", args.agent_config,
                    "agent config JSON (defaults when omitted)");
    cmd->add_option("--seed", args.seed, "override the scenario seed");
    cmd->add_option("--track", args.track, "track mode override")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--out", args.out_dir, "directory for run logs");
  };

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("scenario", scenario_path, "scenario JSON")->required();
  add_common(run);

  CLI::App* suite = app.add_subcommand("suite", "run every scenario in a directory");
  suite->add_option("dir", suite_dir, "directory of scenario JSON files")
      ->required();
  add_common(suite);
  suite->add_option("--workers", workers, "worker threads (0 = all cores)");
  suite->add_option("--report", report_path, "write the score report JSON here");

  CLI::App* score = app.add_subcommand("score", "aggregate saved result files");
  score->add_option("results", score_files, "result.json files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, args);
    if (suite->parsed()) return cmd_suite(suite_dir, args, workers, report_path);
    if (score->parsed()) return cmd_score(score_files);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
