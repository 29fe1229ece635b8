#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "navsim/agent/agent.hpp"
#include "navsim/agent/config.hpp"
#include "navsim/scoring/score.hpp"
#include "navsim/sim/scenario.hpp"

namespace navsim::agent {

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
  std::optional<TrackMode> track;     // strongest track override
  std::string out_dir;                // empty: no files written
};

struct RunOutput {
  scoring::RouteResult result;
  TrackMode track = TrackMode::Track4;
  std::uint64_t seed = 0;
  double sim_time_s = 0.0;
  double wall_ms = 0.0;
  AgentCounters counters;
  ModuleTimings timings;
};

/// Steps the simulation and the agent to completion or timeout. Track
/// priority: options, then agent config, then the scenario. When out_dir
/// is set, writes events.jsonl, trace.jsonl, result.json and timing.json
/// into it; all but timing.json are byte-deterministic per (scenario,
/// config, seed).
RunOutput run_scenario(const sim::ScenarioConfig& scenario,
                       const AgentConfig& cfg, const RunOptions& opt = {});

struct SuiteOutput {
  std::vector<RunOutput> runs;  // ordered by scenario file name
  scoring::ScoreReport report;
};

/// Runs every *.json scenario under dir (sorted by file name) across the
/// given number of worker threads. Per-scenario logs land in
/// out_dir/<scenario-stem>/ when out_dir is set.
SuiteOutput run_suite(const std::string& dir, const AgentConfig& cfg,
                      const RunOptions& opt = {}, int workers = 0);

}  // namespace navsim::agent
