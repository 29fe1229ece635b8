#include "navsim/agent/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "navsim/common/angles.hpp"
#include "navsim/common/rng.hpp"
#include "navsim/sim/sensors.hpp"
#include "navsim/sim/world.hpp"

namespace navsim::agent {

namespace {

using nlohmann::json;

const char* action_name(decision::MdpAction a) {
  switch (a) {
    case decision::MdpAction::Brake: return "brake";
    case decision::MdpAction::StayConstant: return "stay";
    case decision::MdpAction::Accelerate: return "accelerate";
  }
  return "stay";
}

const char* color_name(LightColor c) {
  switch (c) {
    case LightColor::Green: return "green";
    case LightColor::Yellow: return "yellow";
    case LightColor::Red: return "red";
    case LightColor::None: break;
  }
  return "none";
}

void write_lines(const std::filesystem::path& file,
                 const std::vector<std::string>& lines) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  for (const auto& l : lines) out << l << '\n';
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

json infraction_json(const sim::InfractionEvent& e) {
  return json{{"t", e.time},
              {"kind", sim::infraction_name(e.kind)},
              {"points", e.points},
              {"actor", e.actor}};
}

}  // namespace

RunOutput run_scenario(const sim::ScenarioConfig& scenario,
                       const AgentConfig& cfg, const RunOptions& opt) {
  validate(cfg);
  auto sc = std::make_shared<sim::ScenarioConfig>(scenario);
  if (opt.seed) sc->seed = *opt.seed;
  const TrackMode track =
      opt.track ? *opt.track : (cfg.track ? *cfg.track : sc->track_mode);

  const auto wall0 = std::chrono::steady_clock::now();

  sim::SensorRig rig(sc);
  sim::SimWorld world = sim::make_world(sc);

  AgentEnv env;
  env.route = sc->route;
  env.anchor = rig.anchor();
  env.speed_limit_mps = sc->speed_limit_mps;
  env.wheelbase = sc->ego.wheelbase;
  env.max_steer = sc->ego.max_steer;
  env.speed_signs = sc->map.speed_signs;

  Agent agent(cfg, env, track, splitmix64(sc->seed ^ 0x6167656e74ULL));

  scoring::ProgressTracker tracker(&agent.path());
  const double route_len = agent.path().length();

  const double dt = sc->sim_dt;
  const double timeout =
      sc->timeout_s > 0.0
          ? sc->timeout_s
          : route_len / (0.5 * sc->speed_limit_mps) + 60.0;
  const long max_steps = static_cast<long>(std::ceil(timeout / dt - 1e-9));

  // The modalities the track's pipeline consumes. Unconsumed sensors are
  // never synthesized; per-(sensor, frame) noise streams keep the rest of
  // the run byte-identical either way.
  const bool use_lidar =
      track == TrackMode::Track1 || track == TrackMode::Track3;
  const bool use_depth = track == TrackMode::Track2;

  // Sensor frame k emits once sim time reaches k / rate.
  std::uint64_t next_gps = 1, next_lidar = 1, next_depth = 1, next_obj = 1;
  std::uint64_t next_ctl = 1;
  const auto due = [](std::uint64_t k, double rate, double t) {
    return rate > 0.0 && static_cast<double>(k) / rate <= t + 1e-9;
  };

  SensorFrame frame;  // accumulates emissions until the next control tick
  sim::EgoCommand cmd;

  std::vector<std::string> event_lines, trace_lines;
  size_t events_seen = 0;
  std::vector<char> prev_active(world.actors.size());
  for (size_t i = 0; i < world.actors.size(); ++i)
    prev_active[i] = world.actors[i].active;
  std::vector<LightColor> prev_lights = world.lights;
  bool completed = false;

  for (long n = 1; n <= max_steps; ++n) {
    world = sim::step_world(world, cmd, dt);
    const double t = world.time;

    for (; events_seen < world.events.size(); ++events_seen) {
      json j = infraction_json(world.events[events_seen]);
      j["event"] = "infraction";
      event_lines.push_back(j.dump());
    }
    for (size_t i = 0; i < world.actors.size(); ++i) {
      if (world.actors[i].active && !prev_active[i])
        event_lines.push_back(json{{"t", t},
                                   {"event", "actor_active"},
                                   {"actor", static_cast<int>(i)}}
                                  .dump());
      prev_active[i] = world.actors[i].active;
    }
    for (size_t i = 0; i < world.lights.size(); ++i) {
      if (world.lights[i] != prev_lights[i])
        event_lines.push_back(json{{"t", t},
                                   {"event", "light_change"},
                                   {"light", static_cast<int>(i)},
                                   {"color", color_name(world.lights[i])}}
                                  .dump());
      prev_lights[i] = world.lights[i];
    }

    const double progress = tracker.update(world.ego.pose.position());
    if (route_len - progress < 0.5) {
      completed = true;
      event_lines.push_back(json{{"t", t}, {"event", "completed"}}.dump());
      break;
    }

    while (due(next_gps, sc->sensors.gps.rate_hz, t)) {
      frame.gps = rig.sense_gps(world, next_gps);
      ++next_gps;
    }
    if (use_lidar)
      while (due(next_lidar, sc->sensors.lidar.rate_hz, t)) {
        frame.lidar = rig.sense_lidar(world);
        ++next_lidar;
      }
    if (use_depth)
      while (due(next_depth, sc->sensors.camera.rate_hz, t)) {
        frame.depth = rig.sense_depth(world, next_depth);
        ++next_depth;
      }
    while (due(next_obj, sc->sensors.objects.rate_hz, t)) {
      if (track == TrackMode::Track4) {
        frame.objects =
            rig.sense_objects(world, sc->sensors.objects.range_m,
                              deg_to_rad(sc->sensors.objects.fov_deg));
      } else {
        // Light-detector stand-in: same feed, gated to detector reach,
        // stripped of every actor box.
        auto g = rig.sense_objects(world, cfg.lights.range_m,
                                   deg_to_rad(cfg.lights.fov_deg));
        g.objects.clear();
        frame.objects = std::move(g);
      }
      ++next_obj;
    }

    while (due(next_ctl, cfg.control_rate_hz, t)) {
      ++next_ctl;
      frame.time = t;
      frame.dt = 1.0 / cfg.control_rate_hz;
      frame.can_v = world.ego.v;
      frame.can_kappa = world.ego.kappa;
      const AgentCommand acmd = agent.tick(frame);
      cmd.longitudinal = acmd.longitudinal;
      cmd.steer = acmd.steer;
      trace_lines.push_back(json{{"t", t},
                                 {"x", world.ego.pose.x},
                                 {"y", world.ego.pose.y},
                                 {"theta", world.ego.pose.theta},
                                 {"v", world.ego.v},
                                 {"lon", acmd.longitudinal},
                                 {"steer", acmd.steer},
                                 {"action", action_name(acmd.action)},
                                 {"v_target", acmd.v_target},
                                 {"danger", acmd.danger_brake},
                                 {"localized", acmd.localized}}
                                .dump());
      frame = SensorFrame{};  // every emission is consumed exactly once
    }
  }
  if (!completed)
    event_lines.push_back(
        json{{"t", world.time}, {"event", "timeout"}}.dump());

  RunOutput out;
  out.result.route_id = sc->name.empty() ? "scenario" : sc->name;
  out.result.repetition = 0;
  out.result.completion = completed ? 1.0 : tracker.fraction();
  out.result.infractions = world.events;
  out.result.infraction_points = scoring::total_points(world.events);
  out.result.duration_s = world.time;
  out.result.timed_out = !completed;
  out.track = track;
  out.seed = sc->seed;
  out.sim_time_s = world.time;
  out.counters = agent.counters();
  out.timings = agent.timings();
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - wall0)
                    .count();

  if (!opt.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    write_lines(dir / "events.jsonl", event_lines);
    write_lines(dir / "trace.jsonl", trace_lines);

    json result{{"route_id", out.result.route_id},
                {"repetition", out.result.repetition},
                {"completion", out.result.completion},
                {"duration_s", out.result.duration_s},
                {"timed_out", out.result.timed_out},
                {"infraction_points", out.result.infraction_points},
                {"score",
                 std::max(100.0 * out.result.completion -
                              out.result.infraction_points,
                          0.0)},
                {"seed", out.seed},
                {"track", static_cast<int>(out.track)},
                {"infractions", json::array()},
                {"counters",
                 {{"lidar_frames", out.counters.lidar_frames},
                  {"depth_frames", out.counters.depth_frames},
                  {"perception_calls", out.counters.perception_calls},
                  {"truth_object_reads", out.counters.truth_object_reads},
                  {"decisions", out.counters.decisions}}}};
    for (const auto& e : out.result.infractions)
      result["infractions"].push_back(infraction_json(e));
    write_text(dir / "result.json", result.dump(2) + "\n");

    // Wall-clock numbers; the one file that differs between identical runs.
    json timing{{"wall_ms", out.wall_ms},
                {"ticks", out.timings.ticks},
                {"localization_ms", out.timings.localization_ms},
                {"perception_ms", out.timings.perception_ms},
                {"risk_ms", out.timings.risk_ms},
                {"decision_ms", out.timings.decision_ms},
                {"control_ms", out.timings.control_ms}};
    write_text(dir / "timing.json", timing.dump(2) + "\n");
  }

  return out;
}

SuiteOutput run_suite(const std::string& dir, const AgentConfig& cfg,
                      const RunOptions& opt, int workers) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no scenario files under " + dir);

  std::vector<RunOutput> runs(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<size_t> cursor{0};

  int n = workers > 0 ? workers
                      : static_cast<int>(std::max(
                            1u, std::thread::hardware_concurrency()));
  n = std::min<int>(n, static_cast<int>(files.size()));

  const auto work = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= files.size()) return;
      try {
        const auto sc = sim::load_scenario(files[i].string());
        RunOptions ropt = opt;
        if (!opt.out_dir.empty())
          ropt.out_dir = (fs::path(opt.out_dir) / files[i].stem()).string();
        runs[i] = run_scenario(sc, cfg, ropt);
        if (runs[i].result.route_id == "scenario")
          runs[i].result.route_id = files[i].stem().string();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<scoring::RouteResult> results;
  results.reserve(runs.size());
  for (const auto& r : runs) results.push_back(r.result);

  SuiteOutput out;
  out.runs = std::move(runs);
  out.report = scoring::score(results);
  return out;
}

}  // namespace navsim::agent
