#include "navsim/sim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "internal/json_node.hpp"

namespace navsim::sim {
namespace {

using nlohmann::json;
using detail::fail_at;
using detail::Node;
using detail::num_or;
using detail::positive_or;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  fail_at(path, what);
}

EgoSpec parse_ego(const Node& n) {
  n.check_keys({"start", "length", "width", "wheelbase", "max_steer",
                "throttle_accel", "brake_accel"});
  EgoSpec e;
  e.start = n.child("start").pose();
  e.length = positive_or(n, "length", e.length);
  e.width = positive_or(n, "width", e.width);
  e.wheelbase = positive_or(n, "wheelbase", e.wheelbase);
  e.max_steer = positive_or(n, "max_steer", e.max_steer);
  e.throttle_accel = positive_or(n, "throttle_accel", e.throttle_accel);
  e.brake_accel = positive_or(n, "brake_accel", e.brake_accel);
  return e;
}

SensorSuite parse_sensors(const Node& n) {
  n.check_keys({"gps", "lidar", "camera", "objects"});
  SensorSuite s;
  if (auto g = n.opt("gps")) {
    g->check_keys({"rate_hz", "sigma_m", "front_offset", "back_offset"});
    s.gps.rate_hz = positive_or(*g, "rate_hz", s.gps.rate_hz);
    s.gps.sigma_m = num_or(*g, "sigma_m", s.gps.sigma_m);
    if (s.gps.sigma_m < 0.0) fail(g->path() + ".sigma_m", "expected >= 0");
    if (auto f = g->opt("front_offset")) s.gps.front_offset = f->vec2();
    if (auto b = g->opt("back_offset")) s.gps.back_offset = b->vec2();
  }
  if (auto l = n.opt("lidar")) {
    l->check_keys({"rate_hz", "channels", "upper_fov_deg", "lower_fov_deg",
                   "max_range_m", "points_per_second", "height_m"});
    s.lidar.rate_hz = positive_or(*l, "rate_hz", s.lidar.rate_hz);
    if (auto c = l->opt("channels")) {
      s.lidar.channels = c->integer();
      if (s.lidar.channels < 1) fail(c->path(), "expected >= 1");
    }
    s.lidar.upper_fov_deg = num_or(*l, "upper_fov_deg", s.lidar.upper_fov_deg);
    s.lidar.lower_fov_deg = num_or(*l, "lower_fov_deg", s.lidar.lower_fov_deg);
    if (s.lidar.lower_fov_deg >= s.lidar.upper_fov_deg)
      fail(l->path(), "lower_fov_deg must be below upper_fov_deg");
    s.lidar.max_range_m = positive_or(*l, "max_range_m", s.lidar.max_range_m);
    s.lidar.points_per_second = positive_or(*l, "points_per_second", s.lidar.points_per_second);
    s.lidar.height_m = positive_or(*l, "height_m", s.lidar.height_m);
  }
  if (auto c = n.opt("camera")) {
    c->check_keys({"rate_hz", "rows", "cols", "hfov_deg", "height_m", "noise_rel"});
    s.camera.rate_hz = positive_or(*c, "rate_hz", s.camera.rate_hz);
    if (auto r = c->opt("rows")) {
      s.camera.rows = r->integer();
      if (s.camera.rows < 1) fail(r->path(), "expected >= 1");
    }
    if (auto k = c->opt("cols")) {
      s.camera.cols = k->integer();
      if (s.camera.cols < 1) fail(k->path(), "expected >= 1");
    }
    s.camera.hfov_deg = positive_or(*c, "hfov_deg", s.camera.hfov_deg);
    s.camera.height_m = positive_or(*c, "height_m", s.camera.height_m);
    s.camera.noise_rel = num_or(*c, "noise_rel", s.camera.noise_rel);
    if (s.camera.noise_rel < 0.0) fail(c->path() + ".noise_rel", "expected >= 0");
  }
  if (auto o = n.opt("objects")) {
    o->check_keys({"rate_hz", "range_m", "fov_deg"});
    s.objects.rate_hz = positive_or(*o, "rate_hz", s.objects.rate_hz);
    s.objects.range_m = positive_or(*o, "range_m", s.objects.range_m);
    s.objects.fov_deg = positive_or(*o, "fov_deg", s.objects.fov_deg);
  }
  return s;
}

MapSpec parse_map(const Node& n) {
  n.check_keys({"lanes", "sidewalks", "stop_signs", "speed_signs"});
  MapSpec m;
  if (auto lanes = n.opt("lanes")) {
    for (const Node& lane : lanes->items()) {
      lane.check_keys({"center", "width"});
      LaneSpec spec;
      spec.center = lane.child("center").points(2);
      spec.width = positive_or(lane, "width", spec.width);
      m.lanes.push_back(std::move(spec));
    }
  }
  if (auto walks = n.opt("sidewalks")) {
    for (const Node& poly : walks->items()) m.sidewalks.push_back(poly.points(3));
  }
  if (auto signs = n.opt("stop_signs")) {
    for (const Node& sign : signs->items()) {
      sign.check_keys({"line"});
      const auto pts = sign.child("line").points(2);
      if (pts.size() != 2) fail(sign.path() + ".line", "expected exactly two points");
      m.stop_signs.push_back({{pts[0], pts[1]}});
    }
  }
  if (auto signs = n.opt("speed_signs")) {
    for (const Node& sign : signs->items()) {
      sign.check_keys({"position", "limit_mps"});
      SpeedSignSpec spec;
      spec.position = sign.child("position").vec2();
      spec.limit_mps = sign.child("limit_mps").positive();
      m.speed_signs.push_back(spec);
    }
  }
  return m;
}

ActorSpec parse_actor(const Node& n) {
  n.check_keys({"type", "length", "width", "height", "pose", "speed",
                "trajectory", "trigger_distance"});
  ActorSpec a;
  const std::string type = n.child("type").str();
  if (type == "vehicle") {
    a.type = ActorType::Vehicle;
  } else if (type == "pedestrian") {
    a.type = ActorType::Pedestrian;
    a.length = 0.5;
    a.width = 0.5;
    a.height = 1.8;
  } else if (type == "static") {
    a.type = ActorType::Static;
    a.length = 1.0;
    a.width = 1.0;
    a.height = 1.5;
  } else {
    fail(n.path() + ".type", "expected vehicle, pedestrian or static");
  }
  a.length = positive_or(n, "length", a.length);
  a.width = positive_or(n, "width", a.width);
  a.height = positive_or(n, "height", a.height);
  a.pose = n.child("pose").pose();
  a.speed = num_or(n, "speed", 0.0);
  if (a.speed < 0.0) fail(n.path() + ".speed", "expected >= 0");
  if (auto traj = n.opt("trajectory")) {
    double prev_t = -1.0;
    for (const Node& key : traj->items()) {
      key.check_keys({"t", "pose"});
      TrajectoryKey k;
      k.t = key.child("t").num();
      if (k.t < 0.0) fail(key.path() + ".t", "expected >= 0");
      if (k.t <= prev_t) fail(key.path() + ".t", "keyframe times must increase");
      prev_t = k.t;
      k.pose = key.child("pose").pose();
      a.trajectory.push_back(k);
    }
    if (a.trajectory.empty()) fail(traj->path(), "expected at least one keyframe");
  }
  a.trigger_distance = num_or(n, "trigger_distance", 0.0);
  if (a.trigger_distance < 0.0) fail(n.path() + ".trigger_distance", "expected >= 0");
  return a;
}

LightSpec parse_light(const Node& n) {
  n.check_keys({"position", "stop_line", "schedule", "offset"});
  LightSpec l;
  l.position = n.child("position").vec2();
  const auto pts = n.child("stop_line").points(2);
  if (pts.size() != 2) fail(n.path() + ".stop_line", "expected exactly two points");
  l.stop_line = {pts[0], pts[1]};
  const Node sched = n.child("schedule");
  sched.check_keys({"green", "yellow", "red"});
  l.green_s = sched.child("green").positive();
  l.yellow_s = sched.child("yellow").positive();
  l.red_s = sched.child("red").positive();
  l.offset_s = num_or(n, "offset", 0.0);
  if (l.offset_s < 0.0) fail(n.path() + ".offset", "expected >= 0");
  return l;
}

}  // namespace

double weather_noise_scale(const std::string& weather) {
  if (weather == "clear" || weather == "cloudy") return 1.0;
  if (weather == "rain") return 1.5;
  if (weather == "fog") return 2.0;
  throw std::runtime_error("unknown weather tag '" + weather +
                           "' (expected clear, cloudy, rain or fog)");
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  const json doc = detail::parse_json_text(text, origin);

  try {
    Node root(doc, "scenario");
    root.check_keys({"name", "seed", "track_mode", "speed_limit_mps", "weather",
                     "timeout_s", "sim_dt", "geo_anchor", "ego", "sensors", "map",
                     "route", "actors", "lights"});
    ScenarioConfig sc;
    sc.name = root.child("name").str();
    if (sc.name.empty()) fail("scenario.name", "expected a nonempty string");
    if (auto s = root.opt("seed")) sc.seed = s->uint64();
    if (auto t = root.opt("track_mode")) {
      const int mode = t->integer();
      if (mode < 1 || mode > 4) fail(t->path(), "expected 1..4");
      sc.track_mode = static_cast<TrackMode>(mode);
    }
    sc.speed_limit_mps = positive_or(root, "speed_limit_mps", sc.speed_limit_mps);
    if (auto w = root.opt("weather")) sc.weather = w->str();
    try {
      weather_noise_scale(sc.weather);
    } catch (const std::runtime_error& e) {
      fail("scenario.weather", e.what());
    }
    sc.timeout_s = num_or(root, "timeout_s", 0.0);
    sc.sim_dt = positive_or(root, "sim_dt", sc.sim_dt);
    if (auto g = root.opt("geo_anchor")) {
      g->check_keys({"lat", "lon"});
      sc.geo_anchor.lat = g->child("lat").num();
      sc.geo_anchor.lon = g->child("lon").num();
    }
    sc.ego = parse_ego(root.child("ego"));
    if (auto s = root.opt("sensors")) sc.sensors = parse_sensors(*s);
    if (auto m = root.opt("map")) sc.map = parse_map(*m);
    sc.route.waypoints = root.child("route").points(2);
    if (auto actors = root.opt("actors")) {
      for (const Node& a : actors->items()) sc.actors.push_back(parse_actor(a));
    }
    if (auto lights = root.opt("lights")) {
      for (const Node& l : lights->items()) sc.lights.push_back(parse_light(l));
    }
    return sc;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace navsim::sim
