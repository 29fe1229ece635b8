#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "navsim/common/geo.hpp"
#include "navsim/common/types.hpp"
#include "navsim/sim/geometry.hpp"
#include "navsim/sim/infractions.hpp"
#include "navsim/sim/scenario.hpp"
#include "navsim/sim/sensors.hpp"
#include "navsim/sim/world.hpp"

using namespace navsim;
using namespace navsim::sim;

namespace {

std::shared_ptr<ScenarioConfig> straight_scenario() {
  auto sc = std::make_shared<ScenarioConfig>();
  sc->name = "unit";
  sc->seed = 7;
  sc->ego.start = {0.0, 0.0, 0.0};
  sc->route.waypoints = {{0.0, 0.0}, {100.0, 0.0}};
  return sc;
}

std::string parse_err(const std::string& text) {
  try {
    (void)parse_scenario(text, "test.json");
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

ActorSpec vehicle_at(double x, double y, double theta = 0.0) {
  ActorSpec a;
  a.type = ActorType::Vehicle;
  a.pose = {x, y, theta};
  return a;
}

int count_kind(const std::vector<InfractionEvent>& events, InfractionKind k) {
  int n = 0;
  for (const auto& e : events) n += e.kind == k ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("infraction point table") {
  CHECK(infraction_points(InfractionKind::HitStatic) == 6);
  CHECK(infraction_points(InfractionKind::HitVehicle) == 6);
  CHECK(infraction_points(InfractionKind::HitPedestrian) == 9);
  CHECK(infraction_points(InfractionKind::RedLight) == 3);
  CHECK(infraction_points(InfractionKind::OppositeLane) == 2);
  CHECK(infraction_points(InfractionKind::Sidewalk) == 2);
  CHECK(infraction_points(InfractionKind::StopSign) == 2);
  CHECK(std::string(infraction_name(InfractionKind::RedLight)) == "red_light");
  CHECK(std::string(infraction_name(InfractionKind::HitPedestrian)) ==
        "hit_pedestrian");
}

TEST_CASE("step_world basics") {
  auto sc = straight_scenario();
  SimWorld w = make_world(sc);

  SUBCASE("zero command at rest changes only the clock") {
    const SimWorld next = step_world(w, {}, 0.05);
    CHECK(next.time == doctest::Approx(0.05));
    CHECK(next.step == 1);
    CHECK(next.ego.pose.x == w.ego.pose.x);
    CHECK(next.ego.pose.y == w.ego.pose.y);
    CHECK(next.ego.pose.theta == w.ego.pose.theta);
    CHECK(next.ego.v == 0.0);
    CHECK(next.events.empty());
  }

  SUBCASE("full throttle for one second reaches 3 m/s") {
    for (int k = 0; k < 20; ++k) w = step_world(w, {1.0, 0.0}, 0.05);
    CHECK(w.ego.v == doctest::Approx(3.0));
    CHECK(w.time == doctest::Approx(1.0));
  }

  SUBCASE("full brake saturates at standstill") {
    w.ego.v = 2.0;
    for (int k = 0; k < 20; ++k) w = step_world(w, {-1.0, 0.0}, 0.05);
    CHECK(w.ego.v == 0.0);
  }

  SUBCASE("steer command is clamped to the vehicle limit") {
    w = step_world(w, {0.0, 2.0}, 0.05);
    CHECK(w.ego.steer == doctest::Approx(sc->ego.max_steer));
  }
}

TEST_CASE("constant steer and speed trace the curvature circle within 2%") {
  auto sc = straight_scenario();
  SimWorld w = make_world(sc);
  w.ego.v = 5.0;
  const double kappa = 0.1;  // radius 10
  const double steer = std::atan(kappa * sc->ego.wheelbase);
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  // One full loop: 2*pi*10 / 5 m/s = 12.57 s.
  for (int k = 0; k < 252; ++k) {
    w = step_world(w, {0.0, steer}, 0.05);
    min_x = std::min(min_x, w.ego.pose.x);
    max_x = std::max(max_x, w.ego.pose.x);
    min_y = std::min(min_y, w.ego.pose.y);
    max_y = std::max(max_y, w.ego.pose.y);
  }
  CHECK((max_x - min_x) / 2.0 == doctest::Approx(10.0).epsilon(0.02));
  CHECK((max_y - min_y) / 2.0 == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("light schedule") {
  LightSpec l;  // green 10, yellow 3, red 10
  CHECK(light_color_at(l, 0.0) == LightColor::Green);
  CHECK(light_color_at(l, 9.99) == LightColor::Green);
  CHECK(light_color_at(l, 11.0) == LightColor::Yellow);
  CHECK(light_color_at(l, 13.0) == LightColor::Red);
  CHECK(light_color_at(l, 23.0) == LightColor::Green);  // wrapped
  l.offset_s = 13.0;
  CHECK(light_color_at(l, 0.0) == LightColor::Red);

  auto sc = straight_scenario();
  LightSpec world_light;
  world_light.position = {50.0, 3.0};
  world_light.stop_line = {Vec2{48.0, -2.0}, Vec2{48.0, 2.0}};
  sc->lights.push_back(world_light);
  SimWorld w = make_world(sc);
  CHECK(w.lights[0] == LightColor::Green);
  while (w.time < 11.0 - 1e-9) w = step_world(w, {}, 0.05);
  CHECK(w.lights[0] == LightColor::Yellow);
}

TEST_CASE("actor scripting") {
  SUBCASE("constant velocity along the initial heading") {
    ActorSpec a = vehicle_at(10.0, 5.0, std::numbers::pi / 2.0);
    a.speed = 2.0;
    Vec2 vel;
    const Pose2D p = actor_pose_at(a, 3.0, &vel);
    CHECK(p.x == doctest::Approx(10.0));
    CHECK(p.y == doctest::Approx(11.0));
    CHECK(vel.y == doctest::Approx(2.0));
  }

  SUBCASE("keyframes interpolate and hold at the ends") {
    ActorSpec a = vehicle_at(0.0, 0.0);
    a.trajectory = {{0.0, {0.0, 0.0, 0.0}},
                    {2.0, {4.0, 0.0, 0.0}},
                    {4.0, {4.0, 6.0, std::numbers::pi / 2.0}}};
    Vec2 vel;
    Pose2D p = actor_pose_at(a, 1.0, &vel);
    CHECK(p.x == doctest::Approx(2.0));
    CHECK(vel.x == doctest::Approx(2.0));
    p = actor_pose_at(a, 3.0, &vel);
    CHECK(p.x == doctest::Approx(4.0));
    CHECK(p.y == doctest::Approx(3.0));
    CHECK(p.theta == doctest::Approx(std::numbers::pi / 4.0));
    CHECK(vel.y == doctest::Approx(3.0));
    p = actor_pose_at(a, 99.0, &vel);
    CHECK(p.y == doctest::Approx(6.0));
    CHECK(vel.norm() == doctest::Approx(0.0));
  }

  SUBCASE("trigger actors activate on ego proximity") {
    auto sc = straight_scenario();
    ActorSpec a = vehicle_at(20.0, 0.0, std::numbers::pi);
    a.speed = 1.5;
    a.trigger_distance = 9.0;
    sc->actors.push_back(a);
    SimWorld w = make_world(sc);
    CHECK_FALSE(w.actors[0].active);
    CHECK(w.actors[0].speed == 0.0);
    w.ego.v = 5.0;
    while (w.time < 4.0 - 1e-9) {
      w = step_world(w, {}, 0.05);
      if (distance(w.ego.pose.position(), Vec2{20.0, 0.0}) > 9.0)
        CHECK_FALSE(w.actors[0].active);
    }
    CHECK(w.actors[0].active);
    CHECK(w.actors[0].activated_at == doctest::Approx(2.2));
    // Moves backward along its own heading once live.
    CHECK(w.actors[0].pose.x ==
          doctest::Approx(20.0 - 1.5 * (w.time - 2.2)).epsilon(1e-6));
  }
}

TEST_CASE("scenario parsing") {
  SUBCASE("minimal document fills defaults") {
    const ScenarioConfig sc = parse_scenario(
        R"({"name":"s","ego":{"start":[1,2,0.5]},"route":[[0,0],[50,0]]})");
    CHECK(sc.name == "s");
    CHECK(sc.track_mode == TrackMode::Track4);
    CHECK(sc.sim_dt == doctest::Approx(0.05));
    CHECK(sc.speed_limit_mps == doctest::Approx(8.33));
    CHECK(sc.ego.start.x == doctest::Approx(1.0));
    CHECK(sc.ego.wheelbase == doctest::Approx(2.85));
    CHECK(sc.sensors.gps.rate_hz == doctest::Approx(10.0));
    CHECK(sc.sensors.lidar.channels == 32);
    CHECK(sc.route.waypoints.size() == 2);
  }

  SUBCASE("full document round-trips the values") {
    const ScenarioConfig sc = parse_scenario(R"({
      "name": "full", "seed": 99, "track_mode": 2, "weather": "rain",
      "speed_limit_mps": 5.0, "timeout_s": 30, "sim_dt": 0.1,
      "geo_anchor": {"lat": -22.0, "lon": -47.9},
      "ego": {"start": [0,0,0], "max_steer": 0.4},
      "sensors": {"gps": {"sigma_m": 0.2}, "camera": {"noise_rel": 0.02}},
      "map": {
        "lanes": [{"center": [[0,0],[50,0]], "width": 4.0}],
        "sidewalks": [[[0,3],[50,3],[50,6],[0,6]]],
        "stop_signs": [{"line": [[20,-2],[20,2]]}],
        "speed_signs": [{"position": [30,0], "limit_mps": 5.0}]
      },
      "route": [[0,0],[50,0]],
      "actors": [
        {"type": "pedestrian", "pose": [10,5,0], "trigger_distance": 8},
        {"type": "vehicle", "pose": [20,0,0], "speed": 3,
         "trajectory": [{"t":0,"pose":[20,0,0]},{"t":2,"pose":[26,0,0]}]}
      ],
      "lights": [{"position": [40,3], "stop_line": [[38,-2],[38,2]],
                  "schedule": {"green": 5, "yellow": 2, "red": 7},
                  "offset": 3}]
    })");
    CHECK(sc.seed == 99);
    CHECK(sc.track_mode == TrackMode::Track2);
    CHECK(sc.weather == "rain");
    CHECK(sc.sensors.gps.sigma_m == doctest::Approx(0.2));
    CHECK(sc.sensors.camera.noise_rel == doctest::Approx(0.02));
    CHECK(sc.map.lanes.size() == 1);
    CHECK(sc.map.sidewalks[0].size() == 4);
    CHECK(sc.map.stop_signs.size() == 1);
    CHECK(sc.map.speed_signs[0].limit_mps == doctest::Approx(5.0));
    REQUIRE(sc.actors.size() == 2);
    CHECK(sc.actors[0].type == ActorType::Pedestrian);
    CHECK(sc.actors[0].width == doctest::Approx(0.5));  // pedestrian default
    CHECK(sc.actors[1].trajectory.size() == 2);
    REQUIRE(sc.lights.size() == 1);
    CHECK(sc.lights[0].yellow_s == doctest::Approx(2.0));
    CHECK(sc.lights[0].offset_s == doctest::Approx(3.0));
  }

  SUBCASE("errors name the offending field") {
    CHECK(contains(parse_err(R"({"ego":{"start":[0,0,0]},"route":[[0,0],[1,0]]})"),
                   "scenario: missing required field 'name'"));
    CHECK(contains(parse_err(R"({"name":"s","ego":{},"route":[[0,0],[1,0]]})"),
                   "scenario.ego: missing required field 'start'"));
    CHECK(contains(parse_err(
              R"({"name":"s","ego":{"start":[0,0,0]},"route":[[0,0]]})"),
          "scenario.route: expected at least 2 points"));
    CHECK(contains(parse_err(
              R"({"name":"s","ego":{"start":[0,0,0]},"route":[[0,0],[1,0]],"wheather":"fog"})"),
          "scenario.wheather: unknown field"));
    CHECK(contains(parse_err(
              R"({"name":"s","ego":{"start":[0,0,0]},"route":[[0,0],[1,0]],"weather":"storm"})"),
          "scenario.weather"));
    CHECK(contains(parse_err(
              R"({"name":"s","ego":{"start":[0,0,0]},"route":[[0,0],[1,0]],
                  "lights":[{"position":[1,1],"stop_line":[[0,0],[1,0]],
                             "schedule":{"green":0,"yellow":1,"red":1}}]})"),
          "scenario.lights[0].schedule.green: expected a positive number"));
    CHECK(contains(parse_err(
              R"({"name":"s","ego":{"start":[0,0,0]},"route":[[0,0],[1,0]],
                  "actors":[{"type":"vehicle","pose":[0,0,0],
                             "trajectory":[{"t":1,"pose":[0,0,0]},{"t":1,"pose":[1,0,0]}]}]})"),
          "scenario.actors[0].trajectory[1].t: keyframe times must increase"));
    CHECK(contains(parse_err(
              R"({"name":"s","ego":{"start":[0,0,0]},"route":[[0,0],[1,0]],
                  "actors":[{"type":"bicycle","pose":[0,0,0]}]})"),
          "scenario.actors[0].type"));
  }

  SUBCASE("syntax errors carry the source line") {
    const std::string msg = parse_err("{\n  \"name\": \"s\",\n  oops\n}");
    CHECK(contains(msg, "test.json:3"));
  }

  SUBCASE("weather scale table") {
    CHECK(weather_noise_scale("clear") == doctest::Approx(1.0));
    CHECK(weather_noise_scale("cloudy") == doctest::Approx(1.0));
    CHECK(weather_noise_scale("rain") == doctest::Approx(1.5));
    CHECK(weather_noise_scale("fog") == doctest::Approx(2.0));
    CHECK_THROWS(weather_noise_scale("storm"));
  }
}

TEST_CASE("gps sensing") {
  auto sc = straight_scenario();

  SUBCASE("zero sigma round-trips both receiver positions") {
    sc->sensors.gps.sigma_m = 0.0;
    const SensorRig rig(sc);
    SimWorld w = make_world(sc);
    w.ego.pose = {12.3, -4.5, 0.7};
    const GpsFix fix = rig.sense_gps(w, 1);
    const auto check_receiver = [&](const GeoPoint& g, const Vec2& offset) {
      const UtmCoord c = geo_to_utm(g, rig.anchor().zone, rig.anchor().south);
      const Vec2 truth = w.ego.pose.transform(offset);
      CHECK(c.easting - rig.anchor().easting0 == doctest::Approx(truth.x).epsilon(1e-9));
      CHECK(c.northing - rig.anchor().northing0 == doctest::Approx(truth.y).epsilon(1e-9));
    };
    check_receiver(fix.back, sc->sensors.gps.back_offset);
    check_receiver(fix.front, sc->sensors.gps.front_offset);
  }

  SUBCASE("sigma 0.5 yields an empirical std near 0.5 m") {
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    double sum = 0.0, sum2 = 0.0;
    const int n = 10000;
    for (int k = 1; k <= n; ++k) {
      const GpsFix fix = rig.sense_gps(w, static_cast<std::uint64_t>(k));
      const UtmCoord c = geo_to_utm(fix.back, rig.anchor().zone, rig.anchor().south);
      const Vec2 truth = w.ego.pose.transform(sc->sensors.gps.back_offset);
      const double err = c.easting - rig.anchor().easting0 - truth.x;
      sum += err;
      sum2 += err * err;
    }
    const double mean = sum / n;
    const double std_dev = std::sqrt(sum2 / n - mean * mean);
    CHECK(std_dev > 0.45);
    CHECK(std_dev < 0.55);
    CHECK(std::abs(mean) < 0.02);
  }

  SUBCASE("fog doubles the noise scale") {
    sc->weather = "fog";
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    double sum2 = 0.0;
    const int n = 10000;
    for (int k = 1; k <= n; ++k) {
      const GpsFix fix = rig.sense_gps(w, static_cast<std::uint64_t>(k));
      const UtmCoord c = geo_to_utm(fix.back, rig.anchor().zone, rig.anchor().south);
      const Vec2 truth = w.ego.pose.transform(sc->sensors.gps.back_offset);
      const double err = c.easting - rig.anchor().easting0 - truth.x;
      sum2 += err * err;
    }
    const double rms = std::sqrt(sum2 / n);
    CHECK(rms > 0.9);
    CHECK(rms < 1.1);
  }

  SUBCASE("frames are reproducible and distinct") {
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    const GpsFix a = rig.sense_gps(w, 5);
    const GpsFix b = rig.sense_gps(w, 5);
    const GpsFix c = rig.sense_gps(w, 6);
    CHECK(a.back.lat == b.back.lat);
    CHECK(a.front.lon == b.front.lon);
    CHECK(a.back.lat != c.back.lat);
  }
}

TEST_CASE("lidar sensing") {
  auto sc = straight_scenario();

  SUBCASE("empty world returns only ground hits inside max range") {
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    const PointCloud cloud = rig.sense_lidar(w);
    REQUIRE(cloud.size() > 100);
    for (const Point3& p : cloud.points) {
      CHECK(std::abs(p.z) < 1e-4);
      CHECK(std::hypot(p.x, p.y) < sc->sensors.lidar.max_range_m + 1e-6);
    }
  }

  SUBCASE("box ten meters ahead returns its facing surface") {
    ActorSpec box = vehicle_at(12.25, 0.0);  // front face at x = 10
    sc->actors.push_back(box);
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    const PointCloud cloud = rig.sense_lidar(w);
    int box_hits = 0;
    double nearest = 1e300;
    for (const Point3& p : cloud.points) {
      if (p.z < 0.05) continue;  // ground
      ++box_hits;
      // Face or top surface, never inside or beyond the footprint.
      CHECK(p.x > 10.0 - 1e-3);
      CHECK(p.x < 14.5 + 1e-3);
      CHECK(std::abs(p.y) < 1e-4);
      CHECK(p.z < 1.6 + 1e-4);
      nearest = std::min(nearest, static_cast<double>(p.x));
    }
    CHECK(box_hits >= 3);
    CHECK(nearest == doctest::Approx(10.0).epsilon(1e-3));
  }

  SUBCASE("nothing beyond the range cap") {
    sc->actors.push_back(vehicle_at(60.0, 0.0));
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    for (const Point3& p : rig.sense_lidar(w).points) {
      CHECK(std::hypot(p.x, p.y) < 50.0 + 1e-6);
      CHECK(p.z < 0.05);  // the far box contributes nothing
    }
  }

  SUBCASE("inactive trigger actors are invisible") {
    ActorSpec box = vehicle_at(12.25, 0.0);
    box.trigger_distance = 1.0;  // never tripped here
    sc->actors.push_back(box);
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    for (const Point3& p : rig.sense_lidar(w).points) CHECK(p.z < 0.05);
  }
}

TEST_CASE("depth sensing") {
  auto sc = straight_scenario();

  SUBCASE("empty world matches the analytic ground profile") {
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    const perception::DepthImage img = rig.sense_depth(w, 1);
    const double fy = img.intr.fy();
    const int rows = img.intr.rows;
    for (int r = 0; r < rows; ++r) {
      const double down = (r + 0.5) - rows / 2.0;  // pixels below the horizon
      for (int c = 0; c < img.intr.cols; c += 53) {
        if (down <= 0.0) {
          CHECK(img.at(r, c) == 0.0f);  // sky
        } else {
          const double expected = img.camera_height * fy / down;
          CHECK(img.at(r, c) ==
                doctest::Approx(expected).epsilon(1e-4));
        }
      }
    }
  }

  SUBCASE("wall at ten meters reads exactly ten") {
    ActorSpec wall = vehicle_at(12.25, 0.0);  // face at x = 10
    wall.width = 30.0;
    wall.height = 3.0;
    sc->actors.push_back(wall);
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    const perception::DepthImage img = rig.sense_depth(w, 1);
    const double fy = img.intr.fy();
    int wall_px = 0;
    for (int r = 0; r < img.intr.rows; ++r) {
      const double up = (img.intr.rows / 2.0 - (r + 0.5)) / fy;
      const double z_at_wall = img.camera_height + up * 10.0;
      if (z_at_wall > 3.0 + 1e-9) continue;            // over the top
      if (img.camera_height / std::max(-up, 1e-12) < 10.0) continue;  // ground first
      for (int c = 0; c < img.intr.cols; ++c) {
        CHECK(img.at(r, c) == doctest::Approx(10.0).epsilon(1e-6));
        ++wall_px;
      }
    }
    CHECK(wall_px > 10000);
  }

  SUBCASE("two percent noise has two percent relative std") {
    ActorSpec wall = vehicle_at(12.25, 0.0);
    wall.width = 30.0;
    wall.height = 3.0;
    sc->actors.push_back(wall);
    sc->sensors.camera.noise_rel = 0.02;
    const SensorRig rig(sc);
    const SimWorld w = make_world(sc);
    const perception::DepthImage img = rig.sense_depth(w, 1);
    const perception::DepthImage clean = [&] {
      auto copy = *sc;
      copy.sensors.camera.noise_rel = 0.0;
      const SensorRig r2(std::make_shared<ScenarioConfig>(copy));
      return r2.sense_depth(w, 1);
    }();
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    for (size_t i = 0; i < img.depth.size(); ++i) {
      if (clean.depth[i] != 10.0f) continue;  // wall pixels only
      const double rel = img.depth[i] / 10.0 - 1.0;
      sum += rel;
      sum2 += rel * rel;
      ++n;
    }
    REQUIRE(n > 10000);
    const double mean = sum / n;
    const double std_dev = std::sqrt(sum2 / n - mean * mean);
    CHECK(std_dev > 0.018);
    CHECK(std_dev < 0.022);
  }
}

TEST_CASE("ground-truth object sensing") {
  auto sc = straight_scenario();
  sc->actors.push_back(vehicle_at(20.0, 0.0));
  sc->actors.push_back(vehicle_at(-20.0, 0.0));
  LightSpec light;
  light.position = {40.0, 5.0};
  light.stop_line = {Vec2{38.0, -2.0}, Vec2{38.0, 2.0}};
  sc->lights.push_back(light);
  const SensorRig rig(sc);
  const SimWorld w = make_world(sc);

  SUBCASE("forward half-plane fov hides the actor behind") {
    const GroundTruthObjects out =
        rig.sense_objects(w, 100.0, std::numbers::pi);
    REQUIRE(out.objects.size() == 1);
    CHECK(out.objects[0].actor == 0);
    CHECK(out.objects[0].pose.x == doctest::Approx(20.0));
  }

  SUBCASE("full disclosure sees everything in range") {
    const GroundTruthObjects out =
        rig.sense_objects(w, 100.0, 2.0 * std::numbers::pi);
    CHECK(out.objects.size() == 2);
    REQUIRE(out.lights.size() == 1);
    CHECK(out.lights[0].color == LightColor::Green);
    CHECK(out.lights[0].stop_line[0].x == doctest::Approx(38.0));
  }

  SUBCASE("range gate drops a light past the detector range") {
    const GroundTruthObjects near =
        rig.sense_objects(w, 30.0, 2.0 * std::numbers::pi);
    CHECK(near.lights.empty());
    const GroundTruthObjects far =
        rig.sense_objects(w, 60.0, 2.0 * std::numbers::pi);
    CHECK(far.lights.size() == 1);
  }

  SUBCASE("inactive trigger actors stay hidden") {
    auto sc2 = straight_scenario();
    ActorSpec a = vehicle_at(20.0, 0.0);
    a.trigger_distance = 2.0;
    sc2->actors.push_back(a);
    const SensorRig rig2(sc2);
    const GroundTruthObjects out =
        rig2.sense_objects(make_world(sc2), 100.0, 2.0 * std::numbers::pi);
    CHECK(out.objects.empty());
  }
}

TEST_CASE("collision infractions") {
  SUBCASE("driving through a pedestrian yields one nine-point event") {
    auto sc = straight_scenario();
    ActorSpec ped;
    ped.type = ActorType::Pedestrian;
    ped.length = 0.5;
    ped.width = 0.5;
    ped.height = 1.8;
    ped.pose = {3.0, 0.0, 0.0};
    sc->actors.push_back(ped);
    SimWorld w = make_world(sc);
    while (w.time < 2.0 - 1e-9) w = step_world(w, {1.0, 0.0}, 0.05);
    REQUIRE(w.events.size() == 1);
    CHECK(w.events[0].kind == InfractionKind::HitPedestrian);
    CHECK(w.events[0].points == 9);
    CHECK(w.events[0].actor == 0);
    CHECK(w.ego.pose.x > 5.0);  // passed through: still one event
  }

  SUBCASE("separate contact episodes count separately") {
    auto sc = straight_scenario();
    sc->actors.push_back(vehicle_at(6.0, 0.0));
    SimWorld w = make_world(sc);
    // Drive in, back out, drive in again.
    w.ego.v = 2.0;
    while (w.time < 1.0 - 1e-9) w = step_world(w, {}, 0.05);
    CHECK(count_kind(w.events, InfractionKind::HitVehicle) == 1);
    w.ego.v = 0.0;
    w.ego.pose = {0.0, 0.0, 0.0};  // teleport clear of the contact
    w = step_world(w, {}, 0.05);
    CHECK(count_kind(w.events, InfractionKind::HitVehicle) == 1);
    w.ego.v = 2.0;
    while (w.time < 3.0 - 1e-9) w = step_world(w, {}, 0.05);
    CHECK(count_kind(w.events, InfractionKind::HitVehicle) == 2);
  }

  SUBCASE("clean pass produces no events") {
    auto sc = straight_scenario();
    sc->actors.push_back(vehicle_at(10.0, 5.0));  // off to the side
    SimWorld w = make_world(sc);
    w.ego.v = 5.0;
    while (w.time < 4.0 - 1e-9) w = step_world(w, {}, 0.05);
    CHECK(w.events.empty());
  }
}

TEST_CASE("stop line infractions") {
  SUBCASE("crossing on red costs three points, once") {
    auto sc = straight_scenario();
    LightSpec l;
    l.position = {5.0, 3.0};
    l.stop_line = {Vec2{5.0, -3.0}, Vec2{5.0, 3.0}};
    l.green_s = 2.0;
    l.yellow_s = 1.0;
    l.red_s = 10.0;
    l.offset_s = 3.0;  // red from t = 0 until t = 10
    sc->lights.push_back(l);
    SimWorld w = make_world(sc);
    while (w.time < 4.0 - 1e-9) w = step_world(w, {1.0, 0.0}, 0.05);
    REQUIRE(count_kind(w.events, InfractionKind::RedLight) == 1);
    CHECK(w.events[0].points == 3);
  }

  SUBCASE("crossing on green is free") {
    auto sc = straight_scenario();
    LightSpec l;
    l.position = {5.0, 3.0};
    l.stop_line = {Vec2{5.0, -3.0}, Vec2{5.0, 3.0}};
    l.green_s = 100.0;
    sc->lights.push_back(l);
    SimWorld w = make_world(sc);
    while (w.time < 4.0 - 1e-9) w = step_world(w, {1.0, 0.0}, 0.05);
    CHECK(w.events.empty());
  }

  SUBCASE("rolling a stop sign costs two points") {
    auto sc = straight_scenario();
    sc->map.stop_signs.push_back({{Vec2{5.0, -3.0}, Vec2{5.0, 3.0}}});
    SimWorld w = make_world(sc);
    w.ego.v = 2.0;
    // Steps land exactly on the line at x = 5; still a single event.
    while (w.time < 4.0 - 1e-9) w = step_world(w, {}, 0.05);
    CHECK(count_kind(w.events, InfractionKind::StopSign) == 1);
  }

  SUBCASE("a stop within five meters clears the sign") {
    auto sc = straight_scenario();
    sc->ego.start = {1.5, 0.0, 0.0};
    sc->map.stop_signs.push_back({{Vec2{5.0, -3.0}, Vec2{5.0, 3.0}}});
    SimWorld w = make_world(sc);  // starts at rest: standstill recorded
    while (w.time < 4.0 - 1e-9) w = step_world(w, {0.3, 0.0}, 0.05);
    CHECK(w.ego.pose.x > 5.5);  // crossed
    CHECK(w.events.empty());
  }
}

TEST_CASE("lane and sidewalk infractions") {
  SUBCASE("driving against a lane direction fires once per episode") {
    auto sc = straight_scenario();
    LaneSpec fwd;
    fwd.center = {{0.0, -1.75}, {100.0, -1.75}};
    LaneSpec rev;
    rev.center = {{100.0, 1.75}, {0.0, 1.75}};
    sc->map.lanes = {fwd, rev};
    sc->ego.start = {10.0, 1.75, 0.0};  // in the oncoming lane, heading +x
    SimWorld w = make_world(sc);
    w.ego.v = 3.0;
    while (w.time < 2.0 - 1e-9) w = step_world(w, {}, 0.05);
    CHECK(count_kind(w.events, InfractionKind::OppositeLane) == 1);
  }

  SUBCASE("the correct lane is quiet") {
    auto sc = straight_scenario();
    LaneSpec fwd;
    fwd.center = {{0.0, -1.75}, {100.0, -1.75}};
    LaneSpec rev;
    rev.center = {{100.0, 1.75}, {0.0, 1.75}};
    sc->map.lanes = {fwd, rev};
    sc->ego.start = {10.0, -1.75, 0.0};
    SimWorld w = make_world(sc);
    w.ego.v = 3.0;
    while (w.time < 2.0 - 1e-9) w = step_world(w, {}, 0.05);
    CHECK(w.events.empty());
  }

  SUBCASE("clipping a sidewalk polygon fires once") {
    auto sc = straight_scenario();
    sc->map.sidewalks.push_back(
        {{10.0, 2.0}, {20.0, 2.0}, {20.0, 8.0}, {10.0, 8.0}});
    sc->ego.start = {15.0, 1.5, 0.0};  // half a meter from the edge
    SimWorld w = make_world(sc);       // footprint reaches y = 2.5
    for (int k = 0; k < 10; ++k) w = step_world(w, {}, 0.05);
    CHECK(count_kind(w.events, InfractionKind::Sidewalk) == 1);
  }
}

TEST_CASE("world and sensors are deterministic") {
  const auto build = [] {
    auto sc = straight_scenario();
    sc->weather = "rain";
    ActorSpec lead = vehicle_at(30.0, 1.0, std::numbers::pi);
    lead.speed = 2.0;
    sc->actors.push_back(lead);
    ActorSpec ped;
    ped.type = ActorType::Pedestrian;
    ped.length = 0.5;
    ped.width = 0.5;
    ped.height = 1.8;
    ped.pose = {25.0, 4.0, -std::numbers::pi / 2.0};
    ped.trigger_distance = 12.0;
    ped.speed = 1.0;
    sc->actors.push_back(ped);
    LightSpec l;
    l.position = {40.0, 3.0};
    l.stop_line = {Vec2{38.0, -3.0}, Vec2{38.0, 3.0}};
    sc->lights.push_back(l);
    return sc;
  };

  struct Run {
    std::vector<double> nums;
    std::vector<float> cloud;
    void add(double v) { nums.push_back(v); }
  };

  const auto roll = [&](Run& out) {
    auto sc = build();
    const SensorRig rig(sc);
    SimWorld w = make_world(sc);
    for (int k = 1; k <= 100; ++k) {
      w = step_world(w, {0.6, 0.1 * std::sin(0.1 * k)}, 0.05);
      out.add(w.ego.pose.x);
      out.add(w.ego.pose.y);
      out.add(w.ego.pose.theta);
      out.add(w.ego.v);
      for (const ActorState& a : w.actors) {
        out.add(a.pose.x);
        out.add(a.pose.y);
        out.add(a.active ? 1.0 : 0.0);
      }
      if (k % 2 == 0) {
        const GpsFix fix = rig.sense_gps(w, static_cast<std::uint64_t>(k / 2));
        out.add(fix.back.lat);
        out.add(fix.back.lon);
        out.add(fix.front.lat);
        out.add(fix.front.lon);
      }
      if (k % 10 == 0) {
        for (const Point3& p : rig.sense_lidar(w).points) {
          out.cloud.push_back(p.x);
          out.cloud.push_back(p.y);
          out.cloud.push_back(p.z);
        }
        const auto img = rig.sense_depth(w, static_cast<std::uint64_t>(k / 10));
        out.cloud.insert(out.cloud.end(), img.depth.begin(), img.depth.end());
      }
    }
    for (const InfractionEvent& e : w.events) {
      out.add(static_cast<double>(e.kind));
      out.add(e.time);
      out.add(e.points);
      out.add(e.actor);
    }
  };

  Run a, b;
  roll(a);
  roll(b);
  CHECK(a.nums == b.nums);
  CHECK(a.cloud == b.cloud);
  CHECK_FALSE(a.nums.empty());
  CHECK_FALSE(a.cloud.empty());
}
