#include "navsim/sim/infractions.hpp"

#include <cmath>

#include "navsim/sim/geometry.hpp"

namespace navsim::sim {
namespace {

InfractionEvent make_event(InfractionKind kind, double time, int actor = -1) {
  return {kind, time, infraction_points(kind), actor};
}

InfractionKind collision_kind(ActorType type) {
  switch (type) {
    case ActorType::Vehicle: return InfractionKind::HitVehicle;
    case ActorType::Pedestrian: return InfractionKind::HitPedestrian;
    case ActorType::Static: return InfractionKind::HitStatic;
  }
  return InfractionKind::HitStatic;
}

/// Lane membership of a point: inside the corridor of the centerline,
/// split by travel direction relative to the given heading.
struct LaneMembership {
  bool aligned = false;
  bool opposite = false;
};

LaneMembership lane_membership(const MapSpec& map, const Vec2& p,
                               const Vec2& heading) {
  LaneMembership m;
  for (const LaneSpec& lane : map.lanes) {
    if (lane.center.size() < 2) continue;
    const PolylineHit hit = polyline_distance(lane.center, p);
    if (hit.distance > lane.width / 2.0) continue;
    if (hit.tangent.dot(heading) >= 0.0)
      m.aligned = true;
    else
      m.opposite = true;
  }
  return m;
}

}  // namespace

std::vector<InfractionEvent> detect_infractions(const SimWorld& before,
                                                SimWorld& after) {
  std::vector<InfractionEvent> out;
  const ScenarioConfig& sc = *after.scenario;
  const OrientedRect ego = ego_rect(after);
  const Vec2 center_before = before.ego.pose.position();
  const Vec2 center_after = after.ego.pose.position();

  // Collisions, one event per contact episode per actor.
  for (size_t i = 0; i < after.actors.size(); ++i) {
    const ActorState& st = after.actors[i];
    const bool hit =
        st.active && rects_overlap(ego, actor_rect(st, sc.actors[i]));
    if (hit && !after.colliding[i])
      out.push_back(make_event(collision_kind(sc.actors[i].type), after.time,
                               static_cast<int>(i)));
    after.colliding[i] = hit ? 1 : 0;
  }

  // Sidewalk occupation by any part of the footprint.
  bool on_walk = false;
  for (const auto& poly : sc.map.sidewalks)
    if (rect_polygon_overlap(ego, poly)) {
      on_walk = true;
      break;
    }
  if (on_walk && !after.on_sidewalk)
    out.push_back(make_event(InfractionKind::Sidewalk, after.time));
  after.on_sidewalk = on_walk ? 1 : 0;

  // Opposite-direction lane: the ego center sits in a counter-directed
  // corridor and in no co-directed one (keeps intersection overlaps and
  // lane changes across the centerline out of the rule).
  const LaneMembership mem =
      lane_membership(sc.map, center_after, after.ego.pose.heading());
  const bool opposite = mem.opposite && !mem.aligned;
  if (opposite && !after.in_opposite)
    out.push_back(make_event(InfractionKind::OppositeLane, after.time));
  after.in_opposite = opposite ? 1 : 0;

  // Stop lines; crossing is the ego center path cutting the line segment.
  for (size_t i = 0; i < sc.lights.size(); ++i) {
    const LightSpec& l = sc.lights[i];
    if (after.lights[i] == LightColor::Red &&
        segment_crosses_line(center_before, center_after, l.stop_line[0],
                             l.stop_line[1]))
      out.push_back(make_event(InfractionKind::RedLight, after.time));
  }
  for (const StopSignSpec& sign : sc.map.stop_signs) {
    if (!segment_crosses_line(center_before, center_after, sign.line[0],
                              sign.line[1]))
      continue;
    if (after.ego.v <= 0.1) continue;  // crawling over the line is a stop
    const bool stopped_nearby =
        after.last_standstill &&
        distance(*after.last_standstill, center_after) <= 5.0;
    if (!stopped_nearby)
      out.push_back(make_event(InfractionKind::StopSign, after.time));
  }

  if (after.ego.v <= 0.1) after.last_standstill = center_after;
  return out;
}

}  // namespace navsim::sim
