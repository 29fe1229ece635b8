#include "navsim/agent/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "internal/json_node.hpp"

namespace navsim::agent {
namespace {

using detail::Node;
using detail::fail_at;
using detail::num_or;
using detail::positive_or;

void parse_ekf(const Node& n, localization::EkfConfig& ekf) {
  n.check_keys({"gps_sigma_m", "heading_sigma_rad", "process_pos_rate",
                "process_heading_rate", "gate"});
  double gps_sigma = std::sqrt(ekf.measurement_noise(0, 0));
  double heading_sigma = std::sqrt(ekf.measurement_noise(2, 2));
  double q_pos = ekf.process_noise_rate(0, 0);
  double q_heading = ekf.process_noise_rate(2, 2);
  gps_sigma = positive_or(n, "gps_sigma_m", gps_sigma);
  heading_sigma = positive_or(n, "heading_sigma_rad", heading_sigma);
  q_pos = positive_or(n, "process_pos_rate", q_pos);
  q_heading = positive_or(n, "process_heading_rate", q_heading);
  ekf.gate = positive_or(n, "gate", ekf.gate);
  ekf.measurement_noise = Eigen::Vector3d(gps_sigma * gps_sigma,
                                          gps_sigma * gps_sigma,
                                          heading_sigma * heading_sigma)
                              .asDiagonal();
  ekf.process_noise_rate =
      Eigen::Vector3d(q_pos, q_pos, q_heading).asDiagonal();
}

void parse_detector(const Node& n, perception::DetectorConfig& det) {
  n.check_keys({"cluster_eps", "cluster_min_pts", "grid"});
  det.cluster_eps = positive_or(n, "cluster_eps", det.cluster_eps);
  if (auto m = n.opt("cluster_min_pts")) {
    det.cluster_min_pts = m->integer();
    if (det.cluster_min_pts < 1) fail_at(m->path(), "expected >= 1");
  }
  if (auto g = n.opt("grid")) {
    g->check_keys({"cells_x", "cells_y", "resolution", "origin_x", "origin_y",
                   "height_threshold"});
    if (auto c = g->opt("cells_x")) {
      det.grid.cells_x = c->integer();
      if (det.grid.cells_x < 1) fail_at(c->path(), "expected >= 1");
    }
    if (auto c = g->opt("cells_y")) {
      det.grid.cells_y = c->integer();
      if (det.grid.cells_y < 1) fail_at(c->path(), "expected >= 1");
    }
    det.grid.resolution = positive_or(*g, "resolution", det.grid.resolution);
    det.grid.origin_x = num_or(*g, "origin_x", det.grid.origin_x);
    det.grid.origin_y = num_or(*g, "origin_y", det.grid.origin_y);
    det.grid.height_threshold =
        positive_or(*g, "height_threshold", det.grid.height_threshold);
  }
}

double probability_or(const Node& parent, const char* key, double def) {
  const auto n = parent.opt(key);
  if (!n) return def;
  const double v = n->num();
  if (v < 0.0 || v > 1.0) fail_at(n->path(), "expected a probability in [0, 1]");
  return v;
}

}  // namespace

void validate(const AgentConfig& cfg) {
  if (!(cfg.control_rate_hz > 0.0))
    throw std::invalid_argument("control_rate_hz must be positive");
  if (!(cfg.decision_rate_hz > 0.0))
    throw std::invalid_argument("decision_rate_hz must be positive");
  if (cfg.decision_rate_hz > cfg.control_rate_hz + 1e-12)
    throw std::invalid_argument(
        "decision_rate_hz must not exceed control_rate_hz");
  if (cfg.uct_budget < 1)
    throw std::invalid_argument("uct_budget must be positive");
  if (!(cfg.vscan_dot_threshold > 0.0 && cfg.vscan_dot_threshold < 1.0))
    throw std::invalid_argument("vscan_dot_threshold must be in (0, 1)");
  if (!(cfg.zones.danger_end > 0.0 &&
        cfg.zones.warning_end > cfg.zones.danger_end))
    throw std::invalid_argument("zone ends must satisfy 0 < danger < warning");
  if (!(cfg.forecast.horizon_s > 0.0 && cfg.forecast.dt_s > 0.0))
    throw std::invalid_argument("forecast horizon and dt must be positive");
  if (!(cfg.lights.range_m > 0.0 && cfg.lights.fov_deg > 0.0))
    throw std::invalid_argument("light detector gates must be positive");
}

AgentConfig parse_agent_config(const std::string& text,
                               const std::string& origin) {
  const nlohmann::json doc = detail::parse_json_text(text, origin);
  AgentConfig cfg;
  Node root(doc, "agent");
  root.check_keys({"track", "control_rate_hz", "decision_rate_hz", "ekf",
                   "detector", "vscan_dot_threshold", "zones", "forecast",
                   "mdp", "uct", "mpc", "pi", "lights"});
  if (auto t = root.opt("track")) {
    const int mode = t->integer();
    if (mode < 1 || mode > 4) fail_at(t->path(), "expected 1..4");
    cfg.track = static_cast<TrackMode>(mode);
  }
  cfg.control_rate_hz = positive_or(root, "control_rate_hz", cfg.control_rate_hz);
  cfg.decision_rate_hz =
      positive_or(root, "decision_rate_hz", cfg.decision_rate_hz);
  if (auto e = root.opt("ekf")) parse_ekf(*e, cfg.ekf);
  if (auto d = root.opt("detector")) parse_detector(*d, cfg.detector);
  cfg.vscan_dot_threshold =
      positive_or(root, "vscan_dot_threshold", cfg.vscan_dot_threshold);
  if (auto z = root.opt("zones")) {
    z->check_keys({"danger_end", "warning_end", "corridor_halfwidth",
                   "proximity_threshold"});
    cfg.zones.danger_end = positive_or(*z, "danger_end", cfg.zones.danger_end);
    cfg.zones.warning_end =
        positive_or(*z, "warning_end", cfg.zones.warning_end);
    cfg.zones.corridor_halfwidth =
        positive_or(*z, "corridor_halfwidth", cfg.zones.corridor_halfwidth);
    cfg.zones.proximity_threshold = positive_or(*z, "proximity_threshold",
                                                cfg.zones.proximity_threshold);
  }
  if (auto f = root.opt("forecast")) {
    f->check_keys({"horizon_s", "dt_s"});
    cfg.forecast.horizon_s = positive_or(*f, "horizon_s", cfg.forecast.horizon_s);
    cfg.forecast.dt_s = positive_or(*f, "dt_s", cfg.forecast.dt_s);
  }
  if (auto m = root.opt("mdp")) {
    m->check_keys({"gamma", "p1", "p2", "p3", "stop_dist_tl", "stop_dist_veh",
                   "v_ref_margin"});
    cfg.mdp.gamma = positive_or(*m, "gamma", cfg.mdp.gamma);
    if (cfg.mdp.gamma >= 1.0)
      fail_at(m->path() + ".gamma", "expected a discount below 1");
    cfg.mdp.p1 = probability_or(*m, "p1", cfg.mdp.p1);
    cfg.mdp.p2 = probability_or(*m, "p2", cfg.mdp.p2);
    cfg.mdp.p3 = probability_or(*m, "p3", cfg.mdp.p3);
    cfg.mdp.stop_dist_tl = positive_or(*m, "stop_dist_tl", cfg.mdp.stop_dist_tl);
    cfg.mdp.stop_dist_veh =
        positive_or(*m, "stop_dist_veh", cfg.mdp.stop_dist_veh);
    cfg.mdp.v_ref_margin =
        positive_or(*m, "v_ref_margin", cfg.mdp.v_ref_margin);
  }
  if (auto u = root.opt("uct")) {
    u->check_keys({"budget", "max_depth", "exploration"});
    if (auto b = u->opt("budget")) {
      cfg.uct_budget = b->integer();
      if (cfg.uct_budget < 1) fail_at(b->path(), "expected >= 1");
    }
    if (auto d = u->opt("max_depth")) {
      cfg.uct.max_depth = d->integer();
      if (cfg.uct.max_depth < 1) fail_at(d->path(), "expected >= 1");
    }
    cfg.uct.exploration =
        positive_or(*u, "exploration", cfg.uct.exploration);
  }
  if (auto m = root.opt("mpc")) {
    m->check_keys({"dt", "horizon", "cx", "cy", "ctheta", "ckappa", "ctau",
                   "kappa_max", "tau_max", "integration_dt"});
    cfg.mpc.dt = positive_or(*m, "dt", cfg.mpc.dt);
    cfg.mpc.horizon = positive_or(*m, "horizon", cfg.mpc.horizon);
    cfg.mpc.cx = num_or(*m, "cx", cfg.mpc.cx);
    cfg.mpc.cy = num_or(*m, "cy", cfg.mpc.cy);
    cfg.mpc.ctheta = num_or(*m, "ctheta", cfg.mpc.ctheta);
    cfg.mpc.ckappa = num_or(*m, "ckappa", cfg.mpc.ckappa);
    cfg.mpc.ctau = num_or(*m, "ctau", cfg.mpc.ctau);
    for (const char* key : {"cx", "cy", "ctheta", "ckappa", "ctau"}) {
      if (auto w = m->opt(key); w && w->num() < 0.0)
        fail_at(w->path(), "expected a non-negative weight");
    }
    cfg.mpc.kappa_max = positive_or(*m, "kappa_max", cfg.mpc.kappa_max);
    cfg.mpc.tau_max = positive_or(*m, "tau_max", cfg.mpc.tau_max);
    cfg.mpc.integration_dt =
        positive_or(*m, "integration_dt", cfg.mpc.integration_dt);
  }
  if (auto p = root.opt("pi")) {
    p->check_keys({"kp", "ki", "integral_limit"});
    cfg.pi.kp = num_or(*p, "kp", cfg.pi.kp);
    cfg.pi.ki = num_or(*p, "ki", cfg.pi.ki);
    if (cfg.pi.kp < 0.0 || cfg.pi.ki < 0.0)
      fail_at(p->path(), "gains must be non-negative");
    cfg.pi.integral_limit =
        positive_or(*p, "integral_limit", cfg.pi.integral_limit);
  }
  if (auto l = root.opt("lights")) {
    l->check_keys({"range_m", "fov_deg"});
    cfg.lights.range_m = positive_or(*l, "range_m", cfg.lights.range_m);
    cfg.lights.fov_deg = positive_or(*l, "fov_deg", cfg.lights.fov_deg);
  }
  validate(cfg);
  return cfg;
}

AgentConfig load_agent_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open agent config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_agent_config(buf.str(), path);
}

}  // namespace navsim::agent
