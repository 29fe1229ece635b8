#include "navsim/planner/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "navsim/common/angles.hpp"

namespace navsim::planner {
namespace {

// Natural cubic spline over one coordinate, knots at arbitrary increasing t.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, std::vector<double> y)
      : t_(std::move(t)), y_(std::move(y)), m_(t_.size(), 0.0) {
    const size_t n = t_.size();
    if (n < 2) throw std::invalid_argument("spline needs two knots");
    if (n == 2) return;  // second derivatives stay zero: straight segment

    // Tridiagonal system for the interior second derivatives, natural
    // boundary (m front/back = 0). Thomas algorithm.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t_[i] - t_[i - 1];
      const double h1 = t_[i + 1] - t_[i];
      diag[i] = 2.0 * (h0 + h1);
      upper[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (size_t i = 2; i + 1 < n; ++i) {
      const double w = (t_[i] - t_[i - 1]) / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double value(size_t seg, double u) const {
    const double h = t_[seg + 1] - t_[seg];
    const double c1 = (y_[seg + 1] - y_[seg]) / h -
                      h * (2.0 * m_[seg] + m_[seg + 1]) / 6.0;
    return y_[seg] + u * (c1 + u * (m_[seg] / 2.0 +
                                    u * (m_[seg + 1] - m_[seg]) / (6.0 * h)));
  }

  double deriv(size_t seg, double u) const {
    const double h = t_[seg + 1] - t_[seg];
    const double c1 = (y_[seg + 1] - y_[seg]) / h -
                      h * (2.0 * m_[seg] + m_[seg + 1]) / 6.0;
    return c1 + u * (m_[seg] + u * (m_[seg + 1] - m_[seg]) / (2.0 * h));
  }

  double deriv2(size_t seg, double u) const {
    const double h = t_[seg + 1] - t_[seg];
    return m_[seg] + u * (m_[seg + 1] - m_[seg]) / h;
  }

  const std::vector<double>& knots() const { return t_; }

 private:
  std::vector<double> t_, y_, m_;
};

struct SplinePoint {
  double x, y, dx, dy, ddx, ddy;
};

SplinePoint eval(const CubicSpline& sx, const CubicSpline& sy, size_t seg,
                 double u) {
  return {sx.value(seg, u),  sy.value(seg, u), sx.deriv(seg, u),
          sy.deriv(seg, u),  sx.deriv2(seg, u), sy.deriv2(seg, u)};
}

PathSample to_sample(const SplinePoint& p, double s) {
  PathSample out;
  out.s = s;
  out.x = p.x;
  out.y = p.y;
  out.theta_ref = std::atan2(p.dy, p.dx);
  const double speed2 = p.dx * p.dx + p.dy * p.dy;
  out.kappa_ref =
      (p.dx * p.ddy - p.dy * p.ddx) / std::pow(std::max(speed2, 1e-12), 1.5);
  return out;
}

}  // namespace

DensePath densify_route(const Route& route, double spacing) {
  if (spacing <= 0.0) throw std::invalid_argument("spacing must be positive");

  // Chord-length parameter; consecutive duplicates would break knot
  // monotonicity, so drop them.
  std::vector<double> t, xs, ys;
  for (const Vec2& w : route.waypoints) {
    if (!t.empty()) {
      const double d = std::hypot(w.x - xs.back(), w.y - ys.back());
      if (d < 1e-9) continue;
      t.push_back(t.back() + d);
    } else {
      t.push_back(0.0);
    }
    xs.push_back(w.x);
    ys.push_back(w.y);
  }
  if (t.size() < 2)
    throw std::invalid_argument("route needs at least two distinct waypoints");

  const CubicSpline sx(t, xs), sy(t, ys);

  // Arc-length table on a fine parameter grid; each entry maps spline
  // parameter to cumulative length.
  const double micro = std::min(spacing / 10.0, 0.05);
  std::vector<double> ts, ss;
  ts.push_back(0.0);
  ss.push_back(0.0);
  Vec2 prev{xs.front(), ys.front()};
  for (size_t seg = 0; seg + 1 < t.size(); ++seg) {
    const double h = t[seg + 1] - t[seg];
    const int steps = std::max(2, static_cast<int>(std::ceil(h / micro)));
    for (int k = 1; k <= steps; ++k) {
      const double u = h * k / steps;
      const SplinePoint p = eval(sx, sy, seg, u);
      ss.push_back(ss.back() + std::hypot(p.x - prev.x, p.y - prev.y));
      ts.push_back(t[seg] + u);
      prev = {p.x, p.y};
    }
  }

  const double total = ss.back();
  const int n_steps = std::max(1, static_cast<int>(std::ceil(total / spacing - 1e-9)));
  const double ds = total / n_steps;

  DensePath path;
  path.samples.reserve(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) {
    const double target = (k == n_steps) ? total : ds * k;
    const auto it = std::lower_bound(ss.begin(), ss.end(), target);
    size_t hi = std::min<size_t>(it - ss.begin(), ss.size() - 1);
    if (hi == 0) hi = 1;
    const size_t lo = hi - 1;
    const double span = ss[hi] - ss[lo];
    const double w = span > 0.0 ? (target - ss[lo]) / span : 0.0;
    const double tp = ts[lo] + w * (ts[hi] - ts[lo]);

    const auto seg_it =
        std::upper_bound(t.begin(), t.end(), std::min(tp, t.back()));
    size_t seg = std::min<size_t>(seg_it - t.begin(), t.size() - 1);
    if (seg == 0) seg = 1;
    --seg;
    path.samples.push_back(to_sample(eval(sx, sy, seg, tp - t[seg]), target));
  }
  return path;
}

PathProjection project_to_path(const Vec2& p, const DensePath& path) {
  if (path.samples.size() < 2)
    throw std::invalid_argument("path needs at least two samples");

  PathProjection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < path.samples.size(); ++i) {
    const Vec2 a{path.samples[i].x, path.samples[i].y};
    const Vec2 b{path.samples[i + 1].x, path.samples[i + 1].y};
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    double u = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const Vec2 q = a + ab * u;
    const double d2 = (p - q).dot(p - q);
    if (d2 < best_d2) {
      best_d2 = d2;
      const double side = ab.cross(p - a) >= 0.0 ? 1.0 : -1.0;
      best.s = path.samples[i].s +
               u * (path.samples[i + 1].s - path.samples[i].s);
      best.lateral = side * std::sqrt(d2);
      best.index = i;
    }
  }
  return best;
}

PathSample sample_at(const DensePath& path, double s) {
  if (path.samples.empty()) throw std::invalid_argument("empty path");
  const double sc = std::clamp(s, 0.0, path.length());
  auto cmp = [](const PathSample& a, double v) { return a.s < v; };
  auto it = std::lower_bound(path.samples.begin(), path.samples.end(), sc, cmp);
  if (it == path.samples.begin()) return path.samples.front();
  if (it == path.samples.end()) return path.samples.back();
  const PathSample& hi = *it;
  const PathSample& lo = *(it - 1);
  const double span = hi.s - lo.s;
  const double w = span > 0.0 ? (sc - lo.s) / span : 0.0;
  PathSample out;
  out.s = sc;
  out.x = lo.x + w * (hi.x - lo.x);
  out.y = lo.y + w * (hi.y - lo.y);
  out.theta_ref =
      normalize_angle(lo.theta_ref + w * angle_diff(hi.theta_ref, lo.theta_ref));
  out.kappa_ref = lo.kappa_ref + w * (hi.kappa_ref - lo.kappa_ref);
  return out;
}

}  // namespace navsim::planner
