#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "navsim/planner/path.hpp"
#include "navsim/sim/world.hpp"

namespace navsim::scoring {

/// Monotone arc-length progress along a route. Progress advances only
/// while the projection stays within abandon_radius of the path, so an
/// agent that leaves the corridor keeps the credit it had and no more.
class ProgressTracker {
 public:
  explicit ProgressTracker(const planner::DensePath* path,
                           double abandon_radius = 5.0);

  /// Feeds one trace point; returns the progress after the update.
  double update(const Vec2& p);

  double progress() const { return progress_; }
  double fraction() const;  // progress over total length, in [0, 1]

 private:
  const planner::DensePath* path_;
  double radius_;
  double progress_ = 0.0;
};

/// Completed fraction of the route for a full ego trace.
double route_completion(const planner::DensePath& path,
                        std::span<const Vec2> trace,
                        double abandon_radius = 5.0);

struct RouteResult {
  std::string route_id;
  int repetition = 0;
  double completion = 0.0;  // C in [0, 1]
  std::vector<sim::InfractionEvent> infractions;
  int infraction_points = 0;  // I, sum of event points
  double duration_s = 0.0;
  bool timed_out = false;
};

/// Sum of event points; the I that enters the route score.
int total_points(const std::vector<sim::InfractionEvent>& events);

struct ScoreRow {
  std::string route_id;
  int repetition = 0;
  double completion = 0.0;
  int infraction_points = 0;
  double points = 0.0;  // max(100 C - I, 0)
};

struct ScoreReport {
  std::vector<ScoreRow> rows;
  double total = 0.0;  // mean of row points
  std::map<std::string, int> infraction_counts;  // kind -> events
  std::map<std::string, int> infraction_sums;    // kind -> points
};

/// Aggregates route results into the challenge score. Rows keep the input
/// order. Throws std::invalid_argument when results is empty or a
/// completion is outside [0, 1].
ScoreReport score(const std::vector<RouteResult>& results);

/// Fixed-width text table with one row per route and the aggregate line.
std::string format_table(const ScoreReport& report);

/// Machine-readable JSON record of the same report.
std::string report_json(const ScoreReport& report);

}  // namespace navsim::scoring
