#include "navsim/scoring/score.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace navsim::scoring {

ProgressTracker::ProgressTracker(const planner::DensePath* path,
                                 double abandon_radius)
    : path_(path), radius_(abandon_radius) {
  if (!path_ || path_->samples.size() < 2)
    throw std::invalid_argument("progress needs a densified path");
  if (!(radius_ > 0.0))
    throw std::invalid_argument("abandon radius must be positive");
}

double ProgressTracker::update(const Vec2& p) {
  const planner::PathProjection proj = planner::project_to_path(p, *path_);
  if (std::abs(proj.lateral) <= radius_)
    progress_ = std::max(progress_, proj.s);
  return progress_;
}

double ProgressTracker::fraction() const {
  const double len = path_->length();
  return len > 0.0 ? std::clamp(progress_ / len, 0.0, 1.0) : 0.0;
}

double route_completion(const planner::DensePath& path,
                        std::span<const Vec2> trace, double abandon_radius) {
  if (trace.empty()) throw std::invalid_argument("empty ego trace");
  ProgressTracker tracker(&path, abandon_radius);
  for (const Vec2& p : trace) tracker.update(p);
  return tracker.fraction();
}

int total_points(const std::vector<sim::InfractionEvent>& events) {
  int sum = 0;
  for (const auto& e : events) sum += e.points;
  return sum;
}

ScoreReport score(const std::vector<RouteResult>& results) {
  if (results.empty()) throw std::invalid_argument("no route results to score");
  ScoreReport report;
  report.rows.reserve(results.size());
  double sum = 0.0;
  for (const RouteResult& r : results) {
    if (!(r.completion >= 0.0 && r.completion <= 1.0))
      throw std::invalid_argument("route completion outside [0, 1] for '" +
                                  r.route_id + "'");
    ScoreRow row;
    row.route_id = r.route_id;
    row.repetition = r.repetition;
    row.completion = r.completion;
    row.infraction_points = r.infraction_points;
    row.points = std::max(100.0 * r.completion - r.infraction_points, 0.0);
    sum += row.points;
    report.rows.push_back(std::move(row));
    for (const sim::InfractionEvent& e : r.infractions) {
      const std::string kind = sim::infraction_name(e.kind);
      report.infraction_counts[kind] += 1;
      report.infraction_sums[kind] += e.points;
    }
  }
  report.total = sum / static_cast<double>(results.size());
  return report;
}

std::string format_table(const ScoreReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(28) << "route" << std::right << std::setw(4)
      << "rep" << std::setw(12) << "completion" << std::setw(12) << "points(I)"
      << std::setw(10) << "score" << "\n";
  out << std::string(66, '-') << "\n";
  out << std::fixed;
  for (const ScoreRow& row : report.rows) {
    out << std::left << std::setw(28) << row.route_id << std::right
        << std::setw(4) << row.repetition << std::setw(11)
        << std::setprecision(1) << row.completion * 100.0 << "%"
        << std::setw(12) << row.infraction_points << std::setw(10)
        << std::setprecision(2) << row.points << "\n";
  }
  out << std::string(66, '-') << "\n";
  out << std::left << std::setw(28) << "total" << std::right << std::setw(38)
      << std::setprecision(2) << report.total << "\n";
  if (!report.infraction_counts.empty()) {
    out << "infractions:";
    for (const auto& [kind, count] : report.infraction_counts)
      out << " " << kind << " x" << count << " ("
          << report.infraction_sums.at(kind) << " pts)";
    out << "\n";
  }
  return out.str();
}

std::string report_json(const ScoreReport& report) {
  nlohmann::json doc;
  doc["total"] = report.total;
  doc["rows"] = nlohmann::json::array();
  for (const ScoreRow& row : report.rows) {
    doc["rows"].push_back({{"route_id", row.route_id},
                           {"repetition", row.repetition},
                           {"completion", row.completion},
                           {"infraction_points", row.infraction_points},
                           {"points", row.points}});
  }
  doc["infractions"] = nlohmann::json::object();
  for (const auto& [kind, count] : report.infraction_counts)
    doc["infractions"][kind] = {{"count", count},
                                {"points", report.infraction_sums.at(kind)}};
  return doc.dump(2) + "\n";
}

}  // namespace navsim::scoring
