#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "navsim/planner/path.hpp"
#include "navsim/scoring/score.hpp"
#include "navsim/sim/world.hpp"

using namespace navsim;
using namespace navsim::scoring;

namespace {

planner::DensePath straight_path(double length) {
  planner::Route route;
  for (double x = 0.0; x <= length + 1e-9; x += 5.0)
    route.waypoints.push_back({x, 0.0});
  return planner::densify_route(route);
}

RouteResult result_with(double completion, int points) {
  RouteResult r;
  r.route_id = "r";
  r.completion = completion;
  r.infraction_points = points;
  return r;
}

}  // namespace

TEST_CASE("route completion") {
  const planner::DensePath path = straight_path(100.0);

  SUBCASE("on-path trace to the end scores one") {
    std::vector<Vec2> trace;
    for (double x = 0.0; x <= 100.0 + 1e-9; x += 1.0) trace.push_back({x, 0.3});
    CHECK(route_completion(path, trace) == doctest::Approx(1.0));
  }

  SUBCASE("half the arc length scores one half") {
    std::vector<Vec2> trace;
    for (double x = 0.0; x <= 50.0 + 1e-9; x += 1.0) trace.push_back({x, 0.0});
    CHECK(route_completion(path, trace) == doctest::Approx(0.5));
  }

  SUBCASE("progress freezes once the corridor is abandoned") {
    std::vector<Vec2> trace;
    for (double x = 0.0; x <= 30.0 + 1e-9; x += 1.0) trace.push_back({x, 0.0});
    // Off into the weeds: lateral 19 m, far over the 5 m radius, while x
    // keeps increasing toward the goal.
    for (double x = 31.0; x <= 90.0 + 1e-9; x += 1.0) trace.push_back({x, 19.0});
    CHECK(route_completion(path, trace) == doctest::Approx(0.3));
  }

  SUBCASE("progress never decreases") {
    ProgressTracker tracker(&path);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(0.0, 100.0);
    std::uniform_real_distribution<double> uy(-8.0, 8.0);
    double last = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double p = tracker.update({ux(rng), uy(rng)});
      CHECK(p >= last);
      last = p;
    }
  }

  SUBCASE("empty trace is rejected") {
    CHECK_THROWS_AS(route_completion(path, {}), std::invalid_argument);
  }
}

TEST_CASE("score formula") {
  SUBCASE("pinned rows") {
    CHECK(score({result_with(1.0, 0)}).total == doctest::Approx(100.0));
    CHECK(score({result_with(0.5, 20)}).total == doctest::Approx(30.0));
    CHECK(score({result_with(0.1, 30)}).total == doctest::Approx(0.0));
  }

  SUBCASE("total is the mean over rows") {
    const ScoreReport report =
        score({result_with(1.0, 0), result_with(0.5, 20)});
    CHECK(report.rows.size() == 2);
    CHECK(report.rows[0].points == doctest::Approx(100.0));
    CHECK(report.rows[1].points == doctest::Approx(30.0));
    CHECK(report.total == doctest::Approx(65.0));
  }

  SUBCASE("clamping keeps rows non-negative, so a bad route cannot drag") {
    const ScoreReport report =
        score({result_with(0.0, 50), result_with(1.0, 0)});
    CHECK(report.rows[0].points == 0.0);
    CHECK(report.total == doctest::Approx(50.0));
  }

  SUBCASE("empty input and bad completions are rejected") {
    CHECK_THROWS_AS(score({}), std::invalid_argument);
    CHECK_THROWS_AS(score({result_with(1.2, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(score({result_with(-0.1, 0)}), std::invalid_argument);
  }

  SUBCASE("monotone in completion and infraction points") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uc(0.0, 1.0);
    std::uniform_int_distribution<int> ui(0, 60);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<RouteResult> results;
      for (int i = 0; i < 5; ++i) results.push_back(result_with(uc(rng), ui(rng)));
      const double base = score(results).total;
      CHECK(base >= 0.0);
      CHECK(base <= 100.0);

      auto better = results;
      better[trial % 5].completion =
          std::min(1.0, better[trial % 5].completion + 0.1);
      CHECK(score(better).total >= base - 1e-12);

      auto worse = results;
      worse[trial % 5].infraction_points += 5;
      CHECK(score(worse).total <= base + 1e-12);
    }
  }

  SUBCASE("per-kind tallies") {
    RouteResult r = result_with(1.0, 12);
    r.infractions = {
        {sim::InfractionKind::RedLight, 1.0, 3, -1},
        {sim::InfractionKind::RedLight, 5.0, 3, -1},
        {sim::InfractionKind::HitVehicle, 9.0, 6, 0},
    };
    const ScoreReport report = score({r});
    CHECK(report.infraction_counts.at("red_light") == 2);
    CHECK(report.infraction_sums.at("red_light") == 6);
    CHECK(report.infraction_counts.at("hit_vehicle") == 1);
    CHECK(report.infraction_sums.at("hit_vehicle") == 6);
  }
}

TEST_CASE("report rendering") {
  RouteResult a = result_with(1.0, 0);
  a.route_id = "straight_empty";
  RouteResult b = result_with(0.5, 20);
  b.route_id = "busy_junction";
  b.repetition = 1;
  b.infractions = {{sim::InfractionKind::StopSign, 2.0, 2, -1}};
  const ScoreReport report = score({a, b});

  SUBCASE("text table lists every route and the total") {
    const std::string table = format_table(report);
    CHECK(table.find("straight_empty") != std::string::npos);
    CHECK(table.find("busy_junction") != std::string::npos);
    CHECK(table.find("65.00") != std::string::npos);
    CHECK(table.find("stop_sign") != std::string::npos);
  }

  SUBCASE("json record round-trips") {
    const auto doc = nlohmann::json::parse(report_json(report));
    CHECK(doc["total"].get<double>() == doctest::Approx(65.0));
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["rows"][1]["route_id"] == "busy_junction");
    CHECK(doc["rows"][1]["infraction_points"] == 20);
    CHECK(doc["infractions"]["stop_sign"]["count"] == 1);
  }
}
