#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "roadgen/fitness.hpp"
#include "roadgen/repair.hpp"

using namespace roadgen;

TEST_CASE("default weights") {
  const FitnessWeights w;
  CHECK(w.w_dead_ends == 480);
  CHECK(w.w_components == 300);
  CHECK(w.w_boundary == 150);
  CHECK(w.w_bridges == 100);
  CHECK(w.w_adjacent_crossings == 100);
  CHECK(w.w_adjacent_turns == 80);
  CHECK(w.w_cyclomatic_bonus == 2);
  CHECK(w.w_straight_bonus == 2);
}

TEST_CASE("2x2 ring scores 318") {
  const FitnessValue f = fitness(full_report(Grid(2, 2, {6, 3, 12, 9})));
  CHECK(f.valid);
  CHECK(f.value == 318.0);
}

TEST_CASE("path reports") {
  MetricReport path;
  path.dead_ends = 2;
  path.connected_components = 1;
  path.bridges = 2;
  path.straight_run_score = 9;
  CHECK(fitness(path).value == 1142.0);

  // The same road laid out on a 1x3 grid also pays for its two off-grid ends.
  const MetricReport laid = full_report(Grid(1, 3, {5, 5, 5}));
  CHECK(laid.boundary_violations == 2);
  CHECK(fitness(laid).value == 1142.0 + 300.0);

  // Capped version: only the middle tile is straight.
  CHECK(fitness(full_report(Grid(1, 3, {4, 5, 1}))).value == 480.0 * 2 + 100.0 * 2 - 2.0);
}

TEST_CASE("empty grid is invalid and worse than anything") {
  const FitnessValue f = fitness(full_report(Grid(3, 3)));
  CHECK_FALSE(f.valid);
  MetricReport awful;
  awful.connected_components = 1000;
  awful.dead_ends = 1000;
  awful.boundary_violations = 1000;
  CHECK(fitness(awful) < f);
}

TEST_CASE("fitness is linear in each weight") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const MetricReport r = full_report(oracle::random_grid(rng, 5, 5, 1));
    FitnessWeights doubled;
    doubled.w_dead_ends *= 2;
    const double delta = fitness(r, doubled).value - fitness(r).value;
    CHECK(delta == doctest::Approx(480.0 * r.dead_ends));
  }
}

TEST_CASE("one extra cycle lowers a clean network by 2") {
  MetricReport r;
  r.connected_components = 1;
  r.adjacent_turns = 3;
  r.cyclomatic_complexity = 5;
  CHECK(fitness(r).value <= 80.0 * r.adjacent_turns);
  MetricReport more = r;
  more.cyclomatic_complexity += 1;
  CHECK(fitness(r).value - fitness(more).value == 2.0);
}

TEST_CASE("fitness is rotation invariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = repair_full(oracle::random_grid(rng, 4, 6, 1)).grid;
    CHECK(fitness(full_report(g)) == fitness(full_report(rotate_cw(g))));
  }
}

TEST_CASE("weights json") {
  const auto doc = nlohmann::json::parse(R"({"weights": {"w_bridges": 1, "w_dead_ends": 10.5}})");
  const FitnessWeights w = weights_from_json(doc);
  CHECK(w.w_bridges == 1);
  CHECK(w.w_dead_ends == 10.5);
  CHECK(w.w_components == 300);
  CHECK(weights_from_json(to_json(w)) == w);
  CHECK_THROWS_AS(weights_from_json(nlohmann::json::parse(R"({"weights": {"w_nope": 1}})")), std::invalid_argument);
  CHECK_THROWS_AS(weights_from_json(nlohmann::json::parse(R"({"w_bridges": "x"})")), std::invalid_argument);
}
