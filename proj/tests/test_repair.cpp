#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "roadgen/metrics.hpp"
#include "roadgen/repair.hpp"

using namespace roadgen;

TEST_CASE("empty neighbor gains the reciprocal bit") {
  const RepairResult r = repair(Grid(1, 2, {4, 0}), DirtyMask(1, 2, true), 8);
  CHECK(r.grid == Grid(1, 2, {4, 1}));
  CHECK(r.converged);
}

TEST_CASE("outward bits are cleared") {
  const RepairResult r = repair_full(Grid(1, 1, {10}));
  CHECK(r.grid == Grid(1, 1, {0}));
  CHECK(r.converged);
}

TEST_CASE("valid grid is a fixed point") {
  const Grid ring(2, 2, {6, 3, 12, 9});
  const RepairResult r = repair_full(ring);
  CHECK(r.grid == ring);
  CHECK(r.converged);
  CHECK(r.iterations_used == 1);
}

TEST_CASE("budget exhaustion is reported") {
  const RepairResult r = repair_full(Grid(1, 1, {10}), 1);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations_used == 1);
}

TEST_CASE("only dirty cells drive edits") {
  // Clean cell (0,0) points east at an empty tile; nobody looks at it.
  const RepairResult r = repair(Grid(1, 2, {4, 0}), DirtyMask(1, 2, false), 8);
  CHECK(r.grid == Grid(1, 2, {4, 0}));
  CHECK(r.converged);
  CHECK_THROWS_AS(repair(Grid(1, 2), DirtyMask(2, 2), 4), std::invalid_argument);
}

TEST_CASE("repair soundness, idempotence, determinism") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const Grid g = oracle::random_grid(rng, 1 + trial % 8, 1 + (trial / 8) % 8);
    const RepairResult r = repair_full(g);
    REQUIRE(r.converged);
    CHECK(r.iterations_used <= default_repair_budget(g));
    CHECK(mismatch_count(r.grid) == 0);
    CHECK(boundary_violations(r.grid) == 0);
    CHECK(repair_full(r.grid).grid == r.grid);
    CHECK(repair_full(g).grid == r.grid);
  }
}

TEST_CASE("fill_empty keeps validity and covers the grid") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 500; ++trial) {
    const Grid g = repair_full(oracle::random_grid(rng, 2 + trial % 7, 1 + trial % 5)).grid;
    const Grid filled = fill_empty(g);
    CHECK(mismatch_count(filled) == 0);
    CHECK(boundary_violations(filled) == 0);
    CHECK(coverage(filled) == 1.0);
  }
  CHECK(fill_empty(Grid(1, 1)) == Grid(1, 1));
  CHECK(fill_empty(Grid(1, 2)) == Grid(1, 2, {4, 1}));
}
