#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "roadgen/metrics.hpp"

using namespace roadgen;

namespace {

const Grid kRing(2, 2, {6, 3, 12, 9});
const Grid kPath(1, 3, {5, 5, 5});  // horizontal road, ends point off-grid
const Grid kEmpty(3, 3);

// 3x3 block where every tile connects to all in-grid neighbors.
Grid full_lattice(int h, int w) {
  Grid g(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) g.set(r, c, encode(r > 0, c + 1 < w, r + 1 < h, c > 0));
  }
  return g;
}

}  // namespace

TEST_CASE("connected components") {
  CHECK(connected_components(build_graph(kRing)) == 1);
  // Two rings separated by an empty column.
  const Grid two(2, 5, {6, 3, 0, 6, 3, 12, 9, 0, 12, 9});
  CHECK(connected_components(build_graph(two)) == 2);
  CHECK(connected_components(build_graph(kEmpty)) == 0);
}

TEST_CASE("cyclomatic complexity") {
  CHECK(cyclomatic_complexity(build_graph(kRing)) == 1);
  CHECK(cyclomatic_complexity(build_graph(kPath)) == 0);

  // 3x3 lattice: N = 9, E = 12 interior borders, P = 1 -> 4 independent cycles.
  const Grid lattice = full_lattice(3, 3);
  const auto graph = build_graph(lattice);
  CHECK(graph.node_count() == 9);
  CHECK(graph.edge_count() == 12);
  CHECK(cyclomatic_complexity(graph) == 4);
  CHECK(boundary_violations(lattice) == 0);
}

TEST_CASE("dead ends count graph degree, not declared bits") {
  CHECK(dead_ends(kPath) == 2);
  CHECK(dead_ends(kRing) == 0);
  CHECK(dead_ends(Grid(1, 1, {8})) == 0);
  CHECK(dead_ends(Grid(1, 2, {4, 1})) == 2);
}

TEST_CASE("boundary violations") {
  CHECK(boundary_violations(Grid(1, 1, {10})) == 2);
  CHECK(boundary_violations(kRing) == 0);
  CHECK(boundary_violations(Grid(1, 1, {15})) == 4);
  CHECK(boundary_violations(kPath) == 2);
}

TEST_CASE("bridges") {
  CHECK(bridges(build_graph(kPath)) == 2);
  CHECK(bridges(build_graph(kRing)) == 0);
  // Ring with a tail: the tail edge is the only bridge.
  const Grid tail(2, 3, {6, 7, 1, 12, 9, 0});
  CHECK(bridges(build_graph(tail)) == 1);
}

TEST_CASE("bridges and cyclomatic agree with the brute-force oracles") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int h = 1 + trial % 8;
    const int w = 1 + (trial / 8) % 8;
    const Grid g = oracle::random_grid(rng, h, w);
    const auto graph = build_graph(g);
    REQUIRE(bridges(graph) == oracle::bridges_by_removal(g));
    REQUIRE(cyclomatic_complexity(graph) == oracle::cyclomatic(g));
  }
}

TEST_CASE("adjacent crossing violation score") {
  const Grid pair(1, 2, {15, 15});
  CHECK(adjacent_crossing_violation_score(pair) == 8);
  CHECK(adjacent_crossing_pairs(pair) == 1);
  CHECK(adjacent_crossing_violation_score(kRing) == 0);
  CHECK(adjacent_crossing_violation_score(Grid(1, 2, {15, 5})) == 0);
  // 3-way and 4-way joined: 3 + 4.
  CHECK(adjacent_crossing_violation_score(Grid(1, 2, {11, 15})) == 0);  // 11 has no E bit
  CHECK(adjacent_crossing_violation_score(Grid(1, 2, {7, 15})) == 7);
}

TEST_CASE("adjacent turns require a shared edge") {
  CHECK(adjacent_turns(kRing) == 4);
  CHECK(adjacent_turns(kPath) == 0);
  CHECK(adjacent_turns(Grid(1, 2, {6, 6})) == 0);
}

TEST_CASE("straight run score") {
  CHECK(straight_run_score(Grid(3, 1, {10, 10, 10})) == 9);
  CHECK(straight_run_score(kRing) == 0);
  CHECK(straight_run_score(Grid(1, 4, {5, 5, 0, 5})) == 5);
  // Vertical straights in a row are three runs of one.
  CHECK(straight_run_score(Grid(1, 3, {10, 10, 10})) == 3);
}

TEST_CASE("coverage") {
  CHECK(coverage(kEmpty) == 0.0);
  CHECK(coverage(kRing) == 1.0);
  CHECK(coverage(Grid(2, 2, {0, 0, 8, 0})) == 0.25);
}

TEST_CASE("full report") {
  const MetricReport ring = full_report(kRing);
  MetricReport expected;
  expected.connected_components = 1;
  expected.cyclomatic_complexity = 1;
  expected.adjacent_turns = 4;
  expected.coverage = 1.0;
  expected.edges = 4;
  expected.nodes = 4;
  CHECK(ring == expected);
  CHECK(full_report(kEmpty) == MetricReport{});
  CHECK(report_from_json(to_json(ring)) == ring);
}

TEST_CASE("behavior descriptor") {
  CHECK(behavior_descriptor(full_report(kRing)) == BehaviorDescriptor{1, 1, 0, 0, 4});
  CHECK(behavior_descriptor(full_report(kEmpty)) == BehaviorDescriptor{});
  const MetricReport pair = full_report(Grid(1, 2, {15, 15}));
  CHECK(behavior_descriptor(pair).adjacent_crossings == 1);
  CHECK(pair.adjacent_crossing_violation_score == 8);
}

TEST_CASE("metric identities on random grids") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Grid g = oracle::random_grid(rng, 2 + trial % 6, 2 + (trial / 6) % 6);
    const MetricReport r = full_report(g);
    REQUIRE(r.cyclomatic_complexity == r.edges - r.nodes + r.connected_components);
    CHECK(r.bridges <= r.edges);
    CHECK(r.dead_ends <= r.nodes);
    CHECK((r.coverage >= 0.0 && r.coverage <= 1.0));
    if (r.crossings == 0) CHECK(r.adjacent_crossing_violation_score == 0);
    bool any_empty = false;
    for (int i = 0; i < g.size(); ++i) any_empty |= g.at_index(i).empty();
    CHECK((r.coverage == 1.0) == !any_empty);
  }
}

TEST_CASE("metrics are invariant under whole-grid rotation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = oracle::random_grid(rng, 2 + trial % 5, 3 + trial % 4);
    const MetricReport a = full_report(g);
    const MetricReport b = full_report(rotate_cw(g));
    CHECK(a == b);
  }
}
