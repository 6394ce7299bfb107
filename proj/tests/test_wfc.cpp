#include <doctest.h>

#include <bit>

#include "roadgen/metrics.hpp"
#include "roadgen/wfc.hpp"

using namespace roadgen;

TEST_CASE("small grids collapse to consistent tiles") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    WfcConfig cfg;
    cfg.seed = seed;
    const WfcResult r = wfc_generate(2, 2, cfg);
    REQUIRE(r.ok());
    CHECK(mismatch_count(*r.grid) == 0);
    CHECK(adjacent_crossing_violation_score(*r.grid) == 0);
    CHECK(coverage(*r.grid) == 1.0);
  }
}

TEST_CASE("12x12 outputs are valid and soft boundaries leak") {
  int successes = 0;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    WfcConfig cfg;
    cfg.seed = seed;
    const WfcResult r = wfc_generate(12, 12, cfg);
    if (!r.ok()) continue;
    ++successes;
    const MetricReport m = full_report(*r.grid);
    CHECK(mismatch_count(*r.grid) == 0);
    CHECK(m.adjacent_crossing_violation_score == 0);
    violations += m.boundary_violations;
  }
  CHECK(successes > 0);
  CHECK(violations > 0);
}

TEST_CASE("hard boundary removes outward connections") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    WfcConfig cfg;
    cfg.seed = seed;
    cfg.hard_boundary = true;
    const WfcResult r = wfc_generate(8, 9, cfg);
    REQUIRE(r.ok());
    CHECK(boundary_violations(*r.grid) == 0);
    CHECK(mismatch_count(*r.grid) == 0);
  }
}

TEST_CASE("empty tile can be re-enabled") {
  int empties = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    WfcConfig cfg;
    cfg.seed = seed;
    cfg.allow_empty = true;
    const WfcResult r = wfc_generate(10, 10, cfg);
    REQUIRE(r.ok());
    CHECK(mismatch_count(*r.grid) == 0);
    empties += static_cast<int>((1.0 - coverage(*r.grid)) * 100.0 + 0.5);
  }
  CHECK(empties > 0);
}

TEST_CASE("fixed seed is deterministic") {
  WfcConfig cfg;
  cfg.seed = 42;
  const WfcResult a = wfc_generate(12, 12, cfg);
  const WfcResult b = wfc_generate(12, 12, cfg);
  CHECK(a.ok() == b.ok());
  CHECK(a.attempts_used == b.attempts_used);
  if (a.ok()) CHECK(*a.grid == *b.grid);
}

TEST_CASE("propagation keeps neighbors compatible and sets never grow") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    WfcConfig cfg;
    cfg.seed = seed;
    cfg.max_attempts = 1;
    std::vector<PossibilitySet> previous;
    bool sound = true;
    bool monotone = true;
    const auto observer = [&](int h, int w, std::span<const PossibilitySet> sets) {
      for (int i = 0; i < h * w; ++i) {
        if (!previous.empty() && (sets[i] & ~previous[i]) != 0) monotone = false;
        if (std::popcount(static_cast<unsigned>(sets[i])) != 1) continue;
        const TileCode fixed(std::countr_zero(static_cast<unsigned>(sets[i])));
        const int r = i / w;
        const int c = i % w;
        for (Direction d : kDirections) {
          const int nr = r + row_offset(d);
          const int nc = c + col_offset(d);
          if (nr < 0 || nc < 0 || nr >= h || nc >= w) continue;
          for (int k = 0; k < 16; ++k) {
            if ((sets[nr * w + nc] >> k & 1u) == 0) continue;
            if (!compatible(fixed, TileCode(k), d)) sound = false;
            if (is_crossing(fixed) && is_crossing(TileCode(k))) sound = false;
          }
        }
      }
      previous.assign(sets.begin(), sets.end());
    };
    (void)wfc_generate(9, 9, cfg, observer);
    CHECK(sound);
    CHECK(monotone);
  }
}

TEST_CASE("impossible alphabets fail after every attempt") {
  WfcConfig cfg;
  cfg.seed = 9;
  cfg.max_attempts = 3;
  cfg.hard_boundary = true;
  cfg.alphabet = 1u << 10;  // vertical straights only; the top row cannot point north
  const WfcResult r = wfc_generate(4, 4, cfg);
  REQUIRE_FALSE(r.ok());
  CHECK(r.attempts_used == 3);
  CHECK(r.failure.attempts == 3);
  CHECK(r.failure.first_contradiction == Cell{0, 0});
  CHECK(describe(r.failure) == "wave function collapse failed after 3 attempts; last contradiction at (0, 0)");

  cfg.hard_boundary = false;
  cfg.alphabet = 1u << 15;  // crossings only, never adjacent
  CHECK_FALSE(wfc_generate(3, 3, cfg).ok());
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(wfc_generate(1, 5, WfcConfig{}), std::invalid_argument);
  WfcConfig cfg;
  cfg.max_attempts = 0;
  CHECK_THROWS_AS(wfc_generate(4, 4, cfg), std::invalid_argument);
}
