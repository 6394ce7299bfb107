#include "roadgen/repair.hpp"

#include <stdexcept>

namespace roadgen {

namespace {

// Closest code to `current` whose bit toward `d` equals `want`.
TileCode closest_with_bit(TileCode current, Direction d, bool want) {
  TileCode best = current;
  int best_distance = 5;
  for (int code = 0; code < kTileAlphabetSize; ++code) {
    const TileCode candidate(code);
    if (candidate.has(d) != want) continue;
    const int distance = bit_distance(candidate, current);
    if (distance < best_distance) {
      best = candidate;
      best_distance = distance;
    }
  }
  return best;
}

}  // namespace

int default_repair_budget(const Grid& g) { return 4 * g.size(); }

RepairResult repair(const Grid& g, DirtyMask mask, int max_iterations) {
  if (mask.height() != g.height() || mask.width() != g.width()) {
    throw std::invalid_argument("dirty mask shape does not match the grid");
  }
  RepairResult result{g, 0, false};
  Grid& grid = result.grid;
  bool changes = true;
  while (changes && result.iterations_used < max_iterations) {
    ++result.iterations_used;
    changes = false;
    for (int r = 0; r < grid.height(); ++r) {
      for (int c = 0; c < grid.width(); ++c) {
        if (!mask(r, c)) continue;
        for (Direction d : kDirections) {
          const TileCode here = grid.at(r, c);
          const auto n = grid.neighbor({r, c}, d);
          if (!n) {
            if (here.has(d)) {
              grid.set(r, c, here.with(d, false));
              changes = true;
            }
            continue;
          }
          const TileCode there = grid.at(*n);
          if (compatible(here, there, d)) continue;
          grid.set(*n, closest_with_bit(there, opposite(d), here.has(d)));
          mask.mark(n->row, n->col);
          changes = true;
        }
      }
    }
  }
  result.converged = !changes;
  return result;
}

RepairResult repair_full(const Grid& g, int max_iterations) {
  if (max_iterations <= 0) max_iterations = default_repair_budget(g);
  return repair(g, DirtyMask::all(g), max_iterations);
}

Grid fill_empty(const Grid& g) {
  Grid out = g;
  if (g.size() < 2) return out;
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      if (!out.at(r, c).empty()) continue;
      std::optional<Direction> chosen;
      for (Direction d : kDirections) {
        const auto n = out.neighbor({r, c}, d);
        if (!n) continue;
        if (!chosen) chosen = d;
        if (!out.at(*n).empty()) {
          chosen = d;
          break;
        }
      }
      const Cell n = *out.neighbor({r, c}, *chosen);
      out.set(r, c, out.at(r, c).with(*chosen, true));
      out.set(n, out.at(n).with(opposite(*chosen), true));
    }
  }
  return out;
}

}  // namespace roadgen
