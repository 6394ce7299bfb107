#pragma once

#include <vector>

#include "roadgen/grid.hpp"

namespace roadgen {

/// Per-cell "needs checking" flags, same shape as the grid they annotate.
class DirtyMask {
 public:
  DirtyMask(int height, int width, bool value = false)
      : height_(height), width_(width), flags_(static_cast<std::size_t>(height) * width, value ? 1 : 0) {}

  static DirtyMask all(const Grid& g) { return DirtyMask(g.height(), g.width(), true); }

  int height() const { return height_; }
  int width() const { return width_; }
  bool operator()(int row, int col) const { return flags_[static_cast<std::size_t>(row) * width_ + col] != 0; }
  void mark(int row, int col) { flags_[static_cast<std::size_t>(row) * width_ + col] = 1; }

 private:
  int height_;
  int width_;
  std::vector<char> flags_;
};

struct RepairResult {
  Grid grid;
  int iterations_used = 0;
  bool converged = false;
};

/// Default pass budget: 4 * H * W.
int default_repair_budget(const Grid& g);

/// Restores reciprocity and boundary validity by local edits, visiting dirty cells row-major
/// and directions N, E, S, W. A disagreeing neighbor receives the closest code (fewest flipped
/// bits, lower code on ties) that agrees on the shared border and becomes dirty itself; an
/// outward bit on the grid edge is cleared. `converged` means a full pass changed nothing.
RepairResult repair(const Grid& g, DirtyMask mask, int max_iterations);

/// repair() with every cell dirty. A non-positive budget selects default_repair_budget().
RepairResult repair_full(const Grid& g, int max_iterations = 0);

/// Gives every empty cell one road edge to an in-grid neighbor (preferring a non-empty one,
/// then N, E, S, W order), setting the reciprocal bit on that neighbor. Keeps a repaired grid
/// valid; grids with a single cell are returned unchanged.
Grid fill_empty(const Grid& g);

}  // namespace roadgen
