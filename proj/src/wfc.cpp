#include "roadgen/wfc.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <vector>

#include "roadgen/random.hpp"

namespace roadgen {

namespace {

constexpr PossibilitySet kAllCodes = 0xFFFF;

// kAllowed[d][j]: codes k that may sit in direction d of a cell holding code j.
struct AllowedTable {
  std::array<std::array<PossibilitySet, 16>, 4> allowed{};
};

AllowedTable make_table(bool forbid_adjacent_crossings) {
  AllowedTable t;
  for (Direction d : kDirections) {
    for (int j = 0; j < kTileAlphabetSize; ++j) {
      PossibilitySet mask = 0;
      for (int k = 0; k < kTileAlphabetSize; ++k) {
        const TileCode a(j);
        const TileCode b(k);
        if (!compatible(a, b, d)) continue;
        if (forbid_adjacent_crossings && is_crossing(a) && is_crossing(b)) continue;
        mask = static_cast<PossibilitySet>(mask | (1u << k));
      }
      t.allowed[static_cast<int>(d)][j] = mask;
    }
  }
  return t;
}

class Wave {
 public:
  Wave(int height, int width, const WfcConfig& cfg, const AllowedTable& table)
      : height_(height), width_(width), table_(table), sets_(static_cast<std::size_t>(height) * width) {
    const PossibilitySet alphabet =
        cfg.allow_empty ? cfg.alphabet : static_cast<PossibilitySet>(cfg.alphabet & ~1u);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        PossibilitySet s = alphabet;
        if (cfg.hard_boundary) {
          for (int k = 0; k < kTileAlphabetSize; ++k) {
            for (Direction d : kDirections) {
              const bool off_grid = !inside(r + row_offset(d), c + col_offset(d));
              if (off_grid && TileCode(k).has(d)) s = static_cast<PossibilitySet>(s & ~(1u << k));
            }
          }
        }
        sets_[idx(r, c)] = s;
      }
    }
  }

  std::span<const PossibilitySet> sets() const { return sets_; }

  // Arc consistency from every cell; returns the first emptied cell, if any.
  std::optional<Cell> settle() {
    std::vector<int> work;
    for (int i = 0; i < static_cast<int>(sets_.size()); ++i) {
      if (sets_[i] == 0) return Cell{i / width_, i % width_};
      work.push_back(i);
    }
    return propagate(std::move(work));
  }

  // Uncollapsed cell with the fewest possibilities, first in row-major order.
  std::optional<int> lowest_entropy() const {
    std::optional<int> best;
    int best_count = kTileAlphabetSize + 1;
    for (int i = 0; i < static_cast<int>(sets_.size()); ++i) {
      const int count = std::popcount(static_cast<unsigned>(sets_[i]));
      if (count > 1 && count < best_count) {
        best = i;
        best_count = count;
      }
    }
    return best;
  }

  std::optional<Cell> collapse(int i, Rng& rng) {
    const int count = std::popcount(static_cast<unsigned>(sets_[i]));
    int pick = uniform_int(rng, 0, count - 1);
    for (int k = 0; k < kTileAlphabetSize; ++k) {
      if ((sets_[i] >> k & 1u) == 0) continue;
      if (pick-- == 0) {
        sets_[i] = static_cast<PossibilitySet>(1u << k);
        break;
      }
    }
    return propagate({i});
  }

  Grid to_grid() const {
    Grid g(height_, width_);
    for (int i = 0; i < g.size(); ++i) g.set_index(i, TileCode(std::countr_zero(static_cast<unsigned>(sets_[i]))));
    return g;
  }

 private:
  bool inside(int r, int c) const { return r >= 0 && c >= 0 && r < height_ && c < width_; }
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * width_ + c; }

  std::optional<Cell> propagate(std::vector<int> work) {
    while (!work.empty()) {
      const int i = work.back();
      work.pop_back();
      const int r = i / width_;
      const int c = i % width_;
      for (Direction d : kDirections) {
        const int nr = r + row_offset(d);
        const int nc = c + col_offset(d);
        if (!inside(nr, nc)) continue;
        PossibilitySet support = 0;
        for (int j = 0; j < kTileAlphabetSize; ++j) {
          if (sets_[i] >> j & 1u) support = static_cast<PossibilitySet>(support | table_.allowed[static_cast<int>(d)][j]);
        }
        PossibilitySet& neighbor = sets_[idx(nr, nc)];
        const PossibilitySet narrowed = static_cast<PossibilitySet>(neighbor & support);
        if (narrowed == neighbor) continue;
        neighbor = narrowed;
        if (narrowed == 0) return Cell{nr, nc};
        work.push_back(static_cast<int>(idx(nr, nc)));
      }
    }
    return std::nullopt;
  }

  int height_;
  int width_;
  const AllowedTable& table_;
  std::vector<PossibilitySet> sets_;
};

}  // namespace

WfcResult wfc_generate(int height, int width, const WfcConfig& cfg, const WfcStepObserver& observer) {
  if (height < 2 || width < 2) throw std::invalid_argument("wfc needs a grid of at least 2x2");
  if (cfg.max_attempts < 1) throw std::invalid_argument("wfc max_attempts must be >= 1");

  const AllowedTable table = make_table(cfg.forbid_adjacent_crossings);
  Rng rng(cfg.seed);
  WfcResult result;
  for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    result.attempts_used = attempt;
    Wave wave(height, width, cfg, table);
    std::optional<Cell> contradiction = wave.settle();
    while (!contradiction) {
      const auto cell = wave.lowest_entropy();
      if (!cell) break;
      contradiction = wave.collapse(*cell, rng);
      if (observer) observer(height, width, wave.sets());
    }
    if (!contradiction) {
      result.grid = wave.to_grid();
      return result;
    }
    result.failure = {attempt, *contradiction};
  }
  return result;
}

std::string describe(const WfcFailure& f) {
  return "wave function collapse failed after " + std::to_string(f.attempts) +
         " attempts; last contradiction at (" + std::to_string(f.first_contradiction.row) + ", " +
         std::to_string(f.first_contradiction.col) + ")";
}

}  // namespace roadgen
