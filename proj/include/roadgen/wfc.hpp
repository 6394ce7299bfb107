#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "roadgen/grid.hpp"

namespace roadgen {

/// Bit set over the 16 tile codes; bit k set means code k is still possible.
using PossibilitySet = std::uint16_t;

struct WfcConfig {
  int max_attempts = 10;
  bool forbid_adjacent_crossings = true;
  /// Pre-remove codes pointing off-grid on border cells. Off by default.
  bool hard_boundary = false;
  /// Keep the empty tile (code 0) in the alphabet. Off by default so outputs cover the whole grid.
  bool allow_empty = false;
  /// Tile codes available to the generator.
  PossibilitySet alphabet = 0xFFFF;
  std::uint64_t seed = 0;
};

struct WfcFailure {
  int attempts = 0;
  Cell first_contradiction;  // of the last attempt
};

struct WfcResult {
  std::optional<Grid> grid;
  WfcFailure failure;
  int attempts_used = 0;

  bool ok() const { return grid.has_value(); }
};

/// Called after each collapse and its propagation with the row-major possibility sets.
using WfcStepObserver = std::function<void(int height, int width, std::span<const PossibilitySet> sets)>;

/// Minimum-entropy collapse with arc-consistent propagation; whole-attempt restarts on contradiction.
WfcResult wfc_generate(int height, int width, const WfcConfig& cfg, const WfcStepObserver& observer = {});

std::string describe(const WfcFailure& f);

}  // namespace roadgen
