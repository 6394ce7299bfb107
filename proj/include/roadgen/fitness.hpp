#pragma once

#include <limits>

#include <json.hpp>

#include "roadgen/metrics.hpp"

namespace roadgen {

/// Penalty and bonus coefficients of the scalar objective. Defaults are the reference weights.
struct FitnessWeights {
  double w_dead_ends = 480.0;
  double w_components = 300.0;
  double w_boundary = 150.0;
  double w_bridges = 100.0;
  double w_adjacent_crossings = 100.0;
  double w_adjacent_turns = 80.0;
  double w_cyclomatic_bonus = 2.0;
  double w_straight_bonus = 2.0;

  friend bool operator==(const FitnessWeights&, const FitnessWeights&) = default;
};

/// Minimized objective value. Empty grids are flagged invalid and rank behind every real grid.
struct FitnessValue {
  double value = 0.0;
  bool valid = true;

  static constexpr double kInvalid = std::numeric_limits<double>::max();

  friend bool operator==(const FitnessValue&, const FitnessValue&) = default;
  friend bool operator<(const FitnessValue& a, const FitnessValue& b) { return a.value < b.value; }
};

FitnessValue fitness(const MetricReport& r, const FitnessWeights& w = {});

/// Throws std::invalid_argument on non-finite weights.
void validate(const FitnessWeights& w);

nlohmann::json to_json(const FitnessWeights& w);
/// Reads `{"weights": {...}}` or a bare weights object; missing keys keep their defaults.
FitnessWeights weights_from_json(const nlohmann::json& doc);
FitnessWeights load_weights(const std::string& path);

}  // namespace roadgen
