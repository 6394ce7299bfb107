#pragma once

// Evolutionary search over tile grids with an optional MAP-Elites archive.
//
// Each generation draws lambda parents by tournament, mutates and repairs them, and keeps
// the mu best of parents plus offspring. With MAP-Elites enabled every offspring is also
// offered to a niche archive keyed by its quantized behavior descriptor; an offspring
// replaces the incumbent only with strictly lower fitness. The archive is passive: it
// never feeds parents back into the population.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "roadgen/fitness.hpp"
#include "roadgen/grid.hpp"
#include "roadgen/metrics.hpp"
#include "roadgen/random.hpp"
#include "roadgen/stats.hpp"

namespace roadgen {

inline constexpr int kCyclomaticBins = 25;

/// (cyclomatic bin 0..24, components, dangling, adjacent crossings, adjacent turns); the
/// last four are 0 for the favorable value and 1 otherwise.
struct NicheIndex {
  std::array<int, 5> bins{};

  friend bool operator==(const NicheIndex&, const NicheIndex&) = default;
  friend auto operator<=>(const NicheIndex&, const NicheIndex&) = default;
};

NicheIndex quantize(const BehaviorDescriptor& b);

struct Individual {
  Grid grid;
  FitnessValue fitness;
  BehaviorDescriptor descriptor;
  MetricReport report;
};

Individual evaluate(const Grid& g, const FitnessWeights& weights);

class EliteArchive {
 public:
  /// Stores `x` if its niche is empty or it beats the incumbent; returns whether it was stored.
  bool offer(const Individual& x);

  std::size_t size() const { return elites_.size(); }
  bool empty() const { return elites_.empty(); }
  const std::map<NicheIndex, Individual>& elites() const { return elites_; }

 private:
  std::map<NicheIndex, Individual> elites_;
};

struct EvoConfig {
  int mu = 40;
  int lambda = 40;
  int generations = 200;
  int tournament_size = 3;
  double p_tile_change = 0.7;
  double p_crossing_insert = 0.5;
  double mutation_rate = 0.3;
  bool map_elites = false;
  bool full_coverage = true;
  std::uint64_t seed = 0;
};

void validate(const EvoConfig& cfg);

/// Tile change and crossing insertion, without repair.
Grid apply_mutation_operators(const Grid& g, const EvoConfig& cfg, Rng& rng);

/// Mutation operators, repair (plus empty-cell filling under full coverage) and re-evaluation.
Individual mutate(const Individual& x, const EvoConfig& cfg, const FitnessWeights& weights, Rng& rng);

/// Index of the lowest-fitness individual among `k` uniform draws with replacement; ties keep the first draw.
std::size_t tournament_select(std::span<const Individual> population, int k, Rng& rng);

/// Random non-empty grid, repaired.
Grid random_valid_grid(int height, int width, bool full_coverage, Rng& rng);

struct EvoResult {
  std::vector<Individual> population;
  EliteArchive archive;
  Individual best;
  std::vector<double> trace;  // best fitness after each generation
};

/// Called once per generation after survivor selection (generation counts from 1).
using EvoObserver =
    std::function<void(int generation, std::span<const Individual> population, const EliteArchive& archive)>;

EvoResult evolve(int height, int width, const EvoConfig& cfg, const FitnessWeights& weights = {},
                 const EvoObserver& observer = {});

struct ArchiveSpread {
  int occupied = 0;
  Summary components;
  Summary cyclomatic;
  Summary dangling;
  Summary adjacent_crossings;
  Summary adjacent_turns;
};

/// Distribution of each descriptor across the stored elites. Throws std::invalid_argument when empty.
ArchiveSpread archive_spread(const EliteArchive& archive);

/// JSON array of {niche, descriptor, fitness, grid}.
nlohmann::json archive_to_json(const EliteArchive& archive);

}  // namespace roadgen
