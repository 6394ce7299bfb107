#include "roadgen/evo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "roadgen/json.hpp"
#include "roadgen/repair.hpp"

namespace roadgen {

namespace {

constexpr std::array<int, 5> kCrossingCodes = {7, 11, 13, 14, 15};

Grid finish(const Grid& g, bool full_coverage) {
  Grid repaired = repair_full(g).grid;
  return full_coverage ? fill_empty(repaired) : repaired;
}

int nonzero_bin(int value) { return value != 0 ? 1 : 0; }

}  // namespace

NicheIndex quantize(const BehaviorDescriptor& b) {
  return {{std::clamp(b.cyclomatic, 0, kCyclomaticBins - 1), nonzero_bin(b.components - 1),
           nonzero_bin(b.dangling), nonzero_bin(b.adjacent_crossings), nonzero_bin(b.adjacent_turns)}};
}

Individual evaluate(const Grid& g, const FitnessWeights& weights) {
  Individual x;
  x.grid = g;
  x.report = full_report(g);
  x.fitness = fitness(x.report, weights);
  x.descriptor = behavior_descriptor(x.report);
  return x;
}

bool EliteArchive::offer(const Individual& x) {
  const NicheIndex key = quantize(x.descriptor);
  auto it = elites_.find(key);
  if (it == elites_.end()) {
    elites_.emplace(key, x);
    return true;
  }
  if (x.fitness.value < it->second.fitness.value) {
    it->second = x;
    return true;
  }
  return false;
}

void validate(const EvoConfig& cfg) {
  if (cfg.mu < 1 || cfg.lambda < 1) throw std::invalid_argument("mu and lambda must be >= 1");
  if (cfg.generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (cfg.tournament_size < 1) throw std::invalid_argument("tournament size must be >= 1");
  for (double p : {cfg.p_tile_change, cfg.p_crossing_insert, cfg.mutation_rate}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
}

Grid apply_mutation_operators(const Grid& g, const EvoConfig& cfg, Rng& rng) {
  Grid out = g;
  std::bernoulli_distribution tile_change(cfg.p_tile_change);
  std::bernoulli_distribution crossing_insert(cfg.p_crossing_insert);

  if (tile_change(rng)) {
    const int cells = out.size();
    const int count = std::clamp(static_cast<int>(std::lround(cfg.mutation_rate * cells)), 1, cells);
    std::vector<int> order(static_cast<std::size_t>(cells));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < count; ++i) {
      std::swap(order[i], order[uniform_int(rng, i, cells - 1)]);
      const int cell = order[i];
      const int current = out.at_index(cell).value();
      // Uniform over the non-empty codes other than the current one.
      int code = uniform_int(rng, 1, current == 0 ? 15 : 14);
      if (current != 0 && code >= current) ++code;
      out.set_index(cell, TileCode(code));
    }
  }
  if (crossing_insert(rng)) {
    const int cell = uniform_int(rng, 0, out.size() - 1);
    out.set_index(cell, TileCode(kCrossingCodes[uniform_int(rng, 0, static_cast<int>(kCrossingCodes.size()) - 1)]));
  }
  return out;
}

Individual mutate(const Individual& x, const EvoConfig& cfg, const FitnessWeights& weights, Rng& rng) {
  return evaluate(finish(apply_mutation_operators(x.grid, cfg, rng), cfg.full_coverage), weights);
}

std::size_t tournament_select(std::span<const Individual> population, int k, Rng& rng) {
  if (population.empty()) throw std::invalid_argument("tournament over an empty population");
  if (k < 1) throw std::invalid_argument("tournament size must be >= 1");
  const int last = static_cast<int>(population.size()) - 1;
  std::size_t best = static_cast<std::size_t>(uniform_int(rng, 0, last));
  for (int i = 1; i < k; ++i) {
    const auto pick = static_cast<std::size_t>(uniform_int(rng, 0, last));
    if (population[pick].fitness.value < population[best].fitness.value) best = pick;
  }
  return best;
}

Grid random_valid_grid(int height, int width, bool full_coverage, Rng& rng) {
  Grid g(height, width);
  for (int i = 0; i < g.size(); ++i) g.set_index(i, TileCode(uniform_int(rng, 1, 15)));
  return finish(g, full_coverage);
}

EvoResult evolve(int height, int width, const EvoConfig& cfg, const FitnessWeights& weights,
                 const EvoObserver& observer) {
  validate(cfg);
  EvoResult result;
  auto& population = result.population;

  Rng init_rng(derive_seed(cfg.seed, 0, ~std::uint64_t{0}));
  population.reserve(static_cast<std::size_t>(cfg.mu + cfg.lambda));
  for (int i = 0; i < cfg.mu; ++i) population.push_back(evaluate(random_valid_grid(height, width, cfg.full_coverage, init_rng), weights));

  const auto by_fitness = [](const Individual& a, const Individual& b) { return a.fitness.value < b.fitness.value; };
  result.best = *std::min_element(population.begin(), population.end(), by_fitness);

  for (int generation = 1; generation <= cfg.generations; ++generation) {
    std::vector<Individual> offspring;
    offspring.reserve(static_cast<std::size_t>(cfg.lambda));
    for (int l = 0; l < cfg.lambda; ++l) {
      // Per-offspring stream so offspring could be produced in any order.
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(generation), static_cast<std::uint64_t>(l)));
      const Individual& parent = population[tournament_select(population, cfg.tournament_size, rng)];
      offspring.push_back(mutate(parent, cfg, weights, rng));
    }
    for (const Individual& child : offspring) {
      if (cfg.map_elites) result.archive.offer(child);
      if (child.fitness.value < result.best.fitness.value) result.best = child;
    }

    // Parents precede offspring, so the stable sort keeps older individuals on ties.
    population.insert(population.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
    std::stable_sort(population.begin(), population.end(), by_fitness);
    population.resize(static_cast<std::size_t>(cfg.mu));

    result.trace.push_back(result.best.fitness.value);
    if (observer) observer(generation, population, result.archive);
  }
  return result;
}

ArchiveSpread archive_spread(const EliteArchive& archive) {
  if (archive.empty()) throw std::invalid_argument("archive is empty");
  std::array<std::vector<double>, 5> columns;
  for (const auto& [key, elite] : archive.elites()) {
    const BehaviorDescriptor& b = elite.descriptor;
    columns[0].push_back(b.components);
    columns[1].push_back(b.cyclomatic);
    columns[2].push_back(b.dangling);
    columns[3].push_back(b.adjacent_crossings);
    columns[4].push_back(b.adjacent_turns);
  }
  ArchiveSpread s;
  s.occupied = static_cast<int>(archive.size());
  s.components = summarize_values(columns[0]);
  s.cyclomatic = summarize_values(columns[1]);
  s.dangling = summarize_values(columns[2]);
  s.adjacent_crossings = summarize_values(columns[3]);
  s.adjacent_turns = summarize_values(columns[4]);
  return s;
}

nlohmann::json archive_to_json(const EliteArchive& archive) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, elite] : archive.elites()) {
    out.push_back({{"niche", key.bins},
                   {"descriptor", to_json(elite.descriptor)},
                   {"fitness", elite.fitness.value},
                   {"grid", grid_to_json(elite.grid)}});
  }
  return out;
}

}  // namespace roadgen
