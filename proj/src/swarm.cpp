#include "roadgen/swarm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "roadgen/metrics.hpp"
#include "roadgen/repair.hpp"

namespace roadgen {

namespace {

double evaluate(const Grid& g, const FitnessWeights& weights) { return fitness(full_report(g), weights).value; }

}  // namespace

void validate(const SwarmConfig& cfg) {
  if (cfg.population < 2) throw std::invalid_argument("swarm population must be >= 2");
  if (cfg.generations < 1) throw std::invalid_argument("swarm generations must be >= 1");
  if (!(cfg.velocity_clamp > 0.0)) throw std::invalid_argument("velocity clamp must be positive");
  if (cfg.gwo_epsilon_amplitude < 0.0) throw std::invalid_argument("gwo epsilon amplitude must be >= 0");
}

Grid decode_sample(const LogitField<double>& logits, int height, int width, const SwarmConfig& cfg, Rng& rng) {
  Grid g = sample_grid(softmax_probs(logits), height, width, cfg.full_coverage, rng);
  if (cfg.repair_after_decode) {
    g = repair_full(g).grid;
    if (cfg.full_coverage) g = fill_empty(g);
  }
  return g;
}

PsoState pso_init(int height, int width, const SwarmConfig& cfg, const FitnessWeights& weights) {
  validate(cfg);
  PsoState s{height, width, {}, {}, Grid(height, width), FitnessValue::kInvalid, Rng(cfg.seed)};
  const Eigen::Index cells = static_cast<Eigen::Index>(height) * width;
  s.particles.reserve(static_cast<std::size_t>(cfg.population));
  for (int i = 0; i < cfg.population; ++i) {
    Particle p;
    p.position = uniform_field<double>(cells, -1.0, 1.0, s.rng);
    p.velocity = uniform_field<double>(cells, -1.0, 1.0, s.rng);
    p.grid = decode_sample(p.position, height, width, cfg, s.rng);
    p.fitness = evaluate(p.grid, weights);
    p.best_position = p.position;
    p.best_fitness = p.fitness;
    if (i == 0 || p.fitness < s.global_best_fitness) {
      s.global_best_fitness = p.fitness;
      s.global_best_position = p.position;
      s.global_best_grid = p.grid;
    }
    s.particles.push_back(std::move(p));
  }
  return s;
}

void pso_step(PsoState& s, const SwarmConfig& cfg, const FitnessWeights& weights) {
  const Eigen::Index cells = static_cast<Eigen::Index>(s.height) * s.width;
  for (Particle& p : s.particles) {
    const LogitField<double> r1 = uniform_field<double>(cells, 0.0, 1.0, s.rng);
    const LogitField<double> r2 = uniform_field<double>(cells, 0.0, 1.0, s.rng);
    p.velocity = pso_velocity(p.velocity, p.position, p.best_position, s.global_best_position, r1, r2,
                              cfg.inertia, cfg.c1, cfg.c2, cfg.velocity_clamp);
    p.position += p.velocity;
    p.grid = decode_sample(p.position, s.height, s.width, cfg, s.rng);
    p.fitness = evaluate(p.grid, weights);
    if (p.fitness < p.best_fitness) {
      p.best_fitness = p.fitness;
      p.best_position = p.position;
    }
    if (p.fitness < s.global_best_fitness) {
      s.global_best_fitness = p.fitness;
      s.global_best_position = p.position;
      s.global_best_grid = p.grid;
    }
  }
}

GwoState gwo_init(int height, int width, const SwarmConfig& cfg, const FitnessWeights& weights) {
  validate(cfg);
  GwoState s{height, width, {}, Grid(height, width), FitnessValue::kInvalid, Rng(cfg.seed)};
  const Eigen::Index cells = static_cast<Eigen::Index>(height) * width;
  s.pack.reserve(static_cast<std::size_t>(cfg.population));
  for (int i = 0; i < cfg.population; ++i) {
    Wolf w;
    w.position = uniform_field<double>(cells, -1.0, 1.0, s.rng);
    w.grid = decode_sample(w.position, height, width, cfg, s.rng);
    w.fitness = evaluate(w.grid, weights);
    if (i == 0 || w.fitness < s.best_fitness) {
      s.best_fitness = w.fitness;
      s.best_grid = w.grid;
    }
    s.pack.push_back(std::move(w));
  }
  return s;
}

void gwo_step(GwoState& s, const SwarmConfig& cfg, const FitnessWeights& weights) {
  std::vector<std::size_t> rank(s.pack.size());
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return s.pack[a].fitness < s.pack[b].fitness; });
  const std::size_t third_index =
      cfg.gwo_third == GwoThirdLeader::Worst || rank.size() < 3 ? rank.back() : rank[2];
  const LogitField<double> alpha = s.pack[rank[0]].position;
  const LogitField<double> beta = s.pack[rank[1]].position;
  const LogitField<double> third = s.pack[third_index].position;

  const Eigen::Index cells = static_cast<Eigen::Index>(s.height) * s.width;
  const double amp = cfg.gwo_epsilon_amplitude;
  for (Wolf& w : s.pack) {
    const LogitField<double> noise =
        amp > 0.0 ? uniform_field<double>(cells, -amp, amp, s.rng) : LogitField<double>::Zero(cells, kTileAlphabetSize);
    w.position = gwo_position(alpha, beta, third, noise);
    w.grid = decode_sample(w.position, s.height, s.width, cfg, s.rng);
    w.fitness = evaluate(w.grid, weights);
    if (w.fitness < s.best_fitness) {
      s.best_fitness = w.fitness;
      s.best_grid = w.grid;
    }
  }
}

SwarmResult run_swarm(SwarmMethod method, int height, int width, const SwarmConfig& cfg,
                      const FitnessWeights& weights) {
  SwarmResult result;
  result.trace.reserve(static_cast<std::size_t>(cfg.generations));
  if (method == SwarmMethod::Pso) {
    PsoState s = pso_init(height, width, cfg, weights);
    for (int g = 0; g < cfg.generations; ++g) {
      pso_step(s, cfg, weights);
      result.trace.push_back(s.global_best_fitness);
    }
    result.best = s.global_best_grid;
    result.best_fitness = s.global_best_fitness;
  } else {
    GwoState s = gwo_init(height, width, cfg, weights);
    for (int g = 0; g < cfg.generations; ++g) {
      gwo_step(s, cfg, weights);
      result.trace.push_back(s.best_fitness);
    }
    result.best = s.best_grid;
    result.best_fitness = s.best_fitness;
  }
  return result;
}

std::string to_string(SwarmMethod m) { return m == SwarmMethod::Pso ? "pso" : "gwo"; }

}  // namespace roadgen
