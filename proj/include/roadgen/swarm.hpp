#pragma once

// Particle swarm and grey wolf optimizers over per-cell tile logits. Both share the
// softmax -> categorical sample -> repair decode, so they differ only in how positions move.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "roadgen/fitness.hpp"
#include "roadgen/grid.hpp"
#include "roadgen/random.hpp"

namespace roadgen {

/// One row per cell (row-major), one column per tile code.
template <typename Scalar>
using LogitField = Eigen::Array<Scalar, Eigen::Dynamic, kTileAlphabetSize, Eigen::RowMajor>;

/// Row-wise softmax, shifted by each row's maximum before exponentiation.
template <typename Derived>
LogitField<typename Derived::Scalar> softmax_probs(const Eigen::ArrayBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  LogitField<Scalar> e = (logits.colwise() - logits.rowwise().maxCoeff()).exp();
  return e.colwise() / e.rowwise().sum();
}

/// Fills an array with independent U(lo, hi) draws from `rng`, in storage order.
template <typename Scalar>
LogitField<Scalar> uniform_field(Eigen::Index cells, Scalar lo, Scalar hi, Rng& rng) {
  LogitField<Scalar> out(cells, kTileAlphabetSize);
  std::uniform_real_distribution<Scalar> dist(lo, hi);
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] = dist(rng);
  return out;
}

/// v' = w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped elementwise to [-clamp, clamp].
template <typename Scalar>
LogitField<Scalar> pso_velocity(const LogitField<Scalar>& velocity, const LogitField<Scalar>& position,
                                const LogitField<Scalar>& personal_best, const LogitField<Scalar>& global_best,
                                const LogitField<Scalar>& r1, const LogitField<Scalar>& r2, Scalar inertia,
                                Scalar cognitive, Scalar social, Scalar clamp) {
  LogitField<Scalar> next = inertia * velocity + cognitive * r1 * (personal_best - position) +
                            social * r2 * (global_best - position);
  return next.max(-clamp).min(clamp);
}

/// Mean of the three leader positions plus a perturbation.
template <typename Scalar>
LogitField<Scalar> gwo_position(const LogitField<Scalar>& alpha, const LogitField<Scalar>& beta,
                                const LogitField<Scalar>& third, const LogitField<Scalar>& noise) {
  return (alpha + beta + third) / Scalar(3) + noise;
}

/// Draws one tile code per cell from its categorical distribution. With `exclude_empty`
/// code 0 is dropped and the remaining probabilities renormalized.
template <typename Derived>
Grid sample_grid(const Eigen::ArrayBase<Derived>& probs, int height, int width, bool exclude_empty, Rng& rng) {
  using Scalar = typename Derived::Scalar;
  Grid g(height, width);
  std::uniform_real_distribution<Scalar> unit(Scalar(0), Scalar(1));
  const int first = exclude_empty ? 1 : 0;
  for (int cell = 0; cell < g.size(); ++cell) {
    const auto row = probs.row(cell);
    const Scalar total = row.segment(first, kTileAlphabetSize - first).sum();
    Scalar u = unit(rng) * total;
    int code = kTileAlphabetSize - 1;
    for (int k = first; k < kTileAlphabetSize; ++k) {
      u -= row(k);
      if (u < Scalar(0)) {
        code = k;
        break;
      }
    }
    // Guard against round-off leaving u marginally positive; land on the last positive weight.
    if (u >= Scalar(0)) {
      for (int k = kTileAlphabetSize - 1; k >= first; --k) {
        if (row(k) > Scalar(0)) {
          code = k;
          break;
        }
      }
    }
    g.set_index(cell, TileCode(code));
  }
  return g;
}

enum class SwarmMethod { Pso, Gwo };

/// Which wolf supplies the third position in the grey wolf update.
enum class GwoThirdLeader { Worst, Delta };

struct SwarmConfig {
  int population = 40;
  int generations = 200;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  double velocity_clamp = 8.0;
  double gwo_epsilon_amplitude = 0.1;
  GwoThirdLeader gwo_third = GwoThirdLeader::Worst;
  bool repair_after_decode = true;
  bool full_coverage = true;
  std::uint64_t seed = 0;
};

void validate(const SwarmConfig& cfg);

/// Softmax, categorical sample, then (per config) repair and empty-cell filling.
Grid decode_sample(const LogitField<double>& logits, int height, int width, const SwarmConfig& cfg, Rng& rng);

struct Particle {
  LogitField<double> position;
  LogitField<double> velocity;
  LogitField<double> best_position;
  Grid grid;
  double fitness = 0.0;
  double best_fitness = 0.0;
};

struct PsoState {
  int height = 0;
  int width = 0;
  std::vector<Particle> particles;
  LogitField<double> global_best_position;
  Grid global_best_grid;
  double global_best_fitness = 0.0;
  Rng rng;
};

PsoState pso_init(int height, int width, const SwarmConfig& cfg, const FitnessWeights& weights);
void pso_step(PsoState& state, const SwarmConfig& cfg, const FitnessWeights& weights);

struct Wolf {
  LogitField<double> position;
  Grid grid;
  double fitness = 0.0;
};

struct GwoState {
  int height = 0;
  int width = 0;
  std::vector<Wolf> pack;
  Grid best_grid;
  double best_fitness = 0.0;
  Rng rng;
};

GwoState gwo_init(int height, int width, const SwarmConfig& cfg, const FitnessWeights& weights);
void gwo_step(GwoState& state, const SwarmConfig& cfg, const FitnessWeights& weights);

struct SwarmResult {
  Grid best;
  double best_fitness = 0.0;
  std::vector<double> trace;  // best-ever fitness after each generation
};

SwarmResult run_swarm(SwarmMethod method, int height, int width, const SwarmConfig& cfg,
                      const FitnessWeights& weights = {});

std::string to_string(SwarmMethod m);

}  // namespace roadgen
