#include <doctest.h>

#include <cmath>

#include "roadgen/metrics.hpp"
#include "roadgen/swarm.hpp"

using namespace roadgen;

namespace {

SwarmConfig small_config(std::uint64_t seed) {
  SwarmConfig cfg;
  cfg.population = 8;
  cfg.generations = 25;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("softmax of zero logits is uniform") {
  const LogitField<double> p = softmax_probs(LogitField<double>::Zero(5, 16));
  CHECK((p - 1.0 / 16.0).abs().maxCoeff() < 1e-15);
}

TEST_CASE("softmax rows sum to one and ignore per-row shifts") {
  Rng rng(1);
  const LogitField<double> v = uniform_field<double>(50, -8.0, 8.0, rng);
  const LogitField<double> p = softmax_probs(v);
  CHECK((p.rowwise().sum() - 1.0).abs().maxCoeff() < 1e-12);

  Eigen::Array<double, Eigen::Dynamic, 1> shift(50);
  for (int i = 0; i < 50; ++i) shift(i) = 100.0 * i - 2000.0;
  const LogitField<double> shifted = v.colwise() + shift;
  CHECK((softmax_probs(shifted) - p).abs().maxCoeff() < 1e-12);
}

TEST_CASE("dominant logit takes nearly all the mass") {
  LogitField<double> v = LogitField<double>::Zero(1, 16);
  v(0, 7) = 50.0;
  // exp(50) / (exp(50) + 15) = 1 - 15 e^-50 / (1 + 15 e^-50)
  CHECK(softmax_probs(v)(0, 7) >= 1.0 - 1e-9);
  CHECK(softmax_probs(LogitField<float>::Constant(2, 16, 80.0f)).isFinite().all());
}

TEST_CASE("dominant logits decode to their argmax") {
  LogitField<double> v = LogitField<double>::Zero(4, 16);
  const int codes[] = {6, 3, 12, 9};
  for (int i = 0; i < 4; ++i) v(i, codes[i]) = 50.0;
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) CHECK(sample_grid(softmax_probs(v), 2, 2, false, rng) == Grid(2, 2, {6, 3, 12, 9}));
}

TEST_CASE("uniform logits sample each code about equally often") {
  // 10,000 draws, 15 degrees of freedom. The 0.999 quantile of chi-square(15) is 37.70.
  Rng rng(3);
  const LogitField<double> p = softmax_probs(LogitField<double>::Zero(100, 16));
  std::array<int, 16> counts{};
  for (int draw = 0; draw < 100; ++draw) {
    const Grid g = sample_grid(p, 10, 10, false, rng);
    for (int i = 0; i < g.size(); ++i) ++counts[g.at_index(i).value()];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 625.0) * (c - 625.0) / 625.0;
  CHECK(chi2 < 37.70);
}

TEST_CASE("full-coverage sampling never draws the empty tile") {
  Rng rng(4);
  LogitField<double> v = LogitField<double>::Zero(64, 16);
  v.col(0).setConstant(6.0);
  const Grid g = sample_grid(softmax_probs(v), 8, 8, true, rng);
  for (int i = 0; i < g.size(); ++i) CHECK_FALSE(g.at_index(i).empty());
}

TEST_CASE("decode with repair yields valid grids") {
  Rng rng(5);
  SwarmConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = decode_sample(uniform_field<double>(48, -1.0, 1.0, rng), 6, 8, cfg, rng);
    CHECK(mismatch_count(g) == 0);
    CHECK(boundary_violations(g) == 0);
    CHECK(coverage(g) == 1.0);
  }
}

TEST_CASE("velocity update edge cases") {
  Rng rng(6);
  const auto field = [&] { return uniform_field<double>(9, -1.0, 1.0, rng); };
  const LogitField<double> v = field(), x = field(), pb = field(), gb = field(), r1 = field(), r2 = field();

  CHECK((pso_velocity(v, x, pb, gb, r1, r2, 0.0, 0.0, 0.0, 8.0) == 0.0).all());
  // Attraction terms vanish when the particle sits on both bests.
  CHECK((pso_velocity(v, x, x, x, r1, r2, 0.7, 1.5, 1.5, 8.0) - 0.7 * v).abs().maxCoeff() < 1e-15);
  // Clamp.
  const LogitField<double> big = LogitField<double>::Constant(9, 16, 100.0);
  CHECK((pso_velocity(big, x, pb, gb, r1, r2, 1.0, 0.0, 0.0, 8.0) == 8.0).all());
}

TEST_CASE("grey wolf update") {
  Rng rng(7);
  const LogitField<double> x = uniform_field<double>(9, -1.0, 1.0, rng);
  const LogitField<double> zero = LogitField<double>::Zero(9, 16);
  CHECK((gwo_position(x, x, x, zero) - x).abs().maxCoeff() < 1e-15);

  SwarmConfig cfg = small_config(8);
  cfg.gwo_epsilon_amplitude = 0.0;
  GwoState s = gwo_init(4, 4, cfg, {});
  gwo_step(s, cfg, {});
  for (const Wolf& w : s.pack) CHECK((w.position == s.pack.front().position).all());
}

TEST_CASE("pso with zero coefficients freezes positions") {
  SwarmConfig cfg = small_config(9);
  cfg.inertia = cfg.c1 = cfg.c2 = 0.0;
  PsoState s = pso_init(4, 4, cfg, {});
  std::vector<LogitField<double>> before;
  for (const Particle& p : s.particles) before.push_back(p.position);
  pso_step(s, cfg, {});
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK((s.particles[i].velocity == 0.0).all());
    CHECK((s.particles[i].position == before[i]).all());
  }
}

TEST_CASE("swarm runs: monotone traces, valid outputs, reproducible") {
  for (SwarmMethod method : {SwarmMethod::Pso, SwarmMethod::Gwo}) {
    const SwarmResult a = run_swarm(method, 6, 6, small_config(10));
    REQUIRE(a.trace.size() == 25);
    for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i] <= a.trace[i - 1]);
    CHECK(a.best_fitness == a.trace.back());
    CHECK(fitness(full_report(a.best)).value == a.best_fitness);
    CHECK(mismatch_count(a.best) == 0);
    CHECK(boundary_violations(a.best) == 0);
    CHECK(coverage(a.best) == 1.0);

    const SwarmResult b = run_swarm(method, 6, 6, small_config(10));
    CHECK(a.trace == b.trace);
    CHECK(a.best == b.best);
  }
}

TEST_CASE("delta leader variant runs") {
  SwarmConfig cfg = small_config(11);
  cfg.gwo_third = GwoThirdLeader::Delta;
  const SwarmResult r = run_swarm(SwarmMethod::Gwo, 5, 5, cfg);
  CHECK(r.trace.size() == 25);
}

TEST_CASE("config validation") {
  SwarmConfig cfg;
  cfg.population = 1;
  CHECK_THROWS_AS(run_swarm(SwarmMethod::Pso, 4, 4, cfg), std::invalid_argument);
  cfg = SwarmConfig{};
  cfg.generations = 0;
  CHECK_THROWS_AS(run_swarm(SwarmMethod::Gwo, 4, 4, cfg), std::invalid_argument);
}
