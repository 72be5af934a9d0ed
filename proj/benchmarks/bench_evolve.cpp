#include <benchmark/benchmark.h>

#include "ctqec/code.hpp"
#include "ctqec/dynamics.hpp"
#include "ctqec/integrators.hpp"
#include "ctqec/nonmarkov_reduced.hpp"

namespace {

using namespace ctqec;

void BM_Markov1qStep(benchmark::State& state) {
  SimConfig config;
  config.kappa = 8.0;
  config.lambda = 1.0;
  config.t_max = 1.0;
  config.dt = 0.01 / 8.0;
  LindbladGenerator noise = bitflip_lindblad(1, {config.lambda});
  JumpCorrection jump(strong_recovery(trivial_code()), config.kappa);
  std::vector<Generator> gens = {
      [noise](const Mat& rho) { return lindblad_apply(noise, rho); },
      [jump](const Mat& rho) { return jump_apply(jump, rho); }};
  auto rho0 = DensityMatrix::basis_state({2}, 0);
  for (auto _ : state) {
    auto record = evolve_deterministic(gens, rho0, config);
    benchmark::DoNotOptimize(record.states.back());
  }
}
BENCHMARK(BM_Markov1qStep);

void BM_Markov3qStep(benchmark::State& state) {
  SimConfig config;
  config.kappa = 10.0;
  config.lambda = 1.0;
  config.t_max = 0.5;
  config.dt = 0.001;
  CodeSpec code = bitflip_code();
  LindbladGenerator noise = bitflip_lindblad(3, {1.0, 1.0, 1.0});
  JumpCorrection jump(strong_recovery(code), config.kappa);
  std::vector<Generator> gens = {
      [noise](const Mat& rho) { return lindblad_apply(noise, rho); },
      [jump](const Mat& rho) { return jump_apply(jump, rho); }};
  auto rho0 = DensityMatrix::basis_state({2, 2, 2}, 0);
  for (auto _ : state) {
    auto record = evolve_deterministic(gens, rho0, config);
    benchmark::DoNotOptimize(record.states.back());
  }
}
BENCHMARK(BM_Markov3qStep);

void BM_WeakJumpMap(benchmark::State& state) {
  KrausMap map = weak_jump_map(0.1);
  Mat rho = Mat::Identity(2, 2) / 2.0;
  for (auto _ : state) {
    rho = apply_kraus(map, rho);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_WeakJumpMap);

void BM_SimultaneousSyndromeAveraged(benchmark::State& state) {
  CodeSpec code = bitflip_code();
  SimultaneousSyndromeScheme scheme(code, 0.05);
  Mat rho = code.code_projector / 2.0;
  for (auto _ : state) {
    rho = scheme.averaged(rho);
    rho /= rho.trace().real();
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_SimultaneousSyndromeAveraged);

void BM_SdeStep1q(benchmark::State& state) {
  SimConfig config;
  config.kappa = 1.0;
  config.lambda = 0.2;
  config.dt = 0.002;
  config.t_max = 0.2;
  config.store_stride = 100;
  const Mat z = pauli_matrix(Pauli::Z);
  LindbladGenerator noise = bitflip_lindblad(1, {config.lambda});
  Generator drift = [noise, z, &config](const Mat& rho) {
    return lindblad_apply(noise, rho) + (config.kappa / 4.0) * dissipator(z, rho);
  };
  SdeOptions options;
  options.diffusion_ops = {z};
  options.kappa = config.kappa;
  auto rho0 = DensityMatrix::basis_state({2}, 0);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    CounterRng rng(42, stream++);
    auto record = evolve_sde(drift, options, rho0, config, rng);
    benchmark::DoNotOptimize(record.states.back());
  }
}
BENCHMARK(BM_SdeStep1q);

void BM_NonMarkovReducedBuild(benchmark::State& state) {
  for (auto _ : state) {
    NonMarkov3qReduced reduced(100.0, 1.0);
    benchmark::DoNotOptimize(reduced.rate_matrix());
  }
}
BENCHMARK(BM_NonMarkovReducedBuild);

}  // namespace

BENCHMARK_MAIN();
