#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>

#include "cavicool/hamiltonian.hpp"
#include "cavicool/lindblad.hpp"
#include "cavicool/model_params.hpp"
#include "cavicool/numerics.hpp"
#include "cavicool/observables.hpp"
#include "cavicool/rate_model.hpp"
#include "cavicool/state.hpp"

namespace {

using namespace cavicool;

ModelParams reference_params() {
  ModelParams p;
  p.N = 100;
  p.eta = 0.02;
  p.g = 5.0;
  p.Omega = 0.5;
  p.Gamma = 0.5;
  p.nu = 1.0;
  p.kappa = 1.0;
  p.delta = 1.0;
  p.mu = 0.01;
  return p;
}

SpaceLayout layout_for(int which) {
  switch (which) {
    case 0: return build_space(1, 3, 2);   // dim 12
    case 1: return build_space(1, 6, 4);   // dim 48
    default: return build_space(2, 4, 3);  // dim 192
  }
}

// The master-equation right-hand side dominates oracle runtime; one RK4 step
// costs four of these.
void bm_lindblad_rhs(benchmark::State& state) {
  const ModelParams p = reference_params();
  const SpaceLayout layout = layout_for(int(state.range(0)));
  const LindbladEvaluator eval(p, layout, build_h_interaction(p, layout));
  const MatrixXcd rho = initial_state(layout, 0.2, 0.25).rho;
  MatrixXcd out(rho.rows(), rho.cols());
  for (auto _ : state) {
    eval.rhs(rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel("dim " + std::to_string(layout.total_dim()));
}

// Same contraction through the generic dense reference path.
void bm_lindblad_rhs_reference(benchmark::State& state) {
  const ModelParams p = reference_params();
  const SpaceLayout layout = layout_for(int(state.range(0)));
  const MatrixXcd h = build_h_interaction(p, layout);
  const MatrixXcd rho = initial_state(layout, 0.2, 0.25).rho;
  for (auto _ : state) {
    MatrixXcd out = lindblad_rhs(rho, h, p, layout);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel("dim " + std::to_string(layout.total_dim()));
}

// Stationary 16-coherence solve; the rate command does one per output row.
void bm_adiabatic_solve(benchmark::State& state) {
  const ModelParams p = reference_params();
  double zeta = 0.25;
  for (auto _ : state) {
    const Vec16 x = adiabatic_solve_x(p, zeta);
    benchmark::DoNotOptimize(x.data());
    zeta = 0.25 + 1e-12 * x[15];  // keep the input live across iterations
  }
}

// Full expectation bundle: every column the oracle command emits per sample.
void bm_extract_bundle(benchmark::State& state) {
  const SpaceLayout layout = build_space(2, 4, 3);
  const QuantumState rho = initial_state(layout, 0.2, 0.25);
  for (auto _ : state) {
    const ExpectationBundle b = extract_bundle(rho, layout);
    benchmark::DoNotOptimize(b.m);
  }
}

void bm_collective_rate(benchmark::State& state) {
  ModelParams p = reference_params();
  for (auto _ : state) {
    benchmark::DoNotOptimize(collective_rate(p).A_N);
    p.delta = p.delta == 1.0 ? 1.1 : 1.0;  // defeat value caching by the optimizer
  }
}

}  // namespace

BENCHMARK(bm_lindblad_rhs)->Arg(0)->Arg(1)->Arg(2);
BENCHMARK(bm_lindblad_rhs_reference)->Arg(0)->Arg(1)->Arg(2);
BENCHMARK(bm_adiabatic_solve);
BENCHMARK(bm_extract_bundle);
BENCHMARK(bm_collective_rate);

BENCHMARK_MAIN();
