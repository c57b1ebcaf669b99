#include <benchmark/benchmark.h>

#include "abcwave/assembly.hpp"
#include "abcwave/experiments.hpp"
#include "abcwave/spectral.hpp"
#include "abcwave/timeint.hpp"

namespace {

abcwave::RunConfig damped_disk_config(int n_theta, int n_r) {
  abcwave::RunConfig cfg;
  cfg.domain.n_theta = n_theta;
  cfg.domain.n_r = n_r;
  cfg.coefficients.d = abcwave::Profile::constant(1.0);
  cfg.coefficients.delta = abcwave::Profile::constant(0.5);
  cfg.coefficients.kappa = abcwave::Profile::constant(1.0);
  cfg.initial.u0 = abcwave::Profile::radial(0.0, 1.0);
  cfg.initial.v1 = abcwave::Profile::angular(0.0, 1.0, 2);
  return cfg;
}

void BM_AssembleBulk(benchmark::State& state) {
  const int n_theta = static_cast<int>(state.range(0));
  abcwave::RunConfig cfg = damped_disk_config(n_theta, n_theta / 4);
  const abcwave::MeshPair mp = abcwave::build_mesh(cfg.domain);
  const abcwave::NodalCoefficients nodal =
      abcwave::evaluate_coefficients(cfg.coefficients, mp.mesh, mp.boundary);
  for (auto _ : state) {
    benchmark::DoNotOptimize(abcwave::assemble_bulk(mp.mesh, nodal));
  }
  state.SetItemsProcessed(state.iterations() * mp.mesh.n_triangles());
}
BENCHMARK(BM_AssembleBulk)->Arg(32)->Arg(64)->Arg(128);

void BM_BuildGenerator(benchmark::State& state) {
  const int n_theta = static_cast<int>(state.range(0));
  abcwave::RunConfig cfg = damped_disk_config(n_theta, n_theta / 4);
  const abcwave::MeshPair mp = abcwave::build_mesh(cfg.domain);
  const abcwave::NodalCoefficients nodal =
      abcwave::evaluate_coefficients(cfg.coefficients, mp.mesh, mp.boundary);
  const abcwave::BulkMatrices bulk = abcwave::assemble_bulk(mp.mesh, nodal);
  const abcwave::SurfaceMatrices surface =
      abcwave::assemble_surface(mp.boundary, nodal);
  const abcwave::TraceMap trace = abcwave::build_trace_map(mp.mesh, mp.boundary);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        abcwave::build_generator(bulk, surface, trace, nodal));
  }
}
BENCHMARK(BM_BuildGenerator)->Arg(32)->Arg(64);

void BM_MidpointStep(benchmark::State& state) {
  const int n_theta = static_cast<int>(state.range(0));
  const abcwave::PreparedSystem ps =
      abcwave::prepare(damped_disk_config(n_theta, n_theta / 4));
  const abcwave::MidpointStepper stepper(ps.system, ps.cfg.stepper.dt);
  abcwave::StateVector x = ps.x0;
  for (auto _ : state) {
    x = stepper.step(x);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MidpointStep)->Arg(32)->Arg(64)->Arg(128);

void BM_EnergyEvaluation(benchmark::State& state) {
  const abcwave::PreparedSystem ps = abcwave::prepare(damped_disk_config(64, 16));
  for (auto _ : state) {
    benchmark::DoNotOptimize(abcwave::energy(ps.system, ps.x0));
  }
}
BENCHMARK(BM_EnergyEvaluation);

void BM_SpectrumDense(benchmark::State& state) {
  const int n_theta = static_cast<int>(state.range(0));
  const abcwave::PreparedSystem ps =
      abcwave::prepare(damped_disk_config(n_theta, n_theta / 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(abcwave::analyze_spectrum(ps.system));
  }
}
BENCHMARK(BM_SpectrumDense)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
