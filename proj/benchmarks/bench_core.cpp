#include <benchmark/benchmark.h>

#include <cmath>

#include "cspace/kernels.hpp"
#include "cspace/orbit.hpp"
#include "cspace/qscope.hpp"

using namespace cspace;

static void BM_CsCoefficientsH4(benchmark::State& st) {
  const CSSystem sys = CSSystem::h4(static_cast<int>(st.range(0)));
  const PhasePoint a = PhasePoint::plane(1.3, -0.7);
  for (auto _ : st) benchmark::DoNotOptimize(cs_coefficients(sys, a));
}
BENCHMARK(BM_CsCoefficientsH4)->Arg(64)->Arg(256)->Arg(1024);

static void BM_CsCoefficientsSU11(benchmark::State& st) {
  const CSSystem sys = CSSystem::su11(3.0, static_cast<int>(st.range(0)));
  const PhasePoint a = PhasePoint::disk_polar(1.0, 0.4);
  for (auto _ : st) benchmark::DoNotOptimize(cs_coefficients(sys, a));
}
BENCHMARK(BM_CsCoefficientsSU11)->Arg(128)->Arg(512);

static void BM_GroupActionSU11(benchmark::State& st) {
  const CSSystem sys = CSSystem::su11(3.0);
  const PhasePoint a = PhasePoint::disk(cplx(0.2, -0.3));
  const GeneratorSpec gen = GeneratorSpec::k0_plus_k2();
  for (auto _ : st) benchmark::DoNotOptimize(group_action(sys, gen, 3.7, a));
}
BENCHMARK(BM_GroupActionSU11);

static void BM_BuildFockEigenstate(benchmark::State& st) {
  const CSSystem sys = CSSystem::h4();
  const OrbitSpec orbit = in_phase_orbit(sys, GeneratorSpec::n(), 4.0);
  const SuperpositionPlan plan = make_plan(orbit, 4.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(build_eigenstate(plan));
}
BENCHMARK(BM_BuildFockEigenstate)->Arg(128)->Arg(512);

static void BM_BuildK2Eigenstate(benchmark::State& st) {
  const CSSystem sys = CSSystem::su11(3.0, 512);
  const OrbitSpec orbit = in_phase_orbit(sys, GeneratorSpec::k2(), 2.0);
  const SuperpositionPlan plan = make_plan(orbit, 2.0);
  for (auto _ : st) benchmark::DoNotOptimize(build_eigenstate(plan));
}
BENCHMARK(BM_BuildK2Eigenstate)->Unit(benchmark::kMillisecond);

static void BM_QGrid(benchmark::State& st) {
  const CSSystem sys = CSSystem::h4();
  const StateVector psi = cs_coefficients(sys, PhasePoint::plane(1.0, 0.5));
  GridSpec grid;
  grid.nx = grid.ny = 200;
  for (auto _ : st) benchmark::DoNotOptimize(q_grid(sys, psi, grid, MeasureConvention::Raw, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_QGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
