#include <benchmark/benchmark.h>

#include <lmg/bosonic_lindblad.hpp>
#include <lmg/lmg_model.hpp>
#include <lmg/spectral.hpp>

using namespace lmg;

namespace {

ModelParams params_for(double S) { return {S, 0.5, 0.05, 4.0}; }

void BM_BandedLindbladAction(benchmark::State& state) {
  const ModelParams p = params_for(double(state.range(0)));
  const int d = p.dim();
  const BandedModel ops = banded_model(p);
  MatrixXcd rho = MatrixXcd::Random(d, d), out(d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  for (auto _ : state) {
    lindblad_action(ops, rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * d * d);
}
BENCHMARK(BM_BandedLindbladAction)->Arg(60)->Arg(150)->Arg(300);

void BM_DenseLindbladAction(benchmark::State& state) {
  const ModelParams p = params_for(double(state.range(0)));
  const int d = p.dim();
  const ModelOperators ops = build_operators(p);
  MatrixXcd rho = MatrixXcd::Random(d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  for (auto _ : state) {
    MatrixXcd out = lindblad_action(ops, rho);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_DenseLindbladAction)->Arg(60)->Arg(150);

void BM_RestrictedAssembly(benchmark::State& state) {
  const ModelParams p{300.0, 0.5, 0.2, 4.0};
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const RestrictedSuperoperator rsup = restricted_superoperator(p, K);
    benchmark::DoNotOptimize(rsup.matrix.data());
  }
}
BENCHMARK(BM_RestrictedAssembly)->Arg(31)->Arg(51);

void BM_SectorDiagonalize(benchmark::State& state) {
  const ModelParams p{100.0, 0.5, 0.2, 4.0};
  const int K = static_cast<int>(state.range(0));
  const RestrictedSuperoperator rsup = restricted_superoperator(p, K);
  for (auto _ : state) {
    const SpectrumResult spec = diagonalize(rsup, DiagonalizeMethod::sector_real);
    benchmark::DoNotOptimize(spec.eigenvalues.data());
  }
}
BENCHMARK(BM_SectorDiagonalize)->Arg(15)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_BosonicAssembly(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const MatrixXcd sup = bosonic_superoperator(0.5, 0.01, 4.0, n_max);
    benchmark::DoNotOptimize(sup.data());
  }
}
BENCHMARK(BM_BosonicAssembly)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
