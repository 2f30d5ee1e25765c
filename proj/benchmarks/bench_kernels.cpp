#include <random>

#include <benchmark/benchmark.h>

#include "radproof/bvp.hpp"
#include "radproof/kantorovich.hpp"
#include "radproof/rigorous_gemm.hpp"
#include "radproof/sequence.hpp"

using namespace radproof;

namespace {

ChebSeq<Interval> random_cheb(std::mt19937& g, std::size_t n, double nu) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ChebSeq<Interval> a(n, nu);
  for (auto& x : a.c) {
    const double m = u(g);
    x = Interval(m, m + 1e-16);
  }
  return a;
}

void BM_ChebConvolution(benchmark::State& state) {
  std::mt19937 g(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_cheb(g, n, 1.01), b = random_cheb(g, n, 1.01);
  for (auto _ : state) benchmark::DoNotOptimize(cheb_convolution(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChebConvolution)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_RigorousProduct(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const ThinMatrix a(Eigen::MatrixXcd(Eigen::MatrixXcd::Random(n, n)));
  BallMatrix b(n, n, true);
  b.re = Eigen::MatrixXd::Random(n, n);
  b.im = Eigen::MatrixXd::Random(n, n);
  b.rad = Eigen::MatrixXd::Constant(n, n, 1e-15);
  for (auto _ : state) benchmark::DoNotOptimize(rigorous_product(a, b));
}
BENCHMARK(BM_RigorousProduct)->RangeMultiplier(2)->Range(64, 512);

void BM_WeightedBlockOpnorm(benchmark::State& state) {
  const auto nC = static_cast<std::size_t>(state.range(0));
  const Layout lay(2, 40, nC);
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(lay.dim(), lay.dim()).cwiseAbs();
  for (auto _ : state) benchmark::DoNotOptimize(weighted_block_opnorm(m, lay, lay, 1.01));
}
BENCHMARK(BM_WeightedBlockOpnorm)->Arg(50)->Arg(100)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
