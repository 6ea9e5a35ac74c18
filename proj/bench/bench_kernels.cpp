#include <benchmark/benchmark.h>

#include <random>

#include "hyperdet/detrep.hpp"
#include "hyperdet/hyperbolicity.hpp"
#include "hyperdet/sdp.hpp"
#include "hyperdet/sos.hpp"

using namespace hyperdet;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

std::vector<RationalMatrix> random_pencil(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<RationalMatrix> g;
  for (std::size_t l = 0; l < count; ++l) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
    }
    g.push_back(m);
  }
  return g;
}

SdpProblem synthetic_problem(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> index(0, m - 1);
  Eigen::MatrixXd r(m, m);
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = normal(rng);
  }
  const Eigen::MatrixXd g = r.transpose() * r / static_cast<double>(m) + Eigen::MatrixXd::Identity(m, m);
  SdpProblem p;
  p.m = m;
  p.constraints.push_back({SparseSymMatrix::from_dense(Eigen::MatrixXd::Identity(m, m)), 0.0});
  for (std::size_t k = 0; k < 2 * m; ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    const auto i = static_cast<Eigen::Index>(index(rng)), j = static_cast<Eigen::Index>(index(rng));
    a(i, j) = a(j, i) = 1.0;
    p.constraints.push_back({SparseSymMatrix::from_dense(a), 0.0});
  }
  for (auto& c : p.constraints) c.b = c.a.dot(g);
  return p;
}

const char* kQuartic = "x0^4 - 5*x0^2*x1^2 - 5*x0^2*x2^2 + 4*x1^4 + 11*x1^2*x2^2 + 6*x2^4";

}  // namespace

static void BM_PencilDeterminantInterpolated(benchmark::State& state) {
  const auto g = random_pencil(static_cast<std::size_t>(state.range(1)), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pencil_determinant_interpolated(g, exec_of(state)));
}
BENCHMARK(BM_PencilDeterminantInterpolated)->ArgsProduct({{0, 1}, {10, 14}})->Unit(benchmark::kMillisecond);

static void BM_SchurComplement(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(1));
  const SdpProblem p = synthetic_problem(m, 2);
  const Eigen::MatrixXd w = Eigen::MatrixXd::Identity(m, m) * 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(schur_complement(p, w, exec_of(state)));
}
BENCHMARK(BM_SchurComplement)->ArgsProduct({{0, 1}, {30, 60}})->Unit(benchmark::kMillisecond);

static void BM_SolveMaxEig(benchmark::State& state) {
  const SdpProblem p = synthetic_problem(static_cast<std::size_t>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_maxeig(p, kDefaultSdpTol, kDefaultSdpMaxIter, exec_of(state)));
}
BENCHMARK(BM_SolveMaxEig)->ArgsProduct({{0, 1}, {30}})->Unit(benchmark::kMillisecond);

static void BM_CheckHyperbolicSampled(benchmark::State& state) {
  const Poly h = parse_poly(kQuartic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_hyperbolic_sampled(h, Direction::first_unit(3), 256, 0, exec_of(state)));
  }
}
BENCHMARK(BM_CheckHyperbolicSampled)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

static void BM_PdWitnessCheck(benchmark::State& state) {
  const QuotientContext ctx(parse_poly(kQuartic));
  for (auto _ : state) benchmark::DoNotOptimize(pd_witness_check(ctx, 256, 0, exec_of(state)));
}
BENCHMARK(BM_PdWitnessCheck)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

static void BM_GramProblem(benchmark::State& state) {
  const QuotientContext ctx(parse_poly(kQuartic));
  const BezoutianForm omega0 = bezoutian_of(ctx, partial_derivative(ctx.h_monic(), 0));
  for (auto _ : state) benchmark::DoNotOptimize(gram_problem(ctx, omega0, 2, exec_of(state)));
}
BENCHMARK(BM_GramProblem)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
