#include <benchmark/benchmark.h>

#include <random>

#include "bolcat/catalog.hpp"

using namespace bolcat;

namespace {

const catalog::Catalog& cat() {
  static const catalog::Catalog c = catalog::load_catalog(catalog::default_data_dir());
  return c;
}

liealg::Element random_element(const liealg::LieAlgebra::Ptr& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  RatVec v;
  for (int i = 0; i < a->dim(); ++i) {
    Rat q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  return liealg::Element(a, v);
}

void BM_Bracket(benchmark::State& state) {
  auto a = cat().entry("su21").algebra;
  std::mt19937_64 rng(1);
  auto x = random_element(a, rng), y = random_element(a, rng);
  for (auto _ : state) benchmark::DoNotOptimize(liealg::bracket(x, y));
}
BENCHMARK(BM_Bracket);

void BM_VerifyJacobi(benchmark::State& state) {
  auto a = cat().entry("su21").algebra;
  for (auto _ : state) benchmark::DoNotOptimize(liealg::verify_jacobi(a));
}
BENCHMARK(BM_VerifyJacobi);

void BM_Rref(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  RatMat m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      Rat q(num(rng), den(rng));
      q.canonicalize();
      m(i, j) = q;
    }
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref);

void BM_SubspaceIntersect(benchmark::State& state) {
  const auto& e = cat().entry("sl3r");
  auto m1 = e.spaces.at("m1").constant_instance(e.algebra);
  auto h4 = e.spaces.at("h4").constant_instance(e.algebra);
  for (auto _ : state) benchmark::DoNotOptimize(liealg::intersect(m1, h4));
}
BENCHMARK(BM_SubspaceIntersect);

void BM_MatExp(benchmark::State& state) {
  matrixrep::Mat x(3, 3);
  x << 0.3, 1.1, -0.4, 1.1, -0.2, 0.8, -0.4, 0.8, -0.1;
  for (auto _ : state) benchmark::DoNotOptimize(matrixrep::mat_exp(x));
}
BENCHMARK(BM_MatExp);

void BM_PolarSection(benchmark::State& state) {
  const auto& e = cat().entry("sl3r");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> v(8);
  for (auto& c : v) c = u(rng);
  matrixrep::GroupElement x{e.rep, {matrixrep::mat_exp(e.rep->rep(v)[0])}};
  for (auto _ : state) benchmark::DoNotOptimize(matrixrep::polar_section(x));
}
BENCHMARK(BM_PolarSection);

void BM_LoopMul(benchmark::State& state) {
  auto l = catalog::named_loop(cat(), "h3xh2");
  std::mt19937_64 rng(4);
  auto a = loopcore::random_point(l, rng), b = loopcore::random_point(l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(loopcore::loop_mul(a, b));
}
BENCHMARK(BM_LoopMul);

void BM_BolCheck(benchmark::State& state) {
  auto l = catalog::named_loop(cat(), "su21");
  std::mt19937_64 rng(5);
  auto a = loopcore::random_point(l, rng), b = loopcore::random_point(l, rng),
       c = loopcore::random_point(l, rng);
  for (auto _ : state) {
    double r = 0;
    benchmark::DoNotOptimize(loopcore::check_bol(a, b, c, 1e-8, &r));
  }
}
BENCHMARK(BM_BolCheck);

void BM_Classification(benchmark::State& state) {
  catalog::ClassifyOptions opts;
  opts.suite_samples = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(catalog::run_classification(cat(), 9, opts));
}
BENCHMARK(BM_Classification)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
