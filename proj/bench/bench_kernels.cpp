// Serial reference vs OpenMP for the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "jetforge/bundle.hpp"
#include "jetforge/jets.hpp"
#include "jetforge/poly_parser.hpp"
#include "jetforge/singularity.hpp"

namespace {

using namespace jetforge;

Jet2 random_jet(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::MatrixXd lin(m, m);
  for (Eigen::Index i = 0; i < lin.size(); ++i) lin.data()[i] = u(rng);
  SymCube quad(m, m);
  for (double& v : quad.data()) v = u(rng);
  return Jet2(lin, quad);
}

void BM_ComposeBatch(benchmark::State& state, Exec exec) {
  std::mt19937_64 rng(7);
  const int m = 4;
  std::vector<Jet2> a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a.push_back(random_jet(rng, m));
    b.push_back(random_jet(rng, m));
  }
  for (auto _ : state) benchmark::DoNotOptimize(compose_batch(a, b, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

PolyAtlas quadratic_atlas() {
  const int m = 2;
  const PolyMap f = parse_polymap({"x1", "x2 + x1^2"}, m);
  const PolyMap s2 = parse_polymap({"x1 + x2^2", "x2"}, m);
  const PolyMap s2_inv = parse_polymap({"x1 - x2^2", "x2"}, m);
  const Box box{{{-1.0, 1.0}, {-1.0, 1.0}}};
  std::vector<Chart> charts{{"a", box, f}, {"b", box, compose(s2, f)}};
  std::vector<Overlap> overlaps{{"a", "b", s2}, {"b", "a", s2_inv}};
  return PolyAtlas(m, charts, overlaps);
}

void BM_ReductionCheck(benchmark::State& state, Exec exec) {
  const PolyAtlas atlas = quadratic_atlas();
  const GroupDescriptor gl(GroupKind::GL, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(reduction_check(atlas, gl, static_cast<int>(state.range(0)), 1, kMemberTol, exec));
}

void BM_AnalyzeSeeds(benchmark::State& state, Exec exec) {
  const PolyVectorField v(parse_polymap({"x1 + x2^2 - x1^3", "x1*x2 - x2"}, 2));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::vector<Eigen::VectorXd> seeds;
  for (int i = 0; i < state.range(0); ++i) seeds.push_back(Eigen::Vector2d(u(rng), u(rng)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_seeds(v, seeds, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ComposeBatch, serial, Exec::Serial)->Arg(4096);
BENCHMARK_CAPTURE(BM_ComposeBatch, openmp, Exec::Parallel)->Arg(4096);
BENCHMARK_CAPTURE(BM_ReductionCheck, serial, Exec::Serial)->Arg(1024);
BENCHMARK_CAPTURE(BM_ReductionCheck, openmp, Exec::Parallel)->Arg(1024);
BENCHMARK_CAPTURE(BM_AnalyzeSeeds, serial, Exec::Serial)->Arg(1024);
BENCHMARK_CAPTURE(BM_AnalyzeSeeds, openmp, Exec::Parallel)->Arg(1024);

BENCHMARK_MAIN();
