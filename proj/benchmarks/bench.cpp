#include <benchmark/benchmark.h>

#include "soupfall/carpet.hpp"
#include "soupfall/cluster.hpp"
#include "soupfall/raster.hpp"

using namespace soupfall;

namespace {

SoupSpec circle_spec(double c, double eps_min) {
    SoupSpec spec;
    spec.c = c;
    spec.shape = ShapeMeasure{ShapeKind::Circle};
    spec.domain = UnitDisk{};
    spec.eps_min = eps_min;
    spec.rho_max = 2.0;
    return spec;
}

void BM_SampleSoup(benchmark::State& state) {
    SoupSpec spec = circle_spec(0.5, 1.0 / state.range(0));
    uint64_t seed = 0;
    for (auto _ : state) {
        Soup s = sample_soup(spec, seed++);
        benchmark::DoNotOptimize(s.curves.data());
        state.counters["curves"] = double(s.curves.size());
    }
}
BENCHMARK(BM_SampleSoup)->Arg(16)->Arg(64)->Arg(256);

void BM_CrossingGraph(benchmark::State& state) {
    Soup s = sample_soup(circle_spec(0.5, 1.0 / state.range(0)), 7);
    for (auto _ : state) {
        CrossingGraph g = crossing_graph(s.curves);
        benchmark::DoNotOptimize(g.edges.data());
        state.counters["edges"] = double(g.edges.size());
    }
    state.counters["curves"] = double(s.curves.size());
}
BENCHMARK(BM_CrossingGraph)->Arg(16)->Arg(64)->Arg(256);

void BM_Clusters(benchmark::State& state) {
    Soup s = sample_soup(circle_spec(0.5, 1.0 / 64), 7);
    for (auto _ : state) {
        ClusterSet cs = clusters(s, 0);
        benchmark::DoNotOptimize(cs.labels.data());
    }
}
BENCHMARK(BM_Clusters);

void BM_EventAEps(benchmark::State& state) {
    double eps = 1.0 / state.range(0);
    double pitch = eps / 8;
    ShapeMeasure circ{ShapeKind::Circle};
    uint64_t seed = 0;
    for (auto _ : state) {
        CrossingTrial t = event_A_eps(0.2, circ, eps, pitch, 2 * pitch, seed++);
        benchmark::DoNotOptimize(t.success);
    }
}
BENCHMARK(BM_EventAEps)->Arg(5)->Arg(10)->Arg(25);

void BM_FilledArea(benchmark::State& state) {
    std::vector<Curve> pair{Circle{{0, 0}, 1.0}, Circle{{0.8, 0}, 1.0}};
    double pitch = 1.0 / state.range(0);
    for (auto _ : state) {
        double a = filled_area(pair, pitch);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_FilledArea)->Arg(64)->Arg(256)->Arg(1024);

void BM_RwLoop(benchmark::State& state) {
    CounterRng rng(1, 0, 0);
    int n = int(state.range(0));
    for (auto _ : state) {
        LatticeLoop l = sample_rw_loop(n, 1.0, rng);
        double a = lattice_filled_area(l);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_RwLoop)->Arg(50)->Arg(200)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
