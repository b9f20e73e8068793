#include <benchmark/benchmark.h>

#include "gs/catalog.hpp"
#include "gs/contour.hpp"
#include "gs/fields.hpp"
#include "gs/profiles.hpp"
#include "gs/reductions.hpp"
#include "gs/residual.hpp"
#include "gs/special_functions.hpp"

using namespace gs;

static void BM_DshapeJetEval(benchmark::State& state) {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    double r = 0.7, z = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.eval(r, z));
    }
}
BENCHMARK(BM_DshapeJetEval);

static void BM_Residual1000(benchmark::State& state) {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(residual(s, {1000}));
    }
}
BENCHMARK(BM_Residual1000);

static void BM_BesselJ1(benchmark::State& state) {
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j1(x));
        x += 0.37;
        if (x > 49) x -= 48.7;
    }
}
BENCHMARK(BM_BesselJ1);

static void BM_SiCi(benchmark::State& state) {
    double x = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(si(x) + ci(x));
        x += 0.53;
        if (x > 99) x -= 98.6;
    }
}
BENCHMARK(BM_SiCi);

static void BM_ClassifyPowerPair(benchmark::State& state) {
    const ProfileSpec F = parse_profile("-1.5*psi^-7");
    const ProfileSpec G = parse_profile("0.25*psi^-3");
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(F, G));
    }
}
BENCHMARK(BM_ClassifyPowerPair);

static void BM_IntegrateSimilarity(benchmark::State& state) {
    TagInfo tag{SymTag::A, {{"q", 1.0}, {"a", -1.0}, {"b", 1.0}, {"c", 0.0}}};
    const ReducedODE ode =
        reduce(tag, ProfileSpec::power_shifted(-1, 0, 3), ProfileSpec::power_shifted(1, 0, 2));
    OdeOptions opts;
    opts.tol = 1e-10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_similarity_branch(ode, 1e-3, 5.0, opts));
    }
}
BENCHMARK(BM_IntegrateSimilarity);

static void BM_TraceContour(benchmark::State& state) {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    const int n = static_cast<int>(state.range(0));
    const GridField f = sample_for_contours(s, {s.box.r0, s.box.r1, s.box.z0, s.box.z1, n, n}, -1e6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_contour(f, 0.6));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_TraceContour)->Arg(129)->Arg(257)->Arg(513);

BENCHMARK_MAIN();
