#include <benchmark/benchmark.h>

#include <vector>

#include "augequiv/config.hpp"
#include "augequiv/dataset.hpp"
#include "augequiv/equivlaw.hpp"
#include "augequiv/linfit.hpp"
#include "augequiv/surface.hpp"

using namespace augequiv;

namespace {

std::vector<SlicePoint> cifar_slice() {
    static const auto records = load_fixture_group("cifar10");
    return slice_for_base(records, "cifar10", Mode::ClosedSet, 5000);
}

void BM_SelectModel(benchmark::State& state) {
    auto points = cifar_slice();
    for (auto _ : state)
        benchmark::DoNotOptimize(select_model(points, 1.0, Criterion::AdjustedR2));
}
BENCHMARK(BM_SelectModel);

void BM_OlsFit(benchmark::State& state) {
    auto points = cifar_slice();
    std::vector<BasisId> subset = {BasisId::LogReal, BasisId::LogSyn, BasisId::LogTotal};
    for (auto _ : state) benchmark::DoNotOptimize(ols_fit(points, subset, 1.0));
}
BENCHMARK(BM_OlsFit);

void BM_FitLaw(benchmark::State& state) {
    // forward-generated tuples over the bundled cifar10 grid
    EquivalenceLaw truth;
    truth.c1 = 0.88;
    truth.c2 = 2.53;
    truth.tau = compute_tau(50000);
    std::vector<EquivalenceTuple> tuples;
    for (std::int64_t n_base : {500, 5000, 25000})
        for (double r : {1.0, 2.0, 3.0})
            tuples.push_back({n_base, r * n_base,
                              predict_ratio(truth, n_base, r) * n_base, ""});
    for (auto _ : state)
        benchmark::DoNotOptimize(fit_law(tuples, truth.tau, LossSpace::Log));
}
BENCHMARK(BM_FitLaw);

void BM_Contour(benchmark::State& state) {
    auto points = cifar_slice();
    auto sel = select_model(points, 1.0, Criterion::AdjustedR2);
    auto surface = make_surface("cifar10", Mode::ClosedSet, 5000, sel.best, 1.0, points);
    double lo = surface.eval_added(0, 0), hi = surface.eval_added(20000, 0);
    std::vector<double> levels;
    for (int i = 1; i <= 8; ++i) levels.push_back(lo + (hi - lo) * i / 9.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(contour_grid(surface, default_grid(surface), levels));
}
BENCHMARK(BM_Contour);

}  // namespace

BENCHMARK_MAIN();
