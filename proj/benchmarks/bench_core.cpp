#include <benchmark/benchmark.h>

#include <filesystem>

#include "rac/calibration.hpp"
#include "rac/classify.hpp"
#include "rac/dataset.hpp"
#include "rac/moments.hpp"
#include "rac/utility.hpp"

namespace {

const rac::MarketDataset& reference() {
    static const auto d =
        rac::load_dataset_file(std::filesystem::path(RAC_BENCH_DATA_DIR) / "mehra_prescott_1889_1978.csv");
    return d;
}

void BM_ComputeMoments(benchmark::State& state) {
    const auto& d = reference();
    for (auto _ : state) benchmark::DoNotOptimize(rac::compute_moments(d));
}
BENCHMARK(BM_ComputeMoments);

void BM_ClosedForm(benchmark::State& state) {
    const auto m = rac::compute_moments(reference());
    double rho = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rac::calibrate_at_rho(rho, 0.99, m));
        rho = rho < 5.0 ? rho + 1e-3 : 1.0;
    }
}
BENCHMARK(BM_ClosedForm);

void BM_ClassifyPipeline(benchmark::State& state) {
    const auto& d = reference();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            rac::classify_pipeline(d, 0.961745, 1.033526, 0.99, rac::DefinitionGroup::GroupTwo));
    }
}
BENCHMARK(BM_ClassifyPipeline);

void BM_CrraUtility(benchmark::State& state) {
    double c = 3340.0;
    const rac::UtilitySpec spec{static_cast<double>(state.range(0)) / 1000.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rac::crra_utility(c, spec));
        c += 0.5;
    }
}
BENCHMARK(BM_CrraUtility)->Arg(1000)->Arg(1033)->Arg(3000);

}  // namespace
BENCHMARK_MAIN();
