// Serial reference kernels against their OpenMP variants.
//   bench_parallel --benchmark_filter=Lefschetz

#include "toricmmp/harness.hpp"

#include <benchmark/benchmark.h>

using namespace toricmmp;

namespace {

const std::vector<VarietyRecord>& fourfolds() {
    static const auto recs = ingest(std::string(TORICMMP_DATA_DIR) + "/smooth_fano_4.txt");
    return recs;
}

// The 4-fold with the most rays; the per-ray loop is what gets parallelised.
const Fan& widest() {
    static const Fan f = [] {
        const Fan* best = nullptr;
        for (const auto& r : fourfolds())
            if (r.valid() && (!best || r.fan->num_rays() > best->num_rays())) best = &*r.fan;
        return *best;
    }();
    return f;
}

const std::vector<VarietyRecord>& suite_sample() {
    static const auto recs = [] {
        std::vector<VarietyRecord> out;
        for (const auto& r : fourfolds())
            if (r.valid() && out.size() < 24) out.push_back(r);
        return out;
    }();
    return recs;
}

void BM_LefschetzSerial(benchmark::State& st) {
    const Fan& f = widest();
    for (auto _ : st) benchmark::DoNotOptimize(lefschetz_defect(f));
}

void BM_LefschetzParallel(benchmark::State& st) {
    const Fan& f = widest();
    for (auto _ : st) benchmark::DoNotOptimize(lefschetz_defect_parallel(f));
}

void BM_SuiteSerial(benchmark::State& st) {
    const std::vector<std::string> ids{claims::codim_bound, claims::main_dichotomy};
    for (auto _ : st) benchmark::DoNotOptimize(run_suite(suite_sample(), ids));
}

void BM_SuiteParallel(benchmark::State& st) {
    const std::vector<std::string> ids{claims::codim_bound, claims::main_dichotomy};
    for (auto _ : st)
        benchmark::DoNotOptimize(run_suite_parallel(suite_sample(), ids, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_LefschetzSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LefschetzParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
