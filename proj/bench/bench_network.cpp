// Access-window computation for a station network: serial reference,
// OpenMP kernel and the every-sample reference, plus the Gram eigensolve.

#include <tsa/network.hpp>
#include <tsa/spectra.hpp>
#include <tsa/walker.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace tsa;

std::vector<GroundStation> stations(int n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lat(-60.0, 70.0);
    std::uniform_real_distribution<double> lon(-179.0, 180.0);
    std::vector<GroundStation> out;
    for (int i = 0; i < n; ++i) {
        out.push_back({"G" + std::to_string(i), lat(rng), lon(rng), 0.0, "C"});
    }
    return out;
}

std::vector<NetworkSatellite> satellites(int n) {
    WalkerShell shell;
    shell.total = 1584;
    shell.planes = 72;
    shell.phasing = 17;
    shell.count = n;
    std::vector<NetworkSatellite> out;
    for (const auto& t : walker_constellation(shell)) {
        out.push_back({satellite_id(t), "C", t});
    }
    return out;
}

TimeSpan span(int hours) {
    const auto start = parse_iso8601("2026-09-01T00:00:00Z");
    return {start, start + std::chrono::hours{hours}};
}

void run(benchmark::State& state, Backend backend) {
    const auto gs = stations(static_cast<int>(state.range(0)));
    const auto xs = satellites(static_cast<int>(state.range(1)));
    const auto sp = span(2);
    for (auto _ : state) {
        auto set = compute_spectra(gs, xs, sp, {}, {backend, 0});
        benchmark::DoNotOptimize(set.windows.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_Serial(benchmark::State& s) { run(s, Backend::serial); }
void BM_OpenMP(benchmark::State& s) { run(s, Backend::openmp); }
void BM_Exhaustive(benchmark::State& s) { run(s, Backend::exhaustive); }

BENCHMARK(BM_Serial)->Args({10, 50})->Args({39, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Args({10, 50})->Args({39, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Exhaustive)->Args({10, 50})->Unit(benchmark::kMillisecond);

void BM_GramEigen(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 700;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> v(0, 7200);
    SpectrumMatrix h;
    for (std::size_t i = 0; i < m; ++i) {
        h.station_ids.push_back("G" + std::to_string(i));
    }
    h.satellite_ids.resize(n);
    for (std::size_t k = 0; k < m * n; ++k) {
        h.values.push_back(v(rng));
    }
    for (auto _ : state) {
        auto ge = gram(h);
        benchmark::DoNotOptimize(ge.eigenvalues.data());
    }
}
BENCHMARK(BM_GramEigen)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
