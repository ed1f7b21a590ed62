#include <benchmark/benchmark.h>

#include <random>

#include "noma/design.hpp"
#include "noma/farey.hpp"
#include "noma/rate.hpp"
#include "noma/sim.hpp"

using namespace noma;

namespace {

const PowerBudget kUnit{1.0, 1.0};

void BM_EnumerateFarey(benchmark::State& state) {
    const auto k = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_punched_farey(k, k));
    state.SetComplexityN(k);
}
BENCHMARK(BM_EnumerateFarey)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_LocateInterval(benchmark::State& state) {
    const auto seq = enumerate_punched_farey(state.range(0), state.range(0));
    std::mt19937_64 rng(1);
    std::exponential_distribution<double> ratio(1.0);
    std::vector<double> xs(1024);
    for (auto& x : xs) x = ratio(rng);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(locate_interval(seq, xs[i++ & 1023]));
}
BENCHMARK(BM_LocateInterval)->Arg(16)->Arg(256);

void BM_DesignWeights(benchmark::State& state) {
    const ConstellationPair sizes(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const auto ch = ChannelRealization::from_magnitudes(1.0, 0.37);
    for (auto _ : state) benchmark::DoNotOptimize(design_weights(ch, kUnit, sizes));
}
BENCHMARK(BM_DesignWeights)->Arg(4)->Arg(64);

// Farey lookup against the exhaustive pair scan for the same minimum distance.
void BM_MinDistanceFarey(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto seq = enumerate_punched_farey(m - 1, m - 1);
    const NormalizedChannel nc{1.0, 0.613};
    for (auto _ : state) benchmark::DoNotOptimize(min_distance_farey(0.8, 0.45, nc, seq));
}
BENCHMARK(BM_MinDistanceFarey)->Arg(4)->Arg(16)->Arg(64);

void BM_MinDistanceBruteforce(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const NormalizedChannel nc{1.0, 0.613};
    for (auto _ : state) benchmark::DoNotOptimize(min_distance_bruteforce(0.8, 0.45, nc, {m, m}));
}
BENCHMARK(BM_MinDistanceBruteforce)->Arg(4)->Arg(16)->Arg(64);

void BM_OptimalRate(benchmark::State& state) {
    const RateProblem p(static_cast<int>(state.range(0)), 0.37);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_rate_allocation(p));
}
BENCHMARK(BM_OptimalRate)->Arg(64)->Arg(1 << 20);

struct DetectFixture {
    ConstellationPair sizes;
    ChannelRealization ch;
    DesignResult design;
    std::vector<cplx> cands;
    std::vector<cplx> received;

    explicit DetectFixture(int m)
        : sizes(m, m),
          ch({0.9, 0.3}, {0.1, -0.2}),
          design(design_weights(ch, kUnit, sizes)),
          cands(noma_candidates(design, ch, sizes)) {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
        for (int i = 0; i < 1024; ++i) received.push_back(cands[pick(rng)] + sample_noise(noise_variance(20), rng));
    }
};

void BM_DetectQuantizer(benchmark::State& state) {
    const DetectFixture f(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(detect_noma(f.received[i++ & 1023], f.design, f.ch, f.sizes));
}
BENCHMARK(BM_DetectQuantizer)->Arg(2)->Arg(4)->Arg(8);

void BM_DetectJointMl(benchmark::State& state) {
    const DetectFixture f(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(detect_ml_joint(f.received[i++ & 1023], f.cands));
}
BENCHMARK(BM_DetectJointMl)->Arg(2)->Arg(4)->Arg(8);

void BM_SchemeSymbol(benchmark::State& state) {
    SimConfig c;
    c.sizes = ConstellationPair(4, 4);
    const auto scheme = static_cast<Scheme>(state.range(0));
    Rng rng(9);
    const auto ch = ChannelRealization::from_magnitudes(1.0, 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(run_scheme_symbol(scheme, rng, ch, 30.0, c));
    state.SetLabel(to_string(scheme));
}
BENCHMARK(BM_SchemeSymbol)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
