// Serial reference kernels vs. their OpenMP counterparts.
//   ./bench_kernels --benchmark_filter=apply_local

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qrepro/analysis.hpp"
#include "qrepro/kernels.hpp"
#include "qrepro/search.hpp"
#include "qrepro/states.hpp"

using namespace qrepro;

namespace {

std::vector<Complex> random_amps(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Complex> v(dim);
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return v;
}

std::vector<Matrix2> random_ops(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> a(-3.0, 3.0);
    std::vector<Matrix2> ops;
    for (int p = 0; p < n; ++p)
        ops.push_back(su2_from_angles(a(rng), a(rng), a(rng)).matrix());
    return ops;
}

template <Exec E>
void BM_apply_local(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto ops = random_ops(n, 1);
    auto amps = random_amps(std::size_t{1} << n, 2);
    for (auto _ : st) {
        kernels::apply_local(E, amps, n, ops);
        benchmark::DoNotOptimize(amps.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(amps.size()) * n);
}

template <Exec E>
void BM_gram(benchmark::State& st) {
    const std::size_t count = static_cast<std::size_t>(st.range(0));
    std::vector<std::vector<Complex>> vecs;
    for (std::size_t i = 0; i < count; ++i)
        vecs.push_back(random_amps(count, 10 + i));
    std::vector<Complex> out(count * count);
    for (auto _ : st) {
        kernels::gram(E, vecs, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <Exec E>
void BM_gram_matrix(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto state = make_state(StateKind::dicke(n / 2), n);
    const auto ops = flip_operators(n);
    for (auto _ : st)
        benchmark::DoNotOptimize(gram_matrix(state, ops, E).max_offdiag());
}

template <Exec E>
void BM_search(benchmark::State& st) {
    const auto state = make_state(StateKind::w(), 3);
    SearchConfig cfg;
    cfg.restarts = static_cast<int>(st.range(0));
    cfg.max_iters = 200;
    cfg.exec = E;
    for (auto _ : st)
        benchmark::DoNotOptimize(search_operators(state, cfg).best_residual);
}

} // namespace

BENCHMARK(BM_apply_local<Exec::serial>)->DenseRange(12, 20, 4);
BENCHMARK(BM_apply_local<Exec::parallel>)->DenseRange(12, 20, 4)->UseRealTime();
BENCHMARK(BM_gram<Exec::serial>)->RangeMultiplier(4)->Range(64, 256);
BENCHMARK(BM_gram<Exec::parallel>)->RangeMultiplier(4)->Range(64, 256)->UseRealTime();
BENCHMARK(BM_gram_matrix<Exec::serial>)->DenseRange(4, 8, 2);
BENCHMARK(BM_gram_matrix<Exec::parallel>)->DenseRange(4, 8, 2)->UseRealTime();
BENCHMARK(BM_search<Exec::serial>)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search<Exec::parallel>)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
