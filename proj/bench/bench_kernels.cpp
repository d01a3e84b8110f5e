// Serial reference against the OpenMP kernels on Z_k x| Z_2 (inversion),
// H = {0, k/2} in Z_k, for even k.

#include "hecke/catalog.hpp"
#include "hecke/corner.hpp"
#include "hecke/kernels.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

using namespace hecke;

namespace {

struct Fixture {
    CatalogPair pair;
    RegularRep rep;
    RationalMatrix p;

    explicit Fixture(std::size_t k) : pair(build(k)), rep(*pair.pair), p(projection_p(rep, pair.pair->subgroup())) {}

    static CatalogPair build(std::size_t k) {
        std::vector<std::size_t> id(k), inv(k);
        for (std::size_t v = 0; v < k; ++v) {
            id[v] = v;
            inv[v] = (k - v) % k;
        }
        return build_pair(nlohmann::json{{"family", "finite_semidirect"},
                                         {"N", cyclic_table(k)},
                                         {"Q", cyclic_table(2)},
                                         {"action", {id, inv}},
                                         {"H", {0, k / 2}}});
    }
};

Fixture& fixture(std::size_t k) {
    static std::map<std::size_t, std::unique_ptr<Fixture>> cache;
    auto& slot = cache[k];
    if (!slot) slot = std::make_unique<Fixture>(k);
    return *slot;
}

template <RationalMatrix (*Kernel)(const RegularRep&, const RationalMatrix&)>
void bench_matrix_kernel(benchmark::State& state) {
    auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.rep, f.p));
    state.counters["order"] = static_cast<double>(f.rep.order());
}

template <bool Parallel>
void bench_rank(benchmark::State& state) {
    auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const auto span = kernels::corner_span_serial(f.rep, f.p);
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? kernels::rank_parallel(span) : kernels::rank_serial(span));
    state.counters["order"] = static_cast<double>(f.rep.order());
}

}  // namespace

BENCHMARK(bench_matrix_kernel<kernels::conjugation_sum_serial>)->Name("conjugation_sum/serial")->Arg(12)->Arg(24)->Arg(48);
BENCHMARK(bench_matrix_kernel<kernels::conjugation_sum_parallel>)->Name("conjugation_sum/parallel")->Arg(12)->Arg(24)->Arg(48);
BENCHMARK(bench_matrix_kernel<kernels::corner_span_serial>)->Name("corner_span/serial")->Arg(12)->Arg(24);
BENCHMARK(bench_matrix_kernel<kernels::corner_span_parallel>)->Name("corner_span/parallel")->Arg(12)->Arg(24);
BENCHMARK(bench_rank<false>)->Name("rank/serial")->Arg(12)->Arg(24);
BENCHMARK(bench_rank<true>)->Name("rank/parallel")->Arg(12)->Arg(24);

BENCHMARK_MAIN();
