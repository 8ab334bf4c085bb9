#include <benchmark/benchmark.h>

#include <brjuno/majorant.hpp>

using namespace brjuno;

namespace
{

void bm_delta_table(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto truncation = static_cast<unsigned>(state.range(1));
    std::vector<eigenvalue_spec> eigs;
    for (std::size_t j = 0; j < n; ++j) {
        eigs.push_back(eigenvalue_spec::polar(mpq_class(1, 2 + static_cast<long>(j)),
                                              quadratic_number::from_abcd(-1, 1, 2 + static_cast<long>(j), 5)));
    }
    const spectrum_spec spec(eigs);
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_table(spec, truncation, 128));
    }
}

void bm_alpha(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha_sequence(static_cast<unsigned>(state.range(0))));
    }
}

} // namespace

BENCHMARK(bm_delta_table)->Args({1, 12})->Args({2, 8})->Args({3, 6});
BENCHMARK(bm_alpha)->Arg(12)->Arg(40);
