#include <benchmark/benchmark.h>

#include <brjuno/series.hpp>

using namespace brjuno;

namespace
{

template <coefficient_field C>
vector_series<C> dense(std::size_t n, unsigned truncation, unsigned bits)
{
    vector_series<C> s(n, truncation, bits);
    long k = 1;
    for (const auto &q : indices_up_to(n, 1, truncation)) {
        for (std::size_t j = 0; j < n; ++j) {
            s.add_term(j, q, field_traits<C>::from_rational(mpq_class(1, k + 1), mpq_class(k % 3, 7), bits));
            ++k;
        }
    }
    return s;
}

template <coefficient_field C>
void bm_compose(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto truncation = static_cast<unsigned>(state.range(1));
    const auto f = dense<C>(n, truncation, 128);
    const auto g = dense<C>(n, truncation, 128);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(f, g, truncation));
    }
}

} // namespace

BENCHMARK(bm_compose<double_complex>)->Args({1, 16})->Args({2, 8})->Args({3, 6});
BENCHMARK(bm_compose<mp_complex>)->Args({1, 16})->Args({2, 8});
BENCHMARK(bm_compose<exact_complex>)->Args({1, 8})->Args({2, 5});
