#include <benchmark/benchmark.h>

#include <brjuno/linearize.hpp>

using namespace brjuno;

namespace
{

spectrum_spec golden_pair()
{
    return spectrum_spec({eigenvalue_spec::polar(mpq_class(1), quadratic_number::from_abcd(-1, 1, 2, 5)),
                          eigenvalue_spec::polar(mpq_class(1, 2), mpq_class(1, 3))});
}

template <coefficient_field C>
void bm_linearize(benchmark::State &state)
{
    const auto truncation = static_cast<unsigned>(state.range(0));
    const auto spec = golden_pair();
    auto f = linear_series<C>(spec, truncation, 128);
    const auto one = field_traits<C>::from_rational(mpq_class(1), mpq_class(0), 128);
    f.add_term(0, {2, 0}, one);
    f.add_term(0, {1, 1}, one);
    f.add_term(1, {0, 2}, one);
    f.add_term(1, {3, 0}, one);
    for (auto _ : state) {
        benchmark::DoNotOptimize(formal_linearize(f, spec, truncation));
    }
}

} // namespace

BENCHMARK(bm_linearize<double_complex>)->Arg(6)->Arg(10)->Arg(14);
BENCHMARK(bm_linearize<mp_complex>)->Arg(6)->Arg(10);
