#ifndef BRJUNO_TESTS_FIXTURES_HPP
#define BRJUNO_TESTS_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <brjuno/complex.hpp>
#include <brjuno/quadratic.hpp>
#include <brjuno/series.hpp>
#include <brjuno/spectrum.hpp>

namespace brjuno::testing
{

exact_complex gq(long re_num, long re_den = 1, long im_num = 0, long im_den = 1);

// (sqrt(5) - 1) / 2
quadratic_number golden_angle();
// sum_{k <= 6} 10^(-k!)
mpq_class truncated_liouville();

spectrum_spec half_spectrum();
spectrum_spec golden_spectrum();
// (exp(2 pi i golden), 1)
spectrum_spec ex1_spectrum();
spectrum_spec rotation_spectrum(const quadratic_number &angle);

// z/2 + z^2
vector_series<exact_complex> half_germ_exact(unsigned truncation);
template <coefficient_field C>
vector_series<C> quadratic_germ(const spectrum_spec &spec, unsigned truncation, unsigned bits);
// f_1 = lambda z + z^2, f_2 = w
vector_series<mp_complex> ex1_germ(unsigned truncation, unsigned bits = big_float::default_bits);

// Two-dimensional germs with a single level of resonances: lambda_1 a
// Gaussian rational off the unit circle, mu in {1, -1, i, -i},
// F_1 = lambda_1 z + a(z), F_2 = mu w + b(z, w) with b divisible by z.
struct level1_fixture {
    std::string label;
    spectrum_spec spec;
    vector_series<exact_complex> f;
};

std::vector<level1_fixture> level1_fixtures(std::size_t count, std::uint64_t seed, unsigned truncation);

// Random sparse series with small rational coefficients, no linear part
// unless with_linear is set (then identity linear part).
vector_series<exact_complex> random_series(std::size_t n, unsigned truncation, std::uint64_t seed,
                                           bool with_linear, std::size_t terms);

} // namespace brjuno::testing

#endif
