#include "fixtures.hpp"

#include <random>

namespace brjuno::testing
{

exact_complex gq(long re_num, long re_den, long im_num, long im_den)
{
    mpq_class re(re_num, re_den);
    mpq_class im(im_num, im_den);
    re.canonicalize();
    im.canonicalize();
    return {re, im};
}

quadratic_number golden_angle()
{
    return quadratic_number::from_abcd(-1, 1, 2, 5);
}

mpq_class truncated_liouville()
{
    mpq_class out(0);
    unsigned long fact = 1;
    for (unsigned long k = 1; k <= 6; ++k) {
        fact *= k;
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fact);
        out += mpq_class(mpz_class(1), den);
    }
    out.canonicalize();
    return out;
}

spectrum_spec half_spectrum()
{
    return spectrum_spec({eigenvalue_spec::polar(mpq_class(1, 2), mpq_class(0))});
}

spectrum_spec rotation_spectrum(const quadratic_number &angle)
{
    return spectrum_spec({eigenvalue_spec::polar(mpq_class(1), angle)});
}

spectrum_spec golden_spectrum()
{
    return rotation_spectrum(golden_angle());
}

spectrum_spec ex1_spectrum()
{
    return spectrum_spec(
        {eigenvalue_spec::polar(mpq_class(1), golden_angle()), eigenvalue_spec::polar(mpq_class(1), mpq_class(0))});
}

vector_series<exact_complex> half_germ_exact(unsigned truncation)
{
    return build_series<exact_complex>(1, truncation, {{0, {1}, gq(1, 2)}, {0, {2}, gq(1)}});
}

template <coefficient_field C>
vector_series<C> quadratic_germ(const spectrum_spec &spec, unsigned truncation, unsigned bits)
{
    vector_series<C> f(1, truncation, bits);
    f.add_term(0, {1}, field_traits<C>::from_mp(spec.value(0, bits)));
    f.add_term(0, {2}, field_traits<C>::from_rational(mpq_class(1), mpq_class(0), bits));
    return f;
}

template vector_series<double_complex> quadratic_germ<double_complex>(const spectrum_spec &, unsigned, unsigned);
template vector_series<mp_complex> quadratic_germ<mp_complex>(const spectrum_spec &, unsigned, unsigned);

vector_series<mp_complex> ex1_germ(unsigned truncation, unsigned bits)
{
    const auto spec = ex1_spectrum();
    vector_series<mp_complex> f(2, truncation, bits);
    f.add_term(0, {1, 0}, spec.value(0, bits));
    f.add_term(0, {2, 0}, field_traits<mp_complex>::from_rational(mpq_class(1), mpq_class(0), bits));
    f.add_term(1, {0, 1}, field_traits<mp_complex>::from_rational(mpq_class(1), mpq_class(0), bits));
    return f;
}

namespace
{

// re, im in {-1/2, 0, 1/2}, not both zero; |c| <= 1.
exact_complex small_coefficient(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> pick(-1, 1);
    for (;;) {
        const int a = pick(rng);
        const int b = pick(rng);
        if (a != 0 || b != 0) {
            return gq(a, 2, b, 2);
        }
    }
}

} // namespace

std::vector<level1_fixture> level1_fixtures(std::size_t count, std::uint64_t seed, unsigned truncation)
{
    static const mpq_class moduli[] = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(2, 3),
                                       mpq_class(3, 2), mpq_class(2),    mpq_class(3)};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_modulus(0, 5);
    std::uniform_int_distribution<int> pick_quarter(0, 3);
    std::uniform_int_distribution<unsigned> pick_degree(2, truncation);
    std::uniform_int_distribution<int> pick_count(1, 3);

    std::vector<level1_fixture> out;
    for (std::size_t i = 0; i < count; ++i) {
        const mpq_class r = moduli[pick_modulus(rng)];
        const int k1 = pick_quarter(rng);
        const int k2 = pick_quarter(rng);
        spectrum_spec spec({eigenvalue_spec::polar(r, mpq_class(k1, 4)), eigenvalue_spec::polar(mpq_class(1), mpq_class(k2, 4))});
        vector_series<exact_complex> f(2, truncation);
        f.add_term(0, {1, 0}, spec.exact_value(0));
        f.add_term(1, {0, 1}, spec.exact_value(1));
        // F_1 depends on z only.
        for (int t = pick_count(rng); t > 0; --t) {
            const auto d = pick_degree(rng);
            f.add_term(0, {d, 0}, small_coefficient(rng));
        }
        // F_2 - mu w has z-order >= 1.
        for (int t = pick_count(rng) + 1; t > 0; --t) {
            const auto d = pick_degree(rng);
            std::uniform_int_distribution<unsigned> pick_z(1, d);
            const auto a = pick_z(rng);
            f.add_term(1, {a, d - a}, small_coefficient(rng));
        }
        out.push_back({"level1-" + std::to_string(i) + " |lambda1|=" + r.get_str() + " mu=i^" + std::to_string(k2),
                       std::move(spec), std::move(f)});
    }
    return out;
}

vector_series<exact_complex> random_series(std::size_t n, unsigned truncation, std::uint64_t seed, bool with_linear,
                                           std::size_t terms)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> pick_degree(2, truncation);
    std::uniform_int_distribution<std::size_t> pick_coord(0, n - 1);
    vector_series<exact_complex> out(n, truncation);
    if (with_linear) {
        for (std::size_t j = 0; j < n; ++j) {
            out.add_term(j, multi_index::unit(n, j), gq(1));
        }
    }
    for (std::size_t t = 0; t < terms; ++t) {
        const auto level = indices_of_degree(n, pick_degree(rng));
        std::uniform_int_distribution<std::size_t> pick_index(0, level.size() - 1);
        out.add_term(pick_coord(rng), level[pick_index(rng)], small_coefficient(rng));
    }
    return out;
}

} // namespace brjuno::testing
