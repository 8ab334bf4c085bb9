#include <brjuno/linearize.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <brjuno/error.hpp>

namespace brjuno
{

namespace
{

template <coefficient_field C>
void check_field(const spectrum_spec &spec)
{
    if constexpr (field_traits<C>::exact) {
        if (!spec.is_gaussian_rational()) {
            throw error(error_code::unsupported_combination,
                        "rational coefficients need eigenvalues that are Gaussian rationals");
        }
    }
}

template <coefficient_field C>
C field_divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j, unsigned bits)
{
    if constexpr (field_traits<C>::exact) {
        return exact_divisor(spec, q, j);
    } else {
        return field_traits<C>::from_mp(divisor(spec, q, j, bits));
    }
}

template <coefficient_field C>
C field_lambda(const spectrum_spec &spec, std::size_t k, unsigned bits)
{
    if constexpr (field_traits<C>::exact) {
        return spec.exact_value(k);
    } else {
        return field_traits<C>::from_mp(spec.value(k, bits));
    }
}

template <coefficient_field C>
double magnitude_d(const C &c)
{
    return field_traits<C>::magnitude(c, 64).to_double();
}

template <coefficient_field C>
void check_linear_part(const vector_series<C> &f, const spectrum_spec &spec)
{
    const std::size_t n = spec.dimension();
    const unsigned bits = f.precision();
    for (std::size_t k = 0; k < n; ++k) {
        const multi_index e = multi_index::unit(n, k);
        const auto *v = f.find(e);
        for (std::size_t j = 0; j < n; ++j) {
            const C expected = j == k ? field_lambda<C>(spec, k, bits) : field_traits<C>::zero(bits);
            const C actual = v == nullptr ? field_traits<C>::zero(bits) : (*v)[j];
            bool ok = false;
            if constexpr (field_traits<C>::exact) {
                ok = actual == expected;
            } else {
                const double tol = std::max(spec.tolerance(k), std::ldexp(1.0, -static_cast<int>(bits) / 2));
                ok = magnitude_d(C(actual - expected)) <= tol;
            }
            if (!ok) {
                throw error(error_code::linear_part_mismatch,
                            "linear coefficient of z_" + std::to_string(k + 1) + " in coordinate "
                                + std::to_string(j + 1) + " does not match the spectrum");
            }
        }
    }
}

} // namespace

template <coefficient_field C>
homological_system<C> make_homological_system(const spectrum_spec &spec, const multi_index &q, unsigned bits)
{
    if (!spec.is_diagonal()) {
        throw error(error_code::not_diagonalizable, "homological system needs a diagonal linear part");
    }
    check_field<C>(spec);
    if (q.degree() < 2) {
        throw error(error_code::degree_out_of_range, "homological system needs |Q| >= 2");
    }
    homological_system<C> out{q, {}, {}};
    for (std::size_t j = 0; j < spec.dimension(); ++j) {
        out.resonant.push_back(is_resonant(spec, q, j));
        out.divisors.push_back(out.resonant.back() && spec.is_exact() ? field_traits<C>::zero(bits)
                                                                      : field_divisor<C>(spec, q, j, bits));
    }
    return out;
}

template <coefficient_field C>
vector_series<C> linear_series(const spectrum_spec &spec, unsigned truncation, unsigned bits)
{
    check_field<C>(spec);
    const std::size_t n = spec.dimension();
    vector_series<C> out(n, truncation, bits);
    for (std::size_t k = 0; k < n; ++k) {
        out.add_term(k, multi_index::unit(n, k), field_lambda<C>(spec, k, bits));
    }
    return out;
}

template <coefficient_field C>
linearization_result<C> formal_linearize(const vector_series<C> &f_in, const spectrum_spec &spec, unsigned truncation,
                                         const linearize_options<C> &options)
{
    using traits = field_traits<C>;
    if (!spec.is_diagonal()) {
        throw error(error_code::not_diagonalizable,
                    "linearization needs a diagonalizable linear part; the Jordan subdiagonal is nonzero");
    }
    check_field<C>(spec);
    if (f_in.dimension() != spec.dimension()) {
        throw error(error_code::dimension_mismatch, "germ and spectrum dimensions differ");
    }
    if (truncation < 1 || truncation > f_in.truncation()) {
        throw error(error_code::degree_out_of_range, "truncation must lie in 1.." + std::to_string(f_in.truncation()));
    }
    check_linear_part(f_in, spec);

    const std::size_t n = spec.dimension();
    const unsigned bits = f_in.precision();

    std::optional<normalization_info<C>> norm;
    vector_series<C> f = f_in.truncated(truncation);
    if (options.normalize) {
        auto [scaled, info] = rescale_normalize(f);
        f = std::move(scaled);
        norm = std::move(info);
    }
    const vector_series<C> f_hat = f.degree_range(2, truncation);

    vector_series<C> phi = identity_series<C>(n, truncation, bits);
    vector_series<C> phi_hat(n, truncation, bits);
    vector_series<C> g = linear_series<C>(spec, truncation, bits);
    vector_series<C> g_hat(n, truncation, bits);
    std::vector<obstruction<C>> obstructions;
    std::vector<divisor_warning> warnings;
    double threshold_max = 0.0;

    for (unsigned d = 2; d <= truncation; ++d) {
        vector_series<C> rhs = compose(f_hat, phi, d).degree_range(d, d);
        if (!g_hat.empty()) {
            rhs -= compose(phi_hat, g, d).degree_range(d, d);
        }

        big_float zero_threshold(bits);
        big_float round_bound(bits);
        if constexpr (!traits::exact) {
            big_float rmax(bits);
            for (const auto &[q, v] : rhs.terms()) {
                rmax = max(rmax, max_norm(v, bits));
            }
            const big_float half_ulp = pow(big_float(2L, bits), -static_cast<long>(bits / 2));
            zero_threshold = half_ulp * rmax;
            round_bound = pow(big_float(2L, bits), -static_cast<long>(bits)) * max(rmax, big_float(1L, bits))
                          * big_float(10L, bits);
            threshold_max = std::max(threshold_max, zero_threshold.to_double());
        }

        for (const auto &q : indices_of_degree(n, d)) {
            const auto *r = rhs.find(q);
            const auto sys = make_homological_system<C>(spec, q, bits);
            for (std::size_t j = 0; j < n; ++j) {
                const C rj = r == nullptr ? traits::zero(bits) : (*r)[j];
                if (!sys.resonant[j]) {
                    if (traits::is_zero(rj)) {
                        continue;
                    }
                    if constexpr (!traits::exact) {
                        const big_float dm = traits::magnitude(sys.divisors[j], bits);
                        if (dm < round_bound) {
                            warnings.push_back({q, j, dm.to_double(), round_bound.to_double()});
                        }
                    }
                    phi.add_term(j, q, rj / sys.divisors[j]);
                    phi_hat.add_term(j, q, rj / sys.divisors[j]);
                    continue;
                }
                C chosen = traits::zero(bits);
                if (options.resonant_choice) {
                    if (auto c = options.resonant_choice(q, j)) {
                        chosen = *c;
                    }
                }
                phi.add_term(j, q, chosen);
                phi_hat.add_term(j, q, chosen);
                C residue = rj - sys.divisors[j] * chosen;
                if constexpr (!traits::exact) {
                    if (traits::magnitude(residue, bits) <= zero_threshold) {
                        residue = traits::zero(bits);
                    }
                }
                if (!traits::is_zero(residue)) {
                    g.add_term(j, q, residue);
                    g_hat.add_term(j, q, residue);
                    obstructions.push_back({q, j, residue});
                }
            }
        }
    }

    linearization_result<C> out{std::move(phi),
                                std::move(g),
                                std::move(obstructions),
                                std::move(norm),
                                {},
                                linearization_status::linearized_at_depth,
                                std::move(warnings),
                                threshold_max};
    if (!out.obstructions.empty()) {
        out.status = linearization_status::obstructed;
    }
    out.growth = growth_diagnostic(out.phi);
    return out;
}

template <coefficient_field C>
normal_form_result<C> poincare_dulac_normal_form(const vector_series<C> &f, const spectrum_spec &spec,
                                                 unsigned truncation, const linearize_options<C> &options)
{
    auto r = formal_linearize(f, spec, truncation, options);
    return {std::move(r.normal_form), std::move(r.phi)};
}

template <coefficient_field C>
double verify_conjugacy(const vector_series<C> &f, const vector_series<C> &phi, const vector_series<C> &g,
                        unsigned truncation)
{
    const vector_series<C> diff = compose(f, phi, truncation) - compose(phi, g, truncation);
    const unsigned bits = std::max(f.precision(), 64u);
    big_float worst(bits);
    for (const auto &[q, v] : diff.terms()) {
        worst = max(worst, max_norm(v, bits));
    }
    return worst.to_double();
}

template <coefficient_field C>
support_split<C> resonant_projection(const vector_series<C> &s, const spectrum_spec &spec)
{
    if (s.dimension() != spec.dimension()) {
        throw error(error_code::dimension_mismatch, "series and spectrum dimensions differ");
    }
    support_split<C> out{vector_series<C>(s.dimension(), s.truncation(), s.precision()),
                         vector_series<C>(s.dimension(), s.truncation(), s.precision())};
    for (const auto &[q, v] : s.terms()) {
        if (q.degree() < 2) {
            continue;
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (field_traits<C>::is_zero(v[j])) {
                continue;
            }
            auto &part = is_resonant(spec, q, j) ? out.resonant : out.non_resonant;
            part.add_term(j, q, v[j]);
        }
    }
    return out;
}

template <coefficient_field C>
growth_profile growth_diagnostic(const vector_series<C> &phi)
{
    const unsigned top = phi.truncation();
    growth_profile out;
    out.value.assign(top + 1, 0.0);
    std::vector<bool> seen(top + 1, false);
    const unsigned bits = std::max(phi.precision(), 64u);
    for (const auto &[q, v] : phi.terms()) {
        const auto d = q.degree();
        if (d < 2) {
            continue;
        }
        const big_float m = max_norm(v, bits);
        if (m.is_zero()) {
            continue;
        }
        const double value = log(m).to_double() / static_cast<double>(d);
        if (!seen[d] || value > out.value[d]) {
            out.value[d] = value;
            seen[d] = true;
        }
    }
    out.supremum = top >= 2 ? *std::max_element(out.value.begin() + 2, out.value.end()) : 0.0;
    if (top >= 6) {
        out.divergence_evidence = true;
        for (unsigned d = top - 3; d <= top; ++d) {
            if (!(out.value[d] - out.value[d - 1] > 0.5)) {
                out.divergence_evidence = false;
            }
        }
    }
    return out;
}

template <coefficient_field C>
growth_profile growth_diagnostic(const linearization_result<C> &result)
{
    return growth_diagnostic(result.phi);
}

template <coefficient_field C>
vector_series<C> inverse_series(const vector_series<C> &phi)
{
    const std::size_t n = phi.dimension();
    const unsigned top = phi.truncation();
    const unsigned bits = phi.precision();
    const vector_series<C> id = identity_series<C>(n, top, bits);
    if (!(phi.degree_range(1, 1) == id.degree_range(1, 1))) {
        throw error(error_code::precondition_failed, "series inversion needs a map tangent to the identity");
    }
    const vector_series<C> phi_hat = phi.degree_range(2, top);
    // psi = id - phi_hat o psi, solved one degree at a time.
    vector_series<C> psi = id;
    for (unsigned d = 2; d <= top; ++d) {
        const vector_series<C> step = compose(phi_hat, psi, d).degree_range(d, d);
        psi -= step;
    }
    return psi;
}

#define BRJUNO_INSTANTIATE_LINEARIZE(C)                                                                                \
    template homological_system<C> make_homological_system<C>(const spectrum_spec &, const multi_index &, unsigned);   \
    template vector_series<C> linear_series<C>(const spectrum_spec &, unsigned, unsigned);                             \
    template linearization_result<C> formal_linearize<C>(const vector_series<C> &, const spectrum_spec &, unsigned,    \
                                                         const linearize_options<C> &);                                \
    template normal_form_result<C> poincare_dulac_normal_form<C>(const vector_series<C> &, const spectrum_spec &,      \
                                                                 unsigned, const linearize_options<C> &);              \
    template double verify_conjugacy<C>(const vector_series<C> &, const vector_series<C> &, const vector_series<C> &,  \
                                        unsigned);                                                                     \
    template support_split<C> resonant_projection<C>(const vector_series<C> &, const spectrum_spec &);                 \
    template growth_profile growth_diagnostic<C>(const vector_series<C> &);                                            \
    template growth_profile growth_diagnostic<C>(const linearization_result<C> &);                                     \
    template vector_series<C> inverse_series<C>(const vector_series<C> &);

BRJUNO_INSTANTIATE_LINEARIZE(exact_complex)
BRJUNO_INSTANTIATE_LINEARIZE(double_complex)
BRJUNO_INSTANTIATE_LINEARIZE(mp_complex)

} // namespace brjuno
