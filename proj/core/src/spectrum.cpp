#include <brjuno/spectrum.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

#include <brjuno/error.hpp>

namespace brjuno
{

namespace
{

constexpr unsigned guard_bits = 32;

// Quarter turns of a Gaussian-rational angle, reduced mod 4.
long quarter_turns(const quadratic_number &angle)
{
    const mpq_class four = angle.rational_part() * 4;
    mpz_class k = four.get_num() / four.get_den();
    k %= 4;
    if (k < 0) {
        k += 4;
    }
    return k.get_si();
}

bool is_quarter(const quadratic_number &angle)
{
    return angle.is_rational() && quadratic_number(angle.rational_part() * 4).is_integer();
}

mpq_class modulus_power(const spectrum_spec &spec, const multi_index &q)
{
    mpq_class out(1);
    for (std::size_t i = 0; i < q.dimension(); ++i) {
        const mpq_class &r = spec.eigenvalue(i).exact().modulus;
        for (multi_index::exponent_type e = 0; e < q[i]; ++e) {
            out *= r;
        }
    }
    return out;
}

// Q.theta - theta_j in turns.
quadratic_number angle_difference(const spectrum_spec &spec, const multi_index &q, std::size_t j)
{
    quadratic_number out = -spec.eigenvalue(j).exact().angle;
    for (std::size_t i = 0; i < q.dimension(); ++i) {
        if (q[i] != 0) {
            out += quadratic_number(mpq_class(q[i])) * spec.eigenvalue(i).exact().angle;
        }
    }
    return out;
}

mp_complex unit_root(const quadratic_number &turns, unsigned bits)
{
    const quadratic_number delta = turns.centered_fraction();
    if (is_quarter(delta)) {
        // delta in {-1/2, -1/4, 0, 1/4}
        static const long re[] = {1, 0, -1, 0};
        static const long im[] = {0, 1, 0, -1};
        const long k = quarter_turns(delta);
        return {big_float(re[k], bits), big_float(im[k], bits)};
    }
    const big_float x = big_float::pi(bits) * delta.to_big_float(bits) * big_float(2L, bits);
    return {cos(x), sin(x)};
}

void check_coordinate(const spectrum_spec &spec, const multi_index &q, std::size_t j)
{
    if (j >= spec.dimension()) {
        throw error(error_code::invalid_argument, "coordinate " + std::to_string(j + 1) + " out of range");
    }
    if (q.dimension() != spec.dimension()) {
        throw error(error_code::dimension_mismatch,
                    "multi-index " + q.to_string() + " does not match spectrum dimension "
                        + std::to_string(spec.dimension()));
    }
}

mp_complex numeric_power(const spectrum_spec &spec, const multi_index &q, unsigned bits)
{
    mp_complex out{big_float(1L, bits), big_float(bits)};
    for (std::size_t i = 0; i < q.dimension(); ++i) {
        if (q[i] == 0) {
            continue;
        }
        const mp_complex l = spec.value(i, bits);
        for (multi_index::exponent_type e = 0; e < q[i]; ++e) {
            out *= l;
        }
    }
    return out;
}

bool same_eigenvalue(const spectrum_spec &spec, std::size_t a, std::size_t b)
{
    const auto &ea = spec.eigenvalue(a);
    const auto &eb = spec.eigenvalue(b);
    if (ea.is_exact() && eb.is_exact()) {
        return ea.exact().modulus == eb.exact().modulus && (ea.exact().angle - eb.exact().angle).is_integer();
    }
    const unsigned bits = spec.precision();
    const mp_complex d = spec.value(a, bits) - spec.value(b, bits);
    return field_traits<mp_complex>::magnitude(d, bits) < big_float(std::min(spec.tolerance(a), spec.tolerance(b)), bits);
}

} // namespace

eigenvalue_spec eigenvalue_spec::polar(mpq_class modulus, quadratic_number angle)
{
    modulus.canonicalize();
    if (sgn(modulus) <= 0) {
        throw error(error_code::invalid_argument, "eigenvalue modulus must be positive, got " + modulus.get_str());
    }
    return eigenvalue_spec(polar_exact{std::move(modulus), std::move(angle)});
}

eigenvalue_spec eigenvalue_spec::numeric(mp_complex value, double tolerance)
{
    if (field_traits<mp_complex>::is_zero(value) || !field_traits<mp_complex>::is_finite(value)) {
        throw error(error_code::invalid_argument, "numeric eigenvalue must be finite and nonzero");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw error(error_code::invalid_argument, "resonance tolerance must be positive");
    }
    return eigenvalue_spec(numeric_eigenvalue{std::move(value), tolerance});
}

bool eigenvalue_spec::is_gaussian_rational() const
{
    return is_exact() && is_quarter(exact().angle);
}

bool operator==(const eigenvalue_spec &a, const eigenvalue_spec &b)
{
    if (a.is_exact() != b.is_exact()) {
        return false;
    }
    if (a.is_exact()) {
        return a.exact().modulus == b.exact().modulus && a.exact().angle == b.exact().angle;
    }
    return a.approx().value == b.approx().value && a.approx().tolerance == b.approx().tolerance;
}

double spectrum_spec::default_tolerance(unsigned bits)
{
    if (bits <= 53) {
        return 1e-12;
    }
    return std::ldexp(1.0, -static_cast<int>(bits / 2));
}

spectrum_spec::spectrum_spec(std::vector<eigenvalue_spec> eigenvalues, std::vector<jordan_entry> jordan,
                             unsigned bits)
    : m_eigenvalues(std::move(eigenvalues)), m_jordan(std::move(jordan)), m_bits(bits)
{
    if (m_eigenvalues.empty()) {
        throw error(error_code::invalid_argument, "spectrum must have at least one eigenvalue");
    }
    m_exact = std::all_of(m_eigenvalues.begin(), m_eigenvalues.end(), [](const auto &e) { return e.is_exact(); });
    if (m_jordan.empty()) {
        m_jordan.resize(m_eigenvalues.size() - 1);
    }
    if (m_jordan.size() != m_eigenvalues.size() - 1) {
        throw error(error_code::dimension_mismatch, "jordan subdiagonal must have n - 1 = "
                                                        + std::to_string(m_eigenvalues.size() - 1) + " entries");
    }
    for (std::size_t j = 1; j < m_eigenvalues.size(); ++j) {
        const auto &e = m_jordan[j - 1];
        if (e.magnitude && (!e.nonzero || sgn(*e.magnitude) == 0)) {
            throw error(error_code::invalid_argument, "jordan magnitude given for a zero subdiagonal entry");
        }
        if (e.nonzero && !same_eigenvalue(*this, j - 1, j)) {
            throw error(error_code::invalid_argument, "jordan entry " + std::to_string(j + 1)
                                                          + " is nonzero but lambda_" + std::to_string(j)
                                                          + " != lambda_" + std::to_string(j + 1));
        }
    }
}

bool spectrum_spec::is_diagonal() const
{
    return std::none_of(m_jordan.begin(), m_jordan.end(), [](const jordan_entry &e) { return e.nonzero; });
}

bool spectrum_spec::is_gaussian_rational() const
{
    return std::all_of(m_eigenvalues.begin(), m_eigenvalues.end(),
                       [](const auto &e) { return e.is_gaussian_rational(); });
}

double spectrum_spec::tolerance(std::size_t j) const
{
    const auto &e = m_eigenvalues.at(j);
    return e.is_exact() ? default_tolerance(m_bits) : e.approx().tolerance;
}

exact_complex spectrum_spec::exact_value(std::size_t j) const
{
    const auto &e = m_eigenvalues.at(j);
    if (!e.is_gaussian_rational()) {
        throw error(error_code::precondition_failed,
                    "eigenvalue " + std::to_string(j + 1) + " is not a Gaussian rational");
    }
    const mpq_class &r = e.exact().modulus;
    switch (quarter_turns(e.exact().angle)) {
        case 0:
            return {r, mpq_class(0)};
        case 1:
            return {mpq_class(0), r};
        case 2:
            return {mpq_class(-r), mpq_class(0)};
        default:
            return {mpq_class(0), mpq_class(-r)};
    }
}

mp_complex spectrum_spec::value(std::size_t j, unsigned bits) const
{
    const auto &e = m_eigenvalues.at(j);
    if (!e.is_exact()) {
        return field_traits<mp_complex>::to_mp(e.approx().value, bits);
    }
    const mp_complex u = unit_root(e.exact().angle, bits + guard_bits);
    const big_float r(e.exact().modulus, bits + guard_bits);
    return {(u.re * r).rounded(bits), (u.im * r).rounded(bits)};
}

big_float spectrum_spec::modulus(std::size_t j, unsigned bits) const
{
    const auto &e = m_eigenvalues.at(j);
    if (e.is_exact()) {
        return big_float(e.exact().modulus, bits);
    }
    return field_traits<mp_complex>::magnitude(e.approx().value, bits);
}

bool is_resonant(const spectrum_spec &spec, const multi_index &q, std::size_t j)
{
    check_coordinate(spec, q, j);
    if (q.degree() < 2) {
        throw error(error_code::degree_out_of_range, "resonance test needs |Q| >= 2, got " + q.to_string());
    }
    if (spec.is_exact()) {
        return modulus_power(spec, q) == spec.eigenvalue(j).exact().modulus
               && angle_difference(spec, q, j).is_integer();
    }
    const unsigned bits = spec.precision();
    return small_divisor(spec, q, j, bits) < big_float(spec.tolerance(j), bits);
}

bool resonance_set::empty() const
{
    return std::all_of(per_coordinate.begin(), per_coordinate.end(), [](const auto &v) { return v.empty(); });
}

resonance_set find_resonances(const spectrum_spec &spec, unsigned truncation)
{
    if (truncation < 2) {
        throw error(error_code::degree_out_of_range, "resonance enumeration needs N >= 2");
    }
    const std::size_t n = spec.dimension();
    resonance_set out{std::vector<std::vector<multi_index>>(n), spec.is_exact(), truncation};
    for (const auto &q : indices_up_to(n, 2, truncation)) {
        for (std::size_t j = 0; j < n; ++j) {
            if (is_resonant(spec, q, j)) {
                out.per_coordinate[j].push_back(q);
            }
        }
    }
    return out;
}

mp_complex divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j, unsigned bits)
{
    check_coordinate(spec, q, j);
    const unsigned work = bits + guard_bits;
    if (!spec.is_exact()) {
        const mp_complex d = numeric_power(spec, q, work) - spec.value(j, work);
        return field_traits<mp_complex>::to_mp(d, bits);
    }
    if (spec.is_gaussian_rational()) {
        return field_traits<exact_complex>::to_mp(exact_divisor(spec, q, j), bits);
    }
    // lambda_j (rho e^(2 pi i delta) - 1), evaluated without cancellation
    // when delta is small and rho is close to 1.
    const mpq_class rho = modulus_power(spec, q) / spec.eigenvalue(j).exact().modulus;
    const quadratic_number delta = angle_difference(spec, q, j).centered_fraction();
    if (rho == 1 && delta.sign() == 0) {
        return field_traits<mp_complex>::zero(bits);
    }
    const big_float r(rho, work);
    const big_float x = big_float::pi(work) * delta.to_big_float(work);
    const big_float s = sin(x);
    const big_float re = big_float(mpq_class(rho - 1), work) - big_float(2L, work) * r * s * s;
    const big_float im = r * sin(x * big_float(2L, work));
    const mp_complex d = mp_complex{re, im} * spec.value(j, work);
    return field_traits<mp_complex>::to_mp(d, bits);
}

exact_complex exact_divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j)
{
    check_coordinate(spec, q, j);
    if (!spec.is_gaussian_rational()) {
        throw error(error_code::precondition_failed, "exact divisors need a Gaussian-rational spectrum");
    }
    exact_complex p{mpq_class(1), mpq_class(0)};
    for (std::size_t i = 0; i < q.dimension(); ++i) {
        const exact_complex l = spec.exact_value(i);
        for (multi_index::exponent_type e = 0; e < q[i]; ++e) {
            p *= l;
        }
    }
    return p - spec.exact_value(j);
}

big_float small_divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j, unsigned bits)
{
    if (spec.is_exact() && is_resonant(spec, q, j)) {
        return big_float(bits);
    }
    if (spec.is_gaussian_rational()) {
        return field_traits<exact_complex>::magnitude(exact_divisor(spec, q, j), bits);
    }
    return field_traits<mp_complex>::magnitude(divisor(spec, q, j, bits + 8), bits);
}

big_float omega(const spectrum_spec &spec, unsigned m, unsigned bits)
{
    if (m < 2) {
        throw error(error_code::degree_out_of_range, "omega(m) needs m >= 2");
    }
    big_float out = big_float::infinity(bits);
    for (const auto &q : indices_up_to(spec.dimension(), 2, m)) {
        for (std::size_t j = 0; j < spec.dimension(); ++j) {
            out = min(out, small_divisor(spec, q, j, bits));
        }
    }
    return out;
}

big_float omega_tilde(const spectrum_spec &spec, unsigned m, unsigned bits)
{
    if (m < 2) {
        throw error(error_code::degree_out_of_range, "omega_tilde(m) needs m >= 2");
    }
    big_float out = big_float::infinity(bits);
    for (const auto &q : indices_up_to(spec.dimension(), 2, m)) {
        for (std::size_t j = 0; j < spec.dimension(); ++j) {
            if (!is_resonant(spec, q, j)) {
                out = min(out, small_divisor(spec, q, j, bits));
            }
        }
    }
    return out;
}

eps_entry eps_iQ(const spectrum_spec &spec, const multi_index &q, unsigned bits)
{
    std::optional<eps_entry> best;
    for (std::size_t j = 0; j < spec.dimension(); ++j) {
        if (is_resonant(spec, q, j)) {
            continue;
        }
        big_float d = small_divisor(spec, q, j, bits);
        if (!best || d < best->eps) {
            best = eps_entry{std::move(d), j};
        }
    }
    if (!best) {
        throw error(error_code::no_nonresonant_coordinate,
                    "no non-resonant coordinate for " + q.to_string() + "; eps_Q is undefined");
    }
    return std::move(*best);
}

divisor_table make_divisor_table(const spectrum_spec &spec, unsigned truncation, unsigned bits)
{
    if (truncation < 2) {
        throw error(error_code::degree_out_of_range, "divisor table needs N >= 2");
    }
    divisor_table out{truncation, {}, {}, {}, {}};
    out.omega.assign(truncation + 1, big_float::infinity(bits));
    out.omega_tilde.assign(truncation + 1, big_float::infinity(bits));
    big_float w = big_float::infinity(bits);
    big_float wt = big_float::infinity(bits);
    for (unsigned d = 2; d <= truncation; ++d) {
        for (const auto &q : indices_of_degree(spec.dimension(), d)) {
            std::optional<eps_entry> best;
            for (std::size_t j = 0; j < spec.dimension(); ++j) {
                big_float s = small_divisor(spec, q, j, bits);
                w = min(w, s);
                if (is_resonant(spec, q, j)) {
                    continue;
                }
                wt = min(wt, s);
                if (!best || s < best->eps) {
                    best = eps_entry{std::move(s), j};
                }
            }
            if (best) {
                out.eps.emplace(q, std::move(*best));
            } else {
                out.fully_resonant.push_back(q);
            }
        }
        out.omega[d] = w;
        out.omega_tilde[d] = wt;
    }
    return out;
}

} // namespace brjuno
