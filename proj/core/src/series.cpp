#include <brjuno/series.hpp>

#include <algorithm>
#include <utility>

#include <brjuno/error.hpp>

namespace brjuno
{

template <coefficient_field C>
scalar_series<C>::scalar_series(std::size_t n, unsigned truncation, unsigned bits)
    : m_n(n), m_truncation(truncation), m_bits(bits)
{
    if (n == 0) {
        throw error(error_code::invalid_argument, "series dimension must be at least 1");
    }
}

template <coefficient_field C>
C scalar_series<C>::coefficient(const multi_index &q) const
{
    auto it = m_terms.find(q);
    return it == m_terms.end() ? field_traits<C>::zero(m_bits) : it->second;
}

template <coefficient_field C>
void scalar_series<C>::add_term(const multi_index &q, const C &c)
{
    if (q.dimension() != m_n) {
        throw error(error_code::dimension_mismatch,
                    "multi-index " + q.to_string() + " does not have dimension " + std::to_string(m_n));
    }
    if (q.degree() > m_truncation || field_traits<C>::is_zero(c)) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(q, c);
    if (!inserted) {
        it->second += c;
        if (field_traits<C>::is_zero(it->second)) {
            m_terms.erase(it);
        }
    }
}

template <coefficient_field C>
vector_series<C>::vector_series(std::size_t n, unsigned truncation, unsigned bits)
    : m_n(n), m_truncation(truncation), m_bits(bits)
{
    if (n == 0) {
        throw error(error_code::invalid_argument, "series dimension must be at least 1");
    }
    if (truncation == 0) {
        throw error(error_code::degree_out_of_range, "truncation degree must be at least 1");
    }
}

template <coefficient_field C>
std::size_t vector_series<C>::term_count() const
{
    std::size_t out = 0;
    for (const auto &[q, v] : m_terms) {
        out += static_cast<std::size_t>(
            std::count_if(v.begin(), v.end(), [](const C &c) { return !field_traits<C>::is_zero(c); }));
    }
    return out;
}

template <coefficient_field C>
const typename vector_series<C>::coeff_vector *vector_series<C>::find(const multi_index &q) const
{
    auto it = m_terms.find(q);
    return it == m_terms.end() ? nullptr : &it->second;
}

template <coefficient_field C>
C vector_series<C>::coefficient(const multi_index &q, std::size_t j) const
{
    if (j >= m_n) {
        throw error(error_code::invalid_argument, "coordinate " + std::to_string(j) + " out of range");
    }
    const auto *v = find(q);
    return v == nullptr ? field_traits<C>::zero(m_bits) : (*v)[j];
}

template <coefficient_field C>
void vector_series<C>::check_index(std::size_t j, const multi_index &q) const
{
    if (j >= m_n) {
        throw error(error_code::invalid_argument,
                    "coordinate " + std::to_string(j + 1) + " out of range for dimension " + std::to_string(m_n));
    }
    if (q.dimension() != m_n) {
        throw error(error_code::dimension_mismatch,
                    "multi-index " + q.to_string() + " does not have dimension " + std::to_string(m_n));
    }
    if (q.degree() == 0 || q.degree() > m_truncation) {
        throw error(error_code::degree_out_of_range, "term " + q.to_string() + " in coordinate " + std::to_string(j + 1)
                                                         + " has degree outside 1.."
                                                         + std::to_string(m_truncation));
    }
}

namespace
{

template <coefficient_field C>
bool all_zero(const std::vector<C> &v)
{
    return std::all_of(v.begin(), v.end(), [](const C &c) { return field_traits<C>::is_zero(c); });
}

} // namespace

template <coefficient_field C>
void vector_series<C>::add_term(std::size_t j, const multi_index &q, const C &c)
{
    check_index(j, q);
    if (field_traits<C>::is_zero(c)) {
        return;
    }
    auto it = m_terms.find(q);
    if (it == m_terms.end()) {
        it = m_terms.emplace(q, coeff_vector(m_n, field_traits<C>::zero(m_bits))).first;
    }
    it->second[j] += c;
    if (all_zero(it->second)) {
        m_terms.erase(it);
    }
}

template <coefficient_field C>
void vector_series<C>::set_coefficient(std::size_t j, const multi_index &q, const C &c)
{
    check_index(j, q);
    auto it = m_terms.find(q);
    if (it == m_terms.end()) {
        if (field_traits<C>::is_zero(c)) {
            return;
        }
        it = m_terms.emplace(q, coeff_vector(m_n, field_traits<C>::zero(m_bits))).first;
    }
    it->second[j] = c;
    if (all_zero(it->second)) {
        m_terms.erase(it);
    }
}

template <coefficient_field C>
scalar_series<C> vector_series<C>::component(std::size_t j) const
{
    scalar_series<C> out(m_n, m_truncation, m_bits);
    for (const auto &[q, v] : m_terms) {
        out.add_term(q, v[j]);
    }
    return out;
}

template <coefficient_field C>
vector_series<C> vector_series<C>::degree_range(unsigned lo, unsigned hi) const
{
    vector_series out(m_n, m_truncation, m_bits);
    for (const auto &[q, v] : m_terms) {
        if (q.degree() >= lo && q.degree() <= hi) {
            out.m_terms.emplace(q, v);
        }
    }
    return out;
}

template <coefficient_field C>
vector_series<C> vector_series<C>::truncated(unsigned truncation) const
{
    vector_series out(m_n, truncation, m_bits);
    for (const auto &[q, v] : m_terms) {
        if (q.degree() <= truncation) {
            out.m_terms.emplace(q, v);
        }
    }
    return out;
}

template <coefficient_field C>
vector_series<C> &vector_series<C>::operator+=(const vector_series &o)
{
    if (o.m_n != m_n) {
        throw error(error_code::dimension_mismatch, "adding series of different dimensions");
    }
    for (const auto &[q, v] : o.m_terms) {
        if (q.degree() > m_truncation) {
            continue;
        }
        for (std::size_t j = 0; j < m_n; ++j) {
            add_term(j, q, v[j]);
        }
    }
    return *this;
}

template <coefficient_field C>
vector_series<C> &vector_series<C>::operator-=(const vector_series &o)
{
    if (o.m_n != m_n) {
        throw error(error_code::dimension_mismatch, "subtracting series of different dimensions");
    }
    for (const auto &[q, v] : o.m_terms) {
        if (q.degree() > m_truncation) {
            continue;
        }
        for (std::size_t j = 0; j < m_n; ++j) {
            add_term(j, q, -v[j]);
        }
    }
    return *this;
}

template <coefficient_field C>
vector_series<C> build_series(std::size_t n, unsigned truncation, const std::vector<series_term<C>> &terms,
                              unsigned bits)
{
    vector_series<C> out(n, truncation, bits);
    for (const auto &t : terms) {
        out.add_term(t.coordinate, t.index, t.value);
    }
    return out;
}

template <coefficient_field C>
vector_series<C> identity_series(std::size_t n, unsigned truncation, unsigned bits)
{
    vector_series<C> out(n, truncation, bits);
    const C one = field_traits<C>::from_rational(mpq_class(1), mpq_class(0), bits);
    for (std::size_t j = 0; j < n; ++j) {
        out.add_term(j, multi_index::unit(n, j), one);
    }
    return out;
}

template <coefficient_field C>
scalar_series<C> multiply(const scalar_series<C> &a, const scalar_series<C> &b, unsigned truncation)
{
    if (a.dimension() != b.dimension()) {
        throw error(error_code::dimension_mismatch, "multiplying series of different dimensions");
    }
    scalar_series<C> out(a.dimension(), truncation, std::max(a.precision(), b.precision()));
    // Outer loop over a in graded-lex order fixes the summation order for
    // every output coefficient.
    for (const auto &[qa, ca] : a.terms()) {
        if (qa.degree() > truncation) {
            break;
        }
        for (const auto &[qb, cb] : b.terms()) {
            if (qa.degree() + qb.degree() > truncation) {
                break;
            }
            out.add_term(qa + qb, ca * cb);
        }
    }
    return out;
}

template <coefficient_field C>
vector_series<C> compose(const vector_series<C> &f, const vector_series<C> &g)
{
    return compose(f, g, std::min(f.truncation(), g.truncation()));
}

template <coefficient_field C>
vector_series<C> compose(const vector_series<C> &f, const vector_series<C> &g, unsigned truncation)
{
    if (f.dimension() != g.dimension()) {
        throw error(error_code::dimension_mismatch, "composing series of different dimensions");
    }
    const std::size_t n = f.dimension();
    const unsigned bits = std::max(f.precision(), g.precision());

    std::vector<scalar_series<C>> parts;
    parts.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        parts.push_back(g.component(k));
    }

    // g^L = g^(L - e_k) * g_k with k the first nonzero exponent.
    std::map<multi_index, scalar_series<C>> powers;
    auto power = [&](auto &self, const multi_index &l) -> const scalar_series<C> & {
        if (auto it = powers.find(l); it != powers.end()) {
            return it->second;
        }
        std::size_t k = 0;
        while (l[k] == 0) {
            ++k;
        }
        const multi_index e = multi_index::unit(n, k);
        scalar_series<C> value = l.degree() == 1 ? parts[k]
                                                 : multiply(self(self, l - e), parts[k], truncation);
        return powers.emplace(l, std::move(value)).first->second;
    };

    vector_series<C> out(n, truncation, bits);
    for (const auto &[l, fl] : f.terms()) {
        if (l.degree() > truncation) {
            break;
        }
        const scalar_series<C> &gl = power(power, l);
        for (const auto &[q, c] : gl.terms()) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!field_traits<C>::is_zero(fl[j])) {
                    out.add_term(j, q, fl[j] * c);
                }
            }
        }
    }
    return out;
}

template <coefficient_field C>
big_float max_norm(const std::vector<C> &v, unsigned bits)
{
    big_float out(bits);
    for (const auto &c : v) {
        big_float m = field_traits<C>::magnitude(c, bits);
        if (m > out) {
            out = std::move(m);
        }
    }
    return out;
}

namespace
{

// Exact k-th root of a nonnegative rational, when it exists.
bool exact_root(const mpq_class &x, unsigned long k, mpq_class &out)
{
    mpz_class num, den;
    if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), k) == 0 || mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), k) == 0) {
        return false;
    }
    out = mpq_class(num, den);
    out.canonicalize();
    return true;
}

// Is a^(1/ka) > b^(1/kb), i.e. a^kb > b^ka.
bool root_greater(const mpq_class &a, unsigned long ka, const mpq_class &b, unsigned long kb)
{
    mpz_class an, ad, bn, bd;
    mpz_pow_ui(an.get_mpz_t(), a.get_num_mpz_t(), kb);
    mpz_pow_ui(ad.get_mpz_t(), a.get_den_mpz_t(), kb);
    mpz_pow_ui(bn.get_mpz_t(), b.get_num_mpz_t(), ka);
    mpz_pow_ui(bd.get_mpz_t(), b.get_den_mpz_t(), ka);
    return an * bd > bn * ad;
}

std::pair<vector_series<exact_complex>, normalization_info<exact_complex>>
rescale_exact(const vector_series<exact_complex> &f)
{
    // Find the L maximizing ||f_L||^(2/|L|) using squared norms.
    mpq_class best(0);
    unsigned long best_k = 1;
    for (const auto &[l, v] : f.terms()) {
        if (l.degree() < 2) {
            continue;
        }
        mpq_class sq(0);
        for (const auto &c : v) {
            sq = std::max(sq, field_traits<exact_complex>::norm2(c));
        }
        if (root_greater(sq, l.degree(), best, best_k)) {
            best = sq;
            best_k = l.degree();
        }
    }
    const unsigned bits = f.precision();
    big_float rho = root(big_float(best, bits + 32), 2 * best_k).rounded(bits);
    if (best <= 1) {
        return {f, {std::move(rho), mpq_class(1)}};
    }
    mpq_class sigma;
    if (!exact_root(best, best_k, sigma)) {
        throw error(error_code::unsupported_combination,
                    "exact rescaling needs sigma = rho^2 rational; ||f_L||^2 = " + best.get_str()
                        + " has no rational root of order " + std::to_string(best_k));
    }
    vector_series<exact_complex> out(f.dimension(), f.truncation(), bits);
    for (const auto &[l, v] : f.terms()) {
        mpq_class factor(1);
        for (std::uint64_t i = 1; i < l.degree(); ++i) {
            factor /= sigma;
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            out.add_term(j, l, field_traits<exact_complex>::scale(v[j], factor));
        }
    }
    return {std::move(out), {std::move(rho), std::move(sigma)}};
}

template <coefficient_field C>
typename field_traits<C>::real real_from(const big_float &x)
{
    if constexpr (std::is_same_v<typename field_traits<C>::real, double>) {
        return x.to_double();
    } else {
        return x;
    }
}

template <coefficient_field C>
std::pair<vector_series<C>, normalization_info<C>> rescale_float(const vector_series<C> &f)
{
    using traits = field_traits<C>;
    const unsigned bits = f.precision();
    const unsigned work = bits + 32;
    big_float rho(work);
    for (const auto &[l, v] : f.terms()) {
        if (l.degree() < 2) {
            continue;
        }
        big_float r = root(max_norm(v, work), l.degree());
        if (r > rho) {
            rho = std::move(r);
        }
    }
    const big_float one(1L, work);
    if (rho <= one) {
        return {f, {rho.rounded(bits), real_from<C>(big_float(1L, bits))}};
    }
    const big_float sigma = rho * rho;
    vector_series<C> out(f.dimension(), f.truncation(), bits);
    // One-ulp shrink, used when rounding leaves a coefficient just above 1.
    const typename traits::real shrink = real_from<C>(one - pow(big_float(2L, work), -static_cast<long>(bits) + 2));
    for (const auto &[l, v] : f.terms()) {
        const typename traits::real factor = real_from<C>(pow(sigma, 1 - static_cast<long>(l.degree())).rounded(bits));
        for (std::size_t j = 0; j < v.size(); ++j) {
            C c = traits::scale(v[j], factor);
            if (l.degree() >= 2) {
                while (traits::magnitude(c, bits) > one) {
                    c = traits::scale(c, shrink);
                }
            }
            out.add_term(j, l, c);
        }
    }
    return {std::move(out), {rho.rounded(bits), real_from<C>(sigma.rounded(bits))}};
}

} // namespace

template <coefficient_field C>
std::pair<vector_series<C>, normalization_info<C>> rescale_normalize(const vector_series<C> &f)
{
    if constexpr (field_traits<C>::exact) {
        return rescale_exact(f);
    } else {
        return rescale_float(f);
    }
}

#define BRJUNO_INSTANTIATE_SERIES(C)                                                                                   \
    template class scalar_series<C>;                                                                                   \
    template class vector_series<C>;                                                                                   \
    template vector_series<C> build_series<C>(std::size_t, unsigned, const std::vector<series_term<C>> &, unsigned);   \
    template vector_series<C> identity_series<C>(std::size_t, unsigned, unsigned);                                     \
    template scalar_series<C> multiply<C>(const scalar_series<C> &, const scalar_series<C> &, unsigned);               \
    template vector_series<C> compose<C>(const vector_series<C> &, const vector_series<C> &);                          \
    template vector_series<C> compose<C>(const vector_series<C> &, const vector_series<C> &, unsigned);                \
    template big_float max_norm<C>(const std::vector<C> &, unsigned);                                                  \
    template std::pair<vector_series<C>, normalization_info<C>> rescale_normalize<C>(const vector_series<C> &);

BRJUNO_INSTANTIATE_SERIES(exact_complex)
BRJUNO_INSTANTIATE_SERIES(double_complex)
BRJUNO_INSTANTIATE_SERIES(mp_complex)

} // namespace brjuno
