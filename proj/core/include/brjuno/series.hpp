#ifndef BRJUNO_SERIES_HPP
#define BRJUNO_SERIES_HPP

#include <cstddef>
#include <map>
#include <vector>

#include <brjuno/big_float.hpp>
#include <brjuno/complex.hpp>
#include <brjuno/multi_index.hpp>

namespace brjuno
{

// Truncated power series in n variables with scalar coefficients. Used for the
// components of vector series and for the powers g^L inside composition, so a
// constant term is allowed here.
template <coefficient_field C>
class scalar_series
{
public:
    using map_type = std::map<multi_index, C>;

    scalar_series(std::size_t n, unsigned truncation, unsigned bits = big_float::default_bits);

    std::size_t dimension() const noexcept
    {
        return m_n;
    }
    unsigned truncation() const noexcept
    {
        return m_truncation;
    }
    unsigned precision() const noexcept
    {
        return m_bits;
    }
    const map_type &terms() const noexcept
    {
        return m_terms;
    }
    bool empty() const noexcept
    {
        return m_terms.empty();
    }

    // Coefficient of z^Q, zero when absent.
    C coefficient(const multi_index &q) const;
    // Adds c to the coefficient of z^Q; terms above the truncation are discarded.
    void add_term(const multi_index &q, const C &c);

    friend bool operator==(const scalar_series &, const scalar_series &) = default;

private:
    std::size_t m_n;
    unsigned m_truncation;
    unsigned m_bits;
    map_type m_terms;
};

// Single entry used to build a vector series. The coordinate is 0-based.
template <coefficient_field C>
struct series_term {
    std::size_t coordinate;
    multi_index index;
    C value;
};

// Truncated n-component series without constant term. Coefficients are kept
// as sparse vectors of length n keyed in graded-lex order; zero vectors are
// never stored.
template <coefficient_field C>
class vector_series
{
public:
    using coeff_vector = std::vector<C>;
    using map_type = std::map<multi_index, coeff_vector>;

    vector_series(std::size_t n, unsigned truncation, unsigned bits = big_float::default_bits);

    std::size_t dimension() const noexcept
    {
        return m_n;
    }
    unsigned truncation() const noexcept
    {
        return m_truncation;
    }
    unsigned precision() const noexcept
    {
        return m_bits;
    }
    const map_type &terms() const noexcept
    {
        return m_terms;
    }
    bool empty() const noexcept
    {
        return m_terms.empty();
    }
    // Number of stored nonzero scalar coefficients.
    std::size_t term_count() const;

    // nullptr when Q is not stored.
    const coeff_vector *find(const multi_index &q) const;
    C coefficient(const multi_index &q, std::size_t j) const;

    // Accumulates into (j, Q). Throws on degree 0, degree > N or a bad
    // coordinate / dimension.
    void add_term(std::size_t j, const multi_index &q, const C &c);
    // Overwrites (j, Q).
    void set_coefficient(std::size_t j, const multi_index &q, const C &c);

    scalar_series<C> component(std::size_t j) const;
    // Terms with lo <= |Q| <= hi, keeping the truncation degree.
    vector_series degree_range(unsigned lo, unsigned hi) const;
    vector_series truncated(unsigned truncation) const;

    vector_series &operator+=(const vector_series &o);
    vector_series &operator-=(const vector_series &o);
    friend vector_series operator+(vector_series a, const vector_series &b)
    {
        return a += b;
    }
    friend vector_series operator-(vector_series a, const vector_series &b)
    {
        return a -= b;
    }

    friend bool operator==(const vector_series &, const vector_series &) = default;

private:
    void check_index(std::size_t j, const multi_index &q) const;

    std::size_t m_n;
    unsigned m_truncation;
    unsigned m_bits;
    map_type m_terms;
};

// Rescaling data: rho bounds ||f_L|| <= rho^|L| over the nonlinear terms and
// sigma = max(1, rho^2).
template <coefficient_field C>
struct normalization_info {
    big_float rho;
    typename field_traits<C>::real sigma;
};

template <coefficient_field C>
vector_series<C> build_series(std::size_t n, unsigned truncation, const std::vector<series_term<C>> &terms,
                              unsigned bits = big_float::default_bits);

template <coefficient_field C>
vector_series<C> identity_series(std::size_t n, unsigned truncation, unsigned bits = big_float::default_bits);

// Product truncated at the given degree.
template <coefficient_field C>
scalar_series<C> multiply(const scalar_series<C> &a, const scalar_series<C> &b, unsigned truncation);

// f o g truncated at min(N_f, N_g), or at the explicit truncation when given.
template <coefficient_field C>
vector_series<C> compose(const vector_series<C> &f, const vector_series<C> &g);
template <coefficient_field C>
vector_series<C> compose(const vector_series<C> &f, const vector_series<C> &g, unsigned truncation);

// Max-norm of a coefficient vector.
template <coefficient_field C>
big_float max_norm(const std::vector<C> &v, unsigned bits);

// Maps f_L to sigma^(1 - |L|) f_L. In exact mode sigma must come out rational,
// which requires the dominating ||f_L||^2 to be a perfect |L|-th power.
template <coefficient_field C>
std::pair<vector_series<C>, normalization_info<C>> rescale_normalize(const vector_series<C> &f);

} // namespace brjuno

#endif
