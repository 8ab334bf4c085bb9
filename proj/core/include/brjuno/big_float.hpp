#ifndef BRJUNO_BIG_FLOAT_HPP
#define BRJUNO_BIG_FLOAT_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace brjuno
{

// Owning wrapper around an mpfr_t. Every value carries its own precision;
// binary operations round to the larger precision of the two operands, so
// there is no global precision state. All operations round to nearest.
class big_float
{
public:
    static constexpr unsigned default_bits = 128;
    static constexpr unsigned min_bits = 2;

    big_float() : big_float(default_bits) {}
    explicit big_float(unsigned bits);
    big_float(double v, unsigned bits);
    big_float(long v, unsigned bits);
    big_float(const mpz_class &z, unsigned bits);
    big_float(const mpq_class &q, unsigned bits);

    big_float(const big_float &other);
    big_float(big_float &&other) noexcept;
    big_float &operator=(const big_float &other);
    big_float &operator=(big_float &&other) noexcept;
    ~big_float();

    // Parses a decimal literal ("-1.25e-3"); throws error(parse_error).
    static big_float parse(std::string_view text, unsigned bits);
    static big_float pi(unsigned bits);
    static big_float infinity(unsigned bits);

    unsigned precision() const noexcept
    {
        return static_cast<unsigned>(mpfr_get_prec(m_value));
    }
    // Copy rounded to a new precision.
    big_float rounded(unsigned bits) const;

    big_float &operator+=(const big_float &rhs);
    big_float &operator-=(const big_float &rhs);
    big_float &operator*=(const big_float &rhs);
    big_float &operator/=(const big_float &rhs);
    big_float operator-() const;

    friend big_float operator+(big_float lhs, const big_float &rhs)
    {
        lhs += rhs;
        return lhs;
    }
    friend big_float operator-(big_float lhs, const big_float &rhs)
    {
        lhs -= rhs;
        return lhs;
    }
    friend big_float operator*(big_float lhs, const big_float &rhs)
    {
        lhs *= rhs;
        return lhs;
    }
    friend big_float operator/(big_float lhs, const big_float &rhs)
    {
        lhs /= rhs;
        return lhs;
    }

    friend bool operator==(const big_float &a, const big_float &b)
    {
        return mpfr_equal_p(a.m_value, b.m_value) != 0;
    }
    friend std::partial_ordering operator<=>(const big_float &a, const big_float &b);

    bool is_zero() const noexcept
    {
        return mpfr_zero_p(m_value) != 0;
    }
    bool is_finite() const noexcept
    {
        return mpfr_number_p(m_value) != 0;
    }
    int sign() const noexcept
    {
        return mpfr_sgn(m_value);
    }

    double to_double() const;
    // Exact value of a finite number.
    mpq_class to_rational() const;
    // Scientific notation; digits == 0 selects enough digits to round-trip.
    std::string to_string(std::size_t digits = 0) const;

    mpfr_srcptr get() const noexcept
    {
        return m_value;
    }
    mpfr_ptr get() noexcept
    {
        return m_value;
    }

private:
    mpfr_t m_value;
};

big_float abs(const big_float &x);
big_float sqrt(const big_float &x);
big_float log(const big_float &x);
big_float exp(const big_float &x);
big_float sin(const big_float &x);
big_float cos(const big_float &x);
// Angle of (x, y) in (-pi, pi] at the larger of the two precisions.
big_float atan2(const big_float &y, const big_float &x);
big_float pow(const big_float &x, long n);
// x^(1/k) for x >= 0.
big_float root(const big_float &x, unsigned long k);
big_float min(const big_float &a, const big_float &b);
big_float max(const big_float &a, const big_float &b);

// log of a positive integer without converting it to double first.
double log_of(const mpz_class &z);

} // namespace brjuno

#endif
