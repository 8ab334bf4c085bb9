#ifndef BRJUNO_COMPLEX_HPP
#define BRJUNO_COMPLEX_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <string>

#include <gmpxx.h>

#include <brjuno/big_float.hpp>

namespace brjuno
{

// Complex arithmetic over double, big_float or mpq_class.
template <typename R>
struct complex_number {
    R re{};
    R im{};

    complex_number() = default;
    complex_number(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    complex_number &operator+=(const complex_number &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    complex_number &operator-=(const complex_number &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    complex_number &operator*=(const complex_number &o)
    {
        R r = re * o.re - im * o.im;
        R i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    complex_number &operator/=(const complex_number &o)
    {
        const R den = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / den;
        R i = (im * o.re - re * o.im) / den;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend complex_number operator+(complex_number a, const complex_number &b)
    {
        return a += b;
    }
    friend complex_number operator-(complex_number a, const complex_number &b)
    {
        return a -= b;
    }
    friend complex_number operator*(complex_number a, const complex_number &b)
    {
        return a *= b;
    }
    friend complex_number operator/(complex_number a, const complex_number &b)
    {
        return a /= b;
    }
    complex_number operator-() const
    {
        return {-re, -im};
    }
    friend bool operator==(const complex_number &a, const complex_number &b)
    {
        return a.re == b.re && a.im == b.im;
    }
};

using exact_complex = complex_number<mpq_class>;
using double_complex = complex_number<double>;
using mp_complex = complex_number<big_float>;

// Per-coefficient-type operations used by the generic series and solver code.
template <typename C>
struct field_traits;

template <>
struct field_traits<double_complex> {
    using real = double;
    static constexpr bool exact = false;
    static constexpr const char *name = "double";

    static unsigned precision(unsigned) noexcept
    {
        return std::numeric_limits<double>::digits;
    }
    static double_complex zero(unsigned)
    {
        return {0.0, 0.0};
    }
    static double_complex from_rational(const mpq_class &re, const mpq_class &im, unsigned)
    {
        return {big_float(re, 53).to_double(), big_float(im, 53).to_double()};
    }
    static double_complex from_mp(const mp_complex &z)
    {
        return {z.re.to_double(), z.im.to_double()};
    }
    static mp_complex to_mp(const double_complex &z, unsigned bits)
    {
        return {big_float(z.re, bits), big_float(z.im, bits)};
    }
    static bool is_zero(const double_complex &z) noexcept
    {
        return z.re == 0.0 && z.im == 0.0;
    }
    static bool is_finite(const double_complex &z) noexcept
    {
        return std::isfinite(z.re) && std::isfinite(z.im);
    }
    static double norm2(const double_complex &z) noexcept
    {
        return z.re * z.re + z.im * z.im;
    }
    static big_float magnitude(const double_complex &z, unsigned bits)
    {
        return big_float(std::hypot(z.re, z.im), bits);
    }
    static double_complex scale(const double_complex &z, const double &s)
    {
        return {z.re * s, z.im * s};
    }
};

template <>
struct field_traits<mp_complex> {
    using real = big_float;
    static constexpr bool exact = false;
    static constexpr const char *name = "mpfr";

    static unsigned precision(unsigned bits) noexcept
    {
        return bits;
    }
    static mp_complex zero(unsigned bits)
    {
        return {big_float(bits), big_float(bits)};
    }
    static mp_complex from_rational(const mpq_class &re, const mpq_class &im, unsigned bits)
    {
        return {big_float(re, bits), big_float(im, bits)};
    }
    static mp_complex from_mp(const mp_complex &z)
    {
        return z;
    }
    static mp_complex to_mp(const mp_complex &z, unsigned bits)
    {
        return {z.re.rounded(bits), z.im.rounded(bits)};
    }
    static bool is_zero(const mp_complex &z) noexcept
    {
        return z.re.is_zero() && z.im.is_zero();
    }
    static bool is_finite(const mp_complex &z) noexcept
    {
        return z.re.is_finite() && z.im.is_finite();
    }
    static big_float norm2(const mp_complex &z)
    {
        return z.re * z.re + z.im * z.im;
    }
    static big_float magnitude(const mp_complex &z, unsigned bits)
    {
        big_float out(bits);
        mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDN);
        return out;
    }
    static mp_complex scale(const mp_complex &z, const big_float &s)
    {
        return {z.re * s, z.im * s};
    }
};

template <>
struct field_traits<exact_complex> {
    using real = mpq_class;
    static constexpr bool exact = true;
    static constexpr const char *name = "rational";

    static unsigned precision(unsigned bits) noexcept
    {
        return bits;
    }
    static exact_complex zero(unsigned)
    {
        return {mpq_class(0), mpq_class(0)};
    }
    static exact_complex from_rational(const mpq_class &re, const mpq_class &im, unsigned)
    {
        return {re, im};
    }
    static mp_complex to_mp(const exact_complex &z, unsigned bits)
    {
        return {big_float(z.re, bits), big_float(z.im, bits)};
    }
    static bool is_zero(const exact_complex &z)
    {
        return sgn(z.re) == 0 && sgn(z.im) == 0;
    }
    static bool is_finite(const exact_complex &) noexcept
    {
        return true;
    }
    static mpq_class norm2(const exact_complex &z)
    {
        return z.re * z.re + z.im * z.im;
    }
    static big_float magnitude(const exact_complex &z, unsigned bits)
    {
        return sqrt(big_float(mpq_class(norm2(z)), bits + 16)).rounded(bits);
    }
    static exact_complex scale(const exact_complex &z, const mpq_class &s)
    {
        return {z.re * s, z.im * s};
    }
};

template <typename C>
concept coefficient_field = requires(const C &c, unsigned bits) {
    typename field_traits<C>::real;
    { field_traits<C>::is_zero(c) } -> std::convertible_to<bool>;
    { field_traits<C>::magnitude(c, bits) } -> std::same_as<big_float>;
    { field_traits<C>::zero(bits) } -> std::same_as<C>;
};

} // namespace brjuno

#endif
