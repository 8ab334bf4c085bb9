#include <brjuno/big_float.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <brjuno/error.hpp>

namespace brjuno
{

namespace
{

unsigned checked_bits(unsigned bits)
{
    if (bits < big_float::min_bits || bits > MPFR_PREC_MAX) {
        throw error(error_code::invalid_argument, "invalid precision: " + std::to_string(bits) + " bits");
    }
    return bits;
}

unsigned joint_bits(const big_float &a, const big_float &b)
{
    return std::max(a.precision(), b.precision());
}

} // namespace

big_float::big_float(unsigned bits)
{
    mpfr_init2(m_value, checked_bits(bits));
    mpfr_set_zero(m_value, 1);
}

big_float::big_float(double v, unsigned bits)
{
    mpfr_init2(m_value, checked_bits(bits));
    mpfr_set_d(m_value, v, MPFR_RNDN);
}

big_float::big_float(long v, unsigned bits)
{
    mpfr_init2(m_value, checked_bits(bits));
    mpfr_set_si(m_value, v, MPFR_RNDN);
}

big_float::big_float(const mpz_class &z, unsigned bits)
{
    mpfr_init2(m_value, checked_bits(bits));
    mpfr_set_z(m_value, z.get_mpz_t(), MPFR_RNDN);
}

big_float::big_float(const mpq_class &q, unsigned bits)
{
    mpfr_init2(m_value, checked_bits(bits));
    mpfr_set_q(m_value, q.get_mpq_t(), MPFR_RNDN);
}

big_float::big_float(const big_float &other)
{
    mpfr_init2(m_value, mpfr_get_prec(other.m_value));
    mpfr_set(m_value, other.m_value, MPFR_RNDN);
}

big_float::big_float(big_float &&other) noexcept
{
    mpfr_init2(m_value, min_bits);
    mpfr_swap(m_value, other.m_value);
}

big_float &big_float::operator=(const big_float &other)
{
    if (this != &other) {
        mpfr_set_prec(m_value, mpfr_get_prec(other.m_value));
        mpfr_set(m_value, other.m_value, MPFR_RNDN);
    }
    return *this;
}

big_float &big_float::operator=(big_float &&other) noexcept
{
    mpfr_swap(m_value, other.m_value);
    return *this;
}

big_float::~big_float()
{
    mpfr_clear(m_value);
}

big_float big_float::parse(std::string_view text, unsigned bits)
{
    big_float out(bits);
    const std::string s(text);
    char *end = nullptr;
    if (!s.empty()) {
        mpfr_strtofr(out.m_value, s.c_str(), &end, 10, MPFR_RNDN);
    }
    if (s.empty() || end == s.c_str() || *end != '\0') {
        throw error(error_code::parse_error, "malformed decimal number: '" + s + "'");
    }
    if (!out.is_finite()) {
        throw error(error_code::parse_error, "non-finite decimal number: '" + s + "'");
    }
    return out;
}

big_float big_float::pi(unsigned bits)
{
    big_float out(bits);
    mpfr_const_pi(out.m_value, MPFR_RNDN);
    return out;
}

big_float big_float::infinity(unsigned bits)
{
    big_float out(bits);
    mpfr_set_inf(out.m_value, 1);
    return out;
}

big_float big_float::rounded(unsigned bits) const
{
    big_float out(bits);
    mpfr_set(out.m_value, m_value, MPFR_RNDN);
    return out;
}

big_float &big_float::operator+=(const big_float &rhs)
{
    mpfr_prec_round(m_value, joint_bits(*this, rhs), MPFR_RNDN);
    mpfr_add(m_value, m_value, rhs.m_value, MPFR_RNDN);
    return *this;
}

big_float &big_float::operator-=(const big_float &rhs)
{
    mpfr_prec_round(m_value, joint_bits(*this, rhs), MPFR_RNDN);
    mpfr_sub(m_value, m_value, rhs.m_value, MPFR_RNDN);
    return *this;
}

big_float &big_float::operator*=(const big_float &rhs)
{
    mpfr_prec_round(m_value, joint_bits(*this, rhs), MPFR_RNDN);
    mpfr_mul(m_value, m_value, rhs.m_value, MPFR_RNDN);
    return *this;
}

big_float &big_float::operator/=(const big_float &rhs)
{
    mpfr_prec_round(m_value, joint_bits(*this, rhs), MPFR_RNDN);
    mpfr_div(m_value, m_value, rhs.m_value, MPFR_RNDN);
    return *this;
}

big_float big_float::operator-() const
{
    big_float out(*this);
    mpfr_neg(out.m_value, out.m_value, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const big_float &a, const big_float &b)
{
    if (mpfr_unordered_p(a.m_value, b.m_value)) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.m_value, b.m_value);
    if (c < 0) {
        return std::partial_ordering::less;
    }
    return c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

double big_float::to_double() const
{
    return mpfr_get_d(m_value, MPFR_RNDN);
}

mpq_class big_float::to_rational() const
{
    if (!is_finite()) {
        throw error(error_code::invalid_argument, "cannot convert a non-finite value to a rational");
    }
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), m_value);
    return q;
}

std::string big_float::to_string(std::size_t digits) const
{
    if (mpfr_nan_p(m_value)) {
        return "nan";
    }
    if (mpfr_inf_p(m_value)) {
        return sign() > 0 ? "inf" : "-inf";
    }
    if (is_zero()) {
        return "0";
    }
    if (digits == 0) {
        digits = mpfr_get_str_ndigits(10, mpfr_get_prec(m_value));
    }
    mpfr_exp_t exponent = 0;
    char *raw = mpfr_get_str(nullptr, &exponent, 10, digits, m_value, MPFR_RNDN);
    std::string mantissa(raw);
    mpfr_free_str(raw);

    std::string out;
    if (mantissa.front() == '-') {
        out.push_back('-');
        mantissa.erase(0, 1);
    }
    // Strip trailing zeros but keep at least one digit.
    while (mantissa.size() > 1 && mantissa.back() == '0') {
        mantissa.pop_back();
    }
    out.push_back(mantissa[0]);
    if (mantissa.size() > 1) {
        out.push_back('.');
        out.append(mantissa, 1, std::string::npos);
    }
    const long e10 = static_cast<long>(exponent) - 1;
    if (e10 != 0) {
        out += 'e';
        out += std::to_string(e10);
    }
    return out;
}

namespace
{

template <typename F>
big_float unary(const big_float &x, F f)
{
    big_float out(x.precision());
    f(out.get(), x.get(), MPFR_RNDN);
    return out;
}

} // namespace

big_float abs(const big_float &x)
{
    return unary(x, mpfr_abs);
}

big_float sqrt(const big_float &x)
{
    return unary(x, mpfr_sqrt);
}

big_float log(const big_float &x)
{
    return unary(x, mpfr_log);
}

big_float exp(const big_float &x)
{
    return unary(x, mpfr_exp);
}

big_float sin(const big_float &x)
{
    return unary(x, mpfr_sin);
}

big_float cos(const big_float &x)
{
    return unary(x, mpfr_cos);
}

big_float atan2(const big_float &y, const big_float &x)
{
    big_float out(joint_bits(y, x));
    mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
    return out;
}

big_float pow(const big_float &x, long n)
{
    big_float out(x.precision());
    mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
    return out;
}

big_float root(const big_float &x, unsigned long k)
{
    big_float out(x.precision());
    mpfr_rootn_ui(out.get(), x.get(), k, MPFR_RNDN);
    return out;
}

big_float min(const big_float &a, const big_float &b)
{
    return b < a ? b : a;
}

big_float max(const big_float &a, const big_float &b)
{
    return a < b ? b : a;
}

double log_of(const mpz_class &z)
{
    if (sgn(z) <= 0) {
        throw error(error_code::invalid_argument, "log of a non-positive integer");
    }
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

} // namespace brjuno
