#include <brjuno/quadratic.hpp>

#include <utility>

#include <brjuno/error.hpp>

namespace brjuno
{

namespace
{

bool is_square(const mpz_class &d)
{
    return mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

} // namespace

quadratic_number::quadratic_number(mpq_class x) : m_x(std::move(x))
{
    m_x.canonicalize();
}

quadratic_number::quadratic_number(mpq_class x, mpq_class y, mpz_class d)
    : m_x(std::move(x)), m_y(std::move(y)), m_d(std::move(d))
{
    m_x.canonicalize();
    m_y.canonicalize();
    if (sgn(m_y) == 0) {
        m_d = 0;
        return;
    }
    if (sgn(m_d) <= 0 || is_square(m_d)) {
        throw error(error_code::invalid_argument,
                    "quadratic radicand must be a positive non-square integer, got " + m_d.get_str());
    }
}

quadratic_number quadratic_number::from_abcd(const mpz_class &a, const mpz_class &b, const mpz_class &c,
                                             const mpz_class &d)
{
    if (sgn(c) == 0) {
        throw error(error_code::invalid_argument, "quadratic irrational with zero denominator");
    }
    return quadratic_number(mpq_class(a, c), mpq_class(b, c), d);
}

void quadratic_number::adopt_field(const quadratic_number &o)
{
    if (o.is_rational()) {
        return;
    }
    if (is_rational()) {
        m_d = o.m_d;
        return;
    }
    if (m_d != o.m_d) {
        throw error(error_code::unsupported_combination, "quadratic irrationals from distinct fields Q(sqrt("
                                                             + m_d.get_str() + ")) and Q(sqrt(" + o.m_d.get_str()
                                                             + ")) cannot be combined exactly");
    }
}

quadratic_number &quadratic_number::operator+=(const quadratic_number &o)
{
    adopt_field(o);
    m_x += o.m_x;
    m_y += o.m_y;
    if (sgn(m_y) == 0) {
        m_d = 0;
    }
    return *this;
}

quadratic_number &quadratic_number::operator-=(const quadratic_number &o)
{
    return *this += -o;
}

quadratic_number &quadratic_number::operator*=(const quadratic_number &o)
{
    adopt_field(o);
    const mpz_class d = is_rational() ? o.m_d : m_d;
    mpq_class x = m_x * o.m_x + m_y * o.m_y * mpq_class(d);
    mpq_class y = m_x * o.m_y + m_y * o.m_x;
    m_x = std::move(x);
    m_y = std::move(y);
    m_d = sgn(m_y) == 0 ? mpz_class(0) : d;
    return *this;
}

quadratic_number quadratic_number::operator-() const
{
    quadratic_number out(*this);
    out.m_x = -out.m_x;
    out.m_y = -out.m_y;
    return out;
}

quadratic_number quadratic_number::reciprocal() const
{
    if (sign() == 0) {
        throw error(error_code::invalid_argument, "reciprocal of zero");
    }
    if (is_rational()) {
        return quadratic_number(mpq_class(1) / m_x);
    }
    const mpq_class norm = m_x * m_x - m_y * m_y * mpq_class(m_d);
    return quadratic_number(m_x / norm, -m_y / norm, m_d);
}

int quadratic_number::sign() const
{
    const int sx = sgn(m_x);
    const int sy = sgn(m_y);
    if (sy == 0) {
        return sx;
    }
    if (sx == 0 || sx == sy) {
        return sy;
    }
    // Opposite signs: compare x^2 with d*y^2.
    const int c = cmp(m_x * m_x, m_y * m_y * mpq_class(m_d));
    return c > 0 ? sx : (c < 0 ? sy : 0);
}

mpz_class quadratic_number::floor() const
{
    if (is_rational()) {
        mpz_class out;
        mpz_fdiv_q(out.get_mpz_t(), m_x.get_num_mpz_t(), m_x.get_den_mpz_t());
        return out;
    }
    mpz_class n;
    const big_float approx = to_big_float(128);
    mpfr_get_z(n.get_mpz_t(), approx.get(), MPFR_RNDD);
    while ((*this - quadratic_number(mpq_class(n))).sign() < 0) {
        --n;
    }
    while ((*this - quadratic_number(mpq_class(n + 1))).sign() >= 0) {
        ++n;
    }
    return n;
}

quadratic_number quadratic_number::centered_fraction() const
{
    // x - floor(x + 1/2) lies in [-1/2, 1/2).
    const quadratic_number shifted = *this + quadratic_number(mpq_class(1, 2));
    return *this - quadratic_number(mpq_class(shifted.floor()));
}

big_float quadratic_number::to_big_float(unsigned bits) const
{
    const unsigned work = bits + 32;
    if (is_rational()) {
        return big_float(m_x, bits);
    }
    const big_float root_d = sqrt(big_float(m_d, work));
    const int sx = sgn(m_x);
    if (sx == 0 || sx == sgn(m_y)) {
        return (big_float(m_x, work) + big_float(m_y, work) * root_d).rounded(bits);
    }
    // x + y sqrt(d) = (x^2 - d y^2) / (x - y sqrt(d)); the denominator has no cancellation.
    const mpq_class norm = m_x * m_x - m_y * m_y * mpq_class(m_d);
    const big_float den = big_float(m_x, work) - big_float(m_y, work) * root_d;
    return (big_float(norm, work) / den).rounded(bits);
}

std::string quadratic_number::to_string() const
{
    if (is_rational()) {
        return m_x.get_str();
    }
    std::string out = m_x.get_str();
    out += sgn(m_y) < 0 ? " - " : " + ";
    out += mpq_class(abs(m_y)).get_str();
    out += "*sqrt(" + m_d.get_str() + ")";
    return out;
}

int compare(const quadratic_number &a, const quadratic_number &b)
{
    return (a - b).sign();
}

} // namespace brjuno
