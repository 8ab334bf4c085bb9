#ifndef BRJUNO_QUADRATIC_HPP
#define BRJUNO_QUADRATIC_HPP

#include <string>

#include <gmpxx.h>

#include <brjuno/big_float.hpp>

namespace brjuno
{

// Exact element x + y*sqrt(d) of a real quadratic field Q(sqrt(d)), d > 0
// and not a perfect square. Rationals are the y == 0 case and combine with
// any field; combining two irrationals from different fields throws
// error(unsupported_combination).
class quadratic_number
{
public:
    quadratic_number() = default;
    quadratic_number(mpq_class x);
    quadratic_number(mpq_class x, mpq_class y, mpz_class d);

    // (a + b*sqrt(d)) / c with integer data, as written in germ files.
    static quadratic_number from_abcd(const mpz_class &a, const mpz_class &b, const mpz_class &c,
                                      const mpz_class &d);

    const mpq_class &rational_part() const noexcept
    {
        return m_x;
    }
    const mpq_class &irrational_part() const noexcept
    {
        return m_y;
    }
    // 0 for rationals.
    const mpz_class &radicand() const noexcept
    {
        return m_d;
    }
    bool is_rational() const
    {
        return sgn(m_y) == 0;
    }

    quadratic_number &operator+=(const quadratic_number &o);
    quadratic_number &operator-=(const quadratic_number &o);
    quadratic_number &operator*=(const quadratic_number &o);
    quadratic_number operator-() const;
    quadratic_number reciprocal() const;

    friend quadratic_number operator+(quadratic_number a, const quadratic_number &b)
    {
        return a += b;
    }
    friend quadratic_number operator-(quadratic_number a, const quadratic_number &b)
    {
        return a -= b;
    }
    friend quadratic_number operator*(quadratic_number a, const quadratic_number &b)
    {
        return a *= b;
    }
    friend bool operator==(const quadratic_number &a, const quadratic_number &b)
    {
        return a.m_x == b.m_x && a.m_y == b.m_y && a.m_d == b.m_d;
    }

    // Exact sign of the real number.
    int sign() const;
    mpz_class floor() const;
    bool is_integer() const
    {
        return is_rational() && m_x.get_den() == 1;
    }
    // Representative of the class modulo 1 in [-1/2, 1/2).
    quadratic_number centered_fraction() const;

    // Correctly signed evaluation without cancellation between x and y*sqrt(d).
    big_float to_big_float(unsigned bits) const;
    std::string to_string() const;

private:
    void adopt_field(const quadratic_number &o);

    mpq_class m_x{0};
    mpq_class m_y{0};
    mpz_class m_d{0};
};

int compare(const quadratic_number &a, const quadratic_number &b);

} // namespace brjuno

#endif
