#ifndef BRJUNO_MULTI_INDEX_HPP
#define BRJUNO_MULTI_INDEX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace brjuno
{

// Exponent vector Q = (q_1, ..., q_n) in N^n.
//
// Ordering is graded-lexicographic: first by total degree, then by the
// exponent tuple compared lexicographically. All containers in the library
// are keyed in this order, which drives degree-by-degree solving.
class multi_index
{
public:
    using exponent_type = std::uint32_t;

    multi_index() = default;
    // Zero multi-index of dimension n >= 1.
    explicit multi_index(std::size_t n);
    multi_index(std::initializer_list<exponent_type> exponents);
    explicit multi_index(std::vector<exponent_type> exponents);

    // e_k in dimension n.
    static multi_index unit(std::size_t n, std::size_t k);

    std::size_t dimension() const noexcept
    {
        return m_exponents.size();
    }
    std::uint64_t degree() const noexcept
    {
        return m_degree;
    }
    exponent_type operator[](std::size_t i) const
    {
        return m_exponents[i];
    }
    const std::vector<exponent_type> &exponents() const noexcept
    {
        return m_exponents;
    }

    multi_index &operator+=(const multi_index &o);
    friend multi_index operator+(multi_index a, const multi_index &b)
    {
        return a += b;
    }
    // Componentwise difference; requires o <= *this componentwise.
    multi_index operator-(const multi_index &o) const;

    // Componentwise partial order (Q1 <= Q iff q1_i <= q_i for all i).
    bool divides(const multi_index &o) const;

    friend bool operator==(const multi_index &, const multi_index &) = default;
    friend std::strong_ordering operator<=>(const multi_index &a, const multi_index &b);

    // "(2,0)"
    std::string to_string() const;

private:
    std::vector<exponent_type> m_exponents;
    std::uint64_t m_degree = 0;
};

// All multi-indices of dimension n with the given total degree, in
// graded-lexicographic order.
std::vector<multi_index> indices_of_degree(std::size_t n, std::uint64_t degree);

// All multi-indices of dimension n with lo <= degree <= hi, graded-lex order.
std::vector<multi_index> indices_up_to(std::size_t n, std::uint64_t lo, std::uint64_t hi);

} // namespace brjuno

#endif
