#include <brjuno/multi_index.hpp>

#include <algorithm>
#include <numeric>
#include <utility>

#include <brjuno/error.hpp>

namespace brjuno
{

multi_index::multi_index(std::size_t n) : m_exponents(n, 0)
{
    if (n == 0) {
        throw error(error_code::invalid_argument, "multi-index dimension must be at least 1");
    }
}

multi_index::multi_index(std::initializer_list<exponent_type> exponents)
    : multi_index(std::vector<exponent_type>(exponents))
{
}

multi_index::multi_index(std::vector<exponent_type> exponents) : m_exponents(std::move(exponents))
{
    if (m_exponents.empty()) {
        throw error(error_code::invalid_argument, "multi-index dimension must be at least 1");
    }
    m_degree = std::accumulate(m_exponents.begin(), m_exponents.end(), std::uint64_t{0});
}

multi_index multi_index::unit(std::size_t n, std::size_t k)
{
    multi_index out(n);
    if (k >= n) {
        throw error(error_code::invalid_argument, "unit vector index out of range");
    }
    out.m_exponents[k] = 1;
    out.m_degree = 1;
    return out;
}

multi_index &multi_index::operator+=(const multi_index &o)
{
    if (o.dimension() != dimension()) {
        throw error(error_code::dimension_mismatch, "adding multi-indices of different dimensions");
    }
    for (std::size_t i = 0; i < m_exponents.size(); ++i) {
        m_exponents[i] += o.m_exponents[i];
    }
    m_degree += o.m_degree;
    return *this;
}

multi_index multi_index::operator-(const multi_index &o) const
{
    if (!o.divides(*this)) {
        throw error(error_code::invalid_argument, o.to_string() + " is not componentwise below " + to_string());
    }
    multi_index out(*this);
    for (std::size_t i = 0; i < m_exponents.size(); ++i) {
        out.m_exponents[i] -= o.m_exponents[i];
    }
    out.m_degree -= o.m_degree;
    return out;
}

bool multi_index::divides(const multi_index &o) const
{
    if (o.dimension() != dimension()) {
        return false;
    }
    for (std::size_t i = 0; i < m_exponents.size(); ++i) {
        if (m_exponents[i] > o.m_exponents[i]) {
            return false;
        }
    }
    return true;
}

std::strong_ordering operator<=>(const multi_index &a, const multi_index &b)
{
    if (auto c = a.m_degree <=> b.m_degree; c != 0) {
        return c;
    }
    return a.m_exponents <=> b.m_exponents;
}

std::string multi_index::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < m_exponents.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += std::to_string(m_exponents[i]);
    }
    out += ')';
    return out;
}

namespace
{

void fill_degree(std::vector<multi_index::exponent_type> &current, std::size_t pos, std::uint64_t remaining,
                 std::vector<multi_index> &out)
{
    if (pos + 1 == current.size()) {
        current[pos] = static_cast<multi_index::exponent_type>(remaining);
        out.emplace_back(current);
        return;
    }
    // Ascending first exponent gives ascending lexicographic order.
    for (std::uint64_t e = 0; e <= remaining; ++e) {
        current[pos] = static_cast<multi_index::exponent_type>(e);
        fill_degree(current, pos + 1, remaining - e, out);
    }
}

} // namespace

std::vector<multi_index> indices_of_degree(std::size_t n, std::uint64_t degree)
{
    if (n == 0) {
        throw error(error_code::invalid_argument, "multi-index dimension must be at least 1");
    }
    std::vector<multi_index> out;
    std::vector<multi_index::exponent_type> current(n, 0);
    fill_degree(current, 0, degree, out);
    return out;
}

std::vector<multi_index> indices_up_to(std::size_t n, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<multi_index> out;
    for (std::uint64_t d = lo; d <= hi; ++d) {
        auto level = indices_of_degree(n, d);
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    }
    return out;
}

} // namespace brjuno
