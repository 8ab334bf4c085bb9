#ifndef BRJUNO_SPECTRUM_HPP
#define BRJUNO_SPECTRUM_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <brjuno/big_float.hpp>
#include <brjuno/complex.hpp>
#include <brjuno/multi_index.hpp>
#include <brjuno/quadratic.hpp>

namespace brjuno
{

// lambda = modulus * exp(2 pi i angle), angle in turns, known exactly.
struct polar_exact {
    mpq_class modulus;
    quadratic_number angle;
};

// lambda known only approximately. Resonance means |lambda^Q - lambda_j| < tolerance.
struct numeric_eigenvalue {
    mp_complex value;
    double tolerance;
};

class eigenvalue_spec
{
public:
    static eigenvalue_spec polar(mpq_class modulus, quadratic_number angle);
    static eigenvalue_spec numeric(mp_complex value, double tolerance);

    bool is_exact() const noexcept
    {
        return std::holds_alternative<polar_exact>(m_data);
    }
    const polar_exact &exact() const
    {
        return std::get<polar_exact>(m_data);
    }
    const numeric_eigenvalue &approx() const
    {
        return std::get<numeric_eigenvalue>(m_data);
    }
    // Angle is a multiple of 1/4 turn, so lambda is a Gaussian rational.
    bool is_gaussian_rational() const;

    friend bool operator==(const eigenvalue_spec &, const eigenvalue_spec &);

private:
    explicit eigenvalue_spec(std::variant<polar_exact, numeric_eigenvalue> data) : m_data(std::move(data)) {}

    std::variant<polar_exact, numeric_eigenvalue> m_data;
};

// Subdiagonal entry of the Jordan form. The size of a nonzero entry is not
// fixed by the theory, so it is optional.
struct jordan_entry {
    bool nonzero = false;
    std::optional<mpq_class> magnitude;

    friend bool operator==(const jordan_entry &, const jordan_entry &) = default;
};

class spectrum_spec
{
public:
    // Default resonance tolerance: 1e-12 at double precision, 2^(-p/2) above.
    static double default_tolerance(unsigned bits);

    explicit spectrum_spec(std::vector<eigenvalue_spec> eigenvalues, std::vector<jordan_entry> jordan = {},
                           unsigned bits = big_float::default_bits);

    std::size_t dimension() const noexcept
    {
        return m_eigenvalues.size();
    }
    const eigenvalue_spec &eigenvalue(std::size_t j) const
    {
        return m_eigenvalues.at(j);
    }
    const std::vector<eigenvalue_spec> &eigenvalues() const noexcept
    {
        return m_eigenvalues;
    }
    const std::vector<jordan_entry> &jordan() const noexcept
    {
        return m_jordan;
    }
    unsigned precision() const noexcept
    {
        return m_bits;
    }

    // Exact mode iff every eigenvalue is polar_exact.
    bool is_exact() const noexcept
    {
        return m_exact;
    }
    bool is_diagonal() const;
    bool is_gaussian_rational() const;
    // Tolerance used for coordinate j in numeric mode.
    double tolerance(std::size_t j) const;

    // Requires is_gaussian_rational().
    exact_complex exact_value(std::size_t j) const;
    mp_complex value(std::size_t j, unsigned bits) const;
    big_float modulus(std::size_t j, unsigned bits) const;

    friend bool operator==(const spectrum_spec &, const spectrum_spec &) = default;

private:
    std::vector<eigenvalue_spec> m_eigenvalues;
    std::vector<jordan_entry> m_jordan;
    unsigned m_bits;
    bool m_exact;
};

// Does lambda^Q = lambda_j hold (|Q| >= 2)?
bool is_resonant(const spectrum_spec &spec, const multi_index &q, std::size_t j);

struct resonance_set {
    // Per coordinate, resonant Q with 2 <= |Q| <= N in graded-lex order.
    std::vector<std::vector<multi_index>> per_coordinate;
    bool exact;
    unsigned truncation;

    bool empty() const;
};

resonance_set find_resonances(const spectrum_spec &spec, unsigned truncation);

// lambda^Q - lambda_j; exactly zero on resonant slots in exact mode.
mp_complex divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j, unsigned bits);
// Exact lambda^Q - lambda_j for Gaussian-rational spectra.
exact_complex exact_divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j);
// |lambda^Q - lambda_j|.
big_float small_divisor(const spectrum_spec &spec, const multi_index &q, std::size_t j, unsigned bits);

// min over 2 <= |Q| <= m and all j.
big_float omega(const spectrum_spec &spec, unsigned m, unsigned bits);
// Same, skipping resonant pairs. +inf when every pair is resonant.
big_float omega_tilde(const spectrum_spec &spec, unsigned m, unsigned bits);

struct eps_entry {
    big_float eps;
    std::size_t index;
};

// eps_Q and i_Q: minimum over non-resonant j, smallest j on ties.
eps_entry eps_iQ(const spectrum_spec &spec, const multi_index &q, unsigned bits);

struct divisor_table {
    unsigned truncation;
    // Indexed by m; entries 0 and 1 are unused.
    std::vector<big_float> omega;
    std::vector<big_float> omega_tilde;
    std::map<multi_index, eps_entry> eps;
    std::vector<multi_index> fully_resonant;
};

divisor_table make_divisor_table(const spectrum_spec &spec, unsigned truncation, unsigned bits);

} // namespace brjuno

#endif
