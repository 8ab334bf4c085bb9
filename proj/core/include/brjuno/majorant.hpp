#ifndef BRJUNO_MAJORANT_HPP
#define BRJUNO_MAJORANT_HPP

#include <cstddef>
#include <map>
#include <vector>

#include <gmpxx.h>

#include <brjuno/big_float.hpp>
#include <brjuno/conditions.hpp>
#include <brjuno/multi_index.hpp>
#include <brjuno/series.hpp>
#include <brjuno/spectrum.hpp>

namespace brjuno
{

// alpha_1..alpha_N from the ordered-composition recursion; entry 0 is unused.
std::vector<mpz_class> alpha_sequence(unsigned truncation);

// Taylor coefficients of ((t+1)/4)(1 - sqrt(1 - 8t/(1+t)^2)); entry 0 is the
// constant term (zero).
std::vector<big_float> alpha_closed_form_coeffs(unsigned truncation, unsigned bits = big_float::default_bits);

struct theta_info {
    big_float theta;
    big_float min_modulus;
    // min |lambda_h| > 1, so the constant was taken from the inverse spectrum.
    bool inverted;
};

theta_info theta_constant(const spectrum_spec &spec, unsigned bits = big_float::default_bits);

struct delta_entry {
    big_float value;
    // Argmax decomposition, parts in non-increasing graded-lex order.
    std::vector<multi_index> parts;
};

struct majorant_table {
    static constexpr std::size_t max_dimension = 3;
    static constexpr unsigned max_truncation = 12;

    unsigned truncation;
    std::vector<mpz_class> alpha;
    theta_info theta;
    divisor_table divisors;
    std::map<multi_index, delta_entry> delta;
    // Fully resonant Q, where delta is undefined.
    std::vector<multi_index> skipped;

    // 1 on degree-1 indices; throws for skipped or out-of-range Q.
    big_float delta_of(const multi_index &q) const;
};

majorant_table delta_table(const spectrum_spec &spec, unsigned truncation, unsigned bits = big_float::default_bits);

struct decomposition_tree {
    multi_index root;
    // Each internal node with the partition chosen there, in expansion order.
    std::vector<std::pair<multi_index, std::vector<multi_index>>> nodes;
    // L_0 = Q, then the remaining factors with non-increasing degree.
    std::vector<multi_index> factors;
};

decomposition_tree flatten_decomposition(const majorant_table &table, const multi_index &q);

// Number of factors L with eps_L < theta * omega_tilde(m) and i_L = j.
std::size_t count_small_factors(const decomposition_tree &tree, const majorant_table &table, unsigned m,
                                std::size_t j);

// 0 when |Q| <= m, otherwise 2|Q|/m - 1.
double lemma_bound(std::uint64_t degree, unsigned m);
bool check_lemma_bound(std::size_t count, std::uint64_t degree, unsigned m);

struct lemma_row {
    multi_index q;
    unsigned m;
    std::size_t coordinate;
    std::size_t count;
    double bound;
    std::size_t factor_count;
    bool ok;
};

// Every admissible Q of the table against every coordinate for one m.
std::vector<lemma_row> lemma_bound_report(const majorant_table &table, unsigned m);

struct gap_violation {
    multi_index q;
    multi_index q1;
};

// Pairs Q1 < Q (componentwise) with both eps below theta * omega_tilde(m),
// equal i_Q, i_Q1, and |Q| - |Q1| < m.
std::vector<gap_violation> gap_lemma_check(const majorant_table &table, unsigned m);

struct dominance_row {
    multi_index q;
    double phi_norm;
    double bound;
    bool ok;
};

struct dominance_report {
    std::vector<dominance_row> rows;
    bool all_pass;
};

// ||phi_Q|| <= alpha_|Q| delta_Q for a germ with ||f_L|| <= 1.
template <coefficient_field C>
dominance_report majorant_dominance_report(const vector_series<C> &f, const spectrum_spec &spec,
                                           unsigned truncation);

struct growth_bound_check {
    // sum (1/p_nu) log(1/omega_tilde(p_(nu+1))) over p_nu < N
    double brjuno_sum;
    // sum 1/p_nu over the same nu
    double reciprocal_sum;
    double log_inv_theta;
    double bound;
    double observed_max;
    multi_index observed_argmax;
    std::size_t terms;
    bool holds;
};

growth_bound_check brjuno_estimate(const majorant_table &table, const spectrum_spec &spec, const p_sequence &p);

} // namespace brjuno

#endif
