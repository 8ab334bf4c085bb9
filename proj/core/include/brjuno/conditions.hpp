#ifndef BRJUNO_CONDITIONS_HPP
#define BRJUNO_CONDITIONS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <brjuno/big_float.hpp>
#include <brjuno/multi_index.hpp>
#include <brjuno/quadratic.hpp>
#include <brjuno/spectrum.hpp>

namespace brjuno
{

// Strictly increasing p_0 = 1 < p_1 < ...
struct p_sequence {
    enum class kind { dyadic, explicit_list };

    kind tag;
    std::vector<std::uint64_t> values;

    std::string describe() const;
};

// 1, 2, 4, ... with the given number of entries.
p_sequence dyadic_p_sequence(std::size_t length);
// Validates p_0 = 1 and strict monotonicity.
p_sequence explicit_p_sequence(std::vector<std::uint64_t> values);

// Omega: N -> R for the Russmann condition.
class russmann_profile
{
public:
    // c * k^a
    static russmann_profile power(double c, double a);
    // c * k * (1 + log k)^b
    static russmann_profile klog(double c, double b);
    // Omega(k) = values[k - 1]
    static russmann_profile table(std::vector<double> values);
    // "power:C,A", "klog:C,B" or "table:v1,v2,..."
    static russmann_profile parse(const std::string &text);

    double operator()(std::uint64_t k) const;
    // Upper bound for sum_{k > K} log(Omega(k)) / k^2 when the family has one.
    std::optional<double> tail_bound(std::uint64_t k) const;
    // Largest k where Omega is defined (0 = unbounded).
    std::uint64_t domain_limit() const;
    std::string describe() const;

private:
    struct power_family {
        double c, a;
    };
    struct klog_family {
        double c, b;
    };
    struct table_family {
        std::vector<double> values;
    };

    explicit russmann_profile(std::variant<power_family, klog_family, table_family> f) : m_family(std::move(f)) {}

    std::variant<power_family, klog_family, table_family> m_family;
};

enum class verdict { satisfied_at_depth, inconclusive, violated_evidence };

std::string to_string(verdict v);

struct condition_term {
    // nu for sequence sums, k for Omega sums.
    std::uint64_t index;
    // p_nu and p_(nu+1) (or q_nu, q_(nu+1) rendered as strings for CF sums).
    std::string p;
    std::string p_next;
    double value;
};

// Single witness (Q, j) with |lambda^Q - lambda_j| < 1/Omega(|Q|).
struct russmann_witness {
    multi_index q;
    std::size_t coordinate;
    double divisor;
    double bound;
};

struct condition_report {
    std::string condition;
    std::string sequence;
    std::vector<condition_term> terms;
    double partial_sum = 0.0;
    std::optional<double> tail_estimate;
    verdict result = verdict::inconclusive;
    std::uint64_t depth = 0;
    // Human-readable explanation of the verdict rule that fired.
    std::string note;

    // Russmann items (i)-(iii).
    std::optional<bool> monotone;
    std::optional<bool> summable;
    std::optional<bool> divisor_bound;
    std::optional<std::uint64_t> monotonicity_failure;
    std::optional<russmann_witness> witness;
};

// Thresholds behind the heuristic verdicts.
struct verdict_thresholds {
    double single_term = 1e3;
    double increment_cutoff = 1e-6;
    std::uint64_t block = 10;
};

struct continued_fraction {
    // a_1, a_2, ... (a_0 = 0 since theta is in (0, 1)).
    std::vector<mpz_class> quotients;
    // p_nu / q_nu for nu = 0..k, with p_0 / q_0 = 0 / 1.
    std::vector<mpz_class> p;
    std::vector<mpz_class> q;
    // Expansion ended because theta is rational.
    bool terminated = false;
    // Quadratic irrationals: quotients repeat from period_start with period_length.
    std::optional<std::size_t> period_start;
    std::optional<std::size_t> period_length;
};

// Exact expansion of a rational or quadratic irrational in (0, 1).
continued_fraction cf_expansion(const quadratic_number &theta, std::size_t depth);
// Expansion of a binary float in (0, 1); every quotient is certified against
// the rounding interval or error(insufficient_precision) names the index.
continued_fraction cf_expansion(const big_float &theta, std::size_t depth);

// sum_{nu < depth} log(q_(nu+1)) / q_nu over the convergent denominators.
condition_report brjuno_sum_1d(const quadratic_number &theta, std::size_t depth, const verdict_thresholds &t = {});
condition_report brjuno_sum_1d(const big_float &theta, std::size_t depth, const verdict_thresholds &t = {});
condition_report brjuno_sum_1d(const continued_fraction &cf, std::size_t depth, const verdict_thresholds &t = {});

// sum (1/p_nu) log(1/omega(p_(nu+1))) over nu with p_(nu+1) <= max_m.
condition_report brjuno_partial(const spectrum_spec &spec, const p_sequence &p, unsigned max_m,
                                const verdict_thresholds &t = {});
// Same with omega_tilde.
condition_report reduced_brjuno_partial(const spectrum_spec &spec, const p_sequence &p, unsigned max_m,
                                        const verdict_thresholds &t = {});

condition_report russmann_check(const spectrum_spec &spec, const russmann_profile &omega, unsigned max_m,
                                std::uint64_t tail_k);

struct dyadic_comparison {
    // sum_{nu < K} (1/s_nu) log Omega(s_(nu+1)), s_nu = 2^(q+nu)
    double left;
    // sum_{k = 2^(q+1)}^{2^(q+K+1)} (1/k^2) log Omega(k)
    double right;
};

dyadic_comparison russmann_dyadic_bound(const russmann_profile &omega, unsigned q, unsigned k);

} // namespace brjuno

#endif
