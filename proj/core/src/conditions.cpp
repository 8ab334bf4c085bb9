#include <brjuno/conditions.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <brjuno/error.hpp>

namespace brjuno
{

std::string p_sequence::describe() const
{
    std::string out = tag == kind::dyadic ? "dyadic:" : "explicit:";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(values[i]);
    }
    return out;
}

p_sequence dyadic_p_sequence(std::size_t length)
{
    if (length == 0 || length > 63) {
        throw error(error_code::invalid_argument, "dyadic p-sequence length must be in 1..63");
    }
    p_sequence out{p_sequence::kind::dyadic, {}};
    for (std::size_t i = 0; i < length; ++i) {
        out.values.push_back(std::uint64_t{1} << i);
    }
    return out;
}

p_sequence explicit_p_sequence(std::vector<std::uint64_t> values)
{
    if (values.empty() || values.front() != 1) {
        throw error(error_code::invalid_argument, "p-sequence must start with p_0 = 1");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1]) {
            throw error(error_code::invalid_argument,
                        "p-sequence must be strictly increasing (p_" + std::to_string(i) + " = "
                            + std::to_string(values[i]) + " <= " + std::to_string(values[i - 1]) + ")");
        }
    }
    return {p_sequence::kind::explicit_list, std::move(values)};
}

russmann_profile russmann_profile::power(double c, double a)
{
    if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(a)) {
        throw error(error_code::invalid_argument, "power profile needs c > 0 and finite a");
    }
    return russmann_profile(power_family{c, a});
}

russmann_profile russmann_profile::klog(double c, double b)
{
    if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(b)) {
        throw error(error_code::invalid_argument, "klog profile needs c > 0 and finite b");
    }
    return russmann_profile(klog_family{c, b});
}

russmann_profile russmann_profile::table(std::vector<double> values)
{
    if (values.empty()) {
        throw error(error_code::invalid_argument, "table profile needs at least one value");
    }
    return russmann_profile(table_family{std::move(values)});
}

namespace
{

std::vector<double> parse_numbers(const std::string &text, const std::string &what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0;
        const char *first = item.data();
        const char *last = item.data() + item.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw error(error_code::parse_error, "bad number '" + item + "' in " + what);
        }
        out.push_back(v);
    }
    return out;
}

} // namespace

russmann_profile russmann_profile::parse(const std::string &text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw error(error_code::parse_error, "omega profile must look like FAMILY:PARAMS, got '" + text + "'");
    }
    const std::string family = text.substr(0, colon);
    const auto params = parse_numbers(text.substr(colon + 1), "omega profile '" + text + "'");
    if (family == "table") {
        return table(params);
    }
    if (params.size() != 2) {
        throw error(error_code::parse_error, "omega family '" + family + "' takes two parameters");
    }
    if (family == "power") {
        return power(params[0], params[1]);
    }
    if (family == "klog") {
        return klog(params[0], params[1]);
    }
    throw error(error_code::parse_error, "unknown omega family '" + family + "' (power, klog, table)");
}

double russmann_profile::operator()(std::uint64_t k) const
{
    if (k == 0) {
        throw error(error_code::invalid_argument, "omega is defined on k >= 1");
    }
    const double x = static_cast<double>(k);
    if (const auto *f = std::get_if<power_family>(&m_family)) {
        return f->c * std::pow(x, f->a);
    }
    if (const auto *f = std::get_if<klog_family>(&m_family)) {
        return f->c * x * std::pow(1.0 + std::log(x), f->b);
    }
    const auto &t = std::get<table_family>(m_family);
    if (k > t.values.size()) {
        throw error(error_code::invalid_argument,
                    "omega table has " + std::to_string(t.values.size()) + " entries, Omega(" + std::to_string(k)
                        + ") requested");
    }
    return t.values[k - 1];
}

std::optional<double> russmann_profile::tail_bound(std::uint64_t k) const
{
    const double x = static_cast<double>(k);
    if (k == 0) {
        return std::nullopt;
    }
    // Integral comparison; valid once log(Omega(x))/x^2 is decreasing.
    if (const auto *f = std::get_if<power_family>(&m_family)) {
        const double lead = std::log(f->c) + f->a * std::log(x);
        if (lead < f->a / 2.0) {
            return std::nullopt;
        }
        return (lead + f->a) / x;
    }
    if (const auto *f = std::get_if<klog_family>(&m_family)) {
        // log(1 + log x) <= log x
        if (f->b < 0.0) {
            return std::nullopt;
        }
        const double a = 1.0 + f->b;
        const double lead = std::log(f->c) + a * std::log(x);
        if (lead < a / 2.0) {
            return std::nullopt;
        }
        return (lead + a) / x;
    }
    return std::nullopt;
}

std::uint64_t russmann_profile::domain_limit() const
{
    if (const auto *t = std::get_if<table_family>(&m_family)) {
        return t->values.size();
    }
    return 0;
}

std::string russmann_profile::describe() const
{
    std::ostringstream os;
    os.precision(17);
    if (const auto *f = std::get_if<power_family>(&m_family)) {
        os << "power:" << f->c << ',' << f->a;
    } else if (const auto *f = std::get_if<klog_family>(&m_family)) {
        os << "klog:" << f->c << ',' << f->b;
    } else {
        const auto &t = std::get<table_family>(m_family);
        os << "table:";
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            os << (i == 0 ? "" : ",") << t.values[i];
        }
    }
    return os.str();
}

std::string to_string(verdict v)
{
    switch (v) {
        case verdict::satisfied_at_depth:
            return "satisfied-at-depth";
        case verdict::violated_evidence:
            return "violated-evidence";
        case verdict::inconclusive:
            break;
    }
    return "inconclusive";
}

namespace
{

// Shared verdict rule for partial sums of nonnegative-ish terms.
void apply_sum_verdict(condition_report &r, bool finite, const verdict_thresholds &t)
{
    for (const auto &term : r.terms) {
        if (term.value > t.single_term) {
            r.result = verdict::violated_evidence;
            r.note = "term " + std::to_string(term.index) + " exceeds " + std::to_string(t.single_term);
            return;
        }
    }
    std::vector<double> prefix{0.0};
    for (const auto &term : r.terms) {
        prefix.push_back(prefix.back() + term.value);
    }
    for (std::size_t b = t.block; b + t.block < prefix.size(); b += t.block) {
        if (prefix[b] > 0.0 && prefix[b + t.block] >= 2.0 * prefix[b]) {
            r.result = verdict::violated_evidence;
            r.note = "partial sum doubles between depth " + std::to_string(b) + " and " + std::to_string(b + t.block);
            return;
        }
    }
    if (finite) {
        r.result = verdict::satisfied_at_depth;
        r.note = "finite sum";
        return;
    }
    if (r.terms.size() >= t.block) {
        const double inc = prefix.back() - prefix[prefix.size() - 1 - t.block];
        if (std::abs(inc) < t.increment_cutoff) {
            r.result = verdict::satisfied_at_depth;
            r.note = "last " + std::to_string(t.block) + " terms add less than " + std::to_string(t.increment_cutoff);
            return;
        }
    }
    r.result = verdict::inconclusive;
    r.note = "partial sum still moving at this depth";
}

void check_unit_interval(const quadratic_number &x)
{
    if (x.sign() <= 0 || (quadratic_number(mpq_class(1)) - x).sign() <= 0) {
        throw error(error_code::invalid_argument, "continued fraction input must lie in (0, 1), got " + x.to_string());
    }
}

void push_quotient(continued_fraction &cf, mpz_class a)
{
    const std::size_t k = cf.p.size();
    const mpz_class p_prev2 = k >= 2 ? cf.p[k - 2] : mpz_class(1);
    const mpz_class q_prev2 = k >= 2 ? cf.q[k - 2] : mpz_class(0);
    cf.p.push_back(a * cf.p.back() + p_prev2);
    cf.q.push_back(a * cf.q.back() + q_prev2);
    cf.quotients.push_back(std::move(a));
}

mpq_class floor_q(const mpq_class &x)
{
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return mpq_class(out);
}

} // namespace

continued_fraction cf_expansion(const quadratic_number &theta, std::size_t depth)
{
    check_unit_interval(theta);
    continued_fraction cf;
    cf.p.emplace_back(0);
    cf.q.emplace_back(1);
    quadratic_number x = theta;
    // Remainders seen so far, for period detection.
    std::map<std::string, std::size_t> seen;
    for (std::size_t nu = 1; nu <= depth; ++nu) {
        if (!x.is_rational() && !cf.period_start) {
            auto [it, inserted] = seen.emplace(x.to_string(), nu);
            if (!inserted) {
                cf.period_start = it->second;
                cf.period_length = nu - it->second;
            }
        }
        const quadratic_number y = x.reciprocal();
        mpz_class a = y.floor();
        x = y - quadratic_number(mpq_class(a));
        push_quotient(cf, std::move(a));
        if (x.sign() == 0) {
            cf.terminated = true;
            break;
        }
    }
    return cf;
}

continued_fraction cf_expansion(const big_float &theta, std::size_t depth)
{
    if (!theta.is_finite() || theta.sign() <= 0 || theta >= big_float(1L, theta.precision())) {
        throw error(error_code::invalid_argument, "continued fraction input must lie in (0, 1)");
    }
    // theta is only known to within one ulp; expand both ends and keep the
    // quotients they agree on.
    const long e = mpfr_get_exp(theta.get());
    mpq_class ulp(1);
    mpz_class scale(1);
    const long shift = static_cast<long>(theta.precision()) - e;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    ulp = mpq_class(mpz_class(1), scale);
    const mpq_class mid = theta.to_rational();
    mpq_class lo = mid - ulp;
    mpq_class hi = mid + ulp;
    continued_fraction cf;
    cf.p.emplace_back(0);
    cf.q.emplace_back(1);
    for (std::size_t nu = 1; nu <= depth; ++nu) {
        if (sgn(lo) <= 0 || sgn(hi) <= 0) {
            throw error(error_code::insufficient_precision,
                        "cannot certify partial quotient a_" + std::to_string(nu) + " at "
                            + std::to_string(theta.precision()) + " bits");
        }
        const mpq_class ylo = 1 / lo;
        const mpq_class yhi = 1 / hi;
        const mpq_class alo = floor_q(ylo);
        const mpq_class ahi = floor_q(yhi);
        if (alo != ahi) {
            throw error(error_code::insufficient_precision,
                        "cannot certify partial quotient a_" + std::to_string(nu) + " at "
                            + std::to_string(theta.precision()) + " bits");
        }
        lo = ylo - alo;
        hi = yhi - ahi;
        push_quotient(cf, alo.get_num());
    }
    return cf;
}

condition_report brjuno_sum_1d(const continued_fraction &cf, std::size_t depth, const verdict_thresholds &t)
{
    condition_report r;
    r.condition = "brjuno-1d";
    r.sequence = "continued-fraction denominators";
    const std::size_t available = cf.q.size() - 1;
    const std::size_t count = std::min(depth, available);
    r.depth = count;
    for (std::size_t nu = 0; nu < count; ++nu) {
        const double value = log_of(cf.q[nu + 1]) * std::exp(-log_of(cf.q[nu]));
        r.terms.push_back({nu, cf.q[nu].get_str(), cf.q[nu + 1].get_str(), value});
        r.partial_sum += value;
    }
    const bool finite = cf.terminated && count == available;
    apply_sum_verdict(r, finite, t);
    return r;
}

condition_report brjuno_sum_1d(const quadratic_number &theta, std::size_t depth, const verdict_thresholds &t)
{
    return brjuno_sum_1d(cf_expansion(theta, depth), depth, t);
}

condition_report brjuno_sum_1d(const big_float &theta, std::size_t depth, const verdict_thresholds &t)
{
    return brjuno_sum_1d(cf_expansion(theta, depth), depth, t);
}

namespace
{

constexpr unsigned condition_bits = 128;

condition_report sequence_sum(const spectrum_spec &spec, const p_sequence &p, unsigned max_m, bool reduced,
                              const verdict_thresholds &t)
{
    condition_report r;
    r.condition = reduced ? "reduced-brjuno" : "brjuno";
    r.sequence = p.describe();
    std::size_t count = 0;
    while (count + 1 < p.values.size() && p.values[count + 1] <= max_m) {
        ++count;
    }
    r.depth = count;
    if (count == 0) {
        r.note = "no p_(nu+1) <= " + std::to_string(max_m);
        return r;
    }
    const auto table = make_divisor_table(spec, static_cast<unsigned>(p.values[count]), condition_bits);
    bool any_infinite = false;
    for (std::size_t nu = 0; nu < count; ++nu) {
        const auto m = p.values[nu + 1];
        const big_float &w = reduced ? table.omega_tilde[m] : table.omega[m];
        if (w.is_zero()) {
            throw error(error_code::resonances_present,
                        "omega(" + std::to_string(m)
                            + ") = 0 because the spectrum has resonances; use the reduced Brjuno condition");
        }
        double value = 0.0;
        if (w.is_finite()) {
            value = -log(w).to_double() / static_cast<double>(p.values[nu]);
        } else {
            any_infinite = true;
        }
        r.terms.push_back({nu, std::to_string(p.values[nu]), std::to_string(m), value});
        r.partial_sum += value;
    }
    apply_sum_verdict(r, false, t);
    if (any_infinite) {
        r.note += "; no non-resonant pairs at some degrees (term set to 0)";
    }
    return r;
}

} // namespace

condition_report brjuno_partial(const spectrum_spec &spec, const p_sequence &p, unsigned max_m,
                                const verdict_thresholds &t)
{
    return sequence_sum(spec, p, max_m, false, t);
}

condition_report reduced_brjuno_partial(const spectrum_spec &spec, const p_sequence &p, unsigned max_m,
                                        const verdict_thresholds &t)
{
    return sequence_sum(spec, p, max_m, true, t);
}

condition_report russmann_check(const spectrum_spec &spec, const russmann_profile &omega, unsigned max_m,
                                std::uint64_t tail_k)
{
    if (max_m < 2) {
        throw error(error_code::degree_out_of_range, "russmann check needs m >= 2");
    }
    if (tail_k == 0) {
        throw error(error_code::invalid_argument, "russmann check needs K >= 1");
    }
    condition_report r;
    r.condition = "russmann";
    r.sequence = omega.describe();
    r.depth = max_m;

    // (i) k <= Omega(k) <= Omega(k + 1)
    const std::uint64_t last = std::max<std::uint64_t>(max_m, tail_k);
    if (omega.domain_limit() != 0 && omega.domain_limit() < last) {
        throw error(error_code::invalid_argument, "omega table has " + std::to_string(omega.domain_limit())
                                                      + " entries, need " + std::to_string(last));
    }
    r.monotone = true;
    for (std::uint64_t k = 1; k <= last; ++k) {
        const double v = omega(k);
        if (v < static_cast<double>(k) || (k < last && omega(k + 1) < v)) {
            r.monotone = false;
            r.monotonicity_failure = k;
            break;
        }
    }

    // (ii) finiteness of sum log(Omega(k)) / k^2
    bool finite = true;
    for (std::uint64_t k = 1; k <= tail_k; ++k) {
        const double v = omega(k);
        const double value = v > 0.0 ? std::log(v) / static_cast<double>(k * k)
                                     : std::numeric_limits<double>::infinity();
        finite = finite && std::isfinite(value);
        r.terms.push_back({k, std::to_string(k), std::to_string(k), value});
        r.partial_sum += value;
    }
    r.tail_estimate = omega.tail_bound(tail_k);
    r.summable = finite && (!r.tail_estimate || std::isfinite(*r.tail_estimate));

    // (iii) |lambda^Q - lambda_j| >= 1 / Omega(|Q|) off the resonances
    r.divisor_bound = true;
    for (const auto &q : indices_up_to(spec.dimension(), 2, max_m)) {
        const double bound = 1.0 / omega(q.degree());
        const big_float b(bound, condition_bits);
        for (std::size_t j = 0; j < spec.dimension(); ++j) {
            if (is_resonant(spec, q, j)) {
                continue;
            }
            const big_float d = small_divisor(spec, q, j, condition_bits);
            if (d < b) {
                r.divisor_bound = false;
                r.witness = russmann_witness{q, j, d.to_double(), bound};
                break;
            }
        }
        if (r.witness) {
            break;
        }
    }

    if (!*r.divisor_bound) {
        r.result = verdict::violated_evidence;
        r.note = "divisor below 1/Omega at Q = " + r.witness->q.to_string() + ", j = "
                 + std::to_string(r.witness->coordinate + 1);
    } else if (!*r.monotone) {
        r.result = verdict::inconclusive;
        r.note = "profile is not admissible: k <= Omega(k) <= Omega(k+1) fails at k = "
                 + std::to_string(*r.monotonicity_failure);
    } else if (!*r.summable) {
        r.result = verdict::inconclusive;
        r.note = "sum of log(Omega(k))/k^2 is not finite at this depth";
    } else {
        r.result = verdict::satisfied_at_depth;
        r.note = "items (i)-(iii) hold up to m = " + std::to_string(max_m);
    }
    return r;
}

dyadic_comparison russmann_dyadic_bound(const russmann_profile &omega, unsigned q, unsigned k)
{
    if (k == 0) {
        throw error(error_code::invalid_argument, "dyadic comparison needs K >= 1");
    }
    if (q + k + 1 >= 63) {
        throw error(error_code::invalid_argument, "dyadic comparison range too large");
    }
    dyadic_comparison out{0.0, 0.0};
    for (unsigned nu = 0; nu < k; ++nu) {
        const std::uint64_t s = std::uint64_t{1} << (q + nu);
        out.left += std::log(omega(2 * s)) / static_cast<double>(s);
    }
    const std::uint64_t lo = std::uint64_t{1} << (q + 1);
    const std::uint64_t hi = std::uint64_t{1} << (q + k + 1);
    for (std::uint64_t j = lo; j <= hi; ++j) {
        const double x = static_cast<double>(j);
        out.right += std::log(omega(j)) / (x * x);
    }
    return out;
}

} // namespace brjuno
