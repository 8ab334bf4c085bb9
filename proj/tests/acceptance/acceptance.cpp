// Acceptance run: one line per criterion, PASS or FAIL, with the measured
// quantities. Exit status is 0 when every criterion was evaluated; pass
// --strict to also fail on any FAIL line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <brjuno/conditions.hpp>
#include <brjuno/error.hpp>
#include <brjuno/linearize.hpp>
#include <brjuno/majorant.hpp>
#include <brjuno/series.hpp>
#include <brjuno/spectrum.hpp>

#include "fixtures.hpp"

using namespace brjuno;
namespace fx = brjuno::testing;

namespace
{

namespace tol
{
constexpr double phi2_float = 1e-12;
constexpr double residual_float = 1e-10;
constexpr unsigned float_bits = 128;
constexpr std::size_t level1_count = 24;
constexpr unsigned level1_truncation = 8;
constexpr unsigned support_degree = 8;
constexpr unsigned dominance_truncation = 10;
constexpr double alpha_closed_form = 1e-9;
constexpr unsigned lemma_truncation = 10;
constexpr unsigned gap_truncation = 10;
constexpr double fibonacci_increment = 1e-3;
constexpr unsigned dyadic_k = 8;
constexpr unsigned russmann_depth = 12;
constexpr unsigned growth_truncation = 30;
constexpr double growth_factor = 10.0;
} // namespace tol

struct outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Deterministic arbitrary values for resonant slots of phi.
linearize_options<exact_complex> injection(std::uint64_t seed)
{
    auto rng = std::make_shared<std::mt19937_64>(seed);
    linearize_options<exact_complex> opt;
    opt.resonant_choice = [rng](const multi_index &, std::size_t) -> std::optional<exact_complex> {
        std::uniform_int_distribution<int> pick(-3, 3);
        return fx::gq(pick(*rng), 2, pick(*rng), 3);
    };
    return opt;
}

outcome criterion_1()
{
    const auto spec = fx::half_spectrum();
    const auto exact = formal_linearize(fx::half_germ_exact(10), spec, 10);
    const bool phi2_exact = exact.phi.coefficient({2}, 0) == fx::gq(-4);
    const double res_exact = verify_conjugacy(fx::half_germ_exact(10), exact.phi, exact.normal_form, 10);

    // Oracle: lambda phi_2 + 1 = lambda^2 phi_2.
    const double oracle = 1.0 / (0.25 - 0.5);
    const auto fd = fx::quadratic_germ<double_complex>(spec, 10, 53);
    const auto rd = formal_linearize(fd, spec, 10);
    const double phi2_err = std::abs(rd.phi.coefficient({2}, 0).re - oracle);
    const double res_double = verify_conjugacy(fd, rd.phi, rd.normal_form, 10);

    const auto fm = fx::quadratic_germ<mp_complex>(spec, 10, tol::float_bits);
    const auto rm = formal_linearize(fm, spec, 10);
    const double res_mp = verify_conjugacy(fm, rm.phi, rm.normal_form, 10);

    const bool ok = phi2_exact && res_exact == 0.0 && phi2_err <= tol::phi2_float && res_mp <= tol::residual_float;
    return {ok, "phi2 exact=" + std::string(phi2_exact ? "-4" : "wrong") + " |phi2_double - oracle|=" +
                    fmt(phi2_err) + " residual exact=" + fmt(res_exact) + " float(" +
                    std::to_string(tol::float_bits) + " bits)=" + fmt(res_mp) + " [double: " + fmt(res_double) +
                    "]"};
}

outcome criterion_2()
{
    const auto spec = fx::ex1_spectrum();
    const auto res = find_resonances(spec, 6);
    std::vector<multi_index> first, second;
    for (unsigned p = 1; p <= 5; ++p) {
        first.push_back({1, p});
    }
    for (unsigned p = 2; p <= 6; ++p) {
        second.push_back({0, p});
    }
    const bool sets = res.per_coordinate.at(0) == first && res.per_coordinate.at(1) == second;
    const auto lin = formal_linearize(fx::ex1_germ(10), spec, 10);
    const bool clean = lin.obstructions.empty();
    return {sets && clean, "Res_1, Res_2 to degree 6 " + std::string(sets ? "match" : "differ") +
                               ", obstructions at N=10: " + std::to_string(lin.obstructions.size())};
}

outcome criterion_3_4(bool support)
{
    const auto fixtures = fx::level1_fixtures(tol::level1_count, 2024, tol::level1_truncation);
    std::size_t bad_g = 0, bad_injected = 0, bad_support = 0, resonant_fixtures = 0;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const auto &fix = fixtures[i];
        const unsigned n_trunc = tol::level1_truncation;
        if (!find_resonances(fix.spec, n_trunc).empty()) {
            ++resonant_fixtures;
        }
        const auto lambda = linear_series<exact_complex>(fix.spec, n_trunc, fix.f.precision());
        const auto base = poincare_dulac_normal_form(fix.f, fix.spec, n_trunc);
        if (base.g != lambda) {
            ++bad_g;
        }
        for (std::uint64_t s = 0; s < 3; ++s) {
            const auto alt = poincare_dulac_normal_form(fix.f, fix.spec, n_trunc, injection(1000 * i + s));
            if (alt.g != base.g) {
                ++bad_injected;
            }
            if (support) {
                const auto psi = compose(inverse_series(base.phi), alt.phi).truncated(tol::support_degree);
                if (!resonant_projection(psi, fix.spec).non_resonant.empty()) {
                    ++bad_support;
                }
            }
        }
    }
    if (!support) {
        return {bad_g == 0 && bad_injected == 0 && resonant_fixtures == fixtures.size(),
                std::to_string(fixtures.size()) + " fixtures (" + std::to_string(resonant_fixtures) +
                    " with resonances): non-linear g " + std::to_string(bad_g) + ", g changed by injection " +
                    std::to_string(bad_injected)};
    }
    return {bad_support == 0, std::to_string(3 * fixtures.size()) + " pairs, psi with non-resonant terms up to degree " +
                                  std::to_string(tol::support_degree) + ": " + std::to_string(bad_support)};
}

template <coefficient_field C>
void dominance_case(const vector_series<C> &f, const spectrum_spec &spec, const std::string &label, bool &all,
                    std::string &detail)
{
    const auto g = rescale_normalize(f).first;
    const auto report = majorant_dominance_report(g, spec, g.truncation());
    double worst = 0.0;
    for (const auto &row : report.rows) {
        if (row.bound > 0) {
            worst = std::max(worst, row.phi_norm / row.bound);
        }
    }
    all = all && report.all_pass;
    detail += label + " max ratio " + fmt(worst) + (report.all_pass ? "" : " FAIL") + "; ";
}

outcome criterion_5()
{
    const unsigned n_trunc = tol::dominance_truncation;
    bool all = true;
    std::string detail;
    dominance_case(fx::half_germ_exact(n_trunc), fx::half_spectrum(), "half", all, detail);
    dominance_case(fx::quadratic_germ<mp_complex>(fx::golden_spectrum(), n_trunc, tol::float_bits),
                   fx::golden_spectrum(), "golden", all, detail);
    dominance_case(fx::ex1_germ(n_trunc, tol::float_bits), fx::ex1_spectrum(), "ex1", all, detail);
    for (const auto &fix : fx::level1_fixtures(4, 77, n_trunc)) {
        dominance_case(fix.f, fix.spec, fix.label.substr(0, fix.label.find(' ')), all, detail);
    }
    return {all, detail};
}

outcome criterion_6()
{
    const auto a = alpha_sequence(12);
    const auto c = alpha_closed_form_coeffs(12);
    double worst = 0.0;
    for (unsigned m = 1; m <= 12; ++m) {
        worst = std::max(worst, std::abs(c[m].to_double() - a[m].get_d()));
    }
    const bool ok = a[1] == 1 && a[2] == 1 && a[3] == 3 && worst <= tol::alpha_closed_form;
    return {ok, "alpha_2=" + a[2].get_str() + " alpha_3=" + a[3].get_str() +
                    " max |recursion - closed form| (m<=12)=" + fmt(worst)};
}

outcome criterion_7()
{
    std::vector<std::pair<std::string, spectrum_spec>> specs{
        {"half", fx::half_spectrum()}, {"golden", fx::golden_spectrum()}, {"ex1", fx::ex1_spectrum()}};
    for (auto &fix : fx::level1_fixtures(3, 7, 4)) {
        specs.emplace_back(fix.label.substr(0, fix.label.find(' ')), fix.spec);
    }
    std::size_t rows = 0, bad = 0, nonzero = 0;
    for (const auto &[label, spec] : specs) {
        const auto t = delta_table(spec, tol::lemma_truncation);
        for (unsigned m = 2; m <= 4; ++m) {
            for (const auto &row : lemma_bound_report(t, m)) {
                ++rows;
                nonzero += row.count > 0;
                bad += !row.ok;
            }
        }
    }
    return {bad == 0, std::to_string(rows) + " (Q, m, j) rows, " + std::to_string(nonzero) +
                          " with N > 0, violations " + std::to_string(bad)};
}

outcome criterion_8()
{
    const auto t = delta_table(fx::golden_spectrum(), tol::gap_truncation);
    std::size_t bad = 0;
    std::string first;
    for (unsigned m = 2; m <= tol::gap_truncation; ++m) {
        const auto v = gap_lemma_check(t, m);
        if (!v.empty() && first.empty()) {
            first = " first " + v.front().q.to_string() + "," + v.front().q1.to_string() + " m=" + std::to_string(m);
        }
        bad += v.size();
    }
    return {bad == 0, "golden |Q|<=" + std::to_string(tol::gap_truncation) + ", m=2.." +
                          std::to_string(tol::gap_truncation) + ": counterexamples " + std::to_string(bad) + first};
}

outcome criterion_9()
{
    bool ok = true;
    std::string detail;
    for (const auto &[label, spec, n_trunc] :
         {std::tuple{"half", fx::half_spectrum(), 10u}, std::tuple{"golden", fx::golden_spectrum(), 12u}}) {
        const auto t = delta_table(spec, n_trunc);
        const auto e = brjuno_estimate(t, spec, dyadic_p_sequence(8));
        ok = ok && e.holds;
        detail += std::string(label) + " N=" + std::to_string(n_trunc) + ": max log(delta)/|Q|=" +
                  fmt(e.observed_max) + " <= " + fmt(e.bound) + "; ";
    }
    return {ok, detail};
}

outcome criterion_10()
{
    // (a) golden brjuno_sum_1d between depths 20 and 30.
    const auto d20 = brjuno_sum_1d(fx::golden_angle(), 20);
    const auto d30 = brjuno_sum_1d(fx::golden_angle(), 30);
    const double inc = std::abs(d30.partial_sum - d20.partial_sum);
    const bool a = inc < tol::fibonacci_increment;

    // (b) dyadic comparison, left <= right.
    bool b = true;
    double worst = 0.0;
    for (const auto &omega : {russmann_profile::power(1, 2), russmann_profile::power(1, 1)}) {
        for (unsigned q = 0; q <= 4; ++q) {
            const auto d = russmann_dyadic_bound(omega, q, tol::dyadic_k);
            b = b && d.left <= d.right;
            worst = std::max(worst, d.left / d.right);
        }
    }

    // (c) domination chain wherever the Russmann check passes.
    bool c = true;
    std::size_t checked = 0;
    const std::vector<std::tuple<std::string, spectrum_spec, russmann_profile>> cases{
        {"half 4k", fx::half_spectrum(), russmann_profile::power(4, 1)},
        {"golden k", fx::golden_spectrum(), russmann_profile::power(1, 1)},
        {"golden k^2", fx::golden_spectrum(), russmann_profile::power(1, 2)},
        {"ex1 k", fx::ex1_spectrum(), russmann_profile::power(1, 1)},
    };
    for (const auto &[label, spec, omega] : cases) {
        const auto r = russmann_check(spec, omega, tol::russmann_depth, 1000);
        if (r.result != verdict::satisfied_at_depth) {
            continue;
        }
        ++checked;
        const auto table = make_divisor_table(spec, tol::russmann_depth, tol::float_bits);
        for (unsigned m = 2; m <= tol::russmann_depth; ++m) {
            const double inv = table.omega_tilde[m].is_finite() ? 1.0 / table.omega_tilde[m].to_double() : 0.0;
            c = c && inv <= omega(m);
        }
        const auto p = dyadic_p_sequence(8);
        const auto red = reduced_brjuno_partial(spec, p, tol::russmann_depth);
        for (const auto &term : red.terms) {
            const double p_nu = static_cast<double>(p.values[term.index]);
            const double dom = std::log(omega(p.values[term.index + 1])) / p_nu;
            c = c && term.value <= dom;
        }
    }

    const double rel = inc / d30.partial_sum;
    return {a && b && c, "(a) |S30 - S20|=" + fmt(inc) + (a ? " ok" : " FAIL") + " [relative " + fmt(rel) +
                             "]; (b) max left/right=" + fmt(worst) + (b ? " ok" : " FAIL") +
                             " [left <= 8 right: " + (worst <= 8.0 ? "yes" : "no") + "]; (c) " +
                             std::to_string(checked) + " passing spectra" + (c ? " ok" : " FAIL")};
}

double growth_max(const quadratic_number &angle)
{
    const auto spec = fx::rotation_spectrum(angle);
    const auto f = fx::quadratic_germ<mp_complex>(spec, tol::growth_truncation, tol::float_bits);
    const auto res = formal_linearize(f, spec, tol::growth_truncation);
    return res.growth.supremum;
}

outcome criterion_11()
{
    const double liouville = growth_max(quadratic_number(fx::truncated_liouville()));
    const double golden = growth_max(fx::golden_angle());
    const double ratio = liouville / golden;
    return {ratio >= tol::growth_factor, "N=" + std::to_string(tol::growth_truncation) + " profile max liouville=" +
                                             fmt(liouville) + " golden=" + fmt(golden) + " ratio=" + fmt(ratio) +
                                             " (heuristic)"};
}

} // namespace

int main(int argc, char **argv)
{
    const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
        {"homological oracle", criterion_1},
        {"ex1 resonances and linearization", criterion_2},
        {"normal form uniqueness", [] { return criterion_3_4(false); }},
        {"resonant support of psi", [] { return criterion_3_4(true); }},
        {"majorant dominance", criterion_5},
        {"alpha consistency", criterion_6},
        {"small factor count bound", criterion_7},
        {"degree gap", criterion_8},
        {"delta growth bound", criterion_9},
        {"arithmetic conditions", criterion_10},
        {"divergence evidence", criterion_11},
    };
    int failed = 0;
    int errored = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
            ++errored;
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("criterion %2zu %-4s %s: %s (%lld ms)\n", i + 1, o.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), o.detail.c_str(), static_cast<long long>(ms));
        std::fflush(stdout);
    }
    std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
    if (errored > 0) {
        return 2;
    }
    return strict && failed > 0 ? 1 : 0;
}
