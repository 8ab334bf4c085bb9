#include <brjuno_cli/run.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <brjuno/conditions.hpp>
#include <brjuno/error.hpp>
#include <brjuno/linearize.hpp>
#include <brjuno/majorant.hpp>
#include <brjuno/spectrum.hpp>

namespace brjuno::cli
{

namespace
{

std::string real_text(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string real_text(const big_float &x)
{
    return x.to_string();
}

std::string real_text(const mpq_class &q)
{
    return big_float(q, 128).to_string();
}

template <coefficient_field C>
std::pair<std::string, std::string> coefficient_text(const C &c)
{
    return {real_text(c.re), real_text(c.im)};
}

std::vector<std::string> index_columns(std::size_t n)
{
    std::vector<std::string> out{"degree"};
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back("q" + std::to_string(i + 1));
    }
    return out;
}

std::vector<std::string> index_fields(const multi_index &q)
{
    std::vector<std::string> out{std::to_string(q.degree())};
    for (auto e : q.exponents()) {
        out.push_back(std::to_string(e));
    }
    return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string parts_text(const std::vector<multi_index> &parts)
{
    std::string out;
    for (const auto &p : parts) {
        if (!out.empty()) {
            out += ' ';
        }
        out += p.to_string();
    }
    return out;
}

// Rows (degree, q, coordinate, re, im) for terms with lo <= |Q|.
template <coefficient_field C>
void series_table(report &r, const std::string &name, const vector_series<C> &s, unsigned lo)
{
    auto &t = r.add_table(name, concat(index_columns(s.dimension()), {"coordinate", "re", "im"}));
    for (const auto &[q, v] : s.terms()) {
        if (q.degree() < lo) {
            continue;
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (field_traits<C>::is_zero(v[j])) {
                continue;
            }
            const auto [re, im] = coefficient_text(v[j]);
            t.rows.push_back(concat(index_fields(q), {std::to_string(j + 1), re, im}));
        }
    }
}

p_sequence make_p_sequence(const std::string &text, unsigned n_trunc)
{
    if (text == "dyadic") {
        return dyadic_p_sequence(static_cast<std::size_t>(std::bit_width(n_trunc)) + 1);
    }
    std::vector<std::uint64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            values.push_back(v);
        } catch (const std::exception &) {
            throw error(error_code::parse_error, "--p-sequence: '" + item + "' is not a positive integer");
        }
    }
    return explicit_p_sequence(std::move(values));
}

void run_resonances(const germ &g, report &r)
{
    const auto res = find_resonances(g.spec, g.truncation());
    r.note("resonance_test", res.exact ? "exact" : "tolerance");
    auto &t = r.add_table("resonances", concat(index_columns(g.dimension()), {"coordinate"}));
    std::size_t count = 0;
    for (const auto &q : indices_up_to(g.dimension(), 2, g.truncation())) {
        for (std::size_t j = 0; j < g.dimension(); ++j) {
            const auto &list = res.per_coordinate[j];
            if (std::binary_search(list.begin(), list.end(), q)) {
                t.rows.push_back(concat(index_fields(q), {std::to_string(j + 1)}));
                ++count;
            }
        }
    }
    r.note("resonances", std::to_string(count));
}

void run_divisors(const germ &g, report &r)
{
    const auto n_trunc = g.truncation();
    if (n_trunc < 2) {
        throw error(error_code::invalid_argument, "divisors need truncation >= 2");
    }
    const auto table = make_divisor_table(g.spec, n_trunc, g.precision);
    auto &om = r.add_table("omega", {"m", "omega", "omega_tilde"});
    for (unsigned m = 2; m <= n_trunc; ++m) {
        om.rows.push_back({std::to_string(m), real_text(table.omega[m]), real_text(table.omega_tilde[m])});
    }
    auto &eps = r.add_table("eps", concat(index_columns(g.dimension()), {"eps", "index"}));
    for (const auto &[q, e] : table.eps) {
        eps.rows.push_back(concat(index_fields(q), {real_text(e.eps), std::to_string(e.index + 1)}));
    }
    r.note("fully_resonant", std::to_string(table.fully_resonant.size()));
}

std::pair<bool, mp_complex> rotation_angle_source(const germ &g)
{
    if (g.dimension() != 1) {
        throw error(error_code::invalid_argument, "brjuno-1d needs a one-dimensional germ");
    }
    const auto &e = g.spec.eigenvalue(0);
    return {e.is_exact(), g.spec.value(0, g.precision)};
}

int run_conditions(const run_config &config, const germ &g, report &r)
{
    const auto n_trunc = g.truncation();
    condition_report c;
    if (config.kind == "brjuno" || config.kind == "reduced-brjuno") {
        const auto p = make_p_sequence(config.p_sequence, n_trunc);
        c = config.kind == "brjuno" ? brjuno_partial(g.spec, p, n_trunc) : reduced_brjuno_partial(g.spec, p, n_trunc);
    } else if (config.kind == "russmann") {
        const auto omega = russmann_profile::parse(config.omega);
        c = russmann_check(g.spec, omega, n_trunc, config.depth.value_or(1000));
    } else if (config.kind == "brjuno-1d") {
        rotation_angle_source(g);
        const auto &e = g.spec.eigenvalue(0);
        const std::size_t depth = config.depth.value_or(30);
        if (e.is_exact()) {
            if (e.exact().modulus != 1) {
                throw error(error_code::invalid_argument, "brjuno-1d needs |lambda| = 1");
            }
            auto theta = e.exact().angle.centered_fraction();
            if (theta.sign() < 0) {
                theta += quadratic_number(mpq_class(1));
            }
            if (theta.sign() == 0) {
                throw error(error_code::invalid_argument, "brjuno-1d needs a nonzero rotation angle");
            }
            c = brjuno_sum_1d(theta, depth);
        } else {
            const auto v = g.spec.value(0, g.precision);
            auto theta = atan2(v.im, v.re) / (big_float(2L, g.precision) * big_float::pi(g.precision));
            if (theta.sign() < 0) {
                theta += big_float(1L, g.precision);
            }
            c = brjuno_sum_1d(theta, depth);
        }
    } else {
        throw error(error_code::invalid_argument,
                    "unknown --kind '" + config.kind + "' (brjuno, reduced-brjuno, russmann, brjuno-1d)");
    }
    r.note("condition", c.condition);
    if (!c.sequence.empty()) {
        r.note("sequence", c.sequence);
    }
    r.note("partial_sum", real_text(c.partial_sum));
    if (c.tail_estimate) {
        r.note("tail_estimate", real_text(*c.tail_estimate));
    }
    r.note("depth", std::to_string(c.depth));
    if (c.monotone) {
        r.note("monotone", *c.monotone ? "yes" : "no");
    }
    if (c.monotonicity_failure) {
        r.note("monotonicity_failure_at", std::to_string(*c.monotonicity_failure));
    }
    if (c.summable) {
        r.note("summable", *c.summable ? "yes" : "no");
    }
    if (c.divisor_bound) {
        r.note("divisor_bound", *c.divisor_bound ? "yes" : "no");
    }
    if (c.witness) {
        const auto &w = *c.witness;
        r.note("witness", w.q.to_string() + " coordinate " + std::to_string(w.coordinate + 1) + " divisor " +
                              real_text(w.divisor) + " < " + real_text(w.bound));
    }
    r.note("verdict", to_string(c.result));
    r.note("verdict_rule", c.note);
    auto &t = r.add_table("condition_terms", {"index", "p", "p_next", "value"});
    for (const auto &term : c.terms) {
        t.rows.push_back({std::to_string(term.index), term.p, term.p_next, real_text(term.value)});
    }
    return c.result == verdict::violated_evidence ? exit_violated : exit_ok;
}

template <coefficient_field C>
int linearize_typed(const germ &g, const vector_series<C> &f, report &r, bool normal_form_only)
{
    const auto n_trunc = g.truncation();
    const auto res = formal_linearize(f, g.spec, n_trunc);
    const double residual = verify_conjugacy(f, res.phi, res.normal_form, n_trunc);
    r.note("status", res.status == linearization_status::obstructed ? "obstructed" : "linearized-at-depth");
    r.note("obstructions", std::to_string(res.obstructions.size()));
    r.note("conjugacy_residual", real_text(residual));
    if (!field_traits<C>::exact) {
        r.note("zero_threshold", real_text(res.zero_threshold));
    }
    if (normal_form_only) {
        series_table(r, "normal_form", res.normal_form, 1);
        series_table(r, "phi", res.phi, 2);
        return exit_ok;
    }
    r.note("growth_supremum", real_text(res.growth.supremum));
    r.note("divergence_evidence", res.growth.divergence_evidence ? "yes" : "no");
    r.note("ill_conditioned_divisors", std::to_string(res.warnings.size()));
    series_table(r, "phi", res.phi, 2);
    auto &ob = r.add_table("obstructions", concat(index_columns(g.dimension()), {"coordinate", "re", "im"}));
    for (const auto &o : res.obstructions) {
        const auto [re, im] = coefficient_text(o.residue);
        ob.rows.push_back(concat(index_fields(o.q), {std::to_string(o.coordinate + 1), re, im}));
    }
    auto &gr = r.add_table("growth", {"degree", "value"});
    for (unsigned d = 2; d < res.growth.value.size(); ++d) {
        gr.rows.push_back({std::to_string(d), real_text(res.growth.value[d])});
    }
    if (!res.warnings.empty()) {
        auto &w = r.add_table("divisor_warnings", concat(index_columns(g.dimension()), {"coordinate", "divisor", "bound"}));
        for (const auto &x : res.warnings) {
            w.rows.push_back(concat(index_fields(x.q), {std::to_string(x.coordinate + 1), real_text(x.divisor),
                                                        real_text(x.bound)}));
        }
    }
    return res.status == linearization_status::obstructed ? exit_obstructed : exit_ok;
}

int run_linearize(const germ &g, report &r, bool normal_form_only)
{
    return std::visit([&](const auto &f) { return linearize_typed(g, f, r, normal_form_only); }, g.f);
}

template <coefficient_field C>
void dominance_typed(const germ &g, const vector_series<C> &f, report &r)
{
    try {
        const auto [scaled, info] = rescale_normalize(f);
        r.note("rescale_sigma", real_text(info.sigma));
        const auto dom = majorant_dominance_report(scaled, g.spec, g.truncation());
        r.note("dominance", dom.all_pass ? "pass" : "fail");
        auto &t = r.add_table("dominance", concat(index_columns(g.dimension()), {"phi_norm", "bound", "ok"}));
        for (const auto &row : dom.rows) {
            t.rows.push_back(concat(index_fields(row.q), {real_text(row.phi_norm), real_text(row.bound),
                                                          row.ok ? "1" : "0"}));
        }
    } catch (const error &e) {
        r.note("dominance", std::string("skipped (") + std::string(to_string(e.code())) + "): " + e.what());
    }
}

void run_majorant(const run_config &config, const germ &g, report &r)
{
    const auto n_trunc = g.truncation();
    const auto table = delta_table(g.spec, n_trunc, g.precision);
    r.note("theta", real_text(table.theta.theta));
    r.note("theta_inverted", table.theta.inverted ? "yes" : "no");
    r.note("delta_skipped", std::to_string(table.skipped.size()));

    auto &al = r.add_table("alpha", {"m", "alpha"});
    for (unsigned m = 1; m <= n_trunc; ++m) {
        al.rows.push_back({std::to_string(m), table.alpha[m].get_str()});
    }
    auto &de = r.add_table("delta", concat(index_columns(g.dimension()), {"delta", "parts"}));
    for (const auto &[q, e] : table.delta) {
        de.rows.push_back(concat(index_fields(q), {real_text(e.value), parts_text(e.parts)}));
    }
    auto &lm = r.add_table("lemma", concat({"m"}, concat(index_columns(g.dimension()),
                                                          {"coordinate", "count", "bound", "factors", "ok"})));
    std::size_t lemma_bad = 0;
    for (unsigned m = 2; m <= std::min(4u, n_trunc); ++m) {
        for (const auto &row : lemma_bound_report(table, m)) {
            lemma_bad += !row.ok;
            lm.rows.push_back(concat({std::to_string(m)},
                                     concat(index_fields(row.q),
                                            {std::to_string(row.coordinate + 1), std::to_string(row.count),
                                             real_text(row.bound), std::to_string(row.factor_count),
                                             row.ok ? "1" : "0"})));
        }
    }
    r.note("lemma_violations", std::to_string(lemma_bad));
    auto &gp = r.add_table("gap", {"m", "q", "q1"});
    for (unsigned m = 2; m <= n_trunc; ++m) {
        for (const auto &v : gap_lemma_check(table, m)) {
            gp.rows.push_back({std::to_string(m), v.q.to_string(), v.q1.to_string()});
        }
    }
    r.note("gap_violations", std::to_string(gp.rows.size()));

    std::visit([&](const auto &f) { dominance_typed(g, f, r); }, g.f);

    const auto p = make_p_sequence(config.p_sequence, n_trunc);
    try {
        const auto e = brjuno_estimate(table, g.spec, p);
        r.note("growth_bound_sum", real_text(e.brjuno_sum));
        r.note("growth_bound_reciprocal_sum", real_text(e.reciprocal_sum));
        r.note("growth_bound_log_inv_theta", real_text(e.log_inv_theta));
        r.note("growth_bound", real_text(e.bound));
        r.note("growth_observed_max", real_text(e.observed_max) + " at " + e.observed_argmax.to_string());
        r.note("growth_bound_holds", e.holds ? "yes" : "no");
    } catch (const error &e) {
        r.note("growth_bound", std::string("skipped: ") + e.what());
    }
}

void header(const run_config &config, const germ &g, report &r)
{
    r.note("command", config.command);
    r.note("input", config.input);
    r.note("dimension", std::to_string(g.dimension()));
    r.note("mode", to_string(g.mode));
    r.note("precision_bits", std::to_string(g.precision));
    r.note("truncation", std::to_string(g.truncation()));
    if (!g.spec.is_exact()) {
        r.note("tolerance", real_text(g.spec.tolerance(0)));
    }
    if (config.command == "conditions" || config.command == "majorant" || config.command == "report") {
        r.note("p_sequence", config.p_sequence);
    }
    if (config.command == "conditions" || config.command == "report") {
        r.note("kind", config.kind);
        if (config.kind == "russmann") {
            r.note("omega", config.omega);
        }
    }
}

} // namespace

int run_command(const run_config &config, const germ &g, report &r)
{
    header(config, g, r);
    const auto &cmd = config.command;
    if (cmd == "resonances") {
        run_resonances(g, r);
        return exit_ok;
    }
    if (cmd == "divisors") {
        run_divisors(g, r);
        return exit_ok;
    }
    if (cmd == "conditions") {
        return run_conditions(config, g, r);
    }
    if (cmd == "linearize") {
        return run_linearize(g, r, false);
    }
    if (cmd == "normal-form") {
        return run_linearize(g, r, true);
    }
    if (cmd == "majorant") {
        run_majorant(config, g, r);
        return exit_ok;
    }
    if (cmd == "report") {
        run_resonances(g, r);
        run_divisors(g, r);
        auto section = [&](const std::string &name, auto &&fn) {
            try {
                fn();
            } catch (const error &e) {
                r.note(name, std::string("skipped (") + std::string(to_string(e.code())) + "): " + e.what());
            }
        };
        section("conditions", [&] { run_conditions(config, g, r); });
        section("linearize", [&] { run_linearize(g, r, false); });
        section("majorant", [&] { run_majorant(config, g, r); });
        return exit_ok;
    }
    throw error(error_code::invalid_argument, "unknown command '" + cmd + "'");
}

int run(const run_config &config, std::ostream &out, std::ostream &err)
{
    try {
        const auto g = load_germ(config.input, {config.truncation, config.precision, config.tolerance});
        report r;
        const int code = run_command(config, g, r);
        if (config.out_dir) {
            write_report_dir(*config.out_dir, r, config.format);
        } else {
            write_report(out, r, config.format);
        }
        return code;
    } catch (const error &e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_usage;
}

} // namespace brjuno::cli
