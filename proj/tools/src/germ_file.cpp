#include <brjuno_cli/germ_file.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <brjuno/error.hpp>

namespace brjuno::cli
{

using nlohmann::json;

std::string to_string(coefficient_mode m)
{
    switch (m) {
        case coefficient_mode::exact:
            return "exact";
        case coefficient_mode::double_precision:
            return "double";
        case coefficient_mode::multi_precision:
            return "mpfr";
    }
    return "unknown";
}

unsigned germ::truncation() const
{
    return std::visit([](const auto &s) { return s.truncation(); }, f);
}

std::size_t germ::term_count() const
{
    return std::visit([](const auto &s) { return s.term_count(); }, f);
}

namespace
{

[[noreturn]] void fail(const std::string &where, const std::string &what)
{
    throw error(error_code::parse_error, where + ": " + what);
}

bool all_digits(const std::string &s, std::size_t from, std::size_t to)
{
    if (from >= to) {
        return false;
    }
    for (auto i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

std::string scalar_text(const json &j, const std::string &where)
{
    if (j.is_string()) {
        return j.get<std::string>();
    }
    if (j.is_number()) {
        return j.dump();
    }
    fail(where, "expected a number or a string, got " + std::string(j.type_name()));
}

mpq_class rational_field(const json &j, const std::string &where)
{
    try {
        return parse_rational(scalar_text(j, where));
    } catch (const error &e) {
        fail(where, e.what());
    }
}

const json &require(const json &obj, const char *key, const std::string &where)
{
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::uint64_t unsigned_field(const json &j, const std::string &where)
{
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    fail(where, "expected a non-negative integer");
}

mpz_class integer_field(const json &j, const std::string &where)
{
    const auto q = rational_field(j, where);
    if (q.get_den() != 1) {
        fail(where, "expected an integer");
    }
    return q.get_num();
}

eigenvalue_spec parse_eigenvalue(const json &e, unsigned bits, double tol, const std::string &where)
{
    if (!e.is_object()) {
        fail(where, "expected an object");
    }
    if (e.contains("re") || e.contains("im")) {
        const auto re = big_float::parse(scalar_text(require(e, "re", where), where + ".re"), bits);
        const auto im = big_float::parse(scalar_text(require(e, "im", where), where + ".im"), bits);
        return eigenvalue_spec::numeric({re, im}, tol);
    }
    mpq_class modulus(1);
    if (e.contains("modulus")) {
        modulus = rational_field(e["modulus"], where + ".modulus");
    }
    if (sgn(modulus) <= 0) {
        fail(where + ".modulus", "must be positive");
    }
    if (e.contains("angle_turns")) {
        return eigenvalue_spec::polar(modulus, rational_field(e["angle_turns"], where + ".angle_turns"));
    }
    if (e.contains("angle_quadratic")) {
        const auto &a = e["angle_quadratic"];
        const auto w = where + ".angle_quadratic";
        try {
            return eigenvalue_spec::polar(
                modulus, quadratic_number::from_abcd(integer_field(require(a, "a", w), w + ".a"),
                                                     integer_field(require(a, "b", w), w + ".b"),
                                                     integer_field(require(a, "c", w), w + ".c"),
                                                     integer_field(require(a, "d", w), w + ".d")));
        } catch (const error &err) {
            if (err.code() == error_code::parse_error) {
                throw;
            }
            fail(w, err.what());
        }
    }
    fail(where, "needs angle_turns, angle_quadratic, or re/im");
}

struct raw_term {
    std::size_t coordinate;
    multi_index q;
    mpq_class re;
    mpq_class im;
    std::string where;
};

template <coefficient_field C>
C lambda_value(const spectrum_spec &spec, std::size_t j, unsigned bits)
{
    if constexpr (field_traits<C>::exact) {
        return spec.exact_value(j);
    } else {
        return field_traits<C>::from_mp(spec.value(j, bits));
    }
}

template <coefficient_field C>
vector_series<C> build(const spectrum_spec &spec, const std::vector<raw_term> &terms, unsigned n_trunc,
                       unsigned bits)
{
    const auto n = spec.dimension();
    vector_series<C> f(n, n_trunc, bits);
    std::vector<bool> has_linear(n, false);
    for (const auto &t : terms) {
        if (t.q.degree() == 1) {
            std::size_t k = 0;
            while (t.q[k] == 0) {
                ++k;
            }
            if (k == t.coordinate) {
                has_linear[k] = true;
            } else if (!(k + 1 == t.coordinate && spec.jordan().at(k).nonzero)) {
                throw error(error_code::parse_error,
                            t.where + ": off-diagonal linear term outside the Jordan subdiagonal");
            }
        }
        if (t.q.degree() <= n_trunc) {
            f.add_term(t.coordinate, t.q, field_traits<C>::from_rational(t.re, t.im, bits));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto unit = multi_index::unit(n, j);
        const auto lambda = lambda_value<C>(spec, j, bits);
        if (!has_linear[j]) {
            f.add_term(j, unit, lambda);
            continue;
        }
        const auto c = f.coefficient(unit, j);
        bool match;
        if constexpr (field_traits<C>::exact) {
            match = c == lambda;
        } else {
            const auto d = field_traits<C>::to_mp(c - lambda, bits);
            const double gap = field_traits<mp_complex>::magnitude(d, bits).to_double();
            match = gap <= std::max(spec.tolerance(j), std::ldexp(1.0, -static_cast<int>(bits / 2)));
        }
        if (!match) {
            throw error(error_code::linear_part_mismatch,
                        "linear coefficient of coordinate " + std::to_string(j + 1) + " does not match its eigenvalue");
        }
    }
    return f;
}

} // namespace

mpq_class parse_rational(const std::string &text)
{
    auto bad = [&]() -> mpq_class { throw error(error_code::parse_error, "malformed number '" + text + "'"); };
    if (text.empty()) {
        return bad();
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        if (!all_digits(text, pos, slash) || !all_digits(text, slash + 1, text.size())) {
            return bad();
        }
        mpz_class num(text.substr(pos, slash - pos), 10), den(text.substr(slash + 1), 10);
        if (den == 0) {
            throw error(error_code::parse_error, "zero denominator in '" + text + "'");
        }
        mpq_class q(negative ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    }
    // decimal: digits [. digits] [e [sign] digits]
    const auto e = text.find_first_of("eE");
    const auto mant_end = e == std::string::npos ? text.size() : e;
    const auto dot = text.find('.', pos);
    std::string digits;
    long scale = 0;
    if (dot != std::string::npos && dot < mant_end) {
        const bool int_ok = dot == pos || all_digits(text, pos, dot);
        const bool frac_ok = dot + 1 == mant_end || all_digits(text, dot + 1, mant_end);
        if (!int_ok || !frac_ok || mant_end == pos + 1) {
            return bad();
        }
        digits = text.substr(pos, dot - pos) + text.substr(dot + 1, mant_end - dot - 1);
        scale = -static_cast<long>(mant_end - dot - 1);
    } else {
        if (!all_digits(text, pos, mant_end)) {
            return bad();
        }
        digits = text.substr(pos, mant_end - pos);
    }
    if (e != std::string::npos) {
        auto epos = e + 1;
        bool eneg = false;
        if (epos < text.size() && (text[epos] == '+' || text[epos] == '-')) {
            eneg = text[epos] == '-';
            ++epos;
        }
        if (!all_digits(text, epos, text.size()) || text.size() - epos > 6) {
            return bad();
        }
        const long ex = std::stol(text.substr(epos));
        scale += eneg ? -ex : ex;
    }
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    if (negative) {
        num = -num;
    }
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(num, p10) : mpq_class(num * p10);
    q.canonicalize();
    return q;
}

germ parse_germ(const json &doc, const germ_overrides &overrides)
{
    if (!doc.is_object()) {
        fail("germ", "expected a JSON object");
    }
    const auto n = unsigned_field(require(doc, "dimension", "germ"), "dimension");
    if (n == 0) {
        fail("dimension", "must be at least 1");
    }
    const auto file_trunc = unsigned_field(require(doc, "truncation", "germ"), "truncation");
    if (file_trunc == 0) {
        fail("truncation", "must be at least 1");
    }
    unsigned bits = big_float::default_bits;
    if (doc.contains("precision_bits")) {
        bits = static_cast<unsigned>(unsigned_field(doc["precision_bits"], "precision_bits"));
    }
    if (overrides.precision) {
        bits = *overrides.precision;
    }
    if (bits < 2) {
        fail("precision_bits", "must be at least 2");
    }
    std::optional<double> tolerance;
    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number() || doc["tolerance"].get<double>() <= 0) {
            fail("tolerance", "expected a positive number");
        }
        tolerance = doc["tolerance"].get<double>();
    }
    if (overrides.tolerance) {
        tolerance = overrides.tolerance;
    }
    const double tol = tolerance.value_or(spectrum_spec::default_tolerance(bits));

    const auto &eigs = require(doc, "eigenvalues", "germ");
    if (!eigs.is_array() || eigs.size() != n) {
        fail("eigenvalues", "expected an array of " + std::to_string(n) + " entries");
    }
    std::vector<eigenvalue_spec> values;
    for (std::size_t j = 0; j < n; ++j) {
        values.push_back(parse_eigenvalue(eigs[j], bits, tol, "eigenvalues[" + std::to_string(j) + "]"));
    }
    std::vector<jordan_entry> jordan;
    if (doc.contains("jordan_subdiagonal")) {
        const auto &js = doc["jordan_subdiagonal"];
        if (!js.is_array() || js.size() + 1 != n) {
            fail("jordan_subdiagonal", "expected an array of " + std::to_string(n - 1) + " entries");
        }
        for (std::size_t k = 0; k < js.size(); ++k) {
            const auto flag = unsigned_field(js[k], "jordan_subdiagonal[" + std::to_string(k) + "]");
            if (flag > 1) {
                fail("jordan_subdiagonal[" + std::to_string(k) + "]", "expected 0 or 1");
            }
            jordan.push_back({flag == 1, std::nullopt});
        }
    }
    std::optional<spectrum_spec> spec;
    try {
        spec.emplace(std::move(values), std::move(jordan), bits);
    } catch (const error &e) {
        fail("jordan_subdiagonal", e.what());
    }

    const unsigned n_trunc = overrides.truncation.value_or(static_cast<unsigned>(file_trunc));
    if (n_trunc == 0) {
        fail("truncation", "must be at least 1");
    }
    std::vector<raw_term> terms;
    const auto &ts = require(doc, "terms", "germ");
    if (!ts.is_array()) {
        fail("terms", "expected an array");
    }
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto where = "terms[" + std::to_string(k) + "]";
        const auto &t = ts[k];
        const auto coord = unsigned_field(require(t, "coordinate", where), where + ".coordinate");
        if (coord < 1 || coord > n) {
            fail(where + ".coordinate", "must lie in 1.." + std::to_string(n));
        }
        const auto &ex = require(t, "exponents", where);
        if (!ex.is_array() || ex.size() != n) {
            fail(where + ".exponents", "expected " + std::to_string(n) + " entries, got " +
                                           std::to_string(ex.is_array() ? ex.size() : 0));
        }
        std::vector<std::uint32_t> e;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = unsigned_field(ex[i], where + ".exponents[" + std::to_string(i) + "]");
            if (v > 1000) {
                fail(where + ".exponents", "exponent too large");
            }
            e.push_back(static_cast<std::uint32_t>(v));
        }
        const auto &c = require(t, "coefficient", where);
        mpq_class re, im;
        if (c.contains("rational_re") || c.contains("rational_im")) {
            re = c.contains("rational_re") ? rational_field(c["rational_re"], where + ".coefficient.rational_re")
                                           : mpq_class(0);
            im = c.contains("rational_im") ? rational_field(c["rational_im"], where + ".coefficient.rational_im")
                                           : mpq_class(0);
        } else if (c.contains("re") || c.contains("im")) {
            re = c.contains("re") ? rational_field(c["re"], where + ".coefficient.re") : mpq_class(0);
            im = c.contains("im") ? rational_field(c["im"], where + ".coefficient.im") : mpq_class(0);
        } else {
            fail(where + ".coefficient", "needs re/im or rational_re/rational_im");
        }
        multi_index q(std::move(e));
        if (q.degree() == 0) {
            if (sgn(re) != 0 || sgn(im) != 0) {
                fail(where, "nonzero constant term; the fixed point must be the origin");
            }
            continue;
        }
        if (q.degree() > file_trunc) {
            fail(where, "degree " + std::to_string(q.degree()) + " exceeds truncation " + std::to_string(file_trunc));
        }
        terms.push_back({static_cast<std::size_t>(coord - 1), std::move(q), re, im, where});
    }

    coefficient_mode mode;
    if (spec->is_exact() && spec->is_gaussian_rational()) {
        mode = coefficient_mode::exact;
    } else if (bits <= 53) {
        mode = coefficient_mode::double_precision;
    } else {
        mode = coefficient_mode::multi_precision;
    }
    switch (mode) {
        case coefficient_mode::exact:
            return {*spec, mode, bits, tolerance, build<exact_complex>(*spec, terms, n_trunc, bits)};
        case coefficient_mode::double_precision:
            return {*spec, mode, 53, tolerance, build<double_complex>(*spec, terms, n_trunc, 53)};
        case coefficient_mode::multi_precision:
            break;
    }
    return {*spec, mode, bits, tolerance, build<mp_complex>(*spec, terms, n_trunc, bits)};
}

germ load_germ(const std::string &path, const germ_overrides &overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw error(error_code::parse_error, "cannot open germ file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw error(error_code::parse_error, path + ": " + e.what());
    }
    return parse_germ(doc, overrides);
}

namespace
{

std::string double_text(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json coefficient_json(const exact_complex &c)
{
    return {{"rational_re", c.re.get_str()}, {"rational_im", c.im.get_str()}};
}

json coefficient_json(const double_complex &c)
{
    return {{"re", double_text(c.re)}, {"im", double_text(c.im)}};
}

json coefficient_json(const mp_complex &c)
{
    return {{"re", c.re.to_string()}, {"im", c.im.to_string()}};
}

json eigenvalue_json(const eigenvalue_spec &e)
{
    if (!e.is_exact()) {
        const auto &v = e.approx().value;
        return {{"re", v.re.to_string()}, {"im", v.im.to_string()}};
    }
    const auto &p = e.exact();
    json out{{"modulus", p.modulus.get_str()}};
    if (p.angle.is_rational()) {
        out["angle_turns"] = p.angle.rational_part().get_str();
        return out;
    }
    // x + y sqrt(d) = (a + b sqrt(d)) / c
    const auto &x = p.angle.rational_part();
    const auto &y = p.angle.irrational_part();
    mpz_class c;
    mpz_lcm(c.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
    const mpq_class a = x * c;
    const mpq_class b = y * c;
    out["angle_quadratic"] = {{"a", a.get_num().get_str()},
                              {"b", b.get_num().get_str()},
                              {"c", c.get_str()},
                              {"d", p.angle.radicand().get_str()}};
    return out;
}

} // namespace

json emit_germ(const germ &g)
{
    json out;
    out["dimension"] = g.dimension();
    out["truncation"] = g.truncation();
    out["precision_bits"] = g.precision;
    if (g.tolerance) {
        out["tolerance"] = *g.tolerance;
    }
    out["eigenvalues"] = json::array();
    for (const auto &e : g.spec.eigenvalues()) {
        out["eigenvalues"].push_back(eigenvalue_json(e));
    }
    if (!g.spec.is_diagonal()) {
        auto js = json::array();
        for (const auto &j : g.spec.jordan()) {
            js.push_back(j.nonzero ? 1 : 0);
        }
        out["jordan_subdiagonal"] = js;
    }
    out["terms"] = json::array();
    std::visit(
        [&](const auto &f) {
            for (const auto &[q, v] : f.terms()) {
                for (std::size_t j = 0; j < v.size(); ++j) {
                    using C = std::decay_t<decltype(v[j])>;
                    if (field_traits<C>::is_zero(v[j])) {
                        continue;
                    }
                    out["terms"].push_back({{"coordinate", j + 1},
                                            {"exponents", q.exponents()},
                                            {"coefficient", coefficient_json(v[j])}});
                }
            }
        },
        g.f);
    return out;
}

void save_germ(const germ &g, const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw error(error_code::invalid_argument, "cannot write '" + path + "'");
    }
    out << emit_germ(g).dump(2) << '\n';
}

} // namespace brjuno::cli
