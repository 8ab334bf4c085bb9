#ifndef BRJUNO_CLI_GERM_FILE_HPP
#define BRJUNO_CLI_GERM_FILE_HPP

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include <brjuno/complex.hpp>
#include <brjuno/series.hpp>
#include <brjuno/spectrum.hpp>

namespace brjuno::cli
{

// Coefficient field picked from the file contents: exact when the spectrum is
// Gaussian rational (coefficients are always read as exact decimals or
// rationals), double at 53 bits or less, MPFR otherwise.
enum class coefficient_mode { exact, double_precision, multi_precision };

std::string to_string(coefficient_mode m);

struct germ {
    spectrum_spec spec;
    coefficient_mode mode;
    unsigned precision;
    std::optional<double> tolerance;
    std::variant<vector_series<exact_complex>, vector_series<double_complex>, vector_series<mp_complex>> f;

    unsigned truncation() const;
    std::size_t dimension() const
    {
        return spec.dimension();
    }
    std::size_t term_count() const;

    friend bool operator==(const germ &, const germ &) = default;
};

struct germ_overrides {
    std::optional<unsigned> truncation;
    std::optional<unsigned> precision;
    std::optional<double> tolerance;
};

// "p/q", "p", or a decimal such as "-1.25e-3", all read exactly.
mpq_class parse_rational(const std::string &text);

germ parse_germ(const nlohmann::json &doc, const germ_overrides &overrides = {});
germ load_germ(const std::string &path, const germ_overrides &overrides = {});

nlohmann::json emit_germ(const germ &g);
void save_germ(const germ &g, const std::string &path);

} // namespace brjuno::cli

#endif
