#ifndef BRJUNO_CLI_RUN_HPP
#define BRJUNO_CLI_RUN_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <brjuno_cli/germ_file.hpp>
#include <brjuno_cli/report.hpp>

namespace brjuno::cli
{

enum exit_code : int { exit_ok = 0, exit_usage = 1, exit_obstructed = 2, exit_violated = 3 };

struct run_config {
    // resonances | divisors | conditions | linearize | normal-form | majorant | report
    std::string command;
    std::string input;
    std::optional<unsigned> truncation;
    std::optional<unsigned> precision;
    std::optional<double> tolerance;
    // "dyadic" or a comma list starting with 1
    std::string p_sequence = "dyadic";
    std::string omega = "power:1,2";
    // CF depth for brjuno-1d, Omega tail cutoff for russmann
    std::optional<std::uint64_t> depth;
    // brjuno | reduced-brjuno | russmann | brjuno-1d
    std::string kind = "reduced-brjuno";
    std::optional<std::string> out_dir;
    output_format format = output_format::csv;
};

// Runs one subcommand on an already parsed germ. The report is filled even
// when the returned code is nonzero.
int run_command(const run_config &config, const germ &g, report &r);

// Parses the input, runs, writes the report to out (or --out) and errors to
// err. Never throws.
int run(const run_config &config, std::ostream &out, std::ostream &err);

} // namespace brjuno::cli

#endif
