#include <iostream>

#include <CLI11.hpp>

#include <brjuno_cli/run.hpp>

int main(int argc, char **argv)
{
    using namespace brjuno::cli;

    CLI::App app{"Small-divisor and linearization diagnostics for holomorphic germs"};
    app.require_subcommand(1, 1);

    run_config config;
    std::string format = "csv";

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--input", config.input, "germ file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--truncation", config.truncation, "override the truncation degree N")
            ->check(CLI::Range(1u, 64u));
        sub->add_option("--precision", config.precision, "working precision in bits (53 selects double)")
            ->check(CLI::Range(2u, 4096u));
        sub->add_option("--tolerance", config.tolerance, "resonance tolerance for numeric eigenvalues")
            ->check(CLI::PositiveNumber);
        sub->add_option("--p-sequence", config.p_sequence, "dyadic or a comma list starting with 1");
        sub->add_option("--omega", config.omega, "Omega family: power:C,A | klog:C,B | table:v1,v2,...");
        sub->add_option("--depth", config.depth, "continued-fraction depth or Omega tail cutoff");
        sub->add_option("--out", config.out_dir, "write summary.txt and one file per table here");
        sub->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
    };

    for (const auto &[name, help] : std::vector<std::pair<std::string, std::string>>{
             {"resonances", "list resonant (Q, j) up to the truncation"},
             {"divisors", "omega, omega-tilde and eps_Q tables"},
             {"conditions", "Brjuno, reduced Brjuno, Russmann or one-dimensional Brjuno sums"},
             {"linearize", "formal linearization, obstructions and growth profile"},
             {"normal-form", "Poincare-Dulac normal form g and the conjugacy phi"},
             {"majorant", "alpha, delta, theta tables and the majorant checks"},
             {"report", "all of the above"}}) {
        auto *sub = app.add_subcommand(name, help);
        add_common(sub);
        if (name == "conditions" || name == "report") {
            sub->add_option("--kind", config.kind, "brjuno | reduced-brjuno | russmann | brjuno-1d")
                ->check(CLI::IsMember({"brjuno", "reduced-brjuno", "russmann", "brjuno-1d"}));
        }
        sub->callback([&config, sub] { config.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    config.format = format == "text" ? output_format::text : output_format::csv;
    return run(config, std::cout, std::cerr);
}
