#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "polylim/cli.hpp"

using polylim::cli::CliConfig;
using polylim::cli::Format;
using polylim::cli::Subcommand;

int main(int argc, char** argv)
{
    CLI::App app{"Cotangent-derivative expansions, real polygamma evaluation and pole-ratio limits"};
    app.require_subcommand(1);

    CliConfig cfg;
    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("-o,--output", cfg.output, "Write to this file instead of standard output");
    };

    auto* coeffs = app.add_subcommand("coeffs", "Print the closed-form expansions of cot^(p) for p = 1..P");
    coeffs->add_option("--order", cfg.order, "Highest derivative order P")->required()->check(CLI::Range(1u, 200u));
    add_format(coeffs);

    auto* eval_cot = app.add_subcommand("eval-cot", "Evaluate cot^(p)(x), x in radians");
    eval_cot->add_option("--order", cfg.order, "Derivative order p")->required()->check(CLI::Range(0u, 150u));
    eval_cot->add_option("--x", cfg.x, "Argument (radians)")->required();
    add_format(eval_cot);

    auto* polygamma = app.add_subcommand("polygamma", "Evaluate psi^(n)(x) on the real line");
    polygamma->add_option("--order", cfg.order, "Order n")->required()->check(CLI::Range(0u, 150u));
    polygamma->add_option("--x", cfg.x, "Argument")->required();
    add_format(polygamma);

    auto* limit = app.add_subcommand("limit", "Exact pole-ratio limit, optionally verified numerically");
    limit->add_option("--family", cfg.family, "gamma or polygamma")
        ->required()
        ->check(CLI::IsMember({"gamma", "polygamma", "gamma-ratio", "polygamma-ratio"}));
    limit->add_option("--i", cfg.i, "Derivative order i (polygamma family)")->check(CLI::Range(0u, 100u));
    limit->add_option("--n", cfg.n, "Numerator scale n")->required()->check(CLI::Range(1u, 1000u));
    limit->add_option("--q", cfg.q, "Denominator scale q")->required()->check(CLI::Range(1u, 1000u));
    limit->add_option("--k", cfg.k, "Pole index k (z -> -k)")->required()->check(CLI::Range(0u, 1000u));
    limit->add_flag("--probe", cfg.probe, "Sample the ratio near the pole and extrapolate");
    limit->add_option("--eps0", cfg.eps0, "Largest probe offset")->check(CLI::Range(1e-5, 0.1));
    limit->add_option("--levels", cfg.levels, "Number of probe samples")->check(CLI::Range(1u, 12u));
    limit->add_option("--tol", cfg.tolerance, "Convergence tolerance")->check(CLI::PositiveNumber);
    add_format(limit);

    auto* verify = app.add_subcommand("verify", "Run an invariant suite; exit 0 only if every check passes");
    verify->add_option("--suite", cfg.suite, "Suite to run")
        ->check(CLI::IsMember({"coeffs", "reflection", "limits", "all"}));
    add_format(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return polylim::cli::kExitUsage;
    }

    const std::map<const CLI::App*, Subcommand> dispatch{{coeffs, Subcommand::coeffs},
                                                         {eval_cot, Subcommand::eval_cot},
                                                         {polygamma, Subcommand::polygamma},
                                                         {limit, Subcommand::limit},
                                                         {verify, Subcommand::verify}};
    cfg.subcommand = dispatch.at(app.get_subcommands().front());

    if (cfg.output.empty()) {
        return polylim::cli::run(cfg, std::cout, std::cerr);
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open " << cfg.output << " for writing\n";
        return polylim::cli::kExitFailure;
    }
    return polylim::cli::run(cfg, file, std::cerr);
}
