#pragma once

// Command dispatch for the polylim tool. Argument parsing lives in
// tools/polylim.cpp; this header turns a validated CliConfig into output.

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "polylim/cotderiv.hpp"
#include "polylim/errors.hpp"
#include "polylim/format.hpp"
#include "polylim/limits.hpp"
#include "polylim/polygamma.hpp"
#include "polylim/verify.hpp"

namespace polylim::cli {

enum class Subcommand { coeffs, eval_cot, polygamma, limit, verify };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
    Subcommand subcommand = Subcommand::coeffs;
    Format format = Format::csv;

    unsigned order = 1;
    double x = 0.0;

    std::string family = "polygamma";
    unsigned i = 0;
    unsigned n = 1;
    unsigned q = 1;
    unsigned k = 0;
    bool probe = false;
    double eps0 = kDefaultProbeEps0;
    unsigned levels = kDefaultProbeLevels;
    double tolerance = kDefaultProbeTolerance;

    std::string suite = "all";
    std::string output; // empty: standard output
};

namespace detail {

inline void print_coeffs(std::ostream& out, const CliConfig& cfg)
{
    if (cfg.format == Format::csv) {
        out << "order,sin_exponent,multiplier,coefficient\n";
    }
    for (unsigned p = 1; p <= cfg.order; ++p) {
        const CotDerivExpansion e = expansion(p);
        if (cfg.format == Format::json) {
            out << nlohmann::json(e).dump() << '\n';
            continue;
        }
        for (const auto& h : e.harmonics) {
            out << e.order << ',' << e.sin_exponent << ',' << h.multiplier << ',' << h.coefficient.str() << '\n';
        }
    }
}

inline void print_eval_cot(std::ostream& out, const CliConfig& cfg)
{
    const double value = eval_cot_deriv(cfg.order, cfg.x);
    if (cfg.format == Format::json) {
        out << nlohmann::json{{"order", cfg.order}, {"x", cfg.x}, {"value", value}}.dump() << '\n';
        return;
    }
    out << "order,x,value\n" << cfg.order << ',' << format_double(cfg.x) << ',' << format_double(value) << '\n';
}

inline void print_polygamma(std::ostream& out, const CliConfig& cfg)
{
    const PolygammaResult r = polylim::polygamma(cfg.order, cfg.x);
    if (cfg.format == Format::json) {
        out << nlohmann::json(r).dump() << '\n';
        return;
    }
    out << "order,x,value,method,shift_count\n"
        << r.order << ',' << format_double(r.argument) << ',' << format_double(r.value) << ',' << to_string(r.method)
        << ',' << r.shift_count << '\n';
}

inline void print_limit(std::ostream& out, const CliConfig& cfg)
{
    const LimitSpec spec{parse_family(cfg.family), cfg.i, cfg.n, cfg.q, cfg.k};
    const ExactRational value = exact_limit(spec);
    if (cfg.format == Format::json) {
        nlohmann::json j{{"spec", spec}, {"value", value}};
        if (cfg.probe) {
            j["probe"] = probe_limit(spec, cfg.eps0, cfg.levels, cfg.tolerance);
        }
        out << j.dump() << '\n';
        return;
    }
    out << value.str() << '\n';
    if (cfg.probe) {
        write_probe_csv(out, probe_limit(spec, cfg.eps0, cfg.levels, cfg.tolerance));
    }
}

inline bool print_verify(std::ostream& out, const CliConfig& cfg)
{
    const auto results = verify::run_suite(cfg.suite);
    bool all_passed = true;
    if (cfg.format == Format::json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : results) {
            rows.push_back({{"suite", r.suite}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            all_passed = all_passed && r.passed;
        }
        out << rows.dump() << '\n';
        return all_passed;
    }
    out << "suite,check,status,detail\n";
    for (const auto& r : results) {
        out << r.suite << ',' << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ',' << r.detail << '\n';
        all_passed = all_passed && r.passed;
    }
    return all_passed;
}

} // namespace detail

/// Executes one subcommand. Library errors become exit status 1 with the
/// message on `err`.
inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.subcommand) {
        case Subcommand::coeffs:
            detail::print_coeffs(out, cfg);
            return kExitOk;
        case Subcommand::eval_cot:
            detail::print_eval_cot(out, cfg);
            return kExitOk;
        case Subcommand::polygamma:
            detail::print_polygamma(out, cfg);
            return kExitOk;
        case Subcommand::limit:
            detail::print_limit(out, cfg);
            return kExitOk;
        case Subcommand::verify:
            return detail::print_verify(out, cfg) ? kExitOk : kExitFailure;
        }
    } catch (const polylim::error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace polylim::cli
