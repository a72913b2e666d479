#pragma once

// Exact pole-ratio limits
//
//   lim_{z->-k} Gamma(nz)/Gamma(qz)          = (-1)^{(n-q)k} (q/n) (qk)!/(nk)!
//   lim_{z->-k} psi^(i)(nz)/psi^(i)(qz)      = (q/n)^{i+1}
//
// and a numerical probe that samples the ratio on a geometric grid
// z_j = -k + eps0 * 2^{-j} and extrapolates to the pole with Neville's scheme.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "polylim/errors.hpp"
#include "polylim/exact.hpp"
#include "polylim/format.hpp"
#include "polylim/polygamma.hpp"

namespace polylim {

enum class Family { gamma_ratio, polygamma_ratio };

constexpr std::string_view to_string(Family f) noexcept
{
    return f == Family::gamma_ratio ? "gamma" : "polygamma";
}

inline Family parse_family(std::string_view text)
{
    if (text == "gamma" || text == "gamma-ratio") {
        return Family::gamma_ratio;
    }
    if (text == "polygamma" || text == "polygamma-ratio") {
        return Family::polygamma_ratio;
    }
    throw domain_error("unknown limit family '" + std::string(text) + "'");
}

struct LimitSpec {
    Family family = Family::polygamma_ratio;
    unsigned derivative_order = 0;  // i; ignored for the gamma ratio
    unsigned numerator_scale = 1;   // n
    unsigned denominator_scale = 1; // q
    unsigned pole_index = 0;        // k

    void validate() const
    {
        if (numerator_scale < 1 || denominator_scale < 1) {
            throw domain_error("limit scales n and q must be positive");
        }
    }

    friend bool operator==(const LimitSpec&, const LimitSpec&) = default;
};

inline ExactRational gamma_ratio_limit(unsigned n, unsigned q, unsigned k)
{
    if (n < 1 || q < 1) {
        throw domain_error("gamma_ratio_limit: n and q must be positive");
    }
    const bool negative = ((n > q ? n - q : q - n) % 2 == 1) && (k % 2 == 1);
    BigInt num = BigInt(q) * factorial(q * k);
    if (negative) {
        num = -num;
    }
    return ExactRational(num, BigInt(n) * factorial(n * k));
}

/// Holds at every pole -k, so k does not enter.
inline ExactRational polygamma_ratio_limit(unsigned i, unsigned n, unsigned q)
{
    if (n < 1 || q < 1) {
        throw domain_error("polygamma_ratio_limit: n and q must be positive");
    }
    return ExactRational(boost::multiprecision::pow(BigInt(q), i + 1), boost::multiprecision::pow(BigInt(n), i + 1));
}

/// Residue of Gamma at -k: (-1)^k / k!.
inline ExactRational gamma_laurent_leading(unsigned k)
{
    return ExactRational(BigInt(k % 2 == 0 ? 1 : -1), factorial(k));
}

inline ExactRational exact_limit(const LimitSpec& spec)
{
    spec.validate();
    if (spec.family == Family::gamma_ratio) {
        return gamma_ratio_limit(spec.numerator_scale, spec.denominator_scale, spec.pole_index);
    }
    return polygamma_ratio_limit(spec.derivative_order, spec.numerator_scale, spec.denominator_scale);
}

/// Value at 0 of the polynomial through (xs[j], ys[j]).
inline double neville_extrapolate(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size() || xs.empty()) {
        throw domain_error("neville_extrapolate: need matching, non-empty abscissae and values");
    }
    std::vector<double> t(ys.begin(), ys.end());
    const std::size_t n = t.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t j = n - 1; j >= m; --j) {
            t[j] += (t[j] - t[j - 1]) * xs[j] / (xs[j - m] - xs[j]);
        }
    }
    return t.back();
}

namespace detail {

struct LogGamma {
    double log_abs;
    double sign;
};

// log|Gamma(w)| and sign(Gamma(w)) for w = base + offset, base integer,
// 0 < offset < 1. Splitting w keeps sin(pi w) accurate next to a pole.
inline LogGamma log_gamma_split(std::int64_t base, double offset)
{
    if (base >= 0) {
        return {std::lgamma(static_cast<double>(base) + offset), 1.0};
    }
    // Gamma(w) = pi / (sin(pi w) Gamma(1 - w)), Gamma(1 - w) > 0
    double s = std::sin(std::numbers::pi * offset);
    if (base % 2 != 0) {
        s = -s;
    }
    const double one_minus_w = static_cast<double>(1 - base) - offset;
    return {std::log(std::numbers::pi) - std::log(std::abs(s)) - std::lgamma(one_minus_w), s < 0 ? -1.0 : 1.0};
}

// scale * (-k + eps) as an integer part plus an offset in [0, 1), computed
// without rounding the offset against the integer.
struct SplitArgument {
    std::int64_t base;
    double offset;
};

inline SplitArgument split_scaled(unsigned scale, unsigned k, double eps, double z)
{
    const double shift = scale * eps;
    const double whole = std::floor(shift);
    const double offset = shift - whole;
    if (offset < kPolygammaPoleGuard || 1.0 - offset < kPolygammaPoleGuard) {
        throw probe_failure("ratio sample at z = " + format_double(z) + " lies on a pole", z);
    }
    return {-static_cast<std::int64_t>(scale) * k + static_cast<std::int64_t>(whole), offset};
}

inline LogGamma scaled_log_gamma(unsigned scale, unsigned k, double eps, double z)
{
    const SplitArgument a = split_scaled(scale, k, eps, z);
    return log_gamma_split(a.base, a.offset);
}

inline double scaled_polygamma(unsigned order, unsigned scale, unsigned k, double eps, double z)
{
    const SplitArgument a = split_scaled(scale, k, eps, z);
    if (a.base > 0 || (a.base == 0 && a.offset >= 0.5)) {
        return polygamma(order, static_cast<double>(a.base) + a.offset).value;
    }
    detail::check_order(order);
    return detail::reflected(order, a.base, a.offset, {}).value;
}

inline double ratio_sample(const LimitSpec& spec, double eps)
{
    const unsigned n = spec.numerator_scale;
    const unsigned q = spec.denominator_scale;
    const unsigned k = spec.pole_index;
    const double z = -static_cast<double>(k) + eps;

    if (spec.family == Family::gamma_ratio) {
        const LogGamma num = scaled_log_gamma(n, k, eps, z);
        const LogGamma den = scaled_log_gamma(q, k, eps, z);
        return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
    }

    const unsigned i = spec.derivative_order;
    return scaled_polygamma(i, n, k, eps, z) / scaled_polygamma(i, q, k, eps, z);
}

} // namespace detail

struct ProbeReport {
    LimitSpec spec;
    std::vector<double> epsilons; // strictly decreasing
    std::vector<double> samples;
    double extrapolated = 0.0;
    ExactRational target;
    double abs_error = 0.0;
    bool converged = false;

    friend bool operator==(const ProbeReport&, const ProbeReport&) = default;
};

inline constexpr double kDefaultProbeEps0 = 0.05;
inline constexpr unsigned kDefaultProbeLevels = 8;
inline constexpr double kDefaultProbeTolerance = 1e-5;
inline constexpr double kProbeEpsFloor = 1e-5;

inline ProbeReport probe_limit(const LimitSpec& spec, double eps0 = kDefaultProbeEps0,
                               unsigned levels = kDefaultProbeLevels, double tolerance = kDefaultProbeTolerance)
{
    spec.validate();
    if (!(eps0 > 0.0 && eps0 <= 0.1)) {
        throw domain_error("probe: eps0 must lie in (0, 0.1]");
    }
    if (levels < 1 || levels > 12) {
        throw domain_error("probe: levels must lie in 1..12");
    }
    if (std::ldexp(eps0, -static_cast<int>(levels - 1)) < kProbeEpsFloor) {
        throw domain_error("probe: smallest eps would fall below 1e-5");
    }
    if (!(tolerance > 0.0)) {
        throw domain_error("probe: tolerance must be positive");
    }

    ProbeReport report;
    report.spec = spec;
    for (unsigned j = 0; j < levels; ++j) {
        const double eps = std::ldexp(eps0, -static_cast<int>(j));
        report.epsilons.push_back(eps);
        report.samples.push_back(detail::ratio_sample(spec, eps));
    }
    report.extrapolated = neville_extrapolate(report.epsilons, report.samples);
    report.target = exact_limit(spec);
    report.abs_error = std::abs(report.extrapolated - report.target.to_double());
    report.converged = report.abs_error <= tolerance;
    return report;
}

inline constexpr std::string_view kProbeSampleHeader = "family,i,n,q,k,eps,sample";
inline constexpr std::string_view kProbeSummaryHeader =
    "family,i,n,q,k,extrapolated,target_num,target_den,abs_error,converged";

inline void write_probe_csv(std::ostream& out, const ProbeReport& r)
{
    const auto& s = r.spec;
    const std::string key = std::string(to_string(s.family)) + ',' + std::to_string(s.derivative_order) + ','
                            + std::to_string(s.numerator_scale) + ',' + std::to_string(s.denominator_scale) + ','
                            + std::to_string(s.pole_index);
    out << kProbeSampleHeader << '\n';
    for (std::size_t j = 0; j < r.samples.size(); ++j) {
        out << key << ',' << format_double(r.epsilons[j]) << ',' << format_double(r.samples[j]) << '\n';
    }
    out << kProbeSummaryHeader << '\n';
    out << key << ',' << format_double(r.extrapolated) << ',' << r.target.numerator().str() << ','
        << r.target.denominator().str() << ',' << format_double(r.abs_error) << ','
        << (r.converged ? "true" : "false") << '\n';
}

inline void to_json(nlohmann::json& j, const LimitSpec& s)
{
    j = nlohmann::json{{"family", std::string(to_string(s.family))},
                       {"i", s.derivative_order},
                       {"n", s.numerator_scale},
                       {"q", s.denominator_scale},
                       {"k", s.pole_index}};
}

inline void from_json(const nlohmann::json& j, LimitSpec& s)
{
    s.family = parse_family(j.at("family").get<std::string>());
    s.derivative_order = j.at("i").get<unsigned>();
    s.numerator_scale = j.at("n").get<unsigned>();
    s.denominator_scale = j.at("q").get<unsigned>();
    s.pole_index = j.at("k").get<unsigned>();
}

inline void to_json(nlohmann::json& j, const ExactRational& r)
{
    j = r.str();
}

inline void from_json(const nlohmann::json& j, ExactRational& r)
{
    r = ExactRational::parse(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const ProbeReport& r)
{
    j = nlohmann::json{{"spec", r.spec},
                       {"epsilons", r.epsilons},
                       {"samples", r.samples},
                       {"extrapolated", r.extrapolated},
                       {"target", r.target},
                       {"abs_error", r.abs_error},
                       {"converged", r.converged}};
}

inline void from_json(const nlohmann::json& j, ProbeReport& r)
{
    r.spec = j.at("spec").get<LimitSpec>();
    r.epsilons = j.at("epsilons").get<std::vector<double>>();
    r.samples = j.at("samples").get<std::vector<double>>();
    r.extrapolated = j.at("extrapolated").get<double>();
    r.target = j.at("target").get<ExactRational>();
    r.abs_error = j.at("abs_error").get<double>();
    r.converged = j.at("converged").get<bool>();
}

} // namespace polylim
