#pragma once

// Invariant suites behind `polylim verify`. Each check is deterministic:
// sample points come from a fixed-seed generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "polylim/bernoulli.hpp"
#include "polylim/cot_oracle.hpp"
#include "polylim/cotderiv.hpp"
#include "polylim/format.hpp"
#include "polylim/limits.hpp"
#include "polylim/polygamma.hpp"

namespace polylim::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Settings {
    unsigned long oracle_terms = 1'000'000;

    /// Honours POLYLIM_PRECISION_TERMS when it holds a positive integer.
    static Settings from_environment()
    {
        Settings s;
        if (const char* env = std::getenv("POLYLIM_PRECISION_TERMS")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) {
                s.oracle_terms = static_cast<unsigned long>(v);
            }
        }
        return s;
    }
};

/// Uniform doubles in [lo, hi) from a fixed-seed 64-bit Mersenne twister.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : rng_(seed) {}

    double next(double lo, double hi)
    {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::mt19937_64 rng_;
};

namespace detail {

inline CheckResult make(std::string_view suite, std::string name, bool ok, std::string detail)
{
    return {std::string(suite), std::move(name), ok, std::move(detail)};
}

inline std::string worst(double v) { return "worst=" + format_double(v); }

} // namespace detail

inline std::vector<CheckResult> coefficient_suite()
{
    constexpr std::string_view suite = "coeffs";
    std::vector<CheckResult> out;

    {
        bool ok = true;
        unsigned bad = 0;
        for (unsigned p = 1; p <= 50 && ok; ++p) {
            BigInt sum = 0;
            for (const auto& h : expansion(p).harmonics) {
                sum += h.coefficient;
            }
            const BigInt expected = (p % 2 == 0) ? factorial(p) : BigInt(-factorial(p));
            if (sum != expected) {
                ok = false;
                bad = p;
            }
        }
        out.push_back(detail::make(suite, "coefficient-sum p<=50", ok, ok ? "exact" : "fails at p=" + std::to_string(bad)));
    }

    {
        bool ok = true;
        std::string where = "exact";
        for (unsigned p = 2; p <= 30 && ok; ++p) {
            for (unsigned q = (p % 2 == 0) ? 1 : 2; q < p; q += 2) {
                if (coeff_unified(p, q) != coeff(p, q)) {
                    ok = false;
                    where = "differs at (" + std::to_string(p) + "," + std::to_string(q) + ")";
                    break;
                }
            }
        }
        out.push_back(detail::make(suite, "unified-vs-piecewise p<=30", ok, where));
    }

    {
        SampleStream samples(0x5eed0001);
        double worst = 0.0;
        for (unsigned p = 1; p <= 25; ++p) {
            const CotPolynomial poly = oracle_expansion(p);
            for (int s = 0; s < 50; ++s) {
                const double x = samples.next(0.1, std::numbers::pi - 0.1);
                const double closed = eval_cot_deriv(p, x);
                const double oracle = evaluate(poly, std::cos(x) / std::sin(x));
                worst = std::max(worst, std::abs(closed - oracle) / (1.0 + std::abs(oracle)));
            }
        }
        out.push_back(detail::make(suite, "oracle-equivalence p<=25", worst <= 1e-8, detail::worst(worst)));
    }

    {
        bool ok = true;
        std::string where = "exact";
        for (unsigned p = 1; p <= 12 && ok; ++p) {
            try {
                if (harmonics_from_oracle(oracle_expansion(p), p) != expansion(p)) {
                    ok = false;
                    where = "mismatch at p=" + std::to_string(p);
                }
            } catch (const error& e) {
                ok = false;
                where = e.what();
            }
        }
        out.push_back(detail::make(suite, "oracle-extraction p<=12", ok, where));
    }

    {
        bool ok = true;
        for (unsigned p = 1; p <= 50 && ok; ++p) {
            for (const auto& h : expansion(p).harmonics) {
                ok = ok && ((h.multiplier + p) % 2 == 1);
            }
        }
        out.push_back(detail::make(suite, "harmonic-parity p<=50", ok, ok ? "ok" : "wrong parity"));
    }

    {
        SampleStream samples(0x5eed0002);
        constexpr double h = 1e-5;
        double worst = 0.0;
        for (unsigned p = 1; p <= 8; ++p) {
            for (int s = 0; s < 20; ++s) {
                const double x = samples.next(0.3, std::numbers::pi - 0.3);
                const double fd = (eval_cot_deriv(p - 1, x + h) - eval_cot_deriv(p - 1, x - h)) / (2 * h);
                const double exact = eval_cot_deriv(p, x);
                worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
            }
        }
        out.push_back(detail::make(suite, "finite-difference p<=8", worst <= 1e-4, detail::worst(worst)));
    }

    return out;
}

inline std::vector<CheckResult> reflection_suite(const Settings& settings = Settings::from_environment())
{
    constexpr std::string_view suite = "reflection";
    std::vector<CheckResult> out;

    {
        SampleStream samples(0x5eed0003);
        double worst = 0.0;
        for (unsigned n = 0; n <= 8; ++n) {
            for (int s = 0; s < 50; ++s) {
                const ReflectionTerms t = reflection_terms(n, samples.next(0.05, 0.95));
                worst = std::max(worst, t.residual / (1.0 + t.scale()));
            }
        }
        out.push_back(detail::make(suite, "reflection-identity n<=8", worst <= 1e-8, detail::worst(worst)));
    }

    {
        double worst = 0.0;
        for (unsigned n = 1; n <= 8; ++n) {
            for (double x : {0.5, 1.0, 1.5, 2.0, 5.0, 10.0}) {
                const double oracle = polygamma_series_oracle(n, x, settings.oracle_terms);
                worst = std::max(worst, std::abs(polygamma(n, x).value - oracle) / std::abs(oracle));
            }
        }
        out.push_back(detail::make(suite, "series-oracle n=1..8", worst <= 1e-9, detail::worst(worst)));
    }

    {
        constexpr double euler_gamma = 0.57721566490153286061;
        const double err = std::abs(polygamma(0, 1.0).value + euler_gamma);
        out.push_back(detail::make(suite, "digamma(1)=-gamma", err <= 1e-10, "error=" + format_double(err)));
    }

    {
        SampleStream samples(0x5eed0004);
        double worst = 0.0;
        for (unsigned n = 0; n <= 8; ++n) {
            const double nfact = polylim::detail::factorial_double(n);
            for (int s = 0; s < 100; ++s) {
                const double x = samples.next(0.5, 20.0);
                const double step = polygamma(n, x + 1).value - polygamma(n, x).value;
                const double expected = polylim::detail::sign_pow(n) * nfact / std::pow(x, n + 1);
                worst = std::max(worst, std::abs(step - expected) / std::abs(expected));
            }
        }
        out.push_back(detail::make(suite, "recurrence n<=8", worst <= 1e-11, detail::worst(worst)));
    }

    {
        bool ok = true;
        for (unsigned n = 1; n <= 8; ++n) {
            for (double x : {0.01, 0.1, 0.3, 0.5, 0.9, 1.0, 3.7, 9.99, 10.0, 42.0, 1e3}) {
                const double v = polygamma(n, x).value;
                ok = ok && (std::signbit(v) == (n % 2 == 0));
            }
        }
        out.push_back(detail::make(suite, "sign-pattern n=1..8", ok, ok ? "ok" : "sign violated"));
    }

    {
        const auto& table = BernoulliTable::standard();
        bool ok = table.exact(0) == 1 && table.exact(1) == BigRational(-1, 2);
        for (unsigned m = 1; m < table.max_index() && ok; ++m) {
            BigRational acc = 0;
            for (unsigned j = 0; j <= m; ++j) {
                acc += BigRational(binomial(m + 1, j)) * table.exact(j);
            }
            ok = acc == 0 && (m < 3 || m % 2 == 0 || table.exact(m) == 0);
        }
        out.push_back(detail::make(suite, "bernoulli-recurrence", ok, ok ? "exact" : "table violates recurrence"));
    }

    return out;
}

/// Relative accuracy below which an extrapolated probe value is not
/// expected to beat its raw last sample.
inline constexpr double kExtrapolationFloor = 1e-12;

inline std::vector<CheckResult> limit_suite()
{
    constexpr std::string_view suite = "limits";
    std::vector<CheckResult> out;

    {
        bool ok = true;
        for (unsigned n = 1; n <= 6; ++n) {
            for (unsigned q = 1; q <= 6; ++q) {
                for (unsigned k = 0; k <= 6; ++k) {
                    ok = ok && gamma_ratio_limit(n, q, k) * gamma_ratio_limit(q, n, k) == ExactRational(1);
                }
                for (unsigned i = 0; i <= 6; ++i) {
                    ok = ok && polygamma_ratio_limit(i, n, q) * polygamma_ratio_limit(i, q, n) == ExactRational(1);
                }
            }
        }
        out.push_back(detail::make(suite, "reciprocal-limits", ok, ok ? "exact" : "product != 1"));
    }

    {
        bool ok = true;
        for (unsigned k = 0; k <= 20; ++k) {
            const ExactRational scaled = gamma_laurent_leading(k) * ExactRational(factorial(k));
            ok = ok && scaled == ExactRational(k % 2 == 0 ? 1 : -1);
        }
        out.push_back(detail::make(suite, "gamma-residue", ok, ok ? "exact" : "residue mismatch"));
    }

    const std::vector<std::pair<unsigned, unsigned>> scale_pairs{{2, 1}, {3, 2}, {1, 4}};

    std::vector<ProbeReport> reports;
    {
        double worst = 0.0;
        bool ok = true;
        for (unsigned i = 0; i <= 5; ++i) {
            for (const auto& [n, q] : scale_pairs) {
                for (unsigned k = 0; k <= 3; ++k) {
                    reports.push_back(probe_limit({Family::polygamma_ratio, i, n, q, k}));
                    worst = std::max(worst, reports.back().abs_error);
                    ok = ok && reports.back().converged;
                }
            }
        }
        out.push_back(detail::make(suite, "polygamma-probe-grid (72)", ok, detail::worst(worst)));
    }

    {
        double worst = 0.0;
        bool ok = true;
        for (unsigned k = 0; k <= 4; ++k) {
            for (const auto& [n, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {3, 2}}) {
                reports.push_back(probe_limit({Family::gamma_ratio, 0, n, q, k}));
                worst = std::max(worst, reports.back().abs_error);
                ok = ok && reports.back().converged;
            }
        }
        out.push_back(detail::make(suite, "gamma-probe-grid (15)", ok, detail::worst(worst)));
    }

    {
        double lo = INFINITY;
        double hi = -INFINITY;
        for (unsigned k = 0; k <= 3; ++k) {
            const double v = probe_limit({Family::polygamma_ratio, 2, 3, 2, k}).extrapolated;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.push_back(detail::make(suite, "pole-independence (2,3,2)", hi - lo <= 1e-5, "spread=" + format_double(hi - lo)));
    }

    {
        // Below 1e-12 relative the last sample is already exact to a few ulps
        // and the degree-(levels-1) fit has nothing left to remove.
        bool ok = true;
        for (const auto& r : reports) {
            if (!r.converged) {
                continue;
            }
            const double target = r.target.to_double();
            const double raw = std::abs(r.samples.back() - target);
            const double floor = kExtrapolationFloor * std::max(1.0, std::abs(target));
            ok = ok && r.abs_error <= std::max(raw, floor);
        }
        out.push_back(detail::make(suite, "extrapolation-improves", ok, ok ? "ok" : "extrapolant worse than raw sample"));
    }

    return out;
}

/// Suite names accepted by run_suite: coeffs, reflection, limits, all.
inline std::vector<CheckResult> run_suite(std::string_view name, const Settings& settings = Settings::from_environment())
{
    std::vector<CheckResult> out;
    const auto append = [&out](std::vector<CheckResult> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    const bool all = name == "all";
    if (!all && name != "coeffs" && name != "reflection" && name != "limits") {
        throw domain_error("unknown verification suite '" + std::string(name) + "'");
    }
    if (all || name == "coeffs") {
        append(coefficient_suite());
    }
    if (all || name == "reflection") {
        append(reflection_suite(settings));
    }
    if (all || name == "limits") {
        append(limit_suite());
    }
    return out;
}

} // namespace polylim::verify
