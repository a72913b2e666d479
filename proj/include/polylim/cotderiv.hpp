#pragma once

// Closed-form derivatives of the cotangent:
//
//   cot^(p)(x) = ( sum_j b_{p,j} cos(j x) ) / sin^{p+1}(x)
//
// with j running over 0, 2, ..., p-1 for odd p and 1, 3, ..., p-1 for even p.
// Coefficients are exact big integers given by alternating binomial sums.

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "polylim/errors.hpp"
#include "polylim/exact.hpp"

namespace polylim {

struct Harmonic {
    unsigned multiplier = 0;
    BigInt coefficient;

    friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// cot^(p) x as a cosine-harmonic sum over sin^{p+1} x.
struct CotDerivExpansion {
    unsigned order = 0;
    unsigned sin_exponent = 0;
    std::vector<Harmonic> harmonics; // ascending multiplier

    friend bool operator==(const CotDerivExpansion&, const CotDerivExpansion&) = default;
};

namespace detail {

inline void check_harmonic(unsigned p, unsigned q)
{
    if (p == 0) {
        throw domain_error("derivative order must be positive");
    }
    if ((p + q) % 2 == 0) {
        throw invalid_harmonic_error("harmonic " + std::to_string(q) + " has the wrong parity for order "
                                     + std::to_string(p));
    }
    if (q >= p && !(p == 1 && q == 0)) {
        throw out_of_range_error("harmonic " + std::to_string(q) + " exceeds order " + std::to_string(p));
    }
}

inline BigInt ipow(unsigned base, unsigned exponent)
{
    return boost::multiprecision::pow(BigInt(base), exponent);
}

} // namespace detail

/// Exact coefficient b_{p,q} from the piecewise closed forms.
inline BigInt coeff(unsigned p, unsigned q)
{
    detail::check_harmonic(p, q);
    if (p == 1) {
        return -1;
    }

    BigInt sum = 0;
    if (p % 2 == 1) {
        const unsigned n = (p + 1) / 2;
        if (q == 0) {
            for (unsigned l = 0; l + 2 <= n; ++l) {
                BigInt term = binomial(2 * n - 1, l) * detail::ipow(n - l - 1, 2 * n - 2);
                sum += (l % 2 == 0) ? -term : term;
            }
            return 2 * n * sum;
        }
        const unsigned i = q / 2;
        for (unsigned l = 0; l + i + 1 <= n; ++l) {
            BigInt term = binomial(2 * n, l) * detail::ipow(n - i - l, 2 * n - 1);
            sum += (l % 2 == 0) ? -term : term;
        }
        return 2 * sum;
    }

    const unsigned n = p / 2;
    const unsigned i = (q - 1) / 2;
    for (unsigned l = 0; l + i + 1 <= n; ++l) {
        BigInt term = binomial(2 * n + 1, l) * detail::ipow(n - i - l, 2 * n);
        sum += (l % 2 == 0) ? term : -term;
    }
    return 2 * sum;
}

/// b_{p,q} through the single formula covering both parities. Valid only for
/// 0 < q < p; it does not reproduce b_{p,0}.
inline BigInt coeff_unified(unsigned p, unsigned q)
{
    if (q == 0) {
        throw domain_error("unified coefficient formula requires q > 0");
    }
    detail::check_harmonic(p, q);

    const unsigned m = (p - q - 1) / 2;
    BigInt sum = 0;
    for (unsigned l = 0; l <= m; ++l) {
        BigInt term = binomial(p + 1, l) * detail::ipow(m - l + 1, p);
        sum += (l % 2 == 0) ? term : -term;
    }
    return (p % 2 == 1) ? BigInt(-2 * sum) : BigInt(2 * sum);
}

inline CotDerivExpansion expansion(unsigned p)
{
    if (p == 0) {
        throw domain_error("derivative order must be positive");
    }
    CotDerivExpansion out;
    out.order = p;
    out.sin_exponent = p + 1;
    for (unsigned j = (p % 2 == 1) ? 0 : 1; j < p; j += 2) {
        out.harmonics.push_back({j, coeff(p, j)});
    }
    return out;
}

/// |sin x| below this is treated as a pole of every cotangent derivative.
inline constexpr double kCotPoleGuard = 1e-12;

namespace detail {

// Process-wide memo of double-rounded coefficients; entries are never
// modified or erased once inserted.
inline const std::vector<std::pair<unsigned, double>>& harmonic_doubles(unsigned p)
{
    static std::mutex mutex;
    static std::map<unsigned, std::vector<std::pair<unsigned, double>>> cache;

    const std::lock_guard lock(mutex);
    auto it = cache.find(p);
    if (it == cache.end()) {
        std::vector<std::pair<unsigned, double>> row;
        for (const auto& h : expansion(p).harmonics) {
            row.emplace_back(h.multiplier, h.coefficient.convert_to<double>());
        }
        it = cache.emplace(p, std::move(row)).first;
    }
    return it->second;
}

} // namespace detail

/// p-th derivative of cot at x (radians). p = 0 is cot itself.
inline double eval_cot_deriv(unsigned p, double x)
{
    if (!std::isfinite(x)) {
        throw domain_error("eval_cot_deriv: non-finite argument");
    }
    const double s = std::sin(x);
    if (std::abs(s) < kCotPoleGuard) {
        const auto k = static_cast<std::int64_t>(std::llround(x / std::numbers::pi));
        throw pole_error("cotangent derivative evaluated at a pole (x = " + std::to_string(k) + " pi)", k);
    }
    if (p == 0) {
        return std::cos(x) / s;
    }

    double sum = 0.0;
    for (const auto& [j, b] : detail::harmonic_doubles(p)) {
        sum += b * std::cos(j * x);
    }
    // Divide one factor at a time to delay underflow of sin^{p+1}.
    for (unsigned e = 0; e <= p; ++e) {
        sum /= s;
    }
    return sum;
}

// JSON: {"order": p, "sin_exponent": p+1, "harmonics": [[j, "b"], ...]}

inline void to_json(nlohmann::json& j, const CotDerivExpansion& e)
{
    nlohmann::json harmonics = nlohmann::json::array();
    for (const auto& h : e.harmonics) {
        harmonics.push_back(nlohmann::json::array({h.multiplier, h.coefficient.str()}));
    }
    j = nlohmann::json{{"order", e.order}, {"sin_exponent", e.sin_exponent}, {"harmonics", std::move(harmonics)}};
}

inline void from_json(const nlohmann::json& j, CotDerivExpansion& e)
{
    e.order = j.at("order").get<unsigned>();
    e.sin_exponent = j.at("sin_exponent").get<unsigned>();
    if (e.sin_exponent != e.order + 1) {
        throw domain_error("expansion JSON: sin_exponent must equal order + 1");
    }
    e.harmonics.clear();
    for (const auto& pair : j.at("harmonics")) {
        e.harmonics.push_back({pair.at(0).get<unsigned>(), BigInt(pair.at(1).get<std::string>())});
    }
}

} // namespace polylim
