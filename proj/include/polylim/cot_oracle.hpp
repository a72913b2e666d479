#pragma once

// Independent representation of cot^(p) x as an integer polynomial in
// t = cot x, built from cot' = -(1 + cot^2) alone. Used to cross-check the
// closed-form coefficients.

#include <string>
#include <vector>

#include "polylim/cotderiv.hpp"
#include "polylim/exact.hpp"

namespace polylim {

struct CotPolynomial {
    std::vector<BigInt> coefficients; // index = power of t

    [[nodiscard]] std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    friend bool operator==(const CotPolynomial&, const CotPolynomial&) = default;
};

inline CotPolynomial oracle_expansion(unsigned p)
{
    CotPolynomial poly{{0, 1}};
    for (unsigned step = 0; step < p; ++step) {
        // P(t) -> P'(t) * (-1 - t^2)
        std::vector<BigInt> next(poly.coefficients.size() + 1, BigInt(0));
        for (std::size_t m = 1; m < poly.coefficients.size(); ++m) {
            const BigInt d = poly.coefficients[m] * static_cast<unsigned>(m);
            next[m - 1] -= d;
            next[m + 1] -= d;
        }
        while (next.size() > 1 && next.back() == 0) {
            next.pop_back();
        }
        poly.coefficients = std::move(next);
    }
    return poly;
}

inline double evaluate(const CotPolynomial& poly, double t)
{
    double acc = 0.0;
    for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
        acc = acc * t + it->convert_to<double>();
    }
    return acc;
}

/// Re-expresses the p-th derivative polynomial in the cos(jx)/sin^{p+1}x basis
/// exactly. Substitutes t = c/s, clears sin^{p+1}, eliminates even powers of s
/// with s^2 = 1 - c^2, and peels Chebyshev polynomials T_j(c) = cos(jx) off the
/// top degree down. Throws if the result is not an integer harmonic sum of the
/// expected shape.
inline CotDerivExpansion harmonics_from_oracle(const CotPolynomial& poly, unsigned p)
{
    if (p == 0) {
        throw domain_error("harmonics_from_oracle: order must be positive");
    }
    const unsigned top = p + 1;
    if (poly.degree() > top) {
        throw domain_error("harmonics_from_oracle: polynomial degree exceeds p + 1");
    }

    // Q(c) = sum_m a_m c^m (1 - c^2)^{(p+1-m)/2}
    std::vector<BigInt> q(top + 1, BigInt(0));
    for (unsigned m = 0; m < poly.coefficients.size(); ++m) {
        const BigInt& a = poly.coefficients[m];
        if (a == 0) {
            continue;
        }
        if ((top - m) % 2 != 0) {
            throw domain_error("harmonics_from_oracle: polynomial has the wrong parity");
        }
        const unsigned half = (top - m) / 2;
        for (unsigned r = 0; r <= half; ++r) {
            BigInt term = a * binomial(half, r);
            q[m + 2 * r] += (r % 2 == 0) ? term : BigInt(-term);
        }
    }

    // Chebyshev rows T_0..T_top by T_{j+1} = 2c T_j - T_{j-1}.
    std::vector<std::vector<BigInt>> cheb(top + 1);
    cheb[0] = {1};
    if (top >= 1) {
        cheb[1] = {0, 1};
    }
    for (unsigned j = 1; j < top; ++j) {
        std::vector<BigInt> row(j + 2, BigInt(0));
        for (unsigned d = 0; d <= j; ++d) {
            row[d + 1] += 2 * cheb[j][d];
        }
        for (unsigned d = 0; d < cheb[j - 1].size(); ++d) {
            row[d] -= cheb[j - 1][d];
        }
        cheb[j + 1] = std::move(row);
    }

    std::vector<BigInt> weights(top + 1, BigInt(0));
    for (unsigned j = top + 1; j-- > 0;) {
        if (q[j] == 0) {
            continue;
        }
        const BigInt& lead = cheb[j][j];
        if (q[j] % lead != 0) {
            throw domain_error("harmonics_from_oracle: non-integer harmonic coefficient at j = " + std::to_string(j));
        }
        weights[j] = q[j] / lead;
        for (unsigned d = 0; d <= j; ++d) {
            q[d] -= weights[j] * cheb[j][d];
        }
    }

    CotDerivExpansion out;
    out.order = p;
    out.sin_exponent = top;
    const unsigned first = (p % 2 == 1) ? 0 : 1;
    const unsigned last = (p == 1) ? 0 : p - 1;
    for (unsigned j = 0; j <= top; ++j) {
        const bool expected = j >= first && j <= last && (j - first) % 2 == 0;
        if (!expected) {
            if (weights[j] != 0) {
                throw domain_error("harmonics_from_oracle: unexpected harmonic " + std::to_string(j));
            }
            continue;
        }
        out.harmonics.push_back({j, weights[j]});
    }
    return out;
}

} // namespace polylim
