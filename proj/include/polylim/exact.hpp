#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "polylim/errors.hpp"

namespace polylim {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient C(n, k) via the multiplicative formula.
inline BigInt binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt result = 1;
    for (unsigned j = 1; j <= k; ++j) {
        result *= n - k + j;
        result /= j; // exact: result is C(n-k+j, j) after this step
    }
    return result;
}

inline BigInt factorial(unsigned n)
{
    BigInt result = 1;
    for (unsigned j = 2; j <= n; ++j) {
        result *= j;
    }
    return result;
}

/// Signed rational kept in lowest terms with a positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(BigInt numerator, BigInt denominator = 1)
    {
        if (denominator == 0) {
            throw domain_error("ExactRational: zero denominator");
        }
        if (denominator < 0) {
            numerator = -numerator;
            denominator = -denominator;
        }
        value_ = BigRational(std::move(numerator), std::move(denominator));
    }
    ExactRational(std::int64_t numerator, std::int64_t denominator = 1)
        : ExactRational(BigInt(numerator), BigInt(denominator)) {}
    explicit ExactRational(BigRational value) : value_(std::move(value)) {}

    [[nodiscard]] BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    [[nodiscard]] BigInt denominator() const { return boost::multiprecision::denominator(value_); }
    [[nodiscard]] const BigRational& value() const noexcept { return value_; }

    [[nodiscard]] double to_double() const { return value_.convert_to<double>(); }

    /// "p/q", or just "p" when the denominator is 1.
    [[nodiscard]] std::string str() const
    {
        const BigInt den = denominator();
        std::string out = numerator().str();
        if (den != 1) {
            out += '/';
            out += den.str();
        }
        return out;
    }

    /// Inverse of str().
    static ExactRational parse(const std::string& text)
    {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                return ExactRational(BigInt(text));
            }
            return ExactRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
        } catch (const std::runtime_error&) {
            throw domain_error("not a rational number: '" + text + "'");
        }
    }

    friend ExactRational operator*(const ExactRational& a, const ExactRational& b)
    {
        return ExactRational(a.value_ * b.value_);
    }
    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }

private:
    BigRational value_{0};
};

} // namespace polylim
