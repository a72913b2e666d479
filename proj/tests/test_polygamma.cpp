#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "polylim/bernoulli.hpp"
#include "polylim/polygamma.hpp"
#include "polylim/verify.hpp"

using namespace polylim;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kZeta3 = 1.20205690315959428540;

// psi(x) = -gamma + sum_{k>=0} (1/(k+1) - 1/(k+x)); the tail beyond K is
// psi(K+x) - psi(K+1) ~ log((K+x)/(K+1)) up to O(1/K^2).
double digamma_harmonic_oracle(double x, unsigned long terms = 2'000'000)
{
    double sum = std::log1p((x - 1) / (static_cast<double>(terms) + 1));
    for (unsigned long k = terms; k-- > 0;) {
        sum += 1.0 / (k + 1.0) - 1.0 / (k + x);
    }
    return sum - kEulerGamma;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(Bernoulli, Examples)
{
    EXPECT_EQ(bernoulli(0), ExactRational(1));
    EXPECT_EQ(bernoulli(1), ExactRational(-1, 2));
    EXPECT_EQ(bernoulli(2), ExactRational(1, 6));
    EXPECT_EQ(bernoulli(3), ExactRational(0));
    EXPECT_EQ(bernoulli(12), ExactRational(-691, 2730));
    EXPECT_EQ(bernoulli(60).str(), "-1215233140483755572040304994079820246041491/56786730");
}

TEST(Bernoulli, CapacityLimit)
{
    EXPECT_NO_THROW(bernoulli(60));
    EXPECT_THROW(bernoulli(61), capacity_error);
    const BernoulliTable small(10);
    EXPECT_THROW(static_cast<void>(small.exact(11)), capacity_error);
}

TEST(Bernoulli, DefiningRecurrenceAndOddVanishing)
{
    const auto& table = BernoulliTable::standard();
    for (unsigned m = 1; m < table.max_index(); ++m) {
        BigRational acc = 0;
        for (unsigned j = 0; j <= m; ++j) {
            acc += BigRational(binomial(m + 1, j)) * table.exact(j);
        }
        EXPECT_EQ(acc, 0) << "m=" << m;
        if (m >= 3 && m % 2 == 1) {
            EXPECT_EQ(table.exact(m), 0);
        }
    }
}

TEST(Polygamma, DigammaAtOneIsMinusEulerGamma)
{
    EXPECT_NEAR(polygamma(0, 1.0).value, -kEulerGamma, 1e-10);
    EXPECT_NEAR(polygamma(0, 1.0).value, digamma_harmonic_oracle(1.0), 1e-10);
}

TEST(Polygamma, DigammaAgainstHarmonicOracle)
{
    for (double x : {0.5, 0.75, 2.5, 7.0, 12.0}) {
        EXPECT_NEAR(polygamma(0, x).value, digamma_harmonic_oracle(x), 1e-10) << "x=" << x;
    }
    EXPECT_NEAR(polygamma(0, 0.5).value, -kEulerGamma - 2 * std::numbers::ln2, 1e-13);
}

TEST(Polygamma, TrigammaValues)
{
    EXPECT_NEAR(polygamma(1, 1.0).value, 1.64493406685, 1e-11);
    EXPECT_NEAR(polygamma(1, 1.0).value, std::numbers::pi * std::numbers::pi / 6, 1e-14);
    EXPECT_NEAR(polygamma(1, 0.5).value, 4.93480220054, 1e-11);
    EXPECT_NEAR(polygamma(1, 0.5).value, std::numbers::pi * std::numbers::pi / 2, 1e-13);
    EXPECT_NEAR(polygamma(2, 1.0).value, -2 * kZeta3, 1e-14);
}

TEST(Polygamma, DigammaStepAtOne)
{
    EXPECT_NEAR(polygamma(0, 2.0).value - polygamma(0, 1.0).value, 1.0, 1e-15);
}

TEST(Polygamma, RecurrenceIdentity)
{
    verify::SampleStream samples(99);
    for (unsigned n = 0; n <= 8; ++n) {
        double nfact = 1;
        for (unsigned j = 2; j <= n; ++j) {
            nfact *= j;
        }
        for (int s = 0; s < 100; ++s) {
            const double x = samples.next(0.5, 20.0);
            const double expected = ((n % 2 == 0) ? 1.0 : -1.0) * nfact / std::pow(x, n + 1);
            const double step = polygamma(n, x + 1).value - polygamma(n, x).value;
            EXPECT_LE(rel(step, expected), 1e-11) << "n=" << n << " x=" << x;
        }
    }
}

TEST(Polygamma, MatchesSeriesOracle)
{
    for (unsigned n = 1; n <= 8; ++n) {
        for (double x : {0.5, 1.0, 1.5, 2.0, 5.0, 10.0}) {
            EXPECT_LE(rel(polygamma(n, x).value, polygamma_series_oracle(n, x)), 1e-9) << "n=" << n << " x=" << x;
        }
    }
}

TEST(Polygamma, SignPattern)
{
    for (unsigned n = 1; n <= 12; ++n) {
        for (double x : {0.02, 0.25, 0.49, 0.5, 1.0, 3.3, 9.5, 10.0, 250.0}) {
            const double v = polygamma(n, x).value;
            EXPECT_EQ(std::signbit(v), n % 2 == 0) << "n=" << n << " x=" << x;
        }
    }
}

TEST(Polygamma, PathBookkeeping)
{
    for (double x : {-7.3, -0.5, 0.1, 0.4999, 0.5, 3.0, 9.999, 10.0, 1e6}) {
        const PolygammaResult r = polygamma(3, x);
        EXPECT_EQ(r.method == Method::reflection, x < 0.5) << x;
        if (r.method == Method::asymptotic) {
            EXPECT_EQ(r.shift_count, 0u);
        }
        EXPECT_EQ(r.order, 3u);
        EXPECT_EQ(r.argument, x);
    }
    EXPECT_EQ(polygamma(0, 10.0).method, Method::asymptotic);
    const PolygammaResult shifted = polygamma(0, 2.5);
    EXPECT_EQ(shifted.method, Method::shifted_asymptotic);
    EXPECT_EQ(shifted.shift_count, 8u);
}

TEST(Polygamma, NegativeArgumentsViaReflection)
{
    // psi(-1/2) = psi(1/2) + 2
    EXPECT_NEAR(polygamma(0, -0.5).value, -kEulerGamma - 2 * std::numbers::ln2 + 2, 1e-13);
    // psi'(-1/2) = psi'(1/2) + 4 = pi^2/2 + 4
    EXPECT_NEAR(polygamma(1, -0.5).value, std::numbers::pi * std::numbers::pi / 2 + 4, 1e-12);
    // Recurrence across the origin: psi^(n)(x+1) - psi^(n)(x) = (-1)^n n!/x^{n+1}
    for (unsigned n = 0; n <= 6; ++n) {
        double nfact = 1;
        for (unsigned j = 2; j <= n; ++j) {
            nfact *= j;
        }
        for (double x : {-3.7, -2.2, -1.45, -0.3, 0.2}) {
            const double expected = ((n % 2 == 0) ? 1.0 : -1.0) * nfact / std::pow(x, n + 1);
            const double step = polygamma(n, x + 1).value - polygamma(n, x).value;
            EXPECT_LE(std::abs(step - expected), 1e-11 * std::max(1.0, std::abs(polygamma(n, x).value)))
                << "n=" << n << " x=" << x;
        }
    }
}

TEST(Polygamma, PoleErrors)
{
    for (double x : {0.0, -1.0, -4.0, -3.0 + 1e-13}) {
        try {
            polygamma(2, x);
            FAIL() << "expected pole_error at " << x;
        } catch (const pole_error& e) {
            EXPECT_EQ(e.pole(), static_cast<std::int64_t>(std::nearbyint(x)));
        }
    }
    EXPECT_NO_THROW(polygamma(0, -3.0 + 1e-9));
    EXPECT_NO_THROW(polygamma(1, 1.0));
}

TEST(Polygamma, DomainErrors)
{
    EXPECT_THROW(polygamma(0, NAN), domain_error);
    EXPECT_THROW(polygamma(0, INFINITY), domain_error);
    EXPECT_THROW(polygamma(kMaxPolygammaOrder + 1, 1.0), domain_error);
}

TEST(Polygamma, JsonRoundTrip)
{
    for (double x : {-2.75, 0.3, 4.0, 123.456}) {
        const PolygammaResult r = polygamma(2, x);
        const auto back = nlohmann::json::parse(nlohmann::json(r).dump()).get<PolygammaResult>();
        EXPECT_EQ(back, r);
    }
}

TEST(SeriesOracle, Examples)
{
    EXPECT_NEAR(polygamma_series_oracle(1, 1.0), 1.6449340668, 1e-9);
    EXPECT_NEAR(polygamma_series_oracle(1, 1.0), std::numbers::pi * std::numbers::pi / 6, 1e-10);
    EXPECT_NEAR(polygamma_series_oracle(2, 1.0), -2.4041138063, 1e-9);
    EXPECT_NEAR(polygamma_series_oracle(1, 2.0), 0.6449340668, 1e-9);
}

TEST(SeriesOracle, RejectsUnsupportedInputs)
{
    EXPECT_THROW(polygamma_series_oracle(0, 1.0), domain_error);
    EXPECT_THROW(polygamma_series_oracle(1, 0.0), domain_error);
    EXPECT_THROW(polygamma_series_oracle(1, -2.0), domain_error);
    EXPECT_THROW(polygamma_series_oracle(1, 1.0, 0), domain_error);
}

TEST(Reflection, Examples)
{
    EXPECT_LE(reflection_residual(0, 0.5), 1e-15);
    EXPECT_LE(reflection_residual(1, 0.25), 1e-9);
    EXPECT_LE(reflection_residual(3, 0.3), 1e-8);
}

TEST(Reflection, IdentityOverSampledArguments)
{
    verify::SampleStream samples(4242);
    for (unsigned n = 0; n <= 8; ++n) {
        for (int s = 0; s < 50; ++s) {
            const ReflectionTerms t = reflection_terms(n, samples.next(0.05, 0.95));
            EXPECT_LE(t.residual, 1e-8 * (1 + t.scale())) << "n=" << n;
        }
    }
}

TEST(Reflection, DomainError)
{
    EXPECT_THROW(reflection_residual(1, 0.0), domain_error);
    EXPECT_THROW(reflection_residual(1, 1.0), domain_error);
    EXPECT_THROW(reflection_residual(1, 1.5), domain_error);
}
