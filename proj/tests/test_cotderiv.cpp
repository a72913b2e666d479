#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "polylim/cot_oracle.hpp"
#include "polylim/cotderiv.hpp"
#include "polylim/verify.hpp"

using namespace polylim;

namespace {

BigInt signed_factorial(unsigned p)
{
    return (p % 2 == 0) ? factorial(p) : BigInt(-factorial(p));
}

} // namespace

TEST(Coeff, BaseCase)
{
    EXPECT_EQ(coeff(1, 0), -1);
}

// cot''x = 2cos x/sin^3 x, cot'''x = (-4 - 2cos 2x)/sin^4 x,
// cot''''x = (22 cos x + 2 cos 3x)/sin^5 x.
TEST(Coeff, LowOrdersMatchHandDerivation)
{
    EXPECT_EQ(coeff(2, 1), 2);
    EXPECT_EQ(coeff(3, 0), -4);
    EXPECT_EQ(coeff(3, 2), -2);
    EXPECT_EQ(coeff(4, 1), 22);
    EXPECT_EQ(coeff(4, 3), 2);
}

TEST(Coeff, RejectsBadHarmonics)
{
    EXPECT_THROW(coeff(0, 1), domain_error);
    EXPECT_THROW(coeff(3, 1), invalid_harmonic_error);
    EXPECT_THROW(coeff(4, 2), invalid_harmonic_error);
    EXPECT_THROW(coeff(1, 1), invalid_harmonic_error);
    EXPECT_THROW(coeff(4, 5), out_of_range_error);
    EXPECT_THROW(coeff(5, 6), out_of_range_error);
    EXPECT_THROW(coeff(1, 2), out_of_range_error);
}

TEST(CoeffUnified, Examples)
{
    EXPECT_EQ(coeff_unified(2, 1), 2);
    EXPECT_EQ(coeff_unified(3, 2), -2);
    EXPECT_EQ(coeff_unified(4, 3), 2);
}

TEST(CoeffUnified, ExcludesZerothHarmonic)
{
    EXPECT_THROW(coeff_unified(3, 0), domain_error);
    EXPECT_THROW(coeff_unified(1, 0), domain_error);
    EXPECT_THROW(coeff_unified(4, 2), invalid_harmonic_error);
    EXPECT_THROW(coeff_unified(3, 4), out_of_range_error);
}

TEST(CoeffUnified, AgreesWithPiecewiseFormulas)
{
    for (unsigned p = 2; p <= 30; ++p) {
        for (unsigned q = (p % 2 == 0) ? 1 : 2; q < p; q += 2) {
            EXPECT_EQ(coeff_unified(p, q), coeff(p, q)) << "p=" << p << " q=" << q;
        }
    }
}

TEST(Expansion, Examples)
{
    const CotDerivExpansion one = expansion(1);
    EXPECT_EQ(one.sin_exponent, 2u);
    ASSERT_EQ(one.harmonics.size(), 1u);
    EXPECT_EQ(one.harmonics[0], (Harmonic{0, -1}));

    EXPECT_EQ(expansion(3), (CotDerivExpansion{3, 4, {{0, -4}, {2, -2}}}));
    EXPECT_EQ(expansion(4), (CotDerivExpansion{4, 5, {{1, 22}, {3, 2}}}));
    EXPECT_THROW(expansion(0), domain_error);
}

TEST(Expansion, ShapeInvariants)
{
    for (unsigned p = 1; p <= 50; ++p) {
        const CotDerivExpansion e = expansion(p);
        EXPECT_EQ(e.sin_exponent, p + 1);
        EXPECT_EQ(e.harmonics.size(), (p + 1) / 2);
        unsigned expected = (p % 2 == 1) ? 0 : 1;
        BigInt sum = 0;
        for (const auto& h : e.harmonics) {
            EXPECT_EQ(h.multiplier, expected);
            expected += 2;
            sum += h.coefficient;
        }
        EXPECT_EQ(sum, signed_factorial(p)) << "p=" << p;
    }
}

TEST(Expansion, JsonRoundTrip)
{
    for (unsigned p : {1u, 2u, 7u, 40u}) {
        const CotDerivExpansion e = expansion(p);
        const std::string text = nlohmann::json(e).dump();
        EXPECT_EQ(nlohmann::json::parse(text).get<CotDerivExpansion>(), e);
    }
    EXPECT_EQ(nlohmann::json(expansion(1)).dump(), R"({"harmonics":[[0,"-1"]],"order":1,"sin_exponent":2})");
}

TEST(Expansion, JsonRejectsInconsistentExponent)
{
    const auto j = nlohmann::json::parse(R"({"order":3,"sin_exponent":3,"harmonics":[]})");
    EXPECT_THROW(j.get<CotDerivExpansion>(), domain_error);
}

TEST(EvalCotDeriv, Examples)
{
    EXPECT_NEAR(eval_cot_deriv(1, std::numbers::pi / 2), -1.0, 1e-15);
    EXPECT_NEAR(eval_cot_deriv(2, std::numbers::pi / 2), 0.0, 1e-15);
    EXPECT_NEAR(eval_cot_deriv(3, std::numbers::pi / 4), -16.0, 1e-12);
    EXPECT_DOUBLE_EQ(eval_cot_deriv(0, 0.7), std::cos(0.7) / std::sin(0.7));
}

TEST(EvalCotDeriv, PoleGuard)
{
    EXPECT_THROW(eval_cot_deriv(2, 0.0), pole_error);
    try {
        eval_cot_deriv(1, 3 * std::numbers::pi);
        FAIL() << "expected pole_error";
    } catch (const pole_error& e) {
        EXPECT_EQ(e.pole(), 3);
    }
    EXPECT_NO_THROW(eval_cot_deriv(1, 1e-9));
    EXPECT_THROW(eval_cot_deriv(1, NAN), domain_error);
}

TEST(EvalCotDeriv, CentralDifferenceOfLowerOrder)
{
    verify::SampleStream samples(17);
    constexpr double h = 1e-5;
    for (unsigned p = 1; p <= 8; ++p) {
        for (int s = 0; s < 25; ++s) {
            const double x = samples.next(0.3, std::numbers::pi - 0.3);
            const double fd = (eval_cot_deriv(p - 1, x + h) - eval_cot_deriv(p - 1, x - h)) / (2 * h);
            const double exact = eval_cot_deriv(p, x);
            EXPECT_LE(std::abs(fd - exact), 1e-4 * std::max(1.0, std::abs(exact))) << "p=" << p << " x=" << x;
        }
    }
}

TEST(OracleExpansion, Examples)
{
    EXPECT_EQ(oracle_expansion(0), (CotPolynomial{{0, 1}}));
    EXPECT_EQ(oracle_expansion(1), (CotPolynomial{{-1, 0, -1}}));
    EXPECT_EQ(oracle_expansion(2), (CotPolynomial{{0, 2, 0, 2}}));
}

TEST(OracleExpansion, DegreeIsOrderPlusOne)
{
    for (unsigned p = 0; p <= 30; ++p) {
        EXPECT_EQ(oracle_expansion(p).degree(), p + 1);
    }
}

TEST(OracleExpansion, AgreesWithClosedFormNumerically)
{
    verify::SampleStream samples(0xC07);
    for (unsigned p = 1; p <= 25; ++p) {
        const CotPolynomial poly = oracle_expansion(p);
        for (int s = 0; s < 50; ++s) {
            const double x = samples.next(0.1, std::numbers::pi - 0.1);
            const double oracle = evaluate(poly, std::cos(x) / std::sin(x));
            EXPECT_LE(std::abs(eval_cot_deriv(p, x) - oracle), 1e-8 * (1 + std::abs(oracle))) << "p=" << p << " x=" << x;
        }
    }
}

TEST(OracleExpansion, ExactHarmonicExtraction)
{
    for (unsigned p = 1; p <= 16; ++p) {
        EXPECT_EQ(harmonics_from_oracle(oracle_expansion(p), p), expansion(p)) << "p=" << p;
    }
}

TEST(OracleExpansion, ExtractionRejectsForeignPolynomials)
{
    // t^2 has the wrong parity for p = 2.
    EXPECT_THROW(harmonics_from_oracle(CotPolynomial{{0, 0, 1}}, 2), domain_error);
    // Degree too high.
    EXPECT_THROW(harmonics_from_oracle(oracle_expansion(5), 3), domain_error);
}

TEST(EvalCotDeriv, ConcurrentCallsAgree)
{
    std::vector<double> results(8);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < results.size(); ++t) {
        workers.emplace_back([&results, t] { results[t] = eval_cot_deriv(20 + t % 3, 1.1); });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (unsigned t = 0; t < results.size(); ++t) {
        EXPECT_EQ(results[t], eval_cot_deriv(20 + t % 3, 1.1));
    }
}
