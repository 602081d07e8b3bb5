#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "lwhittle/fracsim.hpp"
#include "oracles.hpp"

using namespace lwhittle;

TEST(PochhammerCoeffs, KnownSequences) {
    EXPECT_EQ(pochhammer_coeffs(1.0, 4), (std::vector<double>{1, 1, 1, 1}));
    EXPECT_EQ(pochhammer_coeffs(0.0, 4), (std::vector<double>{1, 0, 0, 0}));
    const auto half = pochhammer_coeffs(0.5, 3);
    EXPECT_DOUBLE_EQ(half[0], 1.0);
    EXPECT_DOUBLE_EQ(half[1], 0.5);
    EXPECT_DOUBLE_EQ(half[2], 0.375);
}

TEST(PochhammerCoeffs, RejectsZeroCount) { EXPECT_THROW((void)pochhammer_coeffs(0.3, 0), std::invalid_argument); }

TEST(PochhammerCoeffs, PositiveAndDecreasingOnUnitInterval) {
    for (double d = 0.05; d < 1.0; d += 0.05) {
        const auto a = pochhammer_coeffs(d, 500);
        for (std::size_t k = 0; k < a.size(); ++k) {
            ASSERT_GT(a[k], 0.0) << "d=" << d << " k=" << k;
            ASSERT_LE(a[k], 1.0);
            if (k > 0) {
                ASSERT_LT(a[k], a[k - 1]);
            }
        }
    }
}

TEST(FracIntegrate, IdentityAndCumulativeSum) {
    const std::vector<double> u{0.3, -1.2, 2.5, 0.7};
    EXPECT_EQ(frac_integrate(u, 0.0), u);
    EXPECT_EQ(frac_integrate(std::vector<double>{1, 1, 1}, 1.0), (std::vector<double>{1, 2, 3}));
    const auto impulse = frac_integrate(std::vector<double>{1, 0, 0}, 0.5);
    EXPECT_DOUBLE_EQ(impulse[1], 0.5);
    EXPECT_DOUBLE_EQ(impulse[2], 0.375);
}

TEST(FracIntegrate, RejectsEmpty) { EXPECT_THROW((void)frac_integrate(std::vector<double>{}, 0.4), std::invalid_argument); }

TEST(FracIntegrate, MatchesDirectSumOracle) {
    for (std::size_t n : {2u, 17u, 128u, 512u}) {
        for (double d : {-0.4, 0.3, 0.7, 1.0, 1.5, 2.2}) {
            const auto u = oracles::gaussian_noise(n, n * 31 + 7);
            const auto got = frac_integrate(u, d);
            const auto want = oracles::direct_frac_integrate(u, d);
            double scale = 0.0;
            for (double v : want) scale = std::max(scale, std::abs(v));
            for (std::size_t t = 0; t < n; ++t) {
                ASSERT_NEAR(got[t], want[t], 1e-10 * std::max(1.0, scale)) << "n=" << n << " d=" << d << " t=" << t;
            }
        }
    }
}

// Vandermonde convolution: (1-L)^{-d2} (1-L)^{-d1} = (1-L)^{-(d1+d2)} on truncated inputs.
TEST(FracIntegrate, CompositionProperty) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-1.2, 1.2);
    for (int trial = 0; trial < 40; ++trial) {
        const double d1 = dist(rng);
        const double d2 = dist(rng);
        const auto u = oracles::gaussian_noise(200, static_cast<std::uint64_t>(trial));
        const auto two_step = frac_integrate(frac_integrate(u, d1), d2);
        const auto one_step = frac_integrate(u, d1 + d2);
        for (std::size_t t = 0; t < u.size(); ++t) {
            ASSERT_NEAR(two_step[t], one_step[t], 1e-10 * std::max(1.0, std::abs(one_step[t])))
                << "d1=" << d1 << " d2=" << d2 << " t=" << t;
        }
    }
}

TEST(FracIntegrate, LinearityProperty) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double d = coef(rng) / 2.0;
        const double a = coef(rng);
        const double b = coef(rng);
        const auto u = oracles::gaussian_noise(150, 1000 + trial);
        const auto v = oracles::gaussian_noise(150, 2000 + trial);
        std::vector<double> mix(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) mix[i] = a * u[i] + b * v[i];
        const auto lhs = frac_integrate(mix, d);
        const auto fu = frac_integrate(u, d);
        const auto fv = frac_integrate(v, d);
        for (std::size_t i = 0; i < u.size(); ++i) {
            ASSERT_NEAR(lhs[i], a * fu[i] + b * fv[i], 1e-12 * std::max(1.0, std::abs(lhs[i])));
        }
    }
}

TEST(FracTrend, ClosedFormValues) {
    EXPECT_EQ(frac_trend(1.0, 4), (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(frac_trend(2.0, 3), (std::vector<double>{1, 3, 6}));
    const auto half = frac_trend(0.5, 3);
    EXPECT_DOUBLE_EQ(half[0], 1.0);
    EXPECT_DOUBLE_EQ(half[1], 1.5);
    EXPECT_DOUBLE_EQ(half[2], 1.875);
    EXPECT_THROW((void)frac_trend(0.0, 3), std::invalid_argument);
}

TEST(FracTrend, EqualsIntegratedUnitStep) {
    for (double alpha : {0.3, 0.5, 1.0, 1.7, 2.0}) {
        const std::vector<double> step(64, 1.0);
        const auto want = frac_integrate(step, alpha);
        const auto got = frac_trend(alpha, 64);
        for (std::size_t t = 0; t < 64; ++t) ASSERT_NEAR(got[t], want[t], 1e-10 * want[t]);
    }
}

TEST(Simulate, WhiteNoiseIsTheRawDraw) {
    SimConfig cfg;
    cfg.n = 50;
    cfg.seed = 99;
    const auto u = draw_innovations(cfg);
    const auto x = simulate(cfg);
    EXPECT_EQ(x.values(), u);
}

TEST(Simulate, UnitRootIsCumulativeSum) {
    SimConfig cfg;
    cfg.n = 50;
    cfg.seed = 99;
    cfg.d = 1.0;
    const auto u = draw_innovations(cfg);
    std::vector<double> cs(u.size());
    std::partial_sum(u.begin(), u.end(), cs.begin());
    const auto x = simulate(cfg);
    for (std::size_t t = 0; t < cs.size(); ++t) EXPECT_NEAR(x[t], cs[t], 1e-12);
}

TEST(Simulate, MatchesDirectConvolutionOfRecordedDraw) {
    SimConfig cfg;
    cfg.n = 200;
    cfg.d = 0.7;
    cfg.seed = 12345;
    const auto u = draw_innovations(cfg);
    const auto want = oracles::direct_frac_integrate(u, 0.7);
    const auto x = simulate(cfg);
    for (std::size_t t = 0; t < want.size(); ++t) ASSERT_NEAR(x[t], want[t], 1e-10 * std::max(1.0, std::abs(want[t])));
}

TEST(Simulate, DeterministicGivenSeed) {
    SimConfig cfg;
    cfg.n = 300;
    cfg.d = 0.85;
    cfg.x0 = 2.0;
    cfg.seed = 4;
    cfg.trend = PowerTrend{0.5, 1.3};
    EXPECT_EQ(simulate(cfg), simulate(cfg));
    auto other = cfg;
    other.seed = 5;
    EXPECT_NE(simulate(cfg), simulate(other));
}

TEST(Simulate, TrendAndOffsetAreAdditive) {
    SimConfig base;
    base.n = 40;
    base.d = 0.7;
    base.seed = 8;
    auto trended = base;
    trended.trend = PowerTrend{2.0, 1.5};
    trended.x0 = -1.0;
    const auto a = simulate(base);
    const auto b = simulate(trended);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = static_cast<double>(i + 1);
        EXPECT_NEAR(b[i] - a[i], 2.0 * std::pow(t, 1.5) - 1.0, 1e-10 * std::pow(t, 1.5));
    }
}

TEST(Simulate, LinearFilterInnovations) {
    SimConfig cfg;
    cfg.n = 20;
    cfg.seed = 3;
    cfg.innovation = LinearFilter{{1.0}};
    SimConfig plain = cfg;
    plain.innovation = IidGaussian{1.0};
    // a single unit coefficient reproduces the iid draw
    EXPECT_EQ(draw_innovations(cfg), draw_innovations(plain));

    cfg.innovation = LinearFilter{{1.0, 0.5}};
    const auto u = draw_innovations(cfg);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> eps(21);
    for (auto& e : eps) e = z(rng);
    for (std::size_t t = 0; t < 20; ++t) EXPECT_DOUBLE_EQ(u[t], eps[t + 1] + 0.5 * eps[t]);
}

TEST(Simulate, ValidatesConfig) {
    SimConfig cfg;
    cfg.n = 1;
    EXPECT_THROW((void)simulate(cfg), std::invalid_argument);
    cfg.n = 10;
    cfg.innovation = IidGaussian{0.0};
    EXPECT_THROW((void)simulate(cfg), std::invalid_argument);
    cfg.innovation = IidGaussian{1.0};
    cfg.trend = PowerTrend{0.0, 1.0};
    EXPECT_THROW((void)simulate(cfg), std::invalid_argument);
    cfg.trend = PowerTrend{1.0, -1.0};
    EXPECT_THROW((void)simulate(cfg), std::invalid_argument);
    cfg.trend.reset();
    cfg.innovation = LinearFilter{};
    EXPECT_THROW((void)simulate(cfg), std::invalid_argument);
}

TEST(Series, RejectsShortOrNonFinite) {
    EXPECT_THROW(Series(std::vector<double>{1.0}), std::invalid_argument);
    EXPECT_THROW(Series(std::vector<double>{1.0, NAN}), std::invalid_argument);
    EXPECT_NO_THROW(Series(std::vector<double>{1.0, 2.0}));
}
