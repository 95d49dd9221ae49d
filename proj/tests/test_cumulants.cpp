#include <cmath>

#include <gtest/gtest.h>

#include "pdlab/cumulants.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

TEST(Cumulants, OracleAgreementGrid)
{
    for (int n = 2; n <= 50; n += 4)
        for (double mu : {-1.5, -1.0, 0.0, 2.0})
            for (double g : {0.5, 1.0})
            {
                ModelParams p = ModelParams::make(n, mu, g);
                for (int m = 1; m <= 4; ++m)
                {
                    double e = cumulant_exact(p, m);
                    EXPECT_LT(std::abs(e - cumulant_fd_oracle(p, m)), 1e-6 * std::max(1.0, std::abs(e)))
                        << n << " " << mu << " " << g << " m=" << m;
                }
            }
}

TEST(Cumulants, MeanMatchesMonteCarlo)
{
    ModelParams p = ModelParams::make(2, -1, 1);
    auto b = sample_batch(p, SampleKind::log_volume, 1'000'000, kDefaultSeed, 8, 4);
    auto ms = mean_se(b.values);
    EXPECT_NEAR(cumulant_exact(p, 1), ms.mean, 3 * ms.se);
}

TEST(Cumulants, VarianceLeadingTerm)
{
    ModelParams p = ModelParams::make(100, -1, 1);
    double c2 = cumulant_exact(p, 2);
    EXPECT_GT(c2, 0);
    EXPECT_LT(std::abs(c2 - 0.5 * std::log(99.0)), 5);
}

TEST(Cumulants, GammaDependence)
{
    for (int m = 1; m <= 5; ++m)
    {
        double a = cumulant_exact(ModelParams::make(7, 0.5, 1), m);
        double b = cumulant_exact(ModelParams::make(7, 0.5, 3), m);
        if (m == 1)
            EXPECT_NEAR(a - b, std::log(3.0), 1e-12);
        else
            EXPECT_EQ(a, b);
    }
}

TEST(Cumulants, OracleRejectsBadOrder)
{
    ModelParams p = ModelParams::make(3, 0, 1);
    EXPECT_THROW(cumulant_fd_oracle(p, 0), DomainError);
    EXPECT_THROW(cumulant_fd_oracle(p, 7), DomainError);
}

TEST(Cumulants, BoundArithmeticAndSweep)
{
    // (3n+4)(m-2)!/(2(n+mu)^(m-1)) + (2n+3)(m-1)!/(n+mu)^m + 4(m-1)!/(mu+3)^(m-2)
    EXPECT_NEAR(cumulant_bound(ModelParams::make(10, -1, 1), 3),
                34.0 / (2 * 81) + 23.0 * 2 / std::pow(9.0, 3) + 4, 1e-12);
    EXPECT_THROW(cumulant_bound(ModelParams::make(10, -1, 1), 2), DomainError);
    for (int n = 2; n <= 200; n += 11)
        for (double mu : {-1.0, 0.0, 5.0})
            for (int m = 3; m <= 8; ++m)
            {
                ModelParams p = ModelParams::make(n, mu, 1);
                EXPECT_LE(std::abs(cumulant_exact(p, m)), cumulant_bound(p, m));
            }
}

TEST(Cumulants, ExpansionsFinite)
{
    ModelParams p = ModelParams::make(2, 0, 1);
    EXPECT_TRUE(std::isfinite(mean_expansion(p)));
    EXPECT_TRUE(std::isfinite(variance_expansion(p)));
}

// The ratio approaches 1 only like C / log n: at n = 1e5 it is still 5.7% low.
TEST(Regimes, R1VarianceRatioApproachesOne)
{
    double prev = 0;
    for (int n : {100, 1000, 10000, 100000})
    {
        double half_log = 0.5 * std::log(double(n));
        double c2 = cumulant_exact(ModelParams::make(n, -1, 1), 2);
        double r = c2 / half_log;
        EXPECT_GT(r, prev);
        EXPECT_LT(r, 1);
        EXPECT_NEAR(c2 - half_log, -0.33, 0.1);
        prev = r;
    }
    EXPECT_NEAR(prev, 0.943, 0.002);
}

TEST(Regimes, LimitsAndValidation)
{
    RegimeSpec r4{RegimeTag::R4_mu_linear, 1.0};
    EXPECT_NEAR(regime_expansion(r4, 10000).second, 0.5 * std::log(2.0) - 0.25, 1e-12);
    RegimeSpec r3{RegimeTag::R3_n_minus_mu_small};
    EXPECT_NEAR(regime_expansion(r3, 10000).second, 0.5 * std::log(2.0) - 0.25, 1e-12);
    // fixed n = 3: the variance decays like 1/mu, not 3/(4 mu)
    RegimeSpec f1{RegimeTag::F1_fixed_n_mu_large, std::nullopt, 3};
    double v = cumulant_exact(f1.params_at(1e4), 2);
    EXPECT_NEAR(v * 1e4, 1, 0.001);
    EXPECT_NEAR(regime_expansion(f1, 1e4).second, 3 / 4e4, 1e-15);
    EXPECT_THROW((RegimeSpec{RegimeTag::R2_mu_pow}.validate()), DomainError);
    EXPECT_THROW((RegimeSpec{RegimeTag::R2_mu_pow, 1.5}.validate()), DomainError);
    EXPECT_THROW((RegimeSpec{RegimeTag::R1_fixed_mu, 0.5}.validate()), DomainError);
}

TEST(Regimes, EpsilonAndEnvelope)
{
    RegimeSpec r1{RegimeTag::R1_fixed_mu};
    EXPECT_NEAR(epsilon_n(r1, std::exp(4.0)), 2, 1e-12);
    RegimeSpec r2{RegimeTag::R2_mu_pow, 0.5};
    EXPECT_NEAR(epsilon_n(r2, 100), 10 * std::sqrt(std::log(100.0)), 1e-12);
    RegimeSpec r4{RegimeTag::R4_mu_linear, 2.0};
    EXPECT_NEAR(epsilon_n(r4, 50), 50, 1e-12);
    RegimeSpec f1{RegimeTag::F1_fixed_n_mu_large, std::nullopt, 3};
    EXPECT_THROW(epsilon_n(f1, 50), DomainError);

    EXPECT_EQ(concentration_envelope(0, 1, 10), 2);
    EXPECT_NEAR(concentration_envelope(1.5, 0, 1), 2 * std::exp(-1.125), 1e-15);
    EXPECT_NEAR(concentration_envelope(3, 1, 10), 2 * std::exp(-9 / 2.3), 1e-15);
    double prev = 3;
    for (double y = 0; y < 10; y += 0.5)
    {
        double e = concentration_envelope(y, 1, 10);
        EXPECT_LE(e, prev);
        prev = e;
    }
}
