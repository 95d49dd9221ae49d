#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "pdlab/distribution.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

TEST(CharFn, BasicProperties)
{
    ModelParams p = ModelParams::make(4, 0.5, 1.2);
    EXPECT_NEAR(std::abs(char_fn(p, 0) - cplx(1, 0)), 0, 1e-14);
    RngStream rng(kDefaultSeed, 1);
    for (int i = 0; i < 1000; ++i)
    {
        double t = 40 * (rng.uniform() - 0.5);
        cplx a = char_fn(p, t), b = char_fn(p, -t);
        EXPECT_LE(std::abs(a), 1 + 1e-12);
        EXPECT_NEAR(std::abs(a - std::conj(b)), 0, 1e-12);
    }
}

TEST(CharFn, MatchesMonteCarlo)
{
    ModelParams p = ModelParams::make(2, -1, 1);
    auto b = sample_batch(p, SampleKind::log_volume, 1'000'000, kDefaultSeed, 8, 4);
    for (double t : {0.5, 1.0, 2.0})
    {
        std::vector<double> re, im;
        for (double y : b.values)
        {
            re.push_back(std::cos(t * y));
            im.push_back(std::sin(t * y));
        }
        auto mr = mean_se(re), mi = mean_se(im);
        cplx phi = char_fn(p, t);
        EXPECT_NEAR(phi.real(), mr.mean, 3 * mr.se) << t;
        EXPECT_NEAR(phi.imag(), mi.mean, 3 * mi.se) << t;
    }
}

TEST(Inversion, CdfShapeAndMonteCarlo)
{
    ModelParams p = ModelParams::make(2, -1, 1);
    auto law = StandardizedLaw::of(p);
    auto inv = standardized_inverter(law);
    EXPECT_LT(inv.cdf(-8), 1e-4);
    EXPECT_GT(inv.cdf(8), 1 - 1e-4);
    double prev = -1;
    for (double y = -8; y <= 8; y += 0.01)
    {
        double f = inv.cdf(y);
        EXPECT_GE(f, prev - 2e-6);
        prev = f;
    }
    EXPECT_LT(inv.cdf(-1e3), 1e-4);
    EXPECT_GT(inv.cdf(1e3), 1 - 1e-4);
    double mid = inv.cdf(0);
    EXPECT_GT(mid, 0.3);
    EXPECT_LT(mid, 0.7);

    auto b = sample_batch(p, SampleKind::log_volume, 1'000'000, kDefaultSeed, 8, 4);
    auto ks = ks_statistic(b.values, [&](double x) { return inv.cdf((x - law.mean) / law.sd); });
    EXPECT_GT(ks.p_value, 0.01);
}

TEST(Inversion, StandardizedCgf)
{
    auto law = StandardizedLaw::of(ModelParams::make(10, 0, 1));
    double h = 1e-3;
    EXPECT_NEAR(law.cgf_real(0), 0, 1e-14);
    double d1 = (law.cgf_real(h) - law.cgf_real(-h)) / (2 * h);
    double d2 = (law.cgf_real(h) - 2 * law.cgf_real(0) + law.cgf_real(-h)) / (h * h);
    EXPECT_LT(std::abs(d1), 1e-6);
    EXPECT_LT(std::abs(d2 - 1), 1e-5);
}

TEST(Inversion, ConfigValidation)
{
    InversionConfig c;
    c.grid_points = 100;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(BerryEsseen, DistanceDecreases)
{
    for (double mu : {-1.0, 0.0})
    {
        double prev = 1;
        for (int n : {10, 100, 1000})
        {
            double d = kolmogorov_distance_to_normal(ModelParams::make(n, mu, 1));
            EXPECT_GT(d, 0);
            EXPECT_LT(d, prev);
            prev = d;
        }
    }
}

TEST(Centering, KnownValues)
{
    ModelParams p = ModelParams::make(2, -1, 1);
    double ldp = -std::log(2.0) - (std::log(std::numbers::pi) + 1) + 1.75 * std::log(2.0);
    EXPECT_NEAR(centering(CenteringVariant::ldp, p), ldp, 1e-12);
    EXPECT_NEAR(centering(CenteringVariant::modphi, p), std::log(2 / std::sqrt(std::numbers::pi)) - 1, 1e-12);
}

TEST(Centering, GapGrowsLinearly)
{
    ModelParams p = ModelParams::make(10000, -1, 1);
    double gap = centering(CenteringVariant::ldp, p) - centering(CenteringVariant::modphi, p);
    double lead = -0.5 * 10000 * (1 - std::log(2.0));
    EXPECT_NEAR(gap / lead, 1, 0.01);
}

TEST(ScaledCgf, ZeroAtOriginAndModphiConverges)
{
    for (auto v : {CenteringVariant::ldp, CenteringVariant::modphi})
        EXPECT_NEAR(ldp_scaled_cgf(ModelParams::make(100, -1, 1), 0, v), 0, 1e-12);
    double prev_m = 1e9, prev_l = 0;
    for (int n : {100, 1000, 10000, 100000})
    {
        ModelParams p = ModelParams::make(n, -1, 1);
        double em = std::abs(ldp_scaled_cgf(p, 1, CenteringVariant::modphi) - 0.5);
        double el = std::abs(ldp_scaled_cgf(p, 1, CenteringVariant::ldp) - 0.5);
        EXPECT_LT(em, prev_m);
        EXPECT_GT(el, prev_l);
        prev_m = em;
        prev_l = el;
    }
}

TEST(LimitingPsi, KnownValues)
{
    EXPECT_NEAR(limiting_psi(-1, 0), 1, 1e-13);
    EXPECT_NEAR(limiting_psi(-1, 2), 2 / std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_NEAR(limiting_psi(0, 2), 2 / std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_THROW(limiting_psi(0, -3.5), DomainError);
}

// The renormalized transform converges, but to psi(z) exp(-z^2/4) rather
// than psi(z): the log defect tends to -z^2/4 at rate 1/n.
TEST(ModGaussian, LogDefectTendsToQuarterSquare)
{
    EXPECT_NEAR(mod_gaussian_residual(ModelParams::make(100, -1, 1), 0), 0, 1e-12);
    for (double mu : {-1.0, 0.0})
        for (double z : {-1.5, -1.0, 0.5, 1.0})
        {
            double prev = 0;
            for (int n : {100, 1000, 10000})
            {
                ModelParams p = ModelParams::make(n, mu, 1);
                double err = std::abs(mod_gaussian_log_defect(p, z) + 0.25 * z * z);
                if (prev > 0)
                    EXPECT_LT(err / prev, 0.2) << mu << " " << z << " " << n;
                prev = err;
                double expected = limiting_psi(mu, z) * std::abs(std::expm1(mod_gaussian_log_defect(p, z)));
                EXPECT_NEAR(mod_gaussian_residual(p, z), expected, 1e-9);
            }
            EXPECT_GT(mod_gaussian_residual(ModelParams::make(10000, mu, 1), z), 0.05);
        }
}

TEST(Envelope, FitAndTail)
{
    auto inv = standardized_inverter(StandardizedLaw::of(ModelParams::make(1000, -1, 1)));
    std::vector<double> ys = {0.5, 1, 2, 3}, tails;
    for (double y : ys)
        tails.push_back(two_sided_tail(inv, y));
    double eps = std::sqrt(std::log(1000.0));
    double c = fit_envelope_constant(ys, tails, eps);
    ASSERT_TRUE(std::isfinite(c));
    for (std::size_t i = 0; i < ys.size(); ++i)
        EXPECT_LE(tails[i], concentration_envelope(ys[i], c, eps) * (1 + 1e-12));
}
