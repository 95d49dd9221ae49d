#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "pdlab/exactlaw.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

TEST(ModelParams, Validation)
{
    EXPECT_NO_THROW(ModelParams::make(2, -1.9, 0.1));
    EXPECT_THROW(ModelParams::make(1, 0, 1), DomainError);
    EXPECT_THROW(ModelParams::make(2, -2, 1), DomainError);
    EXPECT_THROW(ModelParams::make(2, 0, 0), DomainError);
}

TEST(LogS, Normalized)
{
    EXPECT_NEAR(log_S(2, 0), 0, 1e-14);
    EXPECT_NEAR(log_S(3, 0), 0, 1e-14);
}

TEST(LogS, MatchesMonteCarloTriangleArea)
{
    // mean area of a triangle with three uniform vertices on the unit circle
    RngStream rng(kDefaultSeed, 3);
    double const two_pi = 2 * std::numbers::pi;
    double sum = 0, sum2 = 0;
    int const n = 1'000'000;
    for (int i = 0; i < n; ++i)
    {
        double a = two_pi * rng.uniform(), b = two_pi * rng.uniform(), c = two_pi * rng.uniform();
        double area = 0.5 * std::abs((std::cos(b) - std::cos(a)) * (std::sin(c) - std::sin(a))
                                     - (std::cos(c) - std::cos(a)) * (std::sin(b) - std::sin(a)));
        sum += area;
        sum2 += area * area;
    }
    double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(std::exp(log_S(2, 1)), mean, 3 * se);
}

TEST(LogAn, PlanarValueAndNormalization)
{
    EXPECT_NEAR(log_a_n(2), std::log(1.0 / 6), 1e-13);
    for (int n : {2, 3, 7})
        EXPECT_NEAR(typical_moment_lemma22(n, 1, 0), 1, 1e-12);
}

TEST(Moments, PlanarTypicalArea)
{
    EXPECT_NEAR(typical_moment_lemma22(2, 1, 1), 0.5, 1e-12);
    EXPECT_NEAR(moment(ModelParams::make(2, -1, 1), 1), 0.5, 1e-12);
    EXPECT_NEAR(moment(ModelParams::make(2, -1, 2), 1), 0.25, 1e-12);
    EXPECT_NEAR(typical_moment_lemma22(2, 1, 1.37), moment(ModelParams::make(2, -1, 1), 1.37),
                1e-10 * moment(ModelParams::make(2, -1, 1), 1.37));
    EXPECT_THROW(moment(ModelParams::make(2, -1, 1), -1), DomainError);
}

TEST(Moments, NormalizationGrid)
{
    for (int n = 2; n <= 200; n += 9)
        for (double mu : {-1.9, -1.0, 0.0, 1.0, 10.0})
            EXPECT_NEAR(log_moment(ModelParams::make(n, mu, 1), 0), 0, 1e-10) << n << " " << mu;
}

TEST(Moments, IntensityScaling)
{
    for (double s : {0.5, 1.0, 2.5})
    {
        double ref = moment(ModelParams::make(5, 0.3, 1), s);
        for (double g : {0.1, 10.0})
            EXPECT_NEAR(moment(ModelParams::make(5, 0.3, g), s) * std::pow(g, s), ref, 1e-12 * ref);
    }
}

TEST(Moments, LemmaMatchesTheoremAtMinusOne)
{
    for (int n = 2; n <= 20; ++n)
        for (double s : {0.5, 1.0, 2.0, 3.7})
        {
            double a = typical_moment_lemma22(n, 1.3, s);
            double b = moment(ModelParams::make(n, -1, 1.3), s);
            EXPECT_NEAR(a, b, 1e-9 * b) << n << " " << s;
        }
}

TEST(Moments, LogConvex)
{
    ModelParams p = ModelParams::make(4, 0.5, 1);
    double h = 0.25;
    for (double s = -2.0; s < 6; s += h)
    {
        double d2 = log_moment(p, s + h) - 2 * log_moment(p, s) + log_moment(p, s - h);
        EXPECT_GE(d2, -1e-8);
    }
}

TEST(Cgf, BasicValues)
{
    ModelParams p = ModelParams::make(2, -1, 1);
    EXPECT_NEAR(std::abs(cgf(p, cplx(0, 0))), 0, 1e-14);
    EXPECT_NEAR(cgf(p, cplx(1, 0)).real(), std::log(0.5), 1e-12);
    EXPECT_LE(std::exp(cgf(p, cplx(0, 1)).real()), 1 + 1e-12);
    for (double s : {-0.9, 0.3, 2.0, 5.5})
    {
        cplx v = cgf(p, cplx(s, 0));
        EXPECT_NEAR(v.imag(), 0, 1e-12);
        EXPECT_NEAR(v.real(), log_moment(p, s), 1e-9 * std::max(1.0, std::abs(v.real())));
    }
}

TEST(Cgf, StripEnforced)
{
    ModelParams p = ModelParams::make(3, 0, 1);
    EXPECT_THROW(cgf(p, cplx(-2.5, 0)), DomainError);
    EXPECT_NO_THROW(cgf(p, cplx(-2.5, 0), CgfStrip::extended));
    EXPECT_THROW(cgf(p, cplx(-3.0, 0), CgfStrip::extended), DomainError);
}

TEST(RadiusCdf, PlanarClosedForm)
{
    ModelParams p = ModelParams::make(2, -1, 1);
    EXPECT_EQ(radius_cdf(p, 0), 0);
    for (double t : {0.1, 0.5, 1.0, 2.0})
    {
        double x = std::numbers::pi * t * t;
        EXPECT_NEAR(radius_cdf(p, t), 1 - std::exp(-x) * (1 + x), 1e-14);
    }
    EXPECT_NEAR(radius_cdf(p, 50), 1, 1e-15);
    EXPECT_THROW(radius_cdf(p, -1), DomainError);
}

TEST(RadiusCdf, MatchesDirectQuadrature)
{
    using boost::math::quadrature::gauss_kronrod;
    RngStream rng(kDefaultSeed, 5);
    for (int i = 0; i < 20; ++i)
    {
        int n = 2 + int(rng.uniform() * 5);
        double mu = -1.5 + 4 * rng.uniform();
        double g = 0.5 + 2 * rng.uniform();
        ModelParams p = ModelParams::make(n, mu, g);
        double t = 0.2 + rng.uniform() * std::pow(1 / g, 1.0 / n);
        double kn = std::exp(specfun::log_unit_ball_volume(n));
        double shape = n + mu + 1;
        // density of R: n (g kn)^shape r^{n shape - 1} e^{-g kn r^n} / Gamma(shape)
        auto dens = [&](double r) {
            return std::exp(std::log(double(n)) + shape * std::log(g * kn) + (n * shape - 1) * std::log(r)
                            - g * kn * std::pow(r, n) - std::lgamma(shape));
        };
        double q = gauss_kronrod<double, 61>::integrate(dens, 0.0, t, 15, 1e-13);
        EXPECT_NEAR(radius_cdf(p, t), q, 1e-8);
    }
}

TEST(IntensityRatio, Values)
{
    EXPECT_NEAR(normalizing_intensity_ratio(ModelParams::make(4, -1, 1)), 1, 1e-13);
    EXPECT_NEAR(normalizing_intensity_ratio(ModelParams::make(2, 0, 1)), 0.5, 1e-12);
    EXPECT_NEAR(normalizing_intensity_ratio(ModelParams::make(2, 0, 2)), 0.25, 1e-12);
}

TEST(SphereIdentity, GammaIdentityHolds)
{
    EXPECT_LT(sphere_identity_check(2, -1, 1), 1e-9);
    EXPECT_LT(sphere_identity_check(3, 0, 0.5), 1e-9);
    EXPECT_LT(sphere_identity_check(2, -1, 1e-6), 1e-9);
    EXPECT_THROW(sphere_identity_check(2, -2, 1), DomainError);
}
