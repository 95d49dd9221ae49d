#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "specfun.hpp"

namespace pdlab
{
using specfun::cplx;

//! Dimension n, weight mu and intensity gamma of the weighted typical cell.
struct ModelParams
{
    int n = 2;
    double mu = -1;
    double gamma = 1;

    void validate() const
    {
        require(n >= 2, "n must be >= 2");
        require(std::isfinite(mu) && mu > -2, "mu must be > -2");
        require(std::isfinite(gamma) && gamma > 0, "gamma must be > 0");
    }

    static ModelParams make(int n, double mu, double gamma = 1)
    {
        ModelParams p{n, mu, gamma};
        p.validate();
        return p;
    }
};

//! Which left edge of the cumulant generating function strip to allow.
enum class CgfStrip
{
    moments,  //!< Re z > -(mu + 2): where moments are proven finite
    extended  //!< Re z > -(mu + 3): analytic continuation of the gamma product
};

struct CgfDomain
{
    double lower = -1;
    double guard = 1e-6;

    static CgfDomain of(ModelParams const& p, CgfStrip strip = CgfStrip::moments)
    {
        return {strip == CgfStrip::moments ? -(p.mu + 2) : -(p.mu + 3), 1e-6};
    }

    bool contains(double re) const { return re > lower + guard; }

    void check(double re) const
    {
        if (!contains(re))
        {
            std::ostringstream os;
            os << "argument real part " << re << " outside strip Re > "
               << lower << " (guard " << guard << ")";
            throw DomainError(os.str());
        }
    }
};

namespace detail
{
inline double log_omega(int n)
{
    // surface area of the unit sphere in R^n
    return std::log(2.0) + 0.5 * n * std::log(std::numbers::pi)
           - specfun::log_gamma(0.5 * n);
}

inline double log_factorial(int n)
{
    return specfun::log_gamma(n + 1.0);
}

// s-independent part of the linear term of the cgf
inline double cgf_slope_constant(ModelParams const& p)
{
    int n = p.n;
    return specfun::log_gamma(0.5 * n + 1) - std::log(p.gamma)
           - 0.5 * n * std::log(std::numbers::pi) - log_factorial(n);
}

/*!
 * log E[V^z] as a sum of log-gamma differences at fixed bases.
 *
 * The two quadratic-size bases are combined first: their individual
 * contributions grow like n^2 log n and largely cancel.
 */
template<class T>
T log_moment_terms(ModelParams const& p, T z)
{
    using specfun::log_gamma_diff;
    int const n = p.n;
    double const mu = p.mu;
    double const big_a = 0.5 * (n + 1) * (n + mu) + 1;
    double const big_b = 0.5 * n * (n + mu + 1);
    double const d = 0.5 * (n + mu) + 1;

    T quad = log_gamma_diff(big_a, T(0.5 * (n + 1)) * z)
             - log_gamma_diff(big_b, T(0.5 * n) * z);
    T sum = 0;
    for (int i = 1; i <= n; ++i)
        sum += log_gamma_diff(0.5 * (i + mu) + 1, T(0.5) * z);
    return z * cgf_slope_constant(p) + quad
           + log_gamma_diff(n + mu + 1, z)
           - double(n + 1) * log_gamma_diff(d, T(0.5) * z) + sum;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * log of the mean of Delta^s over n+1 independent uniform points on the
 * unit sphere (normalized surface measure).
 */
inline double log_S(int n, double s)
{
    using specfun::log_gamma_diff;
    require(n >= 2, "log_S: n must be >= 2");
    require(s > -1, "log_S: gamma arguments need s > -1");
    double base = 0.5 * (n * n - n) + 0.5 * n * s;
    require(base > 0, "log_S: nonpositive gamma argument");
    double r = log_gamma_diff(base, 0.5 * s)
               - s * detail::log_factorial(n)
               - (n + 1) * log_gamma_diff(0.5 * n, 0.5 * s);
    for (int i = 1; i <= n; ++i)
        r += log_gamma_diff(0.5 * i, 0.5 * s);
    return r;
}

//! Same integral against the unnormalized (surface-area) sphere measure.
inline double log_S_lebesgue(int n, double s)
{
    return log_S(n, s) + (n + 1) * detail::log_omega(n);
}

inline double log_a_n(int n)
{
    require(n >= 2, "log_a_n: n must be >= 2");
    using specfun::log_gamma;
    double half_sq = 0.5 * n * n;
    return std::log(double(n) * n) - (n + 1) * std::log(2.0)
           - 0.5 * (n - 1) * std::log(std::numbers::pi)
           - specfun::log_gamma_diff(half_sq, 0.5)
           + n * (log_gamma(0.5 * (n + 1)) - log_gamma(0.5 * n + 1));
}

//! E V^s of the unweighted typical cell through the angular integral route.
inline double typical_moment_lemma22(int n, double gamma, double s)
{
    require(n >= 2, "typical_moment_lemma22: n must be >= 2");
    require(gamma > 0, "typical_moment_lemma22: gamma must be > 0");
    require(s > -1, "typical_moment_lemma22: s must be > -1");
    double log_kappa = specfun::log_unit_ball_volume(n);
    double v = log_a_n(n) + log_S_lebesgue(n, s + 1)
               + specfun::log_gamma(n + s) - std::log(double(n))
               - (n + s) * log_kappa - s * std::log(gamma);
    return std::exp(v);
}

inline double log_moment(ModelParams const& p, double s)
{
    p.validate();
    CgfDomain::of(p).check(s);
    return detail::log_moment_terms(p, s);
}

inline double moment(ModelParams const& p, double s)
{
    return std::exp(log_moment(p, s));
}

//! log E exp(z log V); real on the real axis.
inline cplx cgf(ModelParams const& p, cplx z, CgfStrip strip = CgfStrip::moments)
{
    p.validate();
    CgfDomain::of(p, strip).check(z.real());
    if (z.imag() == 0)
        return detail::log_moment_terms(p, z.real());
    return detail::log_moment_terms(p, z);
}

inline double cgf(ModelParams const& p, double s, CgfStrip strip = CgfStrip::moments)
{
    p.validate();
    CgfDomain::of(p, strip).check(s);
    return detail::log_moment_terms(p, s);
}

//! P(R <= t) for the circumradius: regularized gamma in gamma*kappa*t^n.
inline double radius_cdf(ModelParams const& p, double t)
{
    p.validate();
    require(t >= 0, "radius_cdf: t must be >= 0");
    if (t == 0)
        return 0;
    if (std::isinf(t))
        return 1;
    double x = std::exp(std::log(p.gamma) + specfun::log_unit_ball_volume(p.n)
                        + p.n * std::log(t));
    return specfun::reg_lower_incomplete_gamma(p.n + p.mu + 1, x);
}

//! Ratio of the weighted to the unweighted cell intensity.
inline double normalizing_intensity_ratio(ModelParams const& p)
{
    p.validate();
    return moment({p.n, -1, p.gamma}, p.mu + 1);
}

/*!
 * Relative mismatch of the two sides of the sphere moment identity for
 * integer weights: a beta-scaled volume against a gamma radius times the
 * simplex moment on the higher-dimensional sphere.
 */
inline double sphere_identity_check(int n, int mu, double s)
{
    require(n >= 2, "sphere_identity_check: n must be >= 2");
    require(mu >= -1, "sphere_identity_check: mu must be an integer >= -1");
    require(s > 0, "sphere_identity_check: s must be > 0");
    using specfun::log_gamma_diff;
    ModelParams const p{n, double(mu), 1};
    double const ap = 0.5 * (n * n + n + n * mu);
    double const bp = 0.5 * (mu + 2);

    double lhs = log_gamma_diff(ap, n * s) - log_gamma_diff(ap + bp, n * s)
                 + log_moment(p, 2 * s);

    double const a = n + mu + 1;
    double const log_kappa = specfun::log_unit_ball_volume(n);
    double const d = 0.5 * (n + mu) + 1;
    double const q = 0.5 * (n + 1) * (n + mu) + 1;
    double sphere = -2 * s * detail::log_factorial(n)
                    - (n + 1) * log_gamma_diff(d, s)
                    + log_gamma_diff(q, (n + 1) * s) - log_gamma_diff(q, n * s);
    for (int i = 1; i <= n; ++i)
        sphere += log_gamma_diff(0.5 * (mu + i) + 1, s);
    double rhs = log_gamma_diff(a, 2 * s) - 2 * s * log_kappa + sphere;
    return std::abs(std::expm1(lhs - rhs));
}
}  // namespace pdlab
