#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exactlaw.hpp"
#include "specfun.hpp"

namespace pdlab
{
namespace detail
{
//! psi^{(k)}(x) with k = 0 meaning digamma.
inline double psi_k(int k, double x)
{
    return k == 0 ? specfun::digamma(x) : specfun::polygamma(k, x);
}
}  // namespace detail

//---------------------------------------------------------------------------//
// Exact cumulants of the log-volume
//---------------------------------------------------------------------------//
/*!
 * m-th cumulant of log V in polygamma form.
 *
 * Arguments are shifted down by one relative to the moment formula; the
 * final term restores the shift and is the exact m-th derivative of
 * -(n-1) log(n + mu + s).
 */
inline double cumulant_exact(ModelParams const& p, int m)
{
    p.validate();
    require(m >= 1, "cumulant_exact: order must be >= 1");
    using detail::psi_k;
    int const n = p.n;
    double const mu = p.mu;
    int const k = m - 1;
    double const nm = n + mu;

    double sum = 0;
    for (int i = 1; i <= n; ++i)
        sum += psi_k(k, 0.5 * (i + mu + 2));

    double c = psi_k(k, nm)
               + std::pow(0.5 * (n + 1), m) * psi_k(k, 0.5 * (n + 1) * nm)
               - std::pow(0.5 * n, m) * psi_k(k, 0.5 * n * (nm + 1))
               - (n + 1) * std::ldexp(psi_k(k, 0.5 * nm), -m)
               + std::ldexp(sum, -m);
    double sign = (k % 2 == 0) ? 1 : -1;
    c -= (n - 1) * sign * std::tgamma(double(m)) / std::pow(nm, m);
    if (m == 1)
        c += detail::cgf_slope_constant(p);
    return c;
}

/*!
 * m-th derivative of the real cgf at 0 by central differences with
 * Richardson extrapolation over four halvings of the step.
 *
 * The base step keeps the whole stencil inside the moment strip and is
 * large enough that rounding in the cgf does not dominate high orders.
 * Error is below 1e-6 * max(1, |c_m|) up to order 4 for n <= 50.
 */
inline double cumulant_fd_oracle(ModelParams const& p, int m)
{
    p.validate();
    require(m >= 1 && m <= 6, "cumulant_fd_oracle: order must be in [1, 6]");
    auto const dom = CgfDomain::of(p);
    double const dist = -dom.lower - 2 * dom.guard;
    double const reach = std::max(1.0, 0.5 * m);
    // orders 5 and 6 need wider steps; near mu = -2 they reach ~1e-5, ~1e-3
    double const h_cap = m <= 4 ? 0.3 : 0.5;
    double const h0 = std::min(h_cap, 0.9 * dist / reach);
    if (!(h0 > 1e-8))
        throw ConvergenceError("cumulant_fd_oracle: step underflow near strip edge");

    auto diff = [&](double h) {
        // sum_j (-1)^j C(m, j) f((m/2 - j) h) / h^m
        double acc = 0;
        double binom = 1;
        for (int j = 0; j <= m; ++j)
        {
            double s = (0.5 * m - j) * h;
            double f = (s == 0) ? 0.0 : cgf(p, s);
            acc += ((j % 2) ? -binom : binom) * f;
            binom = binom * (m - j) / (j + 1);
        }
        return acc / std::pow(h, m);
    };

    constexpr int levels = 4;
    std::array<std::array<double, levels>, levels> r{};
    double h = h0;
    for (int i = 0; i < levels; ++i, h *= 0.5)
    {
        r[i][0] = diff(h);
        double f = 4;
        for (int j = 1; j <= i; ++j, f *= 4)
            r[i][j] = r[i][j - 1] + (r[i][j - 1] - r[i - 1][j - 1]) / (f - 1);
    }
    return r[levels - 1][levels - 1];
}

struct CumulantOrder
{
    int m;
    double exact;
    double oracle;
    double abs_diff;
};

struct CumulantReport
{
    ModelParams params;
    std::vector<CumulantOrder> orders;
};

inline CumulantReport cumulant_report(ModelParams const& p, int max_order)
{
    require(max_order >= 1 && max_order <= 6, "max order must be in [1, 6]");
    CumulantReport rep{p, {}};
    for (int m = 1; m <= max_order; ++m)
    {
        double e = cumulant_exact(p, m);
        double o = cumulant_fd_oracle(p, m);
        rep.orders.push_back({m, e, o, std::abs(e - o)});
    }
    return rep;
}

//---------------------------------------------------------------------------//
// Large-n expansions and bounds
//---------------------------------------------------------------------------//
//! Mean of log V without its O(1) remainder.
inline double mean_expansion(ModelParams const& p)
{
    p.validate();
    double const n = p.n;
    double const mu = p.mu;
    return -0.5 * n * std::log(n) - 0.5 * n * std::log(2 * std::numbers::pi)
           - std::log(p.gamma) + (0.5 * mu + 1.75) * std::log(n + mu)
           + 0.5 * std::log(n) - 0.5 * (mu + 1) * specfun::digamma(mu + 3)
           - 0.25 * specfun::digamma(0.5 * mu + 2);
}

//! Variance of log V without its stated second-order remainder.
inline double variance_expansion(ModelParams const& p)
{
    p.validate();
    double const n = p.n;
    double const mu = p.mu;
    double const nm = n + mu;
    return (3 - n) / (2 * nm) + 2 * n / (nm * nm) + 0.5 * std::log(nm) + 0.5
           - 0.5 * specfun::digamma(mu + 3)
           - 0.5 * (mu + 2) * specfun::polygamma(1, mu + 3)
           + 0.125 * specfun::polygamma(1, 0.5 * (mu + 3));
}

inline double cumulant_bound(ModelParams const& p, int m)
{
    p.validate();
    require(m >= 3, "cumulant_bound: stated only for m >= 3");
    double const n = p.n;
    double const nm = n + p.mu;
    double const f2 = std::tgamma(m - 1.0);
    double const f1 = std::tgamma(double(m));
    return (3 * n + 4) * f2 / (2 * std::pow(nm, m - 1))
           + (2 * n + 3) * f1 / std::pow(nm, m)
           + 4 * f1 / std::pow(p.mu + 3, m - 2);
}

//---------------------------------------------------------------------------//
// Growth regimes
//---------------------------------------------------------------------------//
enum class RegimeTag
{
    R1_fixed_mu,
    R2_mu_pow,
    R3_n_minus_mu_small,
    R4_mu_linear,
    F1_fixed_n_mu_large,
    F2_n_pow_of_mu
};

/*!
 * How mu and n grow together.
 *
 * The driver is n for the R tags and mu for the F tags. `fixed` is the
 * held value: mu for R1 and n for F1.
 */
struct RegimeSpec
{
    RegimeTag tag = RegimeTag::R1_fixed_mu;
    std::optional<double> alpha;
    double fixed = -1;

    bool needs_alpha() const
    {
        return tag == RegimeTag::R2_mu_pow || tag == RegimeTag::R4_mu_linear
               || tag == RegimeTag::F2_n_pow_of_mu;
    }

    bool n_driven() const
    {
        return tag != RegimeTag::F1_fixed_n_mu_large
               && tag != RegimeTag::F2_n_pow_of_mu;
    }

    void validate() const
    {
        require(needs_alpha() == alpha.has_value(),
                "regime: alpha must be given exactly for R2, R4 and F2");
        if (tag == RegimeTag::R2_mu_pow || tag == RegimeTag::F2_n_pow_of_mu)
            require(*alpha > 0 && *alpha < 1, "regime: alpha must be in (0, 1)");
        if (tag == RegimeTag::R4_mu_linear)
            require(*alpha > 0, "regime: alpha must be > 0");
        if (tag == RegimeTag::R1_fixed_mu)
            require(fixed > -2, "regime: fixed mu must be > -2");
        if (tag == RegimeTag::F1_fixed_n_mu_large)
            require(fixed >= 2 && fixed == std::floor(fixed),
                    "regime: fixed n must be an integer >= 2");
    }

    //! Model parameters at a given driver value.
    ModelParams params_at(double driver, double gamma = 1) const
    {
        validate();
        require(driver >= 2, "regime: driver must be >= 2");
        double const a = alpha.value_or(0);
        int n = 0;
        double mu = 0;
        switch (tag)
        {
            case RegimeTag::R1_fixed_mu:
                n = int(driver);
                mu = fixed;
                break;
            case RegimeTag::R2_mu_pow:
                n = int(driver);
                mu = std::pow(driver, a);
                break;
            case RegimeTag::R3_n_minus_mu_small:
                n = int(driver);
                mu = n - std::floor(std::sqrt(double(n)));
                break;
            case RegimeTag::R4_mu_linear:
                n = int(driver);
                mu = a * n;
                break;
            case RegimeTag::F1_fixed_n_mu_large:
                n = int(fixed);
                mu = driver;
                break;
            case RegimeTag::F2_n_pow_of_mu:
                n = std::max(2, int(std::lround(std::pow(driver, a))));
                mu = driver;
                break;
        }
        return ModelParams::make(n, mu, gamma);
    }
};

inline char const* to_string(RegimeTag t)
{
    switch (t)
    {
        case RegimeTag::R1_fixed_mu: return "R1_fixed_mu";
        case RegimeTag::R2_mu_pow: return "R2_mu_pow";
        case RegimeTag::R3_n_minus_mu_small: return "R3_n_minus_mu_small";
        case RegimeTag::R4_mu_linear: return "R4_mu_linear";
        case RegimeTag::F1_fixed_n_mu_large: return "F1_fixed_n_mu_large";
        case RegimeTag::F2_n_pow_of_mu: return "F2_n_pow_of_mu";
    }
    return "?";
}

//! Leading mean and variance of log V in a regime.
inline std::pair<double, double>
regime_expansion(RegimeSpec const& r, double driver, double gamma = 1)
{
    r.validate();
    require(driver >= 2, "regime_expansion: driver must be >= 2");
    double const lg = std::log(gamma);
    double const x = driver;
    double const lx = std::log(x);
    double const a = r.alpha.value_or(0);
    switch (r.tag)
    {
        case RegimeTag::R1_fixed_mu:
            return {-0.5 * x * lx - lg, 0.5 * lx};
        case RegimeTag::R2_mu_pow:
            return {-0.5 * x * lx - lg, 0.5 * (1 - a) * lx};
        case RegimeTag::R3_n_minus_mu_small:
            return {-0.5 * x * lx - lg, 0.5 * std::numbers::ln2 - 0.25};
        case RegimeTag::R4_mu_linear:
            return {-0.5 * x * lx - lg,
                    0.5 * std::log1p(1 / a) - 1 / (2 * (1 + a))};
        case RegimeTag::F1_fixed_n_mu_large:
            return {lx - lg, 3 / (4 * x)};
        case RegimeTag::F2_n_pow_of_mu:
        {
            double mean = -0.5 * a * std::pow(x, a) * lx - lg;
            double var = a < 0.5    ? 3 / (4 * x)
                         : a == 0.5 ? 1 / x
                                    : 1 / (4 * std::pow(x, 2 * (1 - a)));
            return {mean, var};
        }
    }
    throw DomainError("regime_expansion: unknown regime");
}

//! Scale of the cumulant bounds: governs the normal approximation rate.
inline double epsilon_n(RegimeSpec const& r, double n)
{
    r.validate();
    require(n > 1, "epsilon_n: n must be > 1");
    switch (r.tag)
    {
        case RegimeTag::R1_fixed_mu: return std::sqrt(std::log(n));
        case RegimeTag::R2_mu_pow: return std::pow(n, *r.alpha) * std::sqrt(std::log(n));
        case RegimeTag::R3_n_minus_mu_small:
        case RegimeTag::R4_mu_linear: return n;
        default:
            throw DomainError("epsilon_n: defined only for the n-driven regimes");
    }
}

//! Two-sided tail envelope 2 exp(-y^2 / (2 + c y / eps)).
inline double concentration_envelope(double y, double c, double eps)
{
    require(y >= 0, "concentration_envelope: y must be >= 0");
    require(c >= 0 && eps > 0, "concentration_envelope: need c >= 0, eps > 0");
    return 2 * std::exp(-y * y / (2 + c * y / eps));
}
}  // namespace pdlab
