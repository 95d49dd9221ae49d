#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "cumulants.hpp"
#include "errors.hpp"
#include "exactlaw.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace pdlab
{
//---------------------------------------------------------------------------//
// Standardization
//---------------------------------------------------------------------------//
struct StandardizedLaw
{
    ModelParams params;
    double mean = 0;
    double sd = 1;

    static StandardizedLaw of(ModelParams const& p)
    {
        p.validate();
        double var = cumulant_exact(p, 2);
        if (!(var > 0))
            throw ConvergenceError("standardization: nonpositive variance");
        return {p, cumulant_exact(p, 1), std::sqrt(var)};
    }

    //! log E exp(i u (Y - mean) / sd)
    cplx log_cf(double u) const
    {
        double t = u / sd;
        return cgf(params, cplx(0, t)) - cplx(0, t * mean);
    }

    //! Standardized cgf on the real axis (for derivative checks).
    double cgf_real(double s) const
    {
        return cgf(params, s / sd) - s * mean / sd;
    }
};

inline cplx char_fn(ModelParams const& p, double t)
{
    if (t == 0)
        return 1;
    return std::exp(cgf(p, cplx(0, t)));
}

inline double normal_cdf(double y)
{
    return 0.5 * std::erfc(-y / std::numbers::sqrt2);
}

//---------------------------------------------------------------------------//
// Characteristic function inversion
//---------------------------------------------------------------------------//
struct InversionConfig
{
    double t_max = 0;  //!< 0 selects the cutoff automatically
    int grid_points = 1601;
    double x_lo = -8;  //!< range in standardized units
    double x_hi = 8;
    double abs_tol = 1e-9;

    void validate() const
    {
        require(t_max >= 0, "inversion: t_max must be >= 0");
        require(grid_points >= 512, "inversion: grid_points must be >= 512");
        require(x_hi > x_lo, "inversion: empty x range");
        require(abs_tol > 0, "inversion: tolerance must be positive");
    }
};

/*!
 * Gil-Pelaez inversion of a log characteristic function.
 *
 * Quadrature panels are refined once for a set of probe abscissae spanning
 * the x range, and the characteristic function values at the nodes are
 * cached so each CDF evaluation is a single weighted sum.
 */
class CfInverter
{
  public:
    using LogCf = std::function<cplx(double)>;

    CfInverter(LogCf log_cf, InversionConfig const& cfg)
        : log_cf_(std::move(log_cf)), cfg_(cfg)
    {
        cfg_.validate();
        t_max_ = cfg_.t_max > 0 ? cfg_.t_max : find_cutoff();
        build();
    }

    double t_max() const { return t_max_; }
    std::size_t node_count() const { return nodes_.size(); }

    //! Arguments beyond the configured range are evaluated at its edge.
    double cdf(double x) const
    {
        x = std::clamp(x, cfg_.x_lo, cfg_.x_hi);
        double sum = 0;
        for (auto const& nd : nodes_)
            sum += nd.wk * integrand(nd, x);
        return std::clamp(0.5 - sum / std::numbers::pi, 0.0, 1.0);
    }

    //! Kronrod minus Gauss estimate over all panels.
    double error_estimate(double x) const
    {
        x = std::clamp(x, cfg_.x_lo, cfg_.x_hi);
        double diff = 0;
        for (auto const& nd : nodes_)
            diff += (nd.wk - nd.wg) * integrand(nd, x);
        return std::abs(diff) / std::numbers::pi;
    }

  private:
    struct CachedNode
    {
        double t, wk, wg;
        cplx phi;
    };

    LogCf log_cf_;
    InversionConfig cfg_;
    double t_max_ = 0;
    std::vector<CachedNode> nodes_;

    static double integrand(CachedNode const& nd, double x)
    {
        cplx e = nd.phi * std::exp(cplx(0, -nd.t * x));
        return e.imag() / nd.t;
    }

    // first t where |phi| drops below 1e-12, by doubling then bisection
    double find_cutoff() const
    {
        double const target = std::log(1e-12);
        auto logmod = [&](double t) { return log_cf_(t).real(); };
        double lo = 0;
        double hi = 1;
        while (logmod(hi) > target)
        {
            lo = hi;
            hi *= 2;
            if (hi > 1e6)
                throw ConvergenceError("inversion: |phi| does not decay below 1e-12 by t = 1e6");
        }
        for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i)
        {
            double mid = 0.5 * (lo + hi);
            (logmod(mid) > target ? lo : hi) = mid;
        }
        return hi;
    }

    void build()
    {
        std::unordered_map<double, cplx> cache;
        auto phi_at = [&](double t) {
            auto it = cache.find(t);
            if (it != cache.end())
                return it->second;
            cplx v = std::exp(log_cf_(t));
            cache.emplace(t, v);
            return v;
        };
        std::vector<double> probes;
        int const np = 17;
        for (int i = 0; i < np; ++i)
            probes.push_back(cfg_.x_lo + (cfg_.x_hi - cfg_.x_lo) * i / (np - 1));
        auto eval = [&](double t) {
            cplx ph = phi_at(t);
            std::vector<double> v(probes.size());
            for (std::size_t j = 0; j < probes.size(); ++j)
                v[j] = integrand({t, 0, 0, ph}, probes[j]);
            return v;
        };
        double span = std::max(std::abs(cfg_.x_lo), std::abs(cfg_.x_hi));
        int initial = std::max(8, int(std::ceil(t_max_ * span / std::numbers::pi)));
        auto panels = quad::adaptive_panels(eval, 0, t_max_, initial,
                                            cfg_.abs_tol * std::numbers::pi);
        for (auto [a, b] : panels)
            for (auto const& nd : quad::panel_nodes(a, b))
                nodes_.push_back({nd.t, nd.wk, nd.wg, phi_at(nd.t)});
    }
};

//! Inverter for the standardized log-volume.
inline CfInverter standardized_inverter(StandardizedLaw const& law,
                                        InversionConfig const& cfg = {})
{
    return CfInverter([law](double u) { return law.log_cf(u); }, cfg);
}

//! P(Y <= x) for the unstandardized log-volume.
inline double cdf_inverted(ModelParams const& p, double x, InversionConfig const& cfg = {})
{
    auto law = StandardizedLaw::of(p);
    auto inv = standardized_inverter(law, cfg);
    return inv.cdf((x - law.mean) / law.sd);
}

//! sup_y |P(Ytilde <= y) - Phi(y)| on a dense grid, refined at the maximum.
inline double kolmogorov_distance_to_normal(CfInverter const& inv,
                                            InversionConfig const& cfg = {})
{
    int const g = cfg.grid_points;
    double const step = (cfg.x_hi - cfg.x_lo) / (g - 1);
    double best = -1;
    double arg = 0;
    for (int i = 0; i < g; ++i)
    {
        double y = cfg.x_lo + step * i;
        double d = std::abs(inv.cdf(y) - normal_cdf(y));
        if (d > best)
        {
            best = d;
            arg = y;
        }
    }
    for (int i = -50; i <= 50; ++i)
    {
        double y = arg + step * i / 50.0;
        best = std::max(best, std::abs(inv.cdf(y) - normal_cdf(y)));
    }
    return std::clamp(best, 0.0, 1.0);
}

inline double kolmogorov_distance_to_normal(ModelParams const& p,
                                            InversionConfig const& cfg = {})
{
    auto inv = standardized_inverter(StandardizedLaw::of(p), cfg);
    return kolmogorov_distance_to_normal(inv, cfg);
}

//---------------------------------------------------------------------------//
// Centering sequences, mod-Gaussian limit and scaled cgf
//---------------------------------------------------------------------------//
enum class CenteringVariant
{
    ldp,
    modphi
};

inline char const* to_string(CenteringVariant v)
{
    return v == CenteringVariant::ldp ? "LDP" : "MODPHI";
}

inline double centering(CenteringVariant v, ModelParams const& p)
{
    p.validate();
    double const n = p.n;
    double const mu = p.mu;
    double const lpi = std::log(std::numbers::pi);
    if (v == CenteringVariant::ldp)
        return -0.5 * n * std::log(n) - 0.5 * n * (lpi + 1)
               + (0.5 * mu + 2.25) * std::log(n) - std::log(p.gamma);
    return std::log(4.0) + specfun::log_gamma(0.5 * n) - std::log(p.gamma)
           - specfun::log_gamma(n + 1) - 0.5 * (n - 1) * lpi
           + (0.5 * mu + 3.25) * std::log(0.5 * n) - 0.5 * (mu + n + 1);
}

//! Speed of the mod-Gaussian convergence and of the deviation principle.
inline double log_speed(int n)
{
    require(n >= 3, "log speed needs n >= 3");
    return 0.5 * std::log(0.5 * n);
}

inline double ldp_scaled_cgf(ModelParams const& p, double t, CenteringVariant v)
{
    p.validate();
    if (t == 0)
        return 0;
    return (cgf(p, t) - t * centering(v, p)) / log_speed(p.n);
}

//! Ratio of Barnes G products giving the mod-Gaussian limiting function.
inline double log_limiting_psi(double mu, double z)
{
    require(mu > -2, "limiting_psi: mu must be > -2");
    require(z > -mu - 3, "limiting_psi: needs z > -(mu + 3)");
    using specfun::log_barnes_g;
    return log_barnes_g(0.5 * (3 + mu)) + log_barnes_g(2 + 0.5 * mu)
           - log_barnes_g(0.5 * (3 + mu + z)) - log_barnes_g(2 + 0.5 * (mu + z));
}

inline double limiting_psi(double mu, double z)
{
    return std::exp(log_limiting_psi(mu, z));
}

//! log of the renormalized moment generating function over its limit.
inline double mod_gaussian_log_defect(ModelParams const& p, double z)
{
    p.validate();
    double const w = log_speed(p.n);
    double l = cgf(p, z, CgfStrip::extended);
    return l - z * centering(CenteringVariant::modphi, p) - 0.5 * z * z * w
           - log_limiting_psi(p.mu, z);
}

inline double mod_gaussian_residual(ModelParams const& p, double z)
{
    p.validate();
    double const w = log_speed(p.n);
    double l = cgf(p, z, CgfStrip::extended);
    double lhs = std::exp(l - z * centering(CenteringVariant::modphi, p) - 0.5 * z * z * w);
    return std::abs(lhs - limiting_psi(p.mu, z));
}

//---------------------------------------------------------------------------//
// Fitted constants
//---------------------------------------------------------------------------//
//! Smallest c >= 0 with tail(y) <= 2 exp(-y^2 / (2 + c y / eps)) at all y.
inline double fit_envelope_constant(std::vector<double> const& ys,
                                    std::vector<double> const& tails, double eps)
{
    require(ys.size() == tails.size(), "fit_envelope_constant: size mismatch");
    double c = 0;
    for (std::size_t i = 0; i < ys.size(); ++i)
    {
        double y = ys[i];
        double t = tails[i];
        if (y <= 0 || t <= 0)
            continue;
        if (t >= 2)
            return std::numeric_limits<double>::infinity();
        double ell = -std::log(0.5 * t);
        c = std::max(c, eps * (y * y / ell - 2) / y);
    }
    return c;
}

//! Two-sided tail P(|Ytilde| >= y) from an inverter.
inline double two_sided_tail(CfInverter const& inv, double y)
{
    return std::clamp(inv.cdf(-y) + 1 - inv.cdf(y), 0.0, 2.0);
}
}  // namespace pdlab
