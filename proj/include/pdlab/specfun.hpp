#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "errors.hpp"

namespace pdlab::specfun
{
using cplx = std::complex<double>;

//! Tolerances shared by the iterative kernels.
struct EvalPrecision
{
    double abs_tol = 1e-15;
    double rel_tol = 1e-15;
    int max_terms = 200;

    void validate() const
    {
        require(abs_tol > 0 && rel_tol > 0, "tolerances must be positive");
        require(max_terms >= 1, "max_terms must be at least 1");
    }
};

namespace detail
{
inline constexpr double kLog2Pi = 1.8378770664093454836;
inline constexpr double kStirlingCutoff = 15;
// Derivative of the Riemann zeta function at -1.
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;

// B_2, B_4, ..., B_20
inline constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6,         -1.0 / 30,   1.0 / 42,          -1.0 / 30,
    5.0 / 66,        -691.0 / 2730, 7.0 / 6,         -3617.0 / 510,
    43867.0 / 798,   -174611.0 / 330};

inline bool is_pole(double x)
{
    return x <= 0 && x == std::floor(x);
}

template<class T>
bool is_real_pole(T const& z)
{
    if constexpr (std::is_same_v<T, double>)
        return is_pole(z);
    else
        return z.imag() == 0 && is_pole(z.real());
}

template<class T>
double re(T const& z)
{
    if constexpr (std::is_same_v<T, double>)
        return z;
    else
        return z.real();
}

//! Tail of the Stirling series, sum B_2k / (2k(2k-1) w^(2k-1)).
template<class T>
T stirling_tail(T w)
{
    T inv = T(1) / w;
    T inv2 = inv * inv;
    T pw = inv;
    T sum = 0;
    for (std::size_t k = 1; k <= 8; ++k)
    {
        double kk = 2.0 * k;
        sum += kBernoulli[k - 1] / (kk * (kk - 1)) * pw;
        pw *= inv2;
    }
    return sum;
}

inline cplx log1p(cplx e)
{
    double a = e.real();
    double b = e.imag();
    return {0.5 * std::log1p(2 * a + a * a + b * b), std::atan2(b, 1 + a)};
}

inline double log1p(double e)
{
    return std::log1p(e);
}

//! log(1+e) - e without cancellation for small |e|.
template<class T>
T log1p_minus_linear(T e)
{
    if (std::abs(e) > 0.05)
        return detail::log1p(e) - e;
    T term = -e * e;
    T sum = 0;
    for (int k = 2; k < 40; ++k)
    {
        T next = term / double(k);
        sum += next;
        if (std::abs(next) <= 1e-18 * std::abs(sum))
            break;
        term *= -e;
    }
    return sum;
}

// Taylor coefficients (-1)^k zeta(k)/(k+1) of log G(1+z) around z = 0.
inline std::array<double, 64> const& barnes_taylor()
{
    static std::array<double, 64> const coeffs = [] {
        std::array<double, 64> c{};
        for (int k = 2; k < 64; ++k)
            c[k] = (k % 2 ? -1.0 : 1.0) * boost::math::zeta(double(k))
                   / (k + 1);
        return c;
    }();
    return coeffs;
}
}  // namespace detail

//---------------------------------------------------------------------------//
// Gamma family
//---------------------------------------------------------------------------//
//! log|Gamma(x)| for real non-pole x.
inline double log_gamma(double x)
{
    require(std::isfinite(x), "log_gamma: argument must be finite");
    if (detail::is_pole(x))
        throw DomainError("log_gamma: pole at non-positive integer");
    return boost::math::lgamma(x);
}

/*!
 * Principal-branch log Gamma.
 *
 * Re z > 0: upward recurrence until |z| >= 15, then Stirling. On the
 * negative real axis the value is log|Gamma| + i*pi when Gamma < 0.
 */
inline cplx log_gamma(cplx z)
{
    if (z.imag() == 0)
    {
        double x = z.real();
        double lg = log_gamma(x);
        bool negative = x < 0 && static_cast<long long>(std::floor(x)) % 2 != 0;
        return {lg, negative ? std::numbers::pi : 0.0};
    }
    if (!(z.real() > 0))
        throw DomainError("log_gamma: complex argument needs Re(z) > 0");

    cplx shift = 0;
    while (std::abs(z) < detail::kStirlingCutoff)
    {
        shift += std::log(z);
        z += 1.0;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * detail::kLog2Pi
           + detail::stirling_tail(z) - shift;
}

/*!
 * log Gamma(x + h) - log Gamma(x) for real x > 0.
 *
 * For large arguments the Stirling expansions are subtracted analytically
 * so the result keeps relative accuracy when |h| << x.
 */
template<class T>
T log_gamma_diff(double x, T h)
{
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, cplx>);
    require(x > 0, "log_gamma_diff: base must be positive");
    T xh = x + h;
    if (detail::is_real_pole(xh))
        throw DomainError("log_gamma_diff: pole at shifted argument");
    if (h == T(0))
        return T(0);

    if (x >= detail::kStirlingCutoff && std::abs(xh) >= detail::kStirlingCutoff
        && detail::re(xh) > 0)
    {
        T e = h / x;
        T lp = detail::log1p(e);
        T result = h * std::log(x) + x * detail::log1p_minus_linear(e)
                   + (h - 0.5) * lp;
        // Stirling tails: first term in closed difference form
        result += -h / (12.0 * x * xh);
        result += detail::stirling_tail(xh) - 1.0 / (12.0 * xh)
                  - (detail::stirling_tail(T(x)) - 1.0 / (12.0 * x));
        return result;
    }
    if constexpr (std::is_same_v<T, double>)
        return log_gamma(xh) - log_gamma(x);
    else
    {
        if (xh.imag() != 0 && !(xh.real() > 0))
            throw DomainError("log_gamma_diff: needs Re(x + h) > 0");
        return log_gamma(xh) - log_gamma(cplx(x));
    }
}

inline double digamma(double x)
{
    require(x > 0 && std::isfinite(x), "digamma: argument must be positive");
    return boost::math::digamma(x);
}

//! m-th derivative of digamma, m >= 1, x > 0.
inline double polygamma(int m, double x)
{
    if (m < 1)
        throw DomainError("polygamma: order must be >= 1 (use digamma)");
    require(x > 0 && std::isfinite(x), "polygamma: argument must be positive");
    return boost::math::polygamma(m, x);
}

//---------------------------------------------------------------------------//
// Barnes G
//---------------------------------------------------------------------------//
namespace detail
{
inline constexpr double kBarnesAsymptotic = 12;

// Asymptotic tail sum_k B_{2k+2} / (4k(k+1) w^{2k}).
inline double barnes_tail(double w)
{
    double inv2 = 1 / (w * w);
    double pw = inv2;
    double sum = 0;
    for (std::size_t k = 1; k < kBernoulli.size(); ++k)
    {
        double term = kBernoulli[k] / (4.0 * k * (k + 1)) * pw;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
        pw *= inv2;
    }
    return sum;
}

// log G(1 + w) for large w
inline double log_barnes_g_asymptotic(double w)
{
    double lw = std::log(w);
    return (0.5 * w * w - 1.0 / 12) * lw - 0.75 * w * w + 0.5 * w * kLog2Pi
           + kZetaPrimeMinus1 + barnes_tail(w);
}

// log G(1 + z) for |z| <= 1/2
inline double log_barnes_g_taylor(double z, EvalPrecision const& prec)
{
    auto const& c = barnes_taylor();
    constexpr double euler = std::numbers::egamma;
    double sum = 0.5 * z * kLog2Pi - 0.5 * (z + (1 + euler) * z * z);
    double pw = z * z;
    for (int k = 2; k < static_cast<int>(c.size()); ++k)
    {
        pw *= z;
        double term = c[k] * pw;
        sum += term;
        if (std::abs(term) <= prec.abs_tol * std::max(1.0, std::abs(sum)))
            return sum;
    }
    throw ConvergenceError("log_barnes_g: Taylor series did not converge");
}
}  // namespace detail

/*!
 * log G(x) for real x > 0.
 *
 * Taylor series on [1/2, 3/2], the functional equation G(x+1) = Gamma(x) G(x)
 * to reach it, and the large-argument expansion from x = 12.
 */
inline double log_barnes_g(double x, EvalPrecision const& prec = {})
{
    require(x > 0 && std::isfinite(x), "log_barnes_g: argument must be positive");
    if (x >= detail::kBarnesAsymptotic)
        return detail::log_barnes_g_asymptotic(x - 1);
    if (x < 0.5)
        return detail::log_barnes_g_taylor(x, prec) - log_gamma(x);
    double y = x;
    double acc = 0;
    while (y > 1.5)
    {
        y -= 1;
        acc += log_gamma(y);
    }
    return detail::log_barnes_g_taylor(y - 1, prec) + acc;
}

//! log G(z + a + 1) - log G(z + 1), accurate for large z.
inline double log_barnes_g_ratio(double z, double a)
{
    require(z + 1 > 0 && z + a + 1 > 0, "log_barnes_g_ratio: arguments must be positive");
    double w = z + a;
    if (z < detail::kBarnesAsymptotic || w < detail::kBarnesAsymptotic)
        return log_barnes_g(w + 1) - log_barnes_g(z + 1);
    double lz = std::log(z);
    double lp = std::log1p(a / z);
    return (a * z + 0.5 * a * a) * lz + (0.5 * w * w - 1.0 / 12) * lp
           - 0.75 * a * (2 * z + a) + 0.5 * a * detail::kLog2Pi
           + detail::barnes_tail(w) - detail::barnes_tail(z);
}

//! Leading large-z approximation of log G(z + a + 1) - log G(z + 1).
inline double log_barnes_g_shift_asymptotic(double z, double a)
{
    require(z > 0, "log_barnes_g_shift_asymptotic: z must be positive");
    double lz = std::log(z);
    return a * (z * lz - z + 0.5 * detail::kLog2Pi) + 0.5 * a * a * lz;
}

//---------------------------------------------------------------------------//
// Misc
//---------------------------------------------------------------------------//
//! Regularized lower incomplete gamma P(a, x).
inline double reg_lower_incomplete_gamma(double a, double x)
{
    require(a > 0, "reg_lower_incomplete_gamma: shape must be positive");
    require(x >= 0, "reg_lower_incomplete_gamma: argument must be non-negative");
    if (std::isinf(x))
        return 1;
    return boost::math::gamma_p(a, x);
}

//! log of the volume of the unit ball in R^n.
inline double log_unit_ball_volume(int n)
{
    require(n >= 1, "log_unit_ball_volume: dimension must be >= 1");
    return 0.5 * n * std::log(std::numbers::pi) - log_gamma(0.5 * n + 1);
}
}  // namespace pdlab::specfun
