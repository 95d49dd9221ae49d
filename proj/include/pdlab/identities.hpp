#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace pdlab::identities
{
struct SumParams
{
    double a = 1;
    int k = 2;
    int m = 2;

    int c() const { return k % 2; }

    void validate() const
    {
        require(a > 0 && std::isfinite(a), "a must be > 0");
        require(k >= 2, "k must be >= 2");
        require(m >= 2, "m must be >= 2");
    }
};

//! (1/2) sum_{j=1..k} psi((j+a)/2)
inline double digamma_sum_direct(double a, int k)
{
    require(a > 0, "digamma_sum_direct: a must be > 0");
    require(k >= 1, "digamma_sum_direct: k must be >= 1");
    double sum = 0;
    for (int j = 1; j <= k; ++j)
        sum += specfun::digamma(0.5 * (j + a));
    return 0.5 * sum;
}

//! Closed form of the digamma sum, with its additive constant as printed.
inline double digamma_sum_closed(double a, int k)
{
    require(a > 0, "digamma_sum_closed: a must be > 0");
    require(k >= 2, "digamma_sum_closed: k must be >= 2");
    using specfun::digamma;
    int const c = k % 2;
    double const kc = k - c;
    return (0.5 * kc + 0.5 * a - 0.5) * digamma(a + kc - 1)
           + 0.5 * c * digamma(a + k - 1) + 0.25 * digamma(0.5 * (a + k))
           - (0.5 * a - 0.5) * digamma(a + 1) - 0.25 * digamma(0.5 * a + 1)
           - 0.5 * k * (1 + std::numbers::ln2) + 1 + 2 * c;
}

//! (1/4) sum_{j=1..k} psi'((j+a)/2)
inline double trigamma_sum_direct(double a, int k)
{
    require(a > 0, "trigamma_sum_direct: a must be > 0");
    require(k >= 1, "trigamma_sum_direct: k must be >= 1");
    double sum = 0;
    for (int j = 1; j <= k; ++j)
        sum += specfun::polygamma(1, 0.5 * (j + a));
    return 0.25 * sum;
}

inline double trigamma_sum_closed(double a, int k)
{
    require(a > 0, "trigamma_sum_closed: a must be > 0");
    require(k >= 2, "trigamma_sum_closed: k must be >= 2");
    using specfun::digamma;
    using specfun::polygamma;
    int const c = k % 2;
    double const top = a + k - c + 1;
    return 0.5 * (digamma(top) - digamma(a + 1))
           + 0.5 * a * (polygamma(1, top) - polygamma(1, a + 1))
           - 0.125 * (polygamma(1, 0.5 * top) - polygamma(1, 0.5 * (a + 1)))
           + 0.5 * (k - c) * polygamma(1, top)
           + 0.25 * c * polygamma(1, 0.5 * (k + a));
}

struct BoundCheck
{
    double lhs_abs;
    double bound;
    bool holds;
};

//! |2^{-(m+1)} sum psi^{(m)}((j+a)/2)| against 4 m!/(a+1)^{m-1}.
inline BoundCheck polygamma_sum_bound_check(double a, int k, int m)
{
    SumParams{a, k, m}.validate();
    double sum = 0;
    for (int j = 1; j <= k; ++j)
        sum += specfun::polygamma(m, 0.5 * (j + a));
    double lhs = std::abs(std::ldexp(sum, -(m + 1)));
    double bound = 4 * std::tgamma(m + 1.0) / std::pow(a + 1, m - 1);
    return {lhs, bound, lhs <= bound};
}

/*!
 * Tolerance for comparing a k-term sum against a closed form: 1e-10
 * relative, widened by the accumulated rounding of the summation.
 */
inline double sum_tolerance(int k, double max_term)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return 1e-10 * (1 + k * eps * std::abs(max_term));
}

inline bool relative_match(double lhs, double rhs, double tol)
{
    return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(lhs));
}

//! Systematic offset between closed form and direct sum for one parity.
struct OffsetSummary
{
    int parity = 0;
    int count = 0;
    double mean_offset = 0;  //!< closed minus direct
    double max_deviation = 0;  //!< spread of offsets around the mean
    bool systematic = false;  //!< offset is constant and nonzero
};

/*!
 * Closed-minus-direct offsets of the digamma sum, split by parity of k.
 *
 * A constant nonzero offset within a parity indicates a wrong additive
 * constant rather than a wrong functional form.
 */
inline std::vector<OffsetSummary>
digamma_sum_offsets(std::vector<double> const& as, std::vector<int> const& ks)
{
    std::vector<OffsetSummary> out(2);
    std::vector<std::vector<double>> offs(2);
    for (double a : as)
        for (int k : ks)
            offs[k % 2].push_back(digamma_sum_closed(a, k)
                                  - digamma_sum_direct(a, k));
    for (int c = 0; c < 2; ++c)
    {
        auto& s = out[c];
        s.parity = c;
        s.count = static_cast<int>(offs[c].size());
        if (offs[c].empty())
            continue;
        for (double d : offs[c])
            s.mean_offset += d;
        s.mean_offset /= s.count;
        for (double d : offs[c])
            s.max_deviation = std::max(s.max_deviation, std::abs(d - s.mean_offset));
        s.systematic = std::abs(s.mean_offset) > 1e-8 && s.max_deviation < 1e-8;
    }
    return out;
}

inline std::vector<double> default_a_grid()
{
    return {0.3, 0.5, 1, 2.7, 10};
}

inline std::vector<int> default_k_grid()
{
    return {2, 3, 10, 11, 100, 101, 10000};
}
}  // namespace pdlab::identities
