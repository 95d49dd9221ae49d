#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace pdlab
{
struct KsResult
{
    double statistic = 0;
    double p_value = 1;
};

//! Survival function of the Kolmogorov distribution.
inline double kolmogorov_survival(double lambda)
{
    if (lambda <= 0)
        return 1;
    if (lambda < 1.18)
    {
        // Jacobi theta form converges fast for small arguments
        double const pi2 = std::numbers::pi * std::numbers::pi;
        double sum = 0;
        for (int k = 1; k < 20; ++k)
        {
            double j = 2 * k - 1;
            sum += std::exp(-j * j * pi2 / (8 * lambda * lambda));
        }
        double cdf = std::sqrt(2 * std::numbers::pi) / lambda * sum;
        return std::clamp(1 - cdf, 0.0, 1.0);
    }
    double sum = 0;
    for (int k = 1; k < 100; ++k)
    {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? term : -term);
        if (term < 1e-18)
            break;
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

// Asymptotic p-value with the usual small-sample correction of the scale.
inline double ks_p_value(double d, double n_eff)
{
    double const rn = std::sqrt(n_eff);
    return kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d);
}

//! One-sample KS test against a continuous reference CDF.
inline KsResult ks_statistic(std::vector<double> sample,
                             std::function<double(double)> const& cdf)
{
    require(sample.size() >= 25, "ks_statistic: need at least 25 draws");
    std::sort(sample.begin(), sample.end());
    double const n = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i)
    {
        double f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, ks_p_value(d, n)};
}

//! Two-sample KS test.
inline KsResult ks_statistic(std::vector<double> a, std::vector<double> b)
{
    require(a.size() >= 25 && b.size() >= 25, "ks_statistic: need at least 25 draws per sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double const na = static_cast<double>(a.size());
    double const nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0;
    while (i < a.size() && j < b.size())
    {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x)
            ++i;
        while (j < b.size() && b[j] == x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return {d, ks_p_value(d, na * nb / (na + nb))};
}
}  // namespace pdlab
