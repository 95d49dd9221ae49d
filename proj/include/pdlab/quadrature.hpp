#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace pdlab::quad
{
// Gauss-Kronrod 7/15 rule on [-1, 1] (QUADPACK qk15 constants).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes and the center
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Node
{
    double t;
    double wk;  //!< Kronrod weight
    double wg;  //!< Gauss weight (0 for Kronrod-only nodes)
};

//! The 15 nodes of one panel [a, b] with both weight sets.
inline std::array<Node, 15> panel_nodes(double a, double b)
{
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    std::array<Node, 15> out{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 7; ++i)
    {
        double wg = (i % 2 == 1) ? kWg[i / 2] * h : 0.0;
        out[k++] = {c - h * kXgk[i], kWgk[i] * h, wg};
        out[k++] = {c + h * kXgk[i], kWgk[i] * h, wg};
    }
    out[k] = {c, kWgk[7] * h, kWg[3] * h};
    return out;
}

/*!
 * Panels on [a, b] refined until every probe integrand meets its share of
 * the absolute tolerance.
 *
 * `eval(t)` returns a vector with one integrand value per probe. Panels
 * are returned left to right.
 */
inline std::vector<std::pair<double, double>>
adaptive_panels(std::function<std::vector<double>(double)> const& eval,
                double a, double b, int initial, double abs_tol, int max_depth = 30)
{
    require(b > a && initial >= 1 && abs_tol > 0, "adaptive_panels: bad arguments");
    std::vector<std::pair<double, double>> done;
    struct Item
    {
        double a, b;
        int depth;
    };
    std::vector<Item> stack;
    double w = (b - a) / initial;
    for (int i = initial - 1; i >= 0; --i)
        stack.push_back({a + i * w, i + 1 == initial ? b : a + (i + 1) * w, 0});

    while (!stack.empty())
    {
        Item it = stack.back();
        stack.pop_back();
        auto nodes = panel_nodes(it.a, it.b);
        std::vector<double> k_sum, g_sum;
        for (auto const& nd : nodes)
        {
            auto v = eval(nd.t);
            if (k_sum.empty())
            {
                k_sum.assign(v.size(), 0);
                g_sum.assign(v.size(), 0);
            }
            for (std::size_t j = 0; j < v.size(); ++j)
            {
                k_sum[j] += nd.wk * v[j];
                g_sum[j] += nd.wg * v[j];
            }
        }
        double err = 0;
        for (std::size_t j = 0; j < k_sum.size(); ++j)
            err = std::max(err, std::abs(k_sum[j] - g_sum[j]));
        double share = abs_tol * (it.b - it.a) / (b - a);
        if (err <= share || err < 1e-15)
        {
            done.emplace_back(it.a, it.b);
            continue;
        }
        if (it.depth >= max_depth)
        {
            std::ostringstream os;
            os << "adaptive quadrature: panel [" << it.a << ", " << it.b
               << "] error " << err << " above share " << share
               << " at max depth " << max_depth;
            throw ConvergenceError(os.str());
        }
        double m = 0.5 * (it.a + it.b);
        stack.push_back({m, it.b, it.depth + 1});
        stack.push_back({it.a, m, it.depth + 1});
    }
    return done;
}
}  // namespace pdlab::quad
