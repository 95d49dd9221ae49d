#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/random/gamma_distribution.hpp>

#include "errors.hpp"
#include "exactlaw.hpp"
#include "ks.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace pdlab
{
//---------------------------------------------------------------------------//
// Primitive laws
//---------------------------------------------------------------------------//
//! Gamma with shape and rate (mean shape / rate).
inline double sample_gamma(double shape, double rate, RngStream& rng)
{
    require(shape > 0 && rate > 0, "sample_gamma: parameters must be positive");
    boost::random::gamma_distribution<double> dist(shape, 1 / rate);
    return dist(rng);
}

inline double sample_beta(double a, double b, RngStream& rng)
{
    require(a > 0 && b > 0, "sample_beta: parameters must be positive");
    // ratio of gammas keeps small shapes stable
    double x = sample_gamma(a, 1, rng);
    double y = sample_gamma(b, 1, rng);
    return x / (x + y);
}

//! R^n of the weighted cell: gamma radius in units of the ball volume.
inline double sample_radius_pow_n(ModelParams const& p, RngStream& rng)
{
    double rho = sample_gamma(p.n + p.mu + 1, 1, rng);
    return rho / (p.gamma * std::exp(specfun::log_unit_ball_volume(p.n)));
}

inline double sample_circumradius(ModelParams const& p, RngStream& rng)
{
    p.validate();
    return std::pow(sample_radius_pow_n(p, rng), 1.0 / p.n);
}

//---------------------------------------------------------------------------//
// Angular part
//---------------------------------------------------------------------------//
using Direction = std::array<double, 3>;

//! Largest volume of a simplex inscribed in the unit sphere (n = 2, 3).
inline double delta_max(int n)
{
    require(n == 2 || n == 3, "delta_max: only n = 2, 3");
    return n == 2 ? 3 * std::sqrt(3.0) / 4 : 8 / (9 * std::sqrt(3.0));
}

inline Direction uniform_direction(int n, RngStream& rng)
{
    double const two_pi = 2 * std::numbers::pi;
    if (n == 2)
    {
        double a = two_pi * rng.uniform();
        return {std::cos(a), std::sin(a), 0};
    }
    double z = 2 * rng.uniform() - 1;
    double a = two_pi * rng.uniform();
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    return {r * std::cos(a), r * std::sin(a), z};
}

//! Volume of the simplex with vertices u_0..u_n (n = 2 or 3).
inline double simplex_volume(int n, Direction const* u)
{
    double ax = u[1][0] - u[0][0], ay = u[1][1] - u[0][1], az = u[1][2] - u[0][2];
    double bx = u[2][0] - u[0][0], by = u[2][1] - u[0][1], bz = u[2][2] - u[0][2];
    if (n == 2)
        return 0.5 * std::abs(ax * by - ay * bx);
    double cx = u[3][0] - u[0][0], cy = u[3][1] - u[0][1], cz = u[3][2] - u[0][2];
    double det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx)
                 + az * (bx * cy - by * cx);
    return std::abs(det) / 6;
}

struct AngularSimplex
{
    std::array<Direction, 4> dirs{};
    double delta = 0;
    std::uint64_t proposals = 0;
};

/*!
 * Directions with density proportional to Delta^(mu + 2) by rejection from
 * independent uniform directions.
 */
inline AngularSimplex sample_angular_simplex(int n, double mu, RngStream& rng,
                                             std::uint64_t max_proposals = 10'000'000)
{
    require(n == 2 || n == 3, "sample_angular_simplex: only n = 2, 3");
    require(mu > -2, "sample_angular_simplex: mu must be > -2");
    double const dmax = delta_max(n);
    double const expo = mu + 2;
    AngularSimplex out;
    while (out.proposals < max_proposals)
    {
        ++out.proposals;
        for (int i = 0; i <= n; ++i)
            out.dirs[i] = uniform_direction(n, rng);
        double d = simplex_volume(n, out.dirs.data());
        if (d <= 0)
            continue;
        // rounding can push a near-regular simplex a hair past the maximum
        double ratio = std::min(1.0, d / dmax);
        if (rng.uniform() < std::pow(ratio, expo))
        {
            out.delta = d;
            return out;
        }
    }
    throw ConvergenceError("sample_angular_simplex: no acceptance within "
                           + std::to_string(max_proposals) + " proposals");
}

struct WeightedAngularSimplex
{
    AngularSimplex draw;
    double log_weight = 0;  //!< (mu - mu_proposal) log delta, unnormalized
};

/*!
 * Tempered proposal for large weights: an exact draw at a smaller weight
 * plus the importance log-weight that retargets it to mu.
 */
inline WeightedAngularSimplex
sample_angular_simplex_tempered(int n, double mu, double mu_proposal, RngStream& rng)
{
    require(mu_proposal > -2 && mu_proposal <= mu,
            "tempered sampler: need -2 < proposal weight <= mu");
    WeightedAngularSimplex w;
    w.draw = sample_angular_simplex(n, mu_proposal, rng);
    w.log_weight = (mu - mu_proposal) * std::log(w.draw.delta);
    return w;
}

//---------------------------------------------------------------------------//
// Representations of the volume
//---------------------------------------------------------------------------//
inline double sample_volume(ModelParams const& p, RngStream& rng)
{
    p.validate();
    require(p.n == 2 || p.n == 3, "sample_volume: only n = 2, 3");
    double rn = sample_radius_pow_n(p, rng);
    return rn * sample_angular_simplex(p.n, p.mu, rng).delta;
}

//! (rho / (gamma kappa))^2 times a product of independent betas.
inline double sample_rhs_product(ModelParams const& p, RngStream& rng)
{
    p.validate();
    double r = sample_radius_pow_n(p, rng);
    double prod = r * r;
    for (int i = 1; i <= p.n; ++i)
        prod *= sample_beta(0.5 * (i + p.mu + 1), 0.5 * (p.n - i + 1), rng);
    return prod;
}

//! xi^n (1 - xi) (n! V)^2 with xi an independent beta variable.
inline double sample_lhs_product(ModelParams const& p, RngStream& rng)
{
    p.validate();
    int const n = p.n;
    double xi = sample_beta(0.5 * (n * n + n + n * p.mu), 0.5 * (p.mu + 2), rng);
    double v = sample_volume(p, rng) * std::tgamma(n + 1.0);
    return std::pow(xi, n) * (1 - xi) * v * v;
}

//---------------------------------------------------------------------------//
// Batches
//---------------------------------------------------------------------------//
enum class SampleKind
{
    radius,
    volume,
    log_volume,
    rhs_product,
    lhs_product
};

inline char const* to_string(SampleKind k)
{
    switch (k)
    {
        case SampleKind::radius: return "radius";
        case SampleKind::volume: return "volume";
        case SampleKind::log_volume: return "log_volume";
        case SampleKind::rhs_product: return "rhs_product";
        case SampleKind::lhs_product: return "lhs_product";
    }
    return "?";
}

inline double sample_one(SampleKind kind, ModelParams const& p, RngStream& rng)
{
    switch (kind)
    {
        case SampleKind::radius: return sample_circumradius(p, rng);
        case SampleKind::volume: return sample_volume(p, rng);
        case SampleKind::log_volume: return std::log(sample_volume(p, rng));
        case SampleKind::rhs_product: return sample_rhs_product(p, rng);
        case SampleKind::lhs_product: return sample_lhs_product(p, rng);
    }
    throw DomainError("unknown sample kind");
}

struct SampleBatch
{
    ModelParams params;
    SampleKind kind = SampleKind::volume;
    std::vector<double> values;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t first_stream = 0;
    int streams = 1;
};

/*!
 * `count` draws split into contiguous shards, one stream per shard.
 *
 * The values depend on (seed, first_stream, streams) only, never on the
 * number of worker threads.
 */
inline SampleBatch sample_batch(ModelParams const& p, SampleKind kind,
                                std::size_t count, std::uint64_t seed,
                                int streams = 1, int jobs = 1,
                                std::uint64_t first_stream = 0)
{
    p.validate();
    require(streams >= 1, "sample_batch: need at least one stream");
    SampleBatch b{p, kind, std::vector<double>(count), seed, first_stream, streams};
    std::size_t const shard = (count + streams - 1) / streams;
    parallel_for(static_cast<std::size_t>(streams), jobs, [&](std::size_t s) {
        RngStream rng(seed, first_stream + s);
        std::size_t lo = s * shard;
        std::size_t hi = std::min(count, lo + shard);
        for (std::size_t i = lo; i < hi; ++i)
            b.values[i] = sample_one(kind, p, rng);
    });
    return b;
}

//! Two-sample KS comparison of both sides of the product identity.
inline KsResult check_product_identity(ModelParams const& p, std::size_t count,
                                       std::uint64_t seed, int streams = 1,
                                       int jobs = 1)
{
    require(p.n == 2 || p.n == 3, "check_product_identity: only n = 2, 3");
    auto lhs = sample_batch(p, SampleKind::lhs_product, count, seed, streams, jobs, 0);
    auto rhs = sample_batch(p, SampleKind::rhs_product, count, seed, streams, jobs,
                            std::uint64_t(1) << 32);
    return ks_statistic(std::move(lhs.values), std::move(rhs.values));
}

//! Mean and standard error of a sample.
struct MeanSe
{
    double mean = 0;
    double se = 0;
};

inline MeanSe mean_se(std::vector<double> const& v)
{
    require(v.size() >= 2, "mean_se: need at least two values");
    double m = 0;
    for (double x : v)
        m += x;
    m /= v.size();
    double ss = 0;
    for (double x : v)
        ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / (v.size() - 1) / v.size())};
}
}  // namespace pdlab
