#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pdlab/parallel.hpp"
#include "pdlab/rng.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

TEST(Philox, KnownAnswer)
{
    RngStream r(0, 0);
    EXPECT_EQ(r(), 0xe169c58d6627e8d5ULL);
}

TEST(RngStream, Reproducible)
{
    RngStream a(kDefaultSeed, 9), b(kDefaultSeed, 9), c(kDefaultSeed, 10);
    bool differ = false;
    for (int i = 0; i < 1000; ++i)
    {
        auto x = a();
        EXPECT_EQ(x, b());
        differ = differ || x != c();
    }
    EXPECT_TRUE(differ);
}

TEST(RngStream, UniformOpenInterval)
{
    RngStream r(1, 2);
    for (int i = 0; i < 100000; ++i)
    {
        double u = r.uniform();
        ASSERT_GT(u, 0);
        ASSERT_LT(u, 1);
    }
}

TEST(RngStream, StreamMeansDispersion)
{
    int const streams = 64, per = 20000;
    std::vector<double> means(streams);
    for (int s = 0; s < streams; ++s)
    {
        RngStream r(kDefaultSeed, s);
        double sum = 0;
        for (int i = 0; i < per; ++i)
            sum += r.uniform();
        means[s] = sum / per;
    }
    auto ms = mean_se(means);
    double var_means = ms.se * ms.se * streams;
    double expected = (1.0 / 12) / per;
    EXPECT_GT(var_means / expected, 0.5);
    EXPECT_LT(var_means / expected, 1.6);
}

TEST(Parallel, JobsDoNotChangeResults)
{
    ModelParams p = ModelParams::make(3, 0, 1);
    auto a = sample_batch(p, SampleKind::volume, 5000, 42, 8, 1);
    auto b = sample_batch(p, SampleKind::volume, 5000, 42, 8, 6);
    EXPECT_EQ(a.values, b.values);
}

TEST(Parallel, PropagatesExceptions)
{
    EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                     if (i == 7)
                         throw DomainError("boom");
                 }),
                 DomainError);
}
