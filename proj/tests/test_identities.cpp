#include <cmath>

#include <gtest/gtest.h>

#include "pdlab/identities.hpp"
#include "pdlab/specfun.hpp"

using namespace pdlab;
using namespace pdlab::identities;

TEST(DigammaSum, DirectKnownValue)
{
    EXPECT_NEAR(digamma_sum_direct(1, 2), 1 - 0.5772156649015329 - std::log(2.0), 1e-13);
}

TEST(DigammaSum, EvenKClosedFormMatches)
{
    for (double a : default_a_grid())
        for (int k : {2, 4, 10, 100, 10000})
        {
            double d = digamma_sum_direct(a, k), c = digamma_sum_closed(a, k);
            EXPECT_TRUE(relative_match(d, c, 1e-9)) << a << " " << k << " " << d << " " << c;
        }
}

// The odd-k branch of the closed form sits a constant 3/2 above the direct sum.
TEST(DigammaSum, OddKOffsetIsSystematic)
{
    for (double a : {0.5, 1.0, 3.0})
        for (int k : {3, 11, 101})
            EXPECT_NEAR(digamma_sum_closed(a, k) - digamma_sum_direct(a, k), 1.5, 1e-9);
    auto offs = digamma_sum_offsets(default_a_grid(), default_k_grid());
    ASSERT_EQ(offs.size(), 2u);
    EXPECT_FALSE(offs[0].systematic);
    EXPECT_NEAR(offs[0].mean_offset, 0, 1e-9);
    EXPECT_TRUE(offs[1].systematic);
    EXPECT_NEAR(offs[1].mean_offset, 1.5, 1e-9);
}

TEST(TrigammaSum, ClosedFormMatches)
{
    EXPECT_NEAR(trigamma_sum_direct(1, 2), specfun::polygamma(1, 2.0), 1e-13);
    EXPECT_NEAR(trigamma_sum_closed(1, 2), trigamma_sum_direct(1, 2), 1e-10);
    EXPECT_TRUE(relative_match(trigamma_sum_direct(0.5, 999), trigamma_sum_closed(0.5, 999), 1e-9));
    for (double a : default_a_grid())
        for (int k : default_k_grid())
            EXPECT_TRUE(relative_match(trigamma_sum_direct(a, k), trigamma_sum_closed(a, k), 1e-9))
                << a << " " << k;
}

TEST(PolygammaSumBound, Holds)
{
    EXPECT_TRUE(polygamma_sum_bound_check(1, 10, 2).holds);
    EXPECT_TRUE(polygamma_sum_bound_check(0.5, 10000, 3).holds);
    auto b = polygamma_sum_bound_check(100, 2, 2);
    EXPECT_NEAR(b.bound, 8.0 / 101, 1e-14);
    EXPECT_TRUE(b.holds);
    for (double a : default_a_grid())
        for (int k : default_k_grid())
            for (int m = 2; m <= 6; ++m)
                EXPECT_TRUE(polygamma_sum_bound_check(a, k, m).holds);
}

TEST(SumParams, Validation)
{
    EXPECT_THROW(digamma_sum_closed(1, 1), DomainError);
    EXPECT_THROW(digamma_sum_closed(0, 4), DomainError);
    EXPECT_THROW(polygamma_sum_bound_check(1, 4, 1), DomainError);
    EXPECT_EQ((SumParams{1, 7, 2}.c()), 1);
}
