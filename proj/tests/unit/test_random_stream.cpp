#include "bettimc/random_stream.hpp"

#include <gtest/gtest.h>

#include <vector>

using bettimc::RandomStream;

TEST(RandomStream, SameSeedSameSequence) {
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, SubstreamsDifferAndAreStable) {
    RandomStream root(42);
    auto s1 = root.substream(1);
    auto s1b = root.substream(1);
    auto s2 = root.substream(2);
    const auto x = s1.next_u64();
    EXPECT_EQ(x, s1b.next_u64());
    EXPECT_NE(x, s2.next_u64());
    // drawing from the parent does not change its substreams
    RandomStream root2(42);
    root2.next_u64();
    EXPECT_EQ(root2.substream(1).next_u64(), x);
}

TEST(RandomStream, UniformIndexInRangeAndRoughlyUniform) {
    RandomStream rng(7);
    std::vector<int> counts(5, 0);
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) {
        const auto v = rng.uniform_index(5);
        ASSERT_LT(v, 5u);
        ++counts[v];
    }
    for (int c : counts) EXPECT_NEAR(c, draws / 5, 500);
}

TEST(RandomStream, Uniform01InUnitInterval) {
    RandomStream rng(9);
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}
