#include "bettimc/errors.hpp"
#include "bettimc/face.hpp"

#include <gtest/gtest.h>

#include <unordered_set>

using bettimc::Face;

TEST(Face, StoresSortedVertices) {
    Face f{1, 3, 7};
    EXPECT_EQ(f.size(), 3u);
    EXPECT_EQ(f.dimension(), 2);
    EXPECT_EQ(f.front(), 1);
    EXPECT_EQ(f.back(), 7);
    EXPECT_EQ(f.to_string(), "{1,3,7}");
}

TEST(Face, RejectsUnsortedOrDuplicateInput) {
    EXPECT_THROW(Face({3, 1}), bettimc::InputError);
    EXPECT_THROW(Face({2, 2}), bettimc::InputError);
    EXPECT_THROW(Face::from_unsorted({4, 1, 4}), bettimc::InputError);
    EXPECT_THROW(Face::from_unsorted({}), bettimc::InputError);
}

TEST(Face, FromUnsortedSorts) {
    EXPECT_EQ(Face::from_unsorted({5, 2, 9}), (Face{2, 5, 9}));
}

TEST(Face, PositionIsOneBased) {
    Face f{2, 4, 6};
    EXPECT_EQ(f.position_of(2), 1u);
    EXPECT_EQ(f.position_of(6), 3u);
    EXPECT_EQ(f.position_of(5), 0u);
    EXPECT_TRUE(f.contains(4));
    EXPECT_FALSE(f.contains(3));
}

TEST(Face, WithoutAndWithVertex) {
    Face f{2, 4, 6};
    EXPECT_EQ(f.without_index(0), (Face{4, 6}));
    EXPECT_EQ(f.without_index(2), (Face{2, 4}));
    EXPECT_EQ(f.with_vertex(5), (Face{2, 4, 5, 6}));
    EXPECT_EQ(f.with_vertex(1), (Face{1, 2, 4, 6}));
    EXPECT_THROW(f.with_vertex(4), bettimc::ContractViolation);
}

TEST(Face, SymmetricDifference) {
    EXPECT_EQ(bettimc::symmetric_difference_size(Face{1, 2}, Face{1, 3}), 2u);
    EXPECT_EQ(bettimc::symmetric_difference_size(Face{1, 2}, Face{1, 2}), 0u);
    EXPECT_EQ(bettimc::symmetric_difference_size(Face{1, 2}, Face{3, 4}), 4u);
}

TEST(Face, OrderingAndHashing) {
    EXPECT_LT((Face{1, 2}), (Face{1, 3}));
    EXPECT_LT((Face{1, 3}), (Face{2, 3}));
    std::unordered_set<Face> set{Face{1, 2}, Face{1, 2}, Face{2, 3}};
    EXPECT_EQ(set.size(), 2u);
}
