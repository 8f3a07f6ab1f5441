#include "bettimc/complex.hpp"
#include "bettimc/errors.hpp"

#include "brute_force.hpp"
#include "instances.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include <map>

using namespace bettimc;
using namespace bettimc::testing;

TEST(Complex, MembershipExamples) {
    const Complex c = hollow_triangle();
    EXPECT_TRUE(c.contains(Face{1, 2}));
    EXPECT_FALSE(c.contains(Face{1, 2, 3}));
    EXPECT_TRUE(c.contains(Face{3}));
    EXPECT_THROW(c.contains(Face{1, 4}), InputError);

    const Complex k3 = complete_graph(3);
    EXPECT_TRUE(k3.contains(Face{1, 2, 3}));
    const Complex p3 = path_graph(3);
    EXPECT_FALSE(p3.contains(Face{1, 3}));
    EXPECT_THROW(p3.contains(Face{1, 9}), InputError);
}

TEST(Complex, ClosureOfFacets) {
    const Complex c = full_triangle();
    EXPECT_EQ(c.face_count(0), 3u);
    EXPECT_EQ(c.face_count(1), 3u);
    EXPECT_EQ(c.face_count(2), 1u);
    EXPECT_EQ(c.face_count(3), 0u);
    EXPECT_EQ(c.dimension(), 2);
}

TEST(Complex, IsolatedVerticesAreZeroFaces) {
    const Complex c(GeneralComplex(5, {{1, 2}}));
    EXPECT_EQ(c.face_count(0), 5u);
    EXPECT_EQ(c.face_count(1), 1u);
}

TEST(Complex, EnumerationK4) {
    const Complex c = complete_graph(4);
    const auto& tri = c.enumerate_k_faces(2);
    ASSERT_EQ(tri.size(), 4u);
    EXPECT_EQ(tri[0], (Face{1, 2, 3}));
    EXPECT_EQ(tri[3], (Face{2, 3, 4}));
    EXPECT_EQ(tri, brute_k_faces(c, 2));
}

TEST(Complex, EnumerationMatchesSubsetScan) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const Complex& c : {random_general(seed), random_clique(seed)}) {
            for (int k = 0; k <= c.dimension() + 1; ++k) {
                ASSERT_EQ(c.enumerate_k_faces(k), brute_k_faces(c, k)) << "seed " << seed << " k " << k;
            }
        }
    }
}

TEST(Complex, DownwardClosedAndCountBounded) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const Complex& c : {random_general(seed), random_clique(seed)}) {
            const int n = c.vertex_count();
            for (int k = 1; k <= c.dimension(); ++k) {
                double binom = 1.0;
                for (int i = 0; i <= k; ++i) binom = binom * (n - i) / (i + 1);
                EXPECT_LE(static_cast<double>(c.face_count(k)), binom + 1e-9);
                for (const Face& f : c.enumerate_k_faces(k)) {
                    for (std::size_t i = 0; i < f.size(); ++i) {
                        ASSERT_TRUE(c.contains(f.without_index(i)));
                    }
                }
            }
        }
    }
}

TEST(Complex, UpDegreeExamples) {
    EXPECT_EQ(complete_graph(5).up_degree(Face{1, 2}), 3);
    EXPECT_EQ(hollow_triangle().up_degree(Face{1, 2}), 0);
    EXPECT_EQ(full_triangle().up_degree(Face{1, 2}), 1);
    EXPECT_EQ(full_triangle().up_degree(Face{1}), 2);
    EXPECT_THROW(hollow_triangle().up_degree(Face{1, 2, 3}), InputError);
}

TEST(Complex, UpDegreeMatchesBruteForceAndBound) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        for (const Complex& c : {random_general(seed), random_clique(seed)}) {
            const int n = c.vertex_count();
            for (int k = 0; k <= c.dimension(); ++k) {
                for (const Face& f : c.enumerate_k_faces(k)) {
                    const int up = c.up_degree(f);
                    ASSERT_EQ(up, brute_up_degree(c, f));
                    ASSERT_LE(up + k + 1, n);
                }
            }
        }
    }
}

TEST(Complex, SingleFaceIsAlwaysDrawn) {
    const Complex c = full_triangle();
    RandomStream rng(3);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(c.sample_k_face(2, rng), (Face{1, 2, 3}));
}

TEST(Complex, EmptyDimensionRaises) {
    const Complex c = hollow_triangle();
    RandomStream rng(3);
    EXPECT_THROW(c.sample_k_face(2, rng), EmptyDimensionError);
    EXPECT_THROW(ComplexHandle(c, 2), EmptyDimensionError);
}

TEST(Complex, SamplingIsUniformChiSquared) {
    const Complex c = complete_graph(6);  // 20 triangles
    const auto& faces = c.enumerate_k_faces(2);
    RandomStream rng(11);
    std::map<Face, int> counts;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[c.sample_k_face(2, rng)];
    ASSERT_EQ(counts.size(), faces.size());
    const double expected = static_cast<double>(draws) / static_cast<double>(faces.size());
    double stat = 0.0;
    for (const auto& [f, n] : counts) stat += (n - expected) * (n - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(faces.size() - 1));
    EXPECT_LT(stat, boost::math::quantile(dist, 0.99));
}

TEST(Complex, HandleIndexes) {
    const Complex c = complete_graph(4);
    ComplexHandle h(c, 1);
    EXPECT_EQ(h.face_count(), 6u);
    for (std::uint32_t i = 0; i < h.face_count(); ++i) EXPECT_EQ(h.index_of(h.face(i)), i);
    EXPECT_FALSE(h.index_of(Face{1, 2, 3}).has_value());
}

TEST(Complex, CliqueRejectsBadEdges) {
    EXPECT_THROW(CliqueComplex(3, {{1, 1}}), InputError);
    EXPECT_THROW(CliqueComplex(3, {{1, 4}}), InputError);
}
