#include "cyclelist/circulant.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace cyclelist {
namespace {

TEST(CyclePowerTest, RejectsDegenerateParameters) {
  EXPECT_THROW(CyclePower(2, 1), std::invalid_argument);
  EXPECT_THROW(CyclePower(5, 0), std::invalid_argument);
}

TEST(CyclePowerTest, CompleteIffAtMostTwoKPlusOne) {
  EXPECT_TRUE(CyclePower(5, 2).is_complete());
  EXPECT_FALSE(CyclePower(6, 2).is_complete());
  EXPECT_TRUE(CyclePower(3, 1).is_complete());
}

TEST(CyclePowerTest, Adjacency) {
  const CyclePower g(10, 2);
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_FALSE(g.adjacent(0, 3));
  EXPECT_TRUE(g.adjacent(0, 9));
  EXPECT_FALSE(g.adjacent(4, 4));
}

TEST(CyclePowerTest, AdjacencySymmetricAndDegreeExact) {
  for (std::size_t n = 3; n <= 14; ++n) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const CyclePower g(n, k);
      for (Vertex u = 0; u < n; ++u) {
        std::size_t deg = 0;
        for (Vertex v = 0; v < n; ++v) {
          EXPECT_EQ(g.adjacent(u, v), g.adjacent(v, u));
          EXPECT_EQ(g.adjacent(u, v), oracle::adjacent(n, k, u, v));
          deg += g.adjacent(u, v);
        }
        EXPECT_EQ(deg, g.degree()) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(CyclePowerTest, Segment) {
  EXPECT_EQ(CyclePower(5, 1).segment(3, 3), (std::vector<Vertex>{3, 4, 0}));
  EXPECT_EQ(CyclePower(5, 1).segment(0, 1), (std::vector<Vertex>{0}));
  EXPECT_EQ(CyclePower(6, 2).segment(4, 4), (std::vector<Vertex>{4, 5, 0, 1}));
  EXPECT_THROW(CyclePower(5, 1).segment(0, 6), std::invalid_argument);
}

TEST(EnumerateCliquesTest, Examples) {
  const auto tri = enumerate_cliques(CyclePower(10, 2), 3);
  ASSERT_EQ(tri.size(), 10u);
  for (const auto& c : tri) {
    // Each is {i, i+1, i+2} mod 10, sorted.
    const bool plain = c[1] == c[0] + 1 && c[2] == c[0] + 2;
    const bool wrapped = (c == Clique{0, 8, 9}) || (c == Clique{0, 1, 9});
    EXPECT_TRUE(plain || wrapped);
  }
  // Frozen from oracle::count_cliques(10, 3, 3).
  EXPECT_EQ(enumerate_cliques(CyclePower(10, 3), 3).size(), 30u);
  EXPECT_EQ(enumerate_cliques(CyclePower(8, 1), 2).size(), 8u);
}

TEST(EnumerateCliquesTest, OversizedCliquesAbsent) {
  EXPECT_TRUE(enumerate_cliques(CyclePower(12, 2), 4).empty());
}

TEST(EnumerateCliquesTest, WrapAroundCliquesBelowThreeKPlusOne) {
  // C_6^2 contains {0,2,4} and {1,3,5} besides the six windows.
  const auto tri = enumerate_cliques(CyclePower(6, 2), 3);
  EXPECT_EQ(tri.size(), 8u);
  EXPECT_NE(std::find(tri.begin(), tri.end(), Clique{0, 2, 4}), tri.end());
}

TEST(EnumerateCliquesTest, MatchesBruteForceAndLeftmostCount) {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t n = std::max<std::size_t>(3, 2 * k + 2); n <= 20; ++n) {
      const CyclePower g(n, k);
      for (std::size_t size = 2; size <= k + 1; ++size) {
        const auto cliques = enumerate_cliques(g, size);
        EXPECT_EQ(cliques.size(), oracle::count_cliques(n, k, size)) << n << ' ' << k << ' ' << size;
        if (n >= 3 * k + 1) {
          std::size_t formula = n;
          for (std::size_t j = 0; j < size - 1; ++j) formula = formula * (k - j) / (j + 1);
          EXPECT_EQ(cliques.size(), formula);
        }
        for (const auto& cl : cliques) {
          EXPECT_TRUE(std::is_sorted(cl.begin(), cl.end()));
          for (std::size_t a = 0; a < cl.size(); ++a)
            for (std::size_t b = a + 1; b < cl.size(); ++b) EXPECT_TRUE(g.adjacent(cl[a], cl[b]));
        }
        auto copy = cliques;
        EXPECT_EQ(std::unique(copy.begin(), copy.end()), copy.end());
      }
    }
  }
}

TEST(EnumerateCliquesTest, CompleteGraphUsesAllSubsets) {
  // K_5 = C_5^2: C(5,3) triangles.
  EXPECT_EQ(enumerate_cliques(CyclePower(5, 2), 3).size(), 10u);
}

}  // namespace
}  // namespace cyclelist
