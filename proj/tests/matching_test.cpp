#include "cyclelist/matching.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace cyclelist {
namespace {

ListBipartiteGraph graph_of(const std::vector<std::vector<Colour>>& lists) {
  ListBipartiteGraph h;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    h.left.push_back(static_cast<Vertex>(i));
    auto l = lists[i];
    std::sort(l.begin(), l.end());
    h.lists.push_back(l);
  }
  return h;
}

bool is_matching(const ListBipartiteGraph& h, const Matching& m) {
  std::vector<Colour> used;
  for (std::size_t i = 0; i < h.left_size(); ++i) {
    const Colour c = m.colour_of[i];
    if (c == kUncoloured) continue;
    if (!std::binary_search(h.lists[i].begin(), h.lists[i].end(), c)) return false;
    used.push_back(c);
  }
  std::sort(used.begin(), used.end());
  return std::adjacent_find(used.begin(), used.end()) == used.end();
}

TEST(MaxMatchingTest, ThreeVerticesTwoColours) {
  const auto h = graph_of({{1, 2}, {1, 2}, {1, 2}});
  const auto m = max_matching(h);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(is_matching(h, m));
  ASSERT_EQ(m.unsaturated().size(), 1u);
  EXPECT_EQ(alternating_reach(h, m, m.unsaturated()[0]).size(), 3u);
}

TEST(MaxMatchingTest, DisjointListsArePerfect) {
  const auto h = graph_of({{1, 2}, {3, 4}, {5, 6}, {7, 8}});
  const auto m = max_matching(h);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_TRUE(is_matching(h, m));
}

TEST(MaxMatchingTest, Deterministic) {
  const auto h = graph_of({{1, 3}, {1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(max_matching(h).colour_of, max_matching(h).colour_of);
}

TEST(MaxMatchingTest, AgreesWithAugmentingPathReference) {
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    Rng rng({123, trial});
    const std::size_t left = 1 + rng.below(50);
    const std::size_t colours = 1 + rng.below(50);
    std::vector<std::vector<Colour>> lists(left);
    for (auto& l : lists) {
      const std::size_t deg = 1 + rng.below(std::min<std::size_t>(colours, 5));
      while (l.size() < deg) {
        const Colour c = static_cast<Colour>(1 + rng.below(colours));
        if (std::find(l.begin(), l.end(), c) == l.end()) l.push_back(c);
      }
    }
    const auto h = graph_of(lists);
    const auto m = max_matching(h);
    EXPECT_TRUE(is_matching(h, m));
    EXPECT_EQ(m.size(), oracle::matching_size(h.lists)) << "trial " << trial;
  }
}

TEST(AlternatingReachTest, DeficientSetHasOneMoreVertexThanColours) {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng({321, trial});
    const std::size_t left = 2 + rng.below(12);
    std::vector<std::vector<Colour>> lists(left);
    for (auto& l : lists) {
      while (l.size() < 2) {
        const Colour c = static_cast<Colour>(1 + rng.below(left));
        if (std::find(l.begin(), l.end(), c) == l.end()) l.push_back(c);
      }
    }
    const auto h = graph_of(lists);
    const auto m = max_matching(h);
    for (std::size_t root : m.unsaturated()) {
      const auto x = alternating_reach(h, m, root);
      std::vector<Colour> nbr;
      for (auto i : x) nbr.insert(nbr.end(), h.lists[i].begin(), h.lists[i].end());
      std::sort(nbr.begin(), nbr.end());
      nbr.erase(std::unique(nbr.begin(), nbr.end()), nbr.end());
      EXPECT_EQ(x.size(), nbr.size() + 1);
    }
  }
}

}  // namespace
}  // namespace cyclelist
