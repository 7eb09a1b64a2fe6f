#include "cyclelist/gadget.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace cyclelist {
namespace {

// Gadget lists with palette {1..k+2} at offsets [start, start + length).
void plant_gadget(std::vector<std::vector<Colour>>& lists, std::size_t k, std::size_t start,
                  const std::vector<Colour>& relabel) {
  const std::size_t b = k + 1;
  const std::size_t blocks = 2 * k + 4;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    // Label omitted by this block: k+2 for F, B_i and E; i for A_i.
    const bool first_member = blk % 2 == 1 && blk < blocks - 1;
    const Colour omit = first_member ? static_cast<Colour>((blk + 1) / 2) : static_cast<Colour>(k + 2);
    std::vector<Colour> list;
    for (Colour lbl = 1; lbl <= k + 2; ++lbl)
      if (lbl != omit) list.push_back(relabel[lbl]);
    for (std::size_t p = 0; p < b; ++p) lists[(start + blk * b + p) % lists.size()] = list;
  }
}

std::vector<std::vector<Colour>> random_lists(std::size_t n, std::size_t c, std::size_t s, RngStream stream) {
  const auto scheme = sample_scheme(CyclePower(n, 1), {c, s}, stream);
  std::vector<std::vector<Colour>> out;
  for (Vertex v = 0; v < n; ++v) {
    const auto l = scheme.list(v);
    out.emplace_back(l.begin(), l.end());
  }
  return out;
}

std::vector<Colour> identity_labels(std::size_t k) {
  std::vector<Colour> r(k + 3);
  std::iota(r.begin(), r.end(), Colour{0});
  return r;
}

TEST(GreedyExtendTest, PathContinuation) {
  const CyclePower g(10, 1);
  std::vector<std::vector<Colour>> lists(10, {3, 4});
  lists[0] = {1, 5};
  lists[1] = {2, 5};
  const auto scheme = ColourScheme::from_lists({2, 5}, lists);
  Colouring partial{std::vector<Colour>(10, kUncoloured)};
  partial.assignment[0] = 1;
  partial.assignment[1] = 2;
  const std::vector<Vertex> order{2, 3, 4, 5, 6, 7, 8, 9};
  const auto col = greedy_extend(g, scheme, partial, order);
  ASSERT_TRUE(col);
  EXPECT_TRUE(verify_colouring(g, scheme, *col));
  EXPECT_EQ(col->assignment[2], 3u);
}

TEST(GreedyExtendTest, ListsOfSizeKPlusOneAlwaysExtend) {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + trial % 4;
    const CyclePower g(40, k);
    const auto scheme = sample_scheme(g, {k + 1, k + 3}, {12, trial});
    std::vector<Vertex> order(g.n() - k);
    std::iota(order.begin(), order.end(), Vertex{0});
    const auto col = greedy_extend(g, scheme, Colouring{std::vector<Colour>(g.n(), kUncoloured)}, order);
    ASSERT_TRUE(col);
    EXPECT_TRUE(verify_partial_colouring(g, scheme, *col));
  }
}

TEST(GreedyExtendTest, BlockedVertexGivesAbsence) {
  const CyclePower g(10, 2);
  const auto scheme = ColourScheme::uniform(10, {2, 2}, {1, 2});
  Colouring partial{std::vector<Colour>(10, kUncoloured)};
  partial.assignment[0] = 1;
  partial.assignment[1] = 2;
  const std::vector<Vertex> order{2};
  EXPECT_FALSE(greedy_extend(g, scheme, partial, order));
}

TEST(GreedyExtendTest, ImproperSeedRejected) {
  const CyclePower g(10, 1);
  const auto scheme = ColourScheme::uniform(10, {2, 3}, {1, 2});
  Colouring partial{std::vector<Colour>(10, kUncoloured)};
  partial.assignment[0] = partial.assignment[1] = 1;
  EXPECT_FALSE(greedy_extend(g, scheme, partial, std::vector<Vertex>{2}));
}

TEST(GadgetTest, LengthFormula) {
  EXPECT_EQ(gadget_length(1), 12u);
  EXPECT_EQ(gadget_length(2), 24u);
}

TEST(GadgetTest, LiteralGadgetColoursCycle) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const std::size_t n = 3 * gadget_length(k) + 7;
    auto lists = random_lists(n, k + 1, k + 2, {5, k});
    plant_gadget(lists, k, 17, identity_labels(k));
    const CyclePower g(n, k);
    const auto scheme = ColourScheme::from_lists({k + 1, k + 2}, lists);
    EXPECT_TRUE(matches_gadget_literal(g, scheme, 17));
    const auto col = gadget_colouring(g, scheme);
    ASSERT_TRUE(col) << "k=" << k;
    EXPECT_TRUE(verify_colouring(g, scheme, *col));
    for (Colour x : col->assignment) EXPECT_LE(x, k + 2);
  }
}

TEST(GadgetTest, GadgetFillingWholeCycle) {
  const std::size_t k = 1;
  auto lists = std::vector<std::vector<Colour>>(gadget_length(k));
  plant_gadget(lists, k, 0, identity_labels(k));
  const CyclePower g(lists.size(), k);
  const auto scheme = ColourScheme::from_lists({2, 3}, lists);
  const auto col = gadget_colouring(g, scheme);
  ASSERT_TRUE(col);
  EXPECT_TRUE(verify_colouring(g, scheme, *col));
}

TEST(GadgetTest, RelabelledGadgetIsFound) {
  const std::size_t k = 2;
  const std::size_t n = 200;
  auto lists = random_lists(n, k + 1, 6, {6, 0});
  std::vector<Colour> relabel{0, 5, 2, 6, 1};  // labels 1..4 -> colours 5,2,6,1
  plant_gadget(lists, k, 190, relabel);       // wraps around the cycle
  const CyclePower g(n, k);
  const auto scheme = ColourScheme::from_lists({k + 1, 6}, lists);
  EXPECT_FALSE(matches_gadget_literal(g, scheme, 190));
  const auto found = find_gadget(g, scheme);
  ASSERT_TRUE(found);
  const auto col = gadget_colouring(g, scheme);
  ASSERT_TRUE(col);
  EXPECT_TRUE(verify_colouring(g, scheme, *col));
}

TEST(GadgetTest, PlantedGadgetsAlwaysColour) {
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    Rng pick({40, trial});
    const std::size_t k = 1 + pick.below(3);
    const std::size_t n = gadget_length(k) + pick.below(60);
    auto lists = random_lists(n, k + 1, k + 2, {41, trial});
    std::vector<Colour> perm(k + 2);
    std::iota(perm.begin(), perm.end(), Colour{1});
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[pick.below(i)]);
    std::vector<Colour> relabel{0};
    relabel.insert(relabel.end(), perm.begin(), perm.end());
    plant_gadget(lists, k, pick.below(n), relabel);
    const CyclePower g(n, k);
    const auto scheme = ColourScheme::from_lists({k + 1, k + 2}, lists);
    const auto col = gadget_colouring(g, scheme);
    ASSERT_TRUE(col) << "trial " << trial;
    EXPECT_TRUE(verify_colouring(g, scheme, *col));
  }
}

TEST(GadgetTest, NoCandidateListsGivesAbsence) {
  const CyclePower g(40, 1);
  EXPECT_FALSE(gadget_colouring(g, ColourScheme::uniform(40, {2, 3}, {2, 3})));
}

TEST(GadgetTest, RequiresListsOfSizeKPlusOne) {
  const CyclePower g(40, 2);
  EXPECT_THROW(gadget_colouring(g, ColourScheme::uniform(40, {2, 4}, {1, 2})), std::invalid_argument);
  EXPECT_THROW(gadget_colouring(g, ColourScheme::uniform(40, {3, 3}, {1, 2, 3})), std::invalid_argument);
}

TEST(GadgetTest, LiteralWindowProbability) {
  // k=1, c=2, s=3: a fixed window matches literally with probability 3^-12.
  const std::size_t k = 1;
  const std::size_t len = gadget_length(k);
  const std::size_t windows_per_scheme = 100000;
  const CyclePower g(len * windows_per_scheme, k);
  std::size_t hits = 0;
  std::size_t windows = 0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const auto scheme = sample_scheme(g, {2, 3}, {1234, rep});
    for (std::size_t w = 0; w < windows_per_scheme; ++w) hits += matches_gadget_literal(g, scheme, static_cast<Vertex>(w * len));
    windows += windows_per_scheme;
  }
  const double p = std::pow(3.0, -12.0);
  const double expected = p * static_cast<double>(windows);
  const double se = std::sqrt(expected * (1 - p));
  EXPECT_NEAR(static_cast<double>(hits), expected, 3 * se) << hits << " hits in " << windows;
}

}  // namespace
}  // namespace cyclelist
