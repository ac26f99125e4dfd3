#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "thompson/fordham.hpp"
#include "thompson/rng.hpp"
#include "thompson/sampling.hpp"
#include "thompson/tree_pair.hpp"
#include "thompson/walks.hpp"

using namespace thompson;

#ifndef THOMPSON_DATA_DIR
#define THOMPSON_DATA_DIR "data"
#endif

TEST(TreePair, IdentityIsTrivialPair) {
  const auto t = to_tree_pair(NormalForm{});
  EXPECT_EQ(t.domain.caret_count(), 0u);
  EXPECT_EQ(t.range.caret_count(), 0u);
  EXPECT_TRUE(from_tree_pair(t).is_identity());
}

TEST(TreePair, GeneratorX0HasTwoCaretsPerTree) {
  const auto t = to_tree_pair(NormalForm::generator(kX0));
  EXPECT_EQ(t.domain.caret_count(), 2u);
  EXPECT_EQ(t.range.caret_count(), 2u);
  EXPECT_TRUE(t.is_reduced());
  EXPECT_EQ(fordham_length(NormalForm::generator(kX0)), 1u);
}

TEST(TreePair, ParseAndPrint) {
  const auto tree = BinaryTree::parse("((..).)");
  EXPECT_EQ(tree.caret_count(), 2u);
  EXPECT_EQ(tree.to_string(), "((..).)");
  EXPECT_THROW(BinaryTree::parse("((..)"), TreeStructureError);
  EXPECT_THROW(BinaryTree::parse("(.x)"), TreeStructureError);
}

TEST(TreePair, ReduceRemovesCommonCarets) {
  TreePair t{BinaryTree::parse("((..)(..))"), BinaryTree::parse("((..)(..))")};
  const auto r = reduce(t);
  EXPECT_EQ(r.domain.caret_count(), 0u);
  TreePair bad{BinaryTree::parse("(..)"), BinaryTree::parse(".")};
  EXPECT_THROW(reduce(bad), TreeStructureError);
}

TEST(TreePair, RoundTripOnRadius6Ball) {
  std::size_t n = 0;
  bfs_visit(6, MemoryBudget{}, [&](const NormalForm& u, std::size_t) {
    const auto t = to_tree_pair(u);
    ASSERT_TRUE(t.is_reduced());
    ASSERT_EQ(from_tree_pair(t), u);
    ++n;
  });
  EXPECT_EQ(n, 1u + 4 + 12 + 36 + 108 + 314 + 906);
}

TEST(Fordham, CaretClassification) {
  EXPECT_EQ(classify_carets(BinaryTree::parse("(..)")), (std::vector<CaretType>{CaretType::L0}));
  const auto vine = classify_carets(BinaryTree::parse("((..).)"));
  EXPECT_EQ(vine, (std::vector<CaretType>{CaretType::L0, CaretType::LL}));
  const auto t = BinaryTree::parse("(.(.(..)))");
  EXPECT_EQ(classify_carets(t), classify_carets(t));
  EXPECT_EQ(classify_carets(t), (std::vector<CaretType>{CaretType::L0, CaretType::RNI, CaretType::R0}));
}

TEST(Fordham, SmallLengths) {
  EXPECT_EQ(fordham_length(NormalForm{}), 0u);
  for (Letter x : kGenerators) EXPECT_EQ(fordham_length(NormalForm::generator(x)), 1u);
  EXPECT_EQ(fordham_length(normalize(parse_word("ba"))), 2u);
}

TEST(Fordham, WeightTableFileMatchesBuiltIn) {
  std::ifstream in(std::string(THOMPSON_DATA_DIR) + "/fordham_weights.txt");
  ASSERT_TRUE(in) << "missing data/fordham_weights.txt";
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), kDefaultWeightText);
  const auto table = WeightTable::parse(buf.str(), kDefaultWeightChecksum);
  EXPECT_EQ(table.checksum(), default_weight_table().checksum());
  for (std::size_t i = 0; i < kCaretTypeCount; ++i) {
    for (std::size_t j = 0; j < kCaretTypeCount; ++j) {
      EXPECT_EQ(table(CaretType(i), CaretType(j)), table(CaretType(j), CaretType(i)));
    }
  }
}

TEST(Fordham, WeightTableRejectsTampering) {
  std::string text(kDefaultWeightText);
  text.replace(text.find("-1 2 2 2 1 1 1"), 14, "-1 2 2 2 1 1 2");
  EXPECT_THROW(WeightTable::parse(text, kDefaultWeightChecksum), std::invalid_argument);
  EXPECT_THROW(WeightTable::parse("L0 LL\n0 1\n"), std::invalid_argument);
}

// One generator changes the length by exactly one; walks respect parity and
// the triangle inequality.
TEST(Fordham, LipschitzParityAndTriangle) {
  for (std::uint64_t i = 0; i < 3000; ++i) {
    RngStream rng(23, i);
    const std::size_t n = 1 + i % 120;
    const Word w = sample_uniform_word(n, rng);
    const auto u = normalize(w);
    const auto l = fordham_length(u);
    ASSERT_LE(l, n);
    ASSERT_EQ(l % 2, n % 2);
    for (Letter x : kGenerators) {
      const auto m = fordham_length(u.times(x));
      ASSERT_EQ(m > l ? m - l : l - m, 1u) << to_string(w);
    }
  }
}
