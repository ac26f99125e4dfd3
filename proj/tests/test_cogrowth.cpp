#include <gtest/gtest.h>

#include <cmath>

#include "thompson/cogrowth.hpp"

using namespace thompson;

TEST(ExactCogrowth, SmallValues) {
  EXPECT_EQ(exact_return_count(f_oracle(), 0), 1);
  EXPECT_EQ(exact_return_count(f_oracle(), 1), 0);
  EXPECT_EQ(exact_return_count(f_oracle(), 2), 4);
  EXPECT_EQ(exact_p_hat(f_oracle(), 2), 1);
  EXPECT_THROW(exact_p_hat(f_oracle(), 3), std::domain_error);
  // The shortest relators have length 10, so F and F2 agree below it.
  for (int L = 0; L < 10; ++L) {
    EXPECT_EQ(exact_return_count(f_oracle(), L), exact_return_count(f2_oracle(), L)) << L;
  }
  EXPECT_GT(exact_return_count(f_oracle(), 10), exact_return_count(f2_oracle(), 10));
}

TEST(ExactCogrowth, PublishedCountAt14) {
  const auto ex = exact_cogrowth(f_oracle(), 14);
  EXPECT_EQ(ex.trivial, 1988452);
  EXPECT_NEAR(ex.root_p(), 0.704423677, 1e-8);
  EXPECT_EQ(ex.p_hat(), BigRational(BigCount(1988452), count_balanced(14)));
}

TEST(ExactCogrowth, BudgetExhaustionIsReported) {
  try {
    exact_return_count(f_oracle(), 16, MemoryBudget{4096});
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_GT(e.reachable(), 0u);
    EXPECT_LT(e.last_completed(), 8u);
  }
}

TEST(MonteCarlo, LengthTwoIsAlwaysTrivial) {
  const auto row = mc_trivial_proportion(f_oracle(), 2, 1000, 5);
  EXPECT_EQ(row.p_hat, 1.0);
  EXPECT_EQ(row.trivial_count, 1000);
  EXPECT_EQ(row.method, "mc");
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResult) {
  const auto a = mc_trivial_proportion(f_oracle(), 12, 20000, 77, 1);
  for (unsigned t : {4u, 8u}) {
    const auto b = mc_trivial_proportion(f_oracle(), 12, 20000, 77, t);
    EXPECT_EQ(a.trivial_count, b.trivial_count);
    EXPECT_EQ(a.p_hat, b.p_hat);
  }
}

TEST(Batch, LengthTwoMatchesEnumeration) {
  // Halves of length 1 with a given abelian image are forced, so the two
  // words always collide.
  const auto row = batch_collision_estimate(f_oracle(), 2, 2, 200, 3);
  EXPECT_EQ(row.p_hat, 1.0);
  EXPECT_EQ(row.sample_size, 200);
}

TEST(Batch, SingleIterationHasUndefinedError) {
  const auto row = batch_collision_estimate(f_oracle(), 8, 50, 1, 3);
  EXPECT_TRUE(std::isnan(row.std_error));
  EXPECT_THROW(batch_collision_estimate(f_oracle(), 7, 50, 2, 3), std::domain_error);
  EXPECT_THROW(batch_collision_estimate(f_oracle(), 8, 1, 2, 3), std::invalid_argument);
}

TEST(Batch, ThreadCountDoesNotChangeResult) {
  const auto a = batch_collision_estimate(zwrz_oracle(), 12, 200, 40, 9, 1);
  const auto b = batch_collision_estimate(zwrz_oracle(), 12, 200, 40, 9, 8);
  EXPECT_EQ(a.trivial_count, b.trivial_count);
  EXPECT_EQ(a.std_error, b.std_error);
}

// Both estimators agree with the exact value within four standard errors.
template <class G>
void check_consistency(const G& g, std::int64_t L) {
  const double exact = exact_p_hat(g, L).template convert_to<double>();
  const auto mc = mc_trivial_proportion(g, L, 100000, 1000 + L);
  EXPECT_LE(std::abs(mc.p_hat - exact), 4 * mc.std_error) << g.kName << " mc L=" << L;
  const auto batch = batch_collision_estimate(g, L, 100, 2000, 2000 + L);
  EXPECT_LE(std::abs(batch.p_hat - exact), 4 * batch.std_error) << g.kName << " batch L=" << L;
}

TEST(Consistency, EstimatorsAgreeWithExact) {
  for (std::int64_t L : {4, 8}) {
    check_consistency(f_oracle(), L);
    check_consistency(f2_oracle(), L);
    check_consistency(zwrz_oracle(), L);
  }
}

TEST(CogrowthTable, Ratio20) {
  std::vector<CogrowthRow> rows(2);
  rows[0].group = rows[1].group = "f";
  rows[0].L = 20;
  rows[0].p_hat = 0.25;
  rows[1].L = 40;
  rows[1].p_hat = 0.0625;
  const auto t = cogrowth_table(rows);
  EXPECT_FALSE(t[0].ratio_20.has_value());
  ASSERT_TRUE(t[1].ratio_20.has_value());
  EXPECT_NEAR(*t[1].ratio_20, std::pow(0.25, 1.0 / 20), 1e-15);
  rows[1].p_hat = 0.25;
  EXPECT_DOUBLE_EQ(*cogrowth_table(rows)[1].ratio_20, 1.0);
}

TEST(Roots, LogSpaceRootOfTinyRatio) {
  const BigCount den = pow4(200);
  EXPECT_NEAR(root_of(BigCount(1), den, 200), 0.25, 1e-12);
  EXPECT_EQ(root_of(BigCount(0), den, 10), 0.0);
}
