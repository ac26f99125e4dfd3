#include <gtest/gtest.h>

#include "thompson/cogrowth.hpp"
#include "thompson/oracles.hpp"
#include "thompson/selftest.hpp"

using namespace thompson;

static_assert(GroupOracle<FOracle> && MeasuredGroupOracle<FOracle>);
static_assert(GroupOracle<F2Oracle> && GroupOracle<ZwrZOracle>);
static_assert(!MeasuredGroupOracle<ZwrZOracle>);

namespace {

// Brute force over all 4^L words.
template <class G>
std::uint64_t brute_return_count(const G& g, int L) {
  std::uint64_t hits = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * L)); ++code) {
    Word w;
    for (int i = 0; i < L; ++i) w.push_back(kGenerators[(code >> (2 * i)) & 3]);
    hits += identity_test(g, w);
  }
  return hits;
}

}  // namespace

TEST(FOracle, IdentityTests) {
  const auto f = f_oracle();
  EXPECT_TRUE(identity_test(f, Word{}));
  EXPECT_TRUE(identity_test(f, parse_word("bAABaaBAba")));  // [x0 x1^-1, x0^-1 x1 x0]
  EXPECT_FALSE(identity_test(f, parse_word("ab")));
  EXPECT_EQ(f.length(f.evaluate(parse_word("ba"))), 2u);
}

TEST(F2Oracle, FreeReduction) {
  const auto g = f2_oracle();
  EXPECT_TRUE(identity_test(g, parse_word("aA")));
  EXPECT_FALSE(identity_test(g, parse_word("abAB")));
  EXPECT_EQ(exact_return_count(g, 2), 4);
  EXPECT_EQ(g.key(g.times(g.evaluate(parse_word("ab")), kX1Inv)), "a");
}

TEST(ZwrZOracle, LampsAndHead) {
  const auto g = zwrz_oracle();
  const auto s = zwrz_evaluate(parse_word("abAB"));
  EXPECT_EQ(s.lamps, (std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {1, -1}}));
  EXPECT_EQ(s.head, 0);
  EXPECT_FALSE(s.is_identity());
  // [a, a^t] = a . t a t^-1 . a^-1 . t a^-1 t^-1
  EXPECT_TRUE(identity_test(g, parse_word("abaBAbAB")));
  EXPECT_TRUE(zwrz_evaluate(Word{}).is_identity());
  EXPECT_TRUE(identity_test(g, parse_word("bB")));
  EXPECT_FALSE(identity_test(g, parse_word("ab")));
  EXPECT_EQ(exact_return_count(g, 2), 4);
  EXPECT_THROW(zwrz_evaluate(Word{Letter{2, 1}}), std::domain_error);
}

TEST(ZwrZOracle, CommutingConjugatesOfA) {
  const auto g = zwrz_oracle();
  // [x, y] with x = t^2 a t^-2 and y = t^-1 a t
  const Word x = parse_word("bbaBB"), y = parse_word("Bab");
  const Word w = concat(concat(formal_inverse(x), formal_inverse(y)), concat(x, y));
  EXPECT_TRUE(identity_test(g, w));
}

TEST(Oracles, ExactCountsMatchBruteForce) {
  for (int L = 0; L <= 8; ++L) {
    EXPECT_EQ(exact_return_count(f_oracle(), L), brute_return_count(f_oracle(), L)) << L;
    EXPECT_EQ(exact_return_count(f2_oracle(), L), brute_return_count(f2_oracle(), L)) << L;
    EXPECT_EQ(exact_return_count(zwrz_oracle(), L), brute_return_count(zwrz_oracle(), L)) << L;
  }
}

TEST(Oracles, F2MatchesTreeRecurrence) {
  const auto r = check_f2_recurrence(20);
  EXPECT_TRUE(r.passed) << r.detail;
  const auto t = tree_return_counts(6);
  EXPECT_EQ(t[2], 4);
  EXPECT_EQ(t[4], 28);
  EXPECT_EQ(t[6], 232);
  EXPECT_EQ(t[3], 0);
}

TEST(Oracles, ParseGroup) {
  EXPECT_EQ(parse_group("f"), GroupKind::F);
  EXPECT_EQ(parse_group("zwrz"), GroupKind::ZwrZ);
  EXPECT_EQ(parse_group("f2"), GroupKind::F2);
  EXPECT_THROW(parse_group("z"), std::invalid_argument);
  EXPECT_EQ(with_oracle(GroupKind::F2, [](const auto& g) { return std::string(g.kName); }), "f2");
  EXPECT_EQ(group_name(GroupKind::ZwrZ), "zwrz");
}
