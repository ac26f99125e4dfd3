#include <gtest/gtest.h>

#include <unordered_map>

#include "pl_oracle.hpp"
#include "thompson/normal_form.hpp"
#include "thompson/rng.hpp"
#include "thompson/sampling.hpp"
#include "thompson/walks.hpp"

using namespace thompson;

namespace {

Word commutator(const Word& u, const Word& v) {
  return concat(concat(formal_inverse(u), formal_inverse(v)), concat(u, v));
}

Word power(const Word& w, int n) {
  Word out;
  for (int i = 0; i < n; ++i) out = concat(out, w);
  return out;
}

}  // namespace

TEST(NormalForm, DefiningRelatorsAreTrivial) {
  const Word a = parse_word("a"), A = parse_word("A"), b = parse_word("b");
  const Word u = parse_word("aB");
  const Word r1 = commutator(u, concat(concat(A, b), a));
  const Word r2 = commutator(u, concat(concat(power(A, 2), b), power(a, 2)));
  EXPECT_EQ(r1.size(), 10u);
  EXPECT_EQ(r2.size(), 14u);
  EXPECT_TRUE(is_identity_f(r1));
  EXPECT_TRUE(is_identity_f(r2));
  EXPECT_TRUE(pl::is_identity(r1));
  EXPECT_TRUE(pl::is_identity(r2));
}

TEST(NormalForm, ConjugatesOfX1GiveHigherGenerators) {
  // x0^-1 x1 x0 = x2
  const auto u = normalize(parse_word("Aba"));
  ASSERT_EQ(u.positive().size(), 1u);
  EXPECT_EQ(u.positive()[0].index, 2u);
  EXPECT_EQ(u.positive()[0].exponent, 1u);
  EXPECT_TRUE(u.negative().empty());
}

TEST(NormalForm, GeneratorsAndIdentity) {
  EXPECT_TRUE(normalize(Word{}).is_identity());
  EXPECT_TRUE(is_identity_f(parse_word("abBA")));
  EXPECT_FALSE(is_identity_f(parse_word("ab")));
  EXPECT_EQ(NormalForm::generator(kX1), normalize(parse_word("b")));
  const auto inv = normalize(parse_word("A"));
  EXPECT_TRUE(inv.positive().empty());
  ASSERT_EQ(inv.negative().size(), 1u);
  EXPECT_EQ(inv.negative()[0].index, 0u);
}

TEST(NormalForm, FromPartsReducesAndValidates) {
  // x0 x3 x0^-1 breaks uniqueness and equals x2.
  const auto u = NormalForm::from_parts({{0, 1}, {3, 1}}, {{0, 1}});
  EXPECT_EQ(u, NormalForm::from_parts({{2, 1}}, {}));
  EXPECT_EQ(u, normalize(pl::expand(Word{kX0, Letter{3, 1}, kX0Inv})));
  EXPECT_THROW(NormalForm::from_parts({{3, 1}, {1, 1}}, {}), std::invalid_argument);
}

// Random words agree with the piecewise-linear model after normalisation.
TEST(NormalForm, RandomWordsMatchPiecewiseLinearModel) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    RngStream rng(11, i);
    const Word w = sample_uniform_word(1 + i % 24, rng);
    const NormalForm u = normalize(w);
    ASSERT_EQ(pl::evaluate(w), pl::evaluate(u.to_word())) << to_string(w);
    ASSERT_EQ(u.is_identity(), pl::is_identity(w)) << to_string(w);
  }
}

TEST(NormalForm, BalancedWordsIdentityAgreesWithModel) {
  const BalancedSampler sampler(12);
  int trivial = 0;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    RngStream rng(5, i);
    const Word w = sampler(rng);
    const bool id = is_identity_f(w);
    trivial += id;
    ASSERT_EQ(id, pl::is_identity(w)) << to_string(w);
  }
  EXPECT_GT(trivial, 0);
}

TEST(NormalForm, MultiplyAndInverse) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    RngStream rng(3, i);
    const Word w = sample_uniform_word(14, rng);
    const Word v = sample_uniform_word(9, rng);
    const auto u = normalize(w);
    EXPECT_EQ(multiply(u, normalize(v)), normalize(concat(w, v)));
    EXPECT_EQ(inverse(u), normalize(formal_inverse(w)));
    EXPECT_TRUE(multiply(u, inverse(u)).is_identity());
    EXPECT_EQ(normalize(u.to_word()), u);
  }
}

TEST(NormalForm, JsonRoundTripAndRejection) {
  const auto u = normalize(parse_word("abbAbaBBa"));
  EXPECT_EQ(normal_form_from_json(to_json(u)), u);
  const auto j = nlohmann::json::parse(R"({"pos":[[0,1],[3,1]],"neg":[[0,1]]})");
  EXPECT_THROW(normal_form_from_json(j), std::invalid_argument);
  const auto bad = nlohmann::json::parse(R"({"pos":[[2,1],[1,1]],"neg":[]})");
  EXPECT_THROW(normal_form_from_json(bad), std::invalid_argument);
}

// Distinct keys on the radius-10 ball are distinct maps and vice versa.
TEST(NormalForm, CanonicalKeysSeparateTheRadius10Ball) {
  std::unordered_map<std::string, std::string> fp_to_key;
  std::size_t elements = 0;
  bfs_visit(10, MemoryBudget{}, [&](const NormalForm& u, std::size_t) {
    ++elements;
    const auto [it, fresh] = fp_to_key.emplace(pl::fingerprint(u.to_word()), u.key());
    EXPECT_TRUE(fresh) << "two keys share one map";
  });
  EXPECT_EQ(elements, 88253u);
  EXPECT_EQ(fp_to_key.size(), elements);
}

TEST(NormalForm, WorkedExamples) {
  const auto x0x2 = normalize(parse_word("ba"));
  EXPECT_EQ(x0x2.positive(), (Terms{{0, 1}, {2, 1}}));
  EXPECT_TRUE(x0x2.negative().empty());
  EXPECT_TRUE(normalize(parse_word("aA")).is_identity());
  const auto u = normalize(parse_word("abA"));
  EXPECT_EQ(u.positive(), (Terms{{0, 1}, {1, 1}}));
  EXPECT_EQ(u.negative(), (Terms{{0, 1}}));

  const auto id = NormalForm{};
  const auto a = NormalForm::generator(kX0), b = NormalForm::generator(kX1);
  EXPECT_EQ(multiply(id, x0x2), x0x2);
  EXPECT_TRUE(multiply(a, NormalForm::generator(kX0Inv)).is_identity());
  EXPECT_EQ(multiply(b, a), x0x2);
  EXPECT_TRUE(inverse(id).is_identity());
  EXPECT_TRUE(inverse(x0x2).positive().empty());
  EXPECT_EQ(inverse(x0x2).negative(), (Terms{{0, 1}, {2, 1}}));
  EXPECT_EQ(canonical_key(x0x2), canonical_key(multiply(b, a)));
  EXPECT_EQ(canonical_key(id), std::string("\0\0", 2));
}

TEST(NormalForm, InverseIsAnInvolution) {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    RngStream rng(17, i);
    const auto u = normalize(sample_uniform_word(1 + i % 40, rng));
    ASSERT_EQ(inverse(inverse(u)), u);
  }
}
