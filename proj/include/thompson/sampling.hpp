#pragma once

// Exactly uniform samplers for unconstrained, balanced and
// abelianization-constrained words. A draw first picks the number of
// x0-letters with probability proportional to its exact count, then
// shuffles the corresponding letter multiset; every distinct arrangement of
// a multiset is equally likely under a uniform shuffle.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thompson/counting.hpp"
#include "thompson/rng.hpp"
#include "thompson/words.hpp"

namespace thompson {

// Uniform BigCount in [0, bound) by rejection on the bit length of bound.
inline BigCount uniform_below(const BigCount& bound, RngStream& rng) {
  if (bound <= 0) throw std::domain_error("uniform_below: empty range");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t limbs = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (limbs - 1);
  for (;;) {
    BigCount v = 0;
    for (std::size_t i = 0; i < limbs; ++i) {
      std::uint64_t limb = rng();
      if (i == 0 && top_bits < 64) limb >>= 64 - top_bits;
      v <<= 64;
      v |= limb;
    }
    if (v < bound) return v;
  }
}

// Index i drawn with probability weights[i] / sum(weights), exactly.
class ExactDiscrete {
 public:
  explicit ExactDiscrete(const std::vector<BigCount>& weights) {
    cumulative_.reserve(weights.size());
    BigCount run = 0;
    for (const auto& w : weights) {
      run += w;
      cumulative_.push_back(run);
    }
    if (run <= 0) throw std::domain_error("ExactDiscrete: all weights are zero");
    if (run <= std::numeric_limits<std::uint64_t>::max()) {
      small_.emplace();
      for (const auto& c : cumulative_) small_->push_back(static_cast<std::uint64_t>(c));
    }
  }

  const BigCount& total() const { return cumulative_.back(); }

  std::size_t operator()(RngStream& rng) const {
    if (small_) {
      const std::uint64_t r = rng.below(small_->back());
      return static_cast<std::size_t>(
          std::upper_bound(small_->begin(), small_->end(), r) - small_->begin());
    }
    const BigCount r = uniform_below(cumulative_.back(), rng);
    return static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin());
  }

 private:
  std::vector<BigCount> cumulative_;
  std::optional<std::vector<std::uint64_t>> small_;
};

namespace detail {

inline void fill_letters(Word& w, std::int64_t count, Letter x) {
  w.insert(w.end(), static_cast<std::size_t>(count), x);
}

inline void shuffle(Word& w, RngStream& rng) {
  for (std::size_t i = w.size(); i > 1; --i) {
    std::swap(w[i - 1], w[rng.below(i)]);
  }
}

}  // namespace detail

inline Word sample_uniform_word(std::size_t length, RngStream& rng) {
  Word w;
  w.reserve(length);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 32 == 0) bits = rng();
    w.push_back(kGenerators[bits & 3]);
    bits >>= 2;
  }
  return w;
}

// Uniform over words of length M with abelian image (k, l).
class ConstrainedSampler {
 public:
  ConstrainedSampler(std::int64_t M, std::int64_t k, std::int64_t l)
      : M_(M), k_(k), l_(l), split_(checked_terms(M, k, l)) {}

  const BigCount& count() const { return split_.total(); }

  Word operator()(RngStream& rng) const {
    const auto m = static_cast<std::int64_t>(split_(rng));
    Word w;
    w.reserve(static_cast<std::size_t>(M_));
    detail::fill_letters(w, (m + k_) / 2, kX0);
    detail::fill_letters(w, (m - k_) / 2, kX0Inv);
    detail::fill_letters(w, (M_ - m + l_) / 2, kX1);
    detail::fill_letters(w, (M_ - m - l_) / 2, kX1Inv);
    detail::shuffle(w, rng);
    return w;
  }

 private:
  static std::vector<BigCount> checked_terms(std::int64_t M, std::int64_t k, std::int64_t l) {
    if (M < 0) throw std::domain_error("sample_constrained: negative length");
    auto terms = constrained_terms(M, k, l);
    BigCount total = 0;
    for (const auto& t : terms) total += t;
    if (total == 0) {
      throw std::domain_error("sample_constrained: no word of length " + std::to_string(M) +
                              " has abelian image (" + std::to_string(k) + "," +
                              std::to_string(l) + ")");
    }
    return terms;
  }

  std::int64_t M_, k_, l_;
  ExactDiscrete split_;
};

// Uniform over balanced words of length L (L even).
class BalancedSampler {
 public:
  explicit BalancedSampler(std::int64_t L) : L_(L), split_(checked_terms(L)) {}

  const BigCount& count() const { return split_.total(); }
  std::int64_t length() const { return L_; }

  Word operator()(RngStream& rng) const {
    const auto j = static_cast<std::int64_t>(split_(rng));
    const std::int64_t h = (L_ - 2 * j) / 2;
    Word w;
    w.reserve(static_cast<std::size_t>(L_));
    detail::fill_letters(w, j, kX0);
    detail::fill_letters(w, j, kX0Inv);
    detail::fill_letters(w, h, kX1);
    detail::fill_letters(w, h, kX1Inv);
    detail::shuffle(w, rng);
    return w;
  }

 private:
  static std::vector<BigCount> checked_terms(std::int64_t L) {
    if (L < 0 || L % 2 != 0) {
      throw std::domain_error("sample_balanced: length " + std::to_string(L) + " is not even");
    }
    return balanced_terms(L);
  }

  std::int64_t L_;
  ExactDiscrete split_;
};

inline Word sample_balanced(std::int64_t L, RngStream& rng) { return BalancedSampler(L)(rng); }

inline Word sample_constrained(std::int64_t M, std::int64_t k, std::int64_t l, RngStream& rng) {
  return ConstrainedSampler(M, k, l)(rng);
}

}  // namespace thompson
