#pragma once

// Proportions of trivial words: exact counts by meet-in-the-middle, direct
// Monte Carlo over balanced words, and the batch collision estimator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "thompson/counting.hpp"
#include "thompson/oracles.hpp"
#include "thompson/parallel.hpp"
#include "thompson/rng.hpp"
#include "thompson/sampling.hpp"

namespace thompson {

using BigRational = boost::multiprecision::cpp_rational;

struct CogrowthRow {
  std::string group;
  std::int64_t L = 0;
  std::string method;
  BigCount sample_size = 0;
  BigCount trivial_count = 0;  // trivial words, or identical pairs for the batch method
  double p_hat = 0;
  double root_L = 0;
  std::optional<double> ratio_20;
  double std_error = 0;
  std::uint64_t seed = 0;
};

inline double to_double(const BigCount& x) { return x.convert_to<double>(); }

inline double log_of(const BigCount& x) {
  const std::size_t top = boost::multiprecision::msb(x);
  const std::size_t shift = top > 62 ? top - 62 : 0;
  return std::log(to_double(x >> shift)) + std::log(2.0) * static_cast<double>(shift);
}

// (num/den)^(1/L) in log space so tiny exact proportions keep precision.
inline double root_of(const BigCount& num, const BigCount& den, std::int64_t L) {
  if (num == 0) return 0;
  return std::exp((log_of(num) - log_of(den)) / static_cast<double>(L));
}

// ---------------------------------------------------------------------------
// Exact counts.

// Walk counts N_h(g): number of length-h words evaluating to g.
template <GroupOracle G>
class WalkDistribution {
 public:
  struct Entry {
    typename G::Element element;
    std::uint64_t count;
  };

  explicit WalkDistribution(const G& g) : group_(g) {
    const auto e = g.identity();
    map_.emplace(g.key(e), Entry{e, 1});
  }

  std::size_t steps() const { return steps_; }
  std::size_t size() const { return map_.size(); }
  const std::unordered_map<std::string, Entry>& entries() const { return map_; }

  void advance(const MemoryBudget& budget) {
    if (steps_ >= 31) throw std::overflow_error("walk distribution counts exceed 64 bits past 31 steps");
    std::unordered_map<std::string, Entry> next;
    next.reserve(map_.size() * 3);
    std::size_t key_bytes = 0;
    for (const auto& [key, entry] : map_) {
      for (Letter x : kGenerators) {
        auto v = group_.times(entry.element, x);
        auto k = group_.key(v);
        auto it = next.find(k);
        if (it == next.end()) {
          key_bytes += k.size();
          next.emplace(std::move(k), Entry{std::move(v), entry.count});
          if (!budget.allows(next.size(), key_bytes)) {
            throw ResourceError("exact count: reachable set after " + std::to_string(steps_ + 1) +
                                    " steps exceeds memory budget at " +
                                    std::to_string(next.size()) + " elements",
                                next.size(), steps_);
          }
        } else {
          it->second.count += entry.count;
        }
      }
    }
    map_ = std::move(next);
    ++steps_;
  }

 private:
  G group_;
  std::unordered_map<std::string, Entry> map_;
  std::size_t steps_ = 0;
};

// #T(L): words of length L over the four generators that evaluate to the
// identity. With a = ceil(L/2), b = floor(L/2),
//   #T(L) = sum_g N_a(g) N_b(g^-1) = sum_g N_a(g) N_b(g),
// since the formal inverse is a length-preserving bijection.
template <GroupOracle G>
BigCount exact_return_count(const G& g, std::int64_t L, const MemoryBudget& budget = {}) {
  if (L < 0) throw std::domain_error("exact_return_count: negative length");
  WalkDistribution<G> dist(g);
  const auto b = static_cast<std::size_t>(L / 2);
  while (dist.steps() < b) dist.advance(budget);
  if (L % 2 == 0) {
    BigCount total = 0;
    for (const auto& [key, e] : dist.entries()) {
      BigCount c = e.count;
      total += c * c;
    }
    return total;
  }
  std::unordered_map<std::string, std::uint64_t> lower;
  lower.reserve(dist.size());
  for (const auto& [key, e] : dist.entries()) lower.emplace(key, e.count);
  dist.advance(budget);
  BigCount total = 0;
  for (const auto& [key, e] : dist.entries()) {
    if (auto it = lower.find(key); it != lower.end()) total += BigCount(e.count) * it->second;
  }
  return total;
}

struct ExactCogrowth {
  std::int64_t L = 0;
  BigCount trivial;   // #T(L)
  BigCount balanced;  // #C(L)
  BigCount total;     // 4^L

  BigRational p() const { return BigRational(trivial, total); }
  BigRational p_hat() const { return balanced == 0 ? BigRational(0) : BigRational(trivial, balanced); }
  double root_p() const { return root_of(trivial, total, L); }
  double root_p_hat() const { return balanced == 0 ? 0.0 : root_of(trivial, balanced, L); }
};

template <GroupOracle G>
ExactCogrowth exact_cogrowth(const G& g, std::int64_t L, const MemoryBudget& budget = {}) {
  return {L, exact_return_count(g, L, budget), count_balanced(L), pow4(L)};
}

template <GroupOracle G>
BigRational exact_p_hat(const G& g, std::int64_t L, const MemoryBudget& budget = {}) {
  if (L % 2 != 0) throw std::domain_error("exact_p_hat: length must be even");
  return exact_cogrowth(g, L, budget).p_hat();
}

inline CogrowthRow exact_row(std::string_view group, const ExactCogrowth& ex) {
  CogrowthRow row;
  row.group = std::string(group);
  row.L = ex.L;
  row.method = "exact";
  row.sample_size = ex.balanced;
  row.trivial_count = ex.trivial;
  row.p_hat = ex.balanced == 0 ? 0.0 : ex.p_hat().convert_to<double>();
  row.root_L = ex.root_p_hat();
  row.std_error = 0;
  return row;
}

template <GroupOracle G>
CogrowthRow exact_row(const G& g, std::int64_t L, const MemoryBudget& budget = {}) {
  return exact_row(G::kName, exact_cogrowth(g, L, budget));
}

// ---------------------------------------------------------------------------
// Direct Monte Carlo over uniform balanced words.

inline constexpr std::uint64_t kMonteCarloChunk = 4096;

template <GroupOracle G>
CogrowthRow mc_trivial_proportion(const G& g, std::int64_t L, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads = 1) {
  if (samples == 0) throw std::invalid_argument("mc_trivial_proportion: samples must be >= 1");
  const BalancedSampler sampler(L);
  const std::uint64_t units = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<std::uint64_t> hits(units, 0);
  parallel_for(units, threads, [&](std::size_t u) {
    RngStream rng(seed, u);
    const std::uint64_t n = std::min(kMonteCarloChunk, samples - u * kMonteCarloChunk);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < n; ++s) h += identity_test(g, sampler(rng)) ? 1 : 0;
    hits[u] = h;
  });
  std::uint64_t trivial = 0;
  for (auto h : hits) trivial += h;
  CogrowthRow row;
  row.group = std::string(G::kName);
  row.L = L;
  row.method = "mc";
  row.sample_size = samples;
  row.trivial_count = trivial;
  row.p_hat = static_cast<double>(trivial) / static_cast<double>(samples);
  row.root_L = L == 0 ? 1.0 : std::pow(row.p_hat, 1.0 / static_cast<double>(L));
  row.std_error = std::sqrt(row.p_hat * (1 - row.p_hat) / static_cast<double>(samples));
  row.seed = seed;
  return row;
}

// ---------------------------------------------------------------------------
// Batch collision estimator. One iteration: draw a balanced word of length L,
// take the abelian image (k, l) of its first half, draw N uniform words of
// length L/2 with image (k, l), and count identical pairs among the N(N-1)/2
// unordered pairs. The mean over iterations estimates p_hat(L).

struct BatchIteration {
  AbelianImage image;
  std::uint64_t identical_pairs = 0;
};

inline std::uint64_t count_identical_pairs(std::vector<std::string>& keys) {
  std::sort(keys.begin(), keys.end());
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const std::uint64_t c = j - i;
    pairs += c * (c - 1) / 2;
    i = j;
  }
  return pairs;
}

template <GroupOracle G>
BatchIteration batch_iteration(const G& g, const BalancedSampler& balanced, std::uint64_t N,
                               RngStream& rng) {
  const Word seed_word = balanced(rng);
  const std::int64_t half = balanced.length() / 2;
  BatchIteration it;
  it.image = abelianize(seed_word.data(), seed_word.data() + half);
  const ConstrainedSampler sampler(half, it.image.k, it.image.l);
  std::vector<std::string> keys;
  keys.reserve(N);
  for (std::uint64_t n = 0; n < N; ++n) keys.push_back(g.key(g.evaluate(sampler(rng))));
  it.identical_pairs = count_identical_pairs(keys);
  return it;
}

template <GroupOracle G>
CogrowthRow batch_collision_estimate(const G& g, std::int64_t L, std::uint64_t N,
                                     std::uint64_t iterations, std::uint64_t seed,
                                     unsigned threads = 1) {
  if (L < 2 || L % 2 != 0) throw std::domain_error("batch estimate: L must be even and >= 2");
  if (N < 2) throw std::invalid_argument("batch estimate: batch size N must be >= 2");
  if (iterations == 0) throw std::invalid_argument("batch estimate: iterations must be >= 1");
  const BalancedSampler balanced(L);
  std::vector<std::uint64_t> pairs(iterations, 0);
  parallel_for(iterations, threads, [&](std::size_t i) {
    RngStream rng(seed, i);
    pairs[i] = batch_iteration(g, balanced, N, rng).identical_pairs;
  });
  const double per_batch = static_cast<double>(N) * static_cast<double>(N - 1) / 2.0;
  double sum = 0, sum_sq = 0;
  BigCount total_pairs = 0;
  for (auto p : pairs) {
    const double q = static_cast<double>(p) / per_batch;
    sum += q;
    sum_sq += q * q;
    total_pairs += p;
  }
  const double n = static_cast<double>(iterations);
  const double mean = sum / n;
  CogrowthRow row;
  row.group = std::string(G::kName);
  row.L = L;
  row.method = "batch";
  row.sample_size = BigCount(iterations) * N * (N - 1) / 2;
  row.trivial_count = total_pairs;
  row.p_hat = mean;
  row.root_L = std::pow(mean, 1.0 / static_cast<double>(L));
  if (iterations > 1) {
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    row.std_error = std::sqrt(var / n);
  } else {
    row.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  row.seed = seed;
  return row;
}

// Fills root_L (exact rows keep their log-space root) and the 20-step ratio (p_hat(L) / p_hat(L-20))^(1/20).
inline std::vector<CogrowthRow> cogrowth_table(std::vector<CogrowthRow> rows) {
  for (auto& r : rows) {
    if (r.method != "exact") r.root_L = r.L == 0 ? 1.0 : std::pow(r.p_hat, 1.0 / static_cast<double>(r.L));
    r.ratio_20.reset();
  }
  for (auto& r : rows) {
    for (const auto& prev : rows) {
      if (prev.L == r.L - 20 && prev.group == r.group && prev.p_hat > 0) {
        r.ratio_20 = std::pow(r.p_hat / prev.p_hat, 1.0 / 20.0);
      }
    }
  }
  return rows;
}

}  // namespace thompson
