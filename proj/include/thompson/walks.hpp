#pragma once

// Exact sphere enumeration and random-walk experiments on F.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "thompson/fordham.hpp"
#include "thompson/normal_form.hpp"
#include "thompson/parallel.hpp"
#include "thompson/rng.hpp"
#include "thompson/sampling.hpp"

namespace thompson {

// ---------------------------------------------------------------------------
// Breadth-first enumeration from the identity.

struct SphereCensus {
  std::vector<std::uint64_t> g;  // sphere sizes g_0..g_R
  std::vector<std::uint64_t> b;  // ball sizes b_n = g_0 + ... + g_n

  std::size_t radius() const { return g.empty() ? 0 : g.size() - 1; }
};

// Calls visit(element, depth) once per element of the ball of radius R, in
// order of depth. Throws ResourceError when the visited set would exceed the
// budget; last_completed() is then the deepest finished sphere.
inline SphereCensus bfs_visit(std::size_t R, const MemoryBudget& budget,
                              const std::function<void(const NormalForm&, std::size_t)>& visit) {
  SphereCensus census;
  // A neighbour of sphere d lies in sphere d-1, d or d+1, so three spheres of
  // keys are enough to deduplicate exactly.
  std::unordered_set<std::string> previous, current{NormalForm{}.key()};
  std::vector<NormalForm> frontier{NormalForm{}};
  for (std::size_t d = 0;; ++d) {
    for (const auto& u : frontier) {
      if (visit) visit(u, d);
    }
    census.g.push_back(frontier.size());
    census.b.push_back((d == 0 ? 0 : census.b.back()) + frontier.size());
    if (d == R) break;
    std::unordered_set<std::string> upcoming;
    std::vector<NormalForm> next;
    std::size_t key_bytes = 0;
    for (const auto& k : previous) key_bytes += k.size();
    for (const auto& k : current) key_bytes += k.size();
    const std::size_t held = previous.size() + current.size() + frontier.size();
    for (const auto& u : frontier) {
      for (Letter x : kGenerators) {
        NormalForm v = u.times(x);
        std::string k = v.key();
        if (previous.count(k) || current.count(k)) continue;
        const std::size_t klen = k.size();
        if (upcoming.insert(std::move(k)).second) {
          key_bytes += klen;
          next.push_back(std::move(v));
          if (!budget.allows(held + 2 * upcoming.size(), 2 * key_bytes)) {
            throw ResourceError("bfs: sphere " + std::to_string(d + 1) +
                                    " exceeds memory budget at " +
                                    std::to_string(census.b.back() + upcoming.size()) +
                                    " elements; last completed radius " + std::to_string(d),
                                census.b.back() + upcoming.size(), d);
          }
        }
      }
    }
    previous = std::move(current);
    current = std::move(upcoming);
    frontier = std::move(next);
  }
  return census;
}

inline SphereCensus bfs_spheres(std::size_t R, const MemoryBudget& budget = {}) {
  return bfs_visit(R, budget, nullptr);
}

inline std::vector<double> successive_quotients(const std::vector<std::uint64_t>& g) {
  std::vector<double> q;
  for (std::size_t n = 1; n < g.size(); ++n) {
    q.push_back(static_cast<double>(g[n]) / static_cast<double>(g[n - 1]));
  }
  return q;
}

inline std::vector<double> successive_quotients(const SphereCensus& census) {
  return successive_quotients(census.g);
}

// ---------------------------------------------------------------------------
// Local geometry around an element.

struct LocalView {
  std::uint64_t length = 0;
  std::array<std::uint64_t, 4> neighbour_length{};  // |u g| for g in a, A, b, B

  int outward_valence() const {
    int out = 0;
    for (auto l : neighbour_length) out += l == length + 1 ? 1 : 0;
    return out;
  }
};

inline LocalView local_view(const NormalForm& u) {
  LocalView v;
  v.length = fordham_length(u);
  for (std::size_t i = 0; i < 4; ++i) v.neighbour_length[i] = fordham_length(u.times(kGenerators[i]));
  return v;
}

inline int outward_valence(const NormalForm& u) { return local_view(u).outward_valence(); }
inline int inward_valence(const NormalForm& u) { return 4 - outward_valence(u); }
inline bool is_dead_end(const NormalForm& u) { return outward_valence(u) == 0; }

// Distinct elements u g1 g2 with |u g1 g2| = |u| + 2. Such a point passes
// through an outward neighbour u g1, so only those are expanded.
inline int dist2_count(const NormalForm& u, const LocalView& view) {
  std::array<std::string, 16> keys;
  std::size_t n = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (view.neighbour_length[i] != view.length + 1) continue;
    const NormalForm v = u.times(kGenerators[i]);
    for (Letter y : kGenerators) {
      const NormalForm w = v.times(y);
      if (fordham_length(w) == view.length + 2) keys[n++] = w.key();
    }
  }
  std::sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n));
  return static_cast<int>(std::unique(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n)) -
                          keys.begin());
}

inline int dist2_count(const NormalForm& u) { return dist2_count(u, local_view(u)); }

// ---------------------------------------------------------------------------
// Random-walk experiments. Walk j of schedule entry s uses stream
// (s << 40) | j, so every walk is reproducible on its own.

inline constexpr std::uint64_t kWalkChunk = 256;

inline std::uint64_t walk_stream_id(std::size_t schedule_index, std::uint64_t walk) {
  return (static_cast<std::uint64_t>(schedule_index) << 40) | walk;
}

inline NormalForm random_walk_element(std::size_t n, RngStream& rng) {
  FElementBuilder b;
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 32 == 0) bits = rng();
    b *= kGenerators[bits & 3];
    bits >>= 2;
  }
  return b.value();
}

// Runs `samples` walks for every length in the schedule and hands each
// endpoint to fn(schedule_index, walk_length, element, acc) where acc is the
// per-work-unit accumulator. Accumulators are merged in unit order.
template <class Acc, class Fn>
Acc run_walks(const std::vector<std::size_t>& schedule, std::uint64_t samples, std::uint64_t seed,
              unsigned threads, Fn&& fn) {
  const std::uint64_t chunks = (samples + kWalkChunk - 1) / kWalkChunk;
  const std::size_t units = schedule.size() * chunks;
  std::vector<Acc> partial(units);
  parallel_for(units, threads, [&](std::size_t unit) {
    const std::size_t s = unit / chunks;
    const std::uint64_t c = unit % chunks;
    const std::uint64_t end = std::min(samples, (c + 1) * kWalkChunk);
    for (std::uint64_t j = c * kWalkChunk; j < end; ++j) {
      RngStream rng(seed, walk_stream_id(s, j));
      fn(s, schedule[s], random_walk_element(schedule[s], rng), partial[unit]);
    }
  });
  Acc total{};
  for (auto& p : partial) total += p;
  return total;
}

struct GrowthRow {
  std::uint64_t lo = 0, hi = 0;
  std::uint64_t words = 0;
  double avg_outward_valence = 0;
  double avg_dist2 = 0;
  double dist2_root = 0;
};

struct EscapeRow {
  std::uint64_t n = 0;
  std::uint64_t walks = 0;
  double mean = 0;
  double sd = 0;
  double rate = 0;
};

struct DeadEndRow {
  std::uint64_t lo = 0, hi = 0;
  std::uint64_t words = 0;
  std::uint64_t dead_ends = 0;
  double fraction = 0;
};

namespace detail {

struct BucketSums {
  std::uint64_t words = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

struct BucketAcc {
  std::map<std::uint64_t, BucketSums> buckets;
  BucketAcc& operator+=(const BucketAcc& o) {
    for (const auto& [k, s] : o.buckets) {
      auto& t = buckets[k];
      t.words += s.words;
      t.a += s.a;
      t.b += s.b;
    }
    return *this;
  }
};

struct MomentAcc {
  std::vector<std::uint64_t> count, sum, sum_sq;
  MomentAcc& operator+=(const MomentAcc& o) {
    if (count.size() < o.count.size()) {
      count.resize(o.count.size());
      sum.resize(o.count.size());
      sum_sq.resize(o.count.size());
    }
    for (std::size_t i = 0; i < o.count.size(); ++i) {
      count[i] += o.count[i];
      sum[i] += o.sum[i];
      sum_sq[i] += o.sum_sq[i];
    }
    return *this;
  }
};

}  // namespace detail

inline std::vector<std::size_t> default_walk_schedule() {
  std::vector<std::size_t> s;
  for (std::size_t n = 50; n <= 1000; n += 50) s.push_back(n);
  return s;
}

inline constexpr std::uint64_t kGrowthBucketWidth = 20;
inline constexpr std::uint64_t kDeadEndBucketWidth = 40;

inline std::vector<GrowthRow> growth_experiment(const std::vector<std::size_t>& schedule,
                                                std::uint64_t samples_per_length,
                                                std::uint64_t seed, unsigned threads = 1) {
  if (schedule.empty()) throw std::invalid_argument("growth experiment: empty walk schedule");
  auto acc = run_walks<detail::BucketAcc>(
      schedule, samples_per_length, seed, threads,
      [](std::size_t, std::size_t, const NormalForm& u, detail::BucketAcc& a) {
        const LocalView view = local_view(u);
        auto& s = a.buckets[view.length / kGrowthBucketWidth];
        ++s.words;
        s.a += static_cast<std::uint64_t>(view.outward_valence());
        s.b += static_cast<std::uint64_t>(dist2_count(u, view));
      });
  std::vector<GrowthRow> rows;
  for (const auto& [bucket, s] : acc.buckets) {
    GrowthRow r;
    r.lo = bucket * kGrowthBucketWidth;
    r.hi = r.lo + kGrowthBucketWidth - 1;
    r.words = s.words;
    r.avg_outward_valence = static_cast<double>(s.a) / static_cast<double>(s.words);
    r.avg_dist2 = static_cast<double>(s.b) / static_cast<double>(s.words);
    r.dist2_root = std::sqrt(r.avg_dist2);
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<EscapeRow> escape_experiment(const std::vector<std::size_t>& walk_lengths,
                                                std::uint64_t samples, std::uint64_t seed,
                                                unsigned threads = 1) {
  const std::size_t k = walk_lengths.size();
  auto acc = run_walks<detail::MomentAcc>(
      walk_lengths, samples, seed, threads,
      [k](std::size_t s, std::size_t, const NormalForm& u, detail::MomentAcc& a) {
        if (a.count.empty()) {
          a.count.assign(k, 0);
          a.sum.assign(k, 0);
          a.sum_sq.assign(k, 0);
        }
        const std::uint64_t l = fordham_length(u);
        ++a.count[s];
        a.sum[s] += l;
        a.sum_sq[s] += l * l;
      });
  std::vector<EscapeRow> rows;
  for (std::size_t s = 0; s < k; ++s) {
    EscapeRow r;
    r.n = walk_lengths[s];
    r.walks = s < acc.count.size() ? acc.count[s] : 0;
    if (r.walks > 0) {
      const double n = static_cast<double>(r.walks);
      r.mean = static_cast<double>(acc.sum[s]) / n;
      const double var =
          r.walks > 1 ? (static_cast<double>(acc.sum_sq[s]) - n * r.mean * r.mean) / (n - 1) : 0.0;
      r.sd = std::sqrt(std::max(0.0, var));
      r.rate = r.n == 0 ? 0.0 : r.mean / static_cast<double>(r.n);
    }
    rows.push_back(r);
  }
  return rows;
}

// Counts sampled occurrences, not distinct elements.
inline std::vector<DeadEndRow> dead_end_census(const std::vector<std::size_t>& schedule,
                                               std::uint64_t samples_per_length,
                                               std::uint64_t seed, unsigned threads = 1) {
  if (schedule.empty()) throw std::invalid_argument("dead-end census: empty walk schedule");
  auto acc = run_walks<detail::BucketAcc>(
      schedule, samples_per_length, seed, threads,
      [](std::size_t, std::size_t, const NormalForm& u, detail::BucketAcc& a) {
        const LocalView view = local_view(u);
        auto& s = a.buckets[view.length / kDeadEndBucketWidth];
        ++s.words;
        s.a += view.outward_valence() == 0 ? 1 : 0;
      });
  std::vector<DeadEndRow> rows;
  for (const auto& [bucket, s] : acc.buckets) {
    DeadEndRow r;
    r.lo = bucket * kDeadEndBucketWidth;
    r.hi = r.lo + kDeadEndBucketWidth - 1;
    r.words = s.words;
    r.dead_ends = s.a;
    r.fraction = static_cast<double>(s.a) / static_cast<double>(s.words);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace thompson
