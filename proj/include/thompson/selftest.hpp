#pragma once

// Exact checks that need no sampling. Each compares a library computation
// with published data or an independent oracle.

#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "thompson/cogrowth.hpp"
#include "thompson/counting.hpp"
#include "thompson/oracles.hpp"
#include "thompson/walks.hpp"

namespace thompson {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::uint64_t>& published_sphere_sizes() {
  static const std::vector<std::uint64_t> g = {1,    4,    12,    36,    108,   314,
                                               906,  2576, 7280,  20352, 56664, 156570};
  return g;
}

inline constexpr std::uint64_t kPublishedReturnCount14 = 1988452;
inline constexpr double kPublishedRoot14 = 0.704423677;

inline CheckResult check_sphere_series(const MemoryBudget& budget = {}) {
  const auto& want = published_sphere_sizes();
  const auto census = bfs_spheres(want.size() - 1, budget);
  std::ostringstream d;
  for (std::size_t n = 0; n < census.g.size(); ++n) d << (n ? "," : "") << census.g[n];
  return {"sphere series g_0..g_11", census.g == want, d.str()};
}

inline CheckResult check_return_count_14(const MemoryBudget& budget = {}) {
  const auto ex = exact_cogrowth(FOracle{}, 14, budget);
  const double root = ex.root_p();
  std::ostringstream d;
  d.precision(10);
  d << "#T(14)=" << ex.trivial << " p(14)^(1/14)=" << root;
  const bool ok = ex.trivial == kPublishedReturnCount14 && std::abs(root - kPublishedRoot14) <= 1e-8;
  return {"exact #T(14) and p(14)^(1/14)", ok, d.str()};
}

// Every element found at BFS depth d must have Fordham length d.
inline CheckResult check_fordham_matches_bfs(std::size_t R = 12, const MemoryBudget& budget = {}) {
  std::uint64_t checked = 0, mismatches = 0;
  bfs_visit(R, budget, [&](const NormalForm& u, std::size_t depth) {
    ++checked;
    if (fordham_length(u) != depth) ++mismatches;
  });
  std::ostringstream d;
  d << checked << " elements, " << mismatches << " mismatches";
  return {"fordham length equals BFS distance (radius " + std::to_string(R) + ")", mismatches == 0,
          d.str()};
}

// Closed walks on the 4-regular tree by distance from the root:
//   a_{n+1}(0) = a_n(1), a_{n+1}(1) = 4 a_n(0) + a_n(2),
//   a_{n+1}(d) = 3 a_n(d-1) + a_n(d+1) for d >= 2.
inline std::vector<BigCount> tree_return_counts(std::int64_t max_L) {
  std::vector<BigCount> a(static_cast<std::size_t>(max_L) + 2, 0), out;
  a[0] = 1;
  out.push_back(1);
  for (std::int64_t n = 0; n < max_L; ++n) {
    std::vector<BigCount> b(a.size(), 0);
    for (std::size_t d = 0; d + 1 < a.size(); ++d) {
      if (d == 0) {
        b[0] = a[1];
      } else {
        b[d] = (d == 1 ? 4 * a[0] : 3 * a[d - 1]) + a[d + 1];
      }
    }
    a = std::move(b);
    out.push_back(a[0]);
  }
  return out;
}

inline CheckResult check_f2_recurrence(std::int64_t max_L = 20, const MemoryBudget& budget = {}) {
  const auto want = tree_return_counts(max_L);
  std::int64_t bad = -1;
  for (std::int64_t L = 0; L <= max_L && bad < 0; ++L) {
    if (exact_return_count(F2Oracle{}, L, budget) != want[static_cast<std::size_t>(L)]) bad = L;
  }
  return {"F2 exact count equals tree recurrence (L <= " + std::to_string(max_L) + ")", bad < 0,
          bad < 0 ? "all lengths agree" : "first mismatch at L=" + std::to_string(bad)};
}

// Brute-force enumeration of all 4^n words.
inline CheckResult check_counts_brute_force(std::int64_t max_len = 10) {
  std::string failure;
  for (std::int64_t n = 0; n <= max_len && failure.empty(); ++n) {
    const std::int64_t span = 2 * n + 1;
    std::vector<BigCount> hist(static_cast<std::size_t>(span * span), 0);
    const std::uint64_t words = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 0; code < words; ++code) {
      std::int64_t k = 0, l = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        const Letter x = kGenerators[(code >> (2 * i)) & 3];
        (x.generator == 0 ? k : l) += x.sign;
      }
      hist[static_cast<std::size_t>((k + n) * span + (l + n))] += 1;
    }
    for (std::int64_t k = -n; k <= n && failure.empty(); ++k) {
      for (std::int64_t l = -n; l <= n; ++l) {
        if (count_constrained(n, k, l) != hist[static_cast<std::size_t>((k + n) * span + (l + n))]) {
          failure = "count_constrained(" + std::to_string(n) + "," + std::to_string(k) + "," +
                    std::to_string(l) + ")";
          break;
        }
      }
    }
    if (failure.empty() && count_balanced(n) != hist[static_cast<std::size_t>(n * span + n)]) {
      failure = "count_balanced(" + std::to_string(n) + ")";
    }
  }
  return {"balanced/constrained counts equal brute force (length <= " + std::to_string(max_len) + ")",
          failure.empty(), failure.empty() ? "all counts agree" : "mismatch: " + failure};
}

inline std::vector<CheckResult> run_selftest(const MemoryBudget& budget, std::ostream& progress) {
  std::vector<std::function<CheckResult()>> checks = {
      [&] { return check_sphere_series(budget); },
      [&] { return check_return_count_14(budget); },
      [&] { return check_fordham_matches_bfs(12, budget); },
      [&] { return check_f2_recurrence(20, budget); },
      [] { return check_counts_brute_force(10); },
  };
  std::vector<CheckResult> out;
  for (auto& c : checks) {
    out.push_back(c());
    progress << "selftest: " << (out.back().passed ? "PASS " : "FAIL ") << out.back().name << '\n';
  }
  return out;
}

}  // namespace thompson
