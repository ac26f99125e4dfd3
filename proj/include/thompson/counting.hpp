#pragma once

// Exact counts of words over {a, A, b, B} by abelian image.

#include <cstdint>
#include <cstdlib>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thompson {

using BigCount = boost::multiprecision::cpp_int;

inline BigCount binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Row n of Pascal's triangle.
inline std::vector<BigCount> binomial_row(std::int64_t n) {
  std::vector<BigCount> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (std::int64_t k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return row;
}

// Number of sign patterns of length n with exponent sum s.
inline BigCount signed_count(std::int64_t n, std::int64_t s) {
  if (n < 0 || std::llabs(s) > n || (n - s) % 2 != 0) return 0;
  return binomial(n, (n + s) / 2);
}

// Words of length M with x0-exponent sum k and x1-exponent sum l, split by
// the number m of x0-letters: term m is C(M,m) * #signs(m,k) * #signs(M-m,l).
inline std::vector<BigCount> constrained_terms(std::int64_t M, std::int64_t k, std::int64_t l) {
  std::vector<BigCount> terms(static_cast<std::size_t>(M) + 1);
  if (M < 0) return {};
  const auto row = binomial_row(M);
  for (std::int64_t m = 0; m <= M; ++m) {
    if (m < std::llabs(k) || (m - k) % 2 != 0) continue;
    if (M - m < std::llabs(l) || (M - m - l) % 2 != 0) continue;
    terms[m] = row[m] * signed_count(m, k) * signed_count(M - m, l);
  }
  return terms;
}

inline BigCount count_constrained(std::int64_t M, std::int64_t k, std::int64_t l) {
  BigCount total = 0;
  for (const auto& t : constrained_terms(M, k, l)) total += t;
  return total;
}

// Balanced words of length L, summed over the number 2j of x0-letters:
// C(L,2j) C(2j,j) C(L-2j,(L-2j)/2). Zero for odd L.
inline std::vector<BigCount> balanced_terms(std::int64_t L) {
  if (L < 0 || L % 2 != 0) return {};
  std::vector<BigCount> terms(static_cast<std::size_t>(L / 2) + 1);
  for (std::int64_t j = 0; 2 * j <= L; ++j) {
    terms[j] = binomial(L, 2 * j) * binomial(2 * j, j) * binomial(L - 2 * j, (L - 2 * j) / 2);
  }
  return terms;
}

inline BigCount count_balanced(std::int64_t L) {
  BigCount total = 0;
  for (const auto& t : balanced_terms(L)) total += t;
  return total;
}

inline BigCount pow4(std::int64_t L) { return BigCount(1) << (2 * L); }

}  // namespace thompson
