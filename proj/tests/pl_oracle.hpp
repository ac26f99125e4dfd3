#pragma once

// Independent model of F: x0 and x1 as piecewise-linear homeomorphisms of
// [0,1]. A word l1 l2 ... ln is the map l1 o l2 o ... o ln. Maps are kept
// exactly as breakpoint lists over dyadic rationals scaled by 2^126, with
// collinear breakpoints removed, so two words are equal in F iff their
// breakpoint lists are equal.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thompson/words.hpp"

namespace pl {

using Point = unsigned __int128;

inline constexpr Point H = Point{1} << 126;

struct Map {
  std::vector<std::pair<Point, Point>> bp;  // (x, f(x)) from (0,0) to (H,H)

  friend bool operator==(const Map&, const Map&) = default;
  bool is_identity() const { return bp.size() == 2; }

  // Slope on segment i as a signed power of two.
  int slope_log(std::size_t i) const {
    const Point dx = bp[i + 1].first - bp[i].first, dy = bp[i + 1].second - bp[i].second;
    Point q = dy >= dx ? dy / dx : dx / dy;
    int e = 0;
    while (q > 1) {
      q >>= 1;
      ++e;
    }
    return dy >= dx ? e : -e;
  }

  static Point scale(Point v, int e) { return e >= 0 ? v << e : v >> -e; }

  Point operator()(Point t) const {
    std::size_t i = 0;
    while (i + 2 < bp.size() && bp[i + 1].first <= t) ++i;
    return bp[i].second + scale(t - bp[i].first, slope_log(i));
  }

  Point inverse_at(Point y) const {
    std::size_t i = 0;
    while (i + 2 < bp.size() && bp[i + 1].second <= y) ++i;
    return bp[i].first + scale(y - bp[i].second, -slope_log(i));
  }

  void simplify() {
    std::vector<std::pair<Point, Point>> out = {bp.front()};
    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
      Map seg{{out.back(), bp[i], bp[i + 1]}};
      if (seg.slope_log(0) != seg.slope_log(1)) out.push_back(bp[i]);
    }
    out.push_back(bp.back());
    bp = std::move(out);
  }
};

inline Map make(std::vector<std::pair<Point, Point>> bp) {
  Map m{std::move(bp)};
  m.simplify();
  return m;
}

inline const Map& generator(thompson::Letter x) {
  static const Map a = make({{0, 0}, {H / 2, H / 4}, {3 * (H / 4), H / 2}, {H, H}});
  static const Map b =
      make({{0, 0}, {H / 2, H / 2}, {3 * (H / 4), 5 * (H / 8)}, {7 * (H / 8), 3 * (H / 4)}, {H, H}});
  static const Map ai = make({{0, 0}, {H / 4, H / 2}, {H / 2, 3 * (H / 4)}, {H, H}});
  static const Map bi =
      make({{0, 0}, {H / 2, H / 2}, {5 * (H / 8), 3 * (H / 4)}, {3 * (H / 4), 7 * (H / 8)}, {H, H}});
  if (x.generator == 0) return x.sign > 0 ? a : ai;
  if (x.generator == 1) return x.sign > 0 ? b : bi;
  throw std::domain_error("pl::generator: rank-2 letters only");
}

// f o g
inline Map compose(const Map& f, const Map& g) {
  std::vector<Point> xs;
  for (const auto& p : g.bp) xs.push_back(p.first);
  for (const auto& p : f.bp) xs.push_back(g.inverse_at(p.first));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Map h;
  for (Point x : xs) h.bp.emplace_back(x, f(g(x)));
  h.simplify();
  return h;
}

// x_n = x0^-(n-1) x1 x0^(n-1) for n >= 1.
inline thompson::Word expand(const thompson::Word& w) {
  thompson::Word out;
  for (auto x : w) {
    if (x.generator <= 1) {
      out.push_back(x);
      continue;
    }
    const std::uint32_t n = x.generator;
    for (std::uint32_t i = 0; i + 1 < n; ++i) out.push_back(thompson::kX0Inv);
    out.push_back(thompson::Letter{1, x.sign});
    for (std::uint32_t i = 0; i + 1 < n; ++i) out.push_back(thompson::kX0);
  }
  return out;
}

inline Map evaluate(const thompson::Word& w) {
  Map m = make({{0, 0}, {H, H}});
  for (auto x : expand(w)) m = compose(m, generator(x));
  return m;
}

inline bool is_identity(const thompson::Word& w) { return evaluate(w).is_identity(); }

inline std::string fingerprint(const thompson::Word& w) {
  std::string s;
  for (const auto& [x, y] : evaluate(w).bp) {
    s.append(reinterpret_cast<const char*>(&x), sizeof x);
    s.append(reinterpret_cast<const char*>(&y), sizeof y);
  }
  return s;
}

}  // namespace pl
