#pragma once

// Group oracles: every estimator is written against the GroupOracle concept
// and works for F, Z wr Z and the free group F2 alike. All three groups are
// generated by two letters {a, b} and their inverses.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thompson/fordham.hpp"
#include "thompson/normal_form.hpp"
#include "thompson/words.hpp"

namespace thompson {

struct OracleCapabilities {
  bool identity_test = true;
  bool canonical_key = true;
  bool exact_length = false;
};

template <class G>
concept GroupOracle = requires(const G& g, const typename G::Element& e, Letter x, const Word& w) {
  { G::kName } -> std::convertible_to<std::string_view>;
  { G::kRank } -> std::convertible_to<int>;
  { G::kCapabilities } -> std::convertible_to<OracleCapabilities>;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.times(e, x) } -> std::same_as<typename G::Element>;
  { g.evaluate(w) } -> std::same_as<typename G::Element>;
  { g.is_identity(e) } -> std::same_as<bool>;
  { g.key(e) } -> std::same_as<std::string>;
};

template <class G>
concept MeasuredGroupOracle = GroupOracle<G> && requires(const G& g, const typename G::Element& e) {
  { g.length(e) } -> std::same_as<std::uint64_t>;
};

template <GroupOracle G>
bool identity_test(const G& g, const Word& w) {
  return g.is_identity(g.evaluate(w));
}

// ---------------------------------------------------------------------------
// Thompson's group F.

struct FOracle {
  using Element = NormalForm;
  static constexpr std::string_view kName = "f";
  static constexpr int kRank = 2;
  static constexpr OracleCapabilities kCapabilities{true, true, true};

  Element identity() const { return {}; }
  Element times(const Element& e, Letter x) const { return e.times(x); }
  Element evaluate(const Word& w) const { return normalize(w); }
  bool is_identity(const Element& e) const { return e.is_identity(); }
  std::string key(const Element& e) const { return e.key(); }
  std::uint64_t length(const Element& e) const { return fordham_length(e); }
};

// ---------------------------------------------------------------------------
// Free group on a, b: elements are freely reduced words.

struct F2Oracle {
  using Element = Word;
  static constexpr std::string_view kName = "f2";
  static constexpr int kRank = 2;
  static constexpr OracleCapabilities kCapabilities{true, true, false};

  Element identity() const { return {}; }
  Element times(const Element& e, Letter x) const {
    Element out(e);
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
    return out;
  }
  Element evaluate(const Word& w) const { return free_reduce(w); }
  bool is_identity(const Element& e) const { return e.empty(); }
  std::string key(const Element& e) const { return to_string(e); }
};

// ---------------------------------------------------------------------------
// Z wr Z = <a, t | [a^(t^i), a^(t^j)]>. Letter a moves the lamp at the head,
// letter b (= t) moves the head.

struct WreathState {
  std::vector<std::pair<std::int64_t, std::int64_t>> lamps;  // sorted, no zero coefficients
  std::int64_t head = 0;

  bool is_identity() const { return lamps.empty() && head == 0; }

  void add_lamp(std::int64_t delta) {
    auto it = std::lower_bound(lamps.begin(), lamps.end(), head,
                               [](const auto& p, std::int64_t v) { return p.first < v; });
    if (it != lamps.end() && it->first == head) {
      it->second += delta;
      if (it->second == 0) lamps.erase(it);
    } else {
      lamps.insert(it, {head, delta});
    }
  }

  void apply(Letter x) {
    switch (x.generator) {
      case 0: add_lamp(x.sign); break;
      case 1: head += x.sign; break;
      default:
        throw std::domain_error("Z wr Z: generator index " + std::to_string(x.generator) +
                                " outside rank-2 alphabet");
    }
  }

  // Zigzag varints: lamp count, (position, coefficient) pairs, head offset.
  std::string key() const {
    auto zz = [](std::int64_t v) {
      return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
    };
    std::string out;
    detail::put_varint(out, lamps.size());
    for (const auto& [pos, coef] : lamps) {
      detail::put_varint(out, zz(pos));
      detail::put_varint(out, zz(coef));
    }
    detail::put_varint(out, zz(head));
    return out;
  }

  friend bool operator==(const WreathState&, const WreathState&) = default;
};

inline WreathState zwrz_evaluate(const Word& w) {
  WreathState s;
  for (Letter x : w) s.apply(x);
  return s;
}

struct ZwrZOracle {
  using Element = WreathState;
  static constexpr std::string_view kName = "zwrz";
  static constexpr int kRank = 2;
  static constexpr OracleCapabilities kCapabilities{true, true, false};

  Element identity() const { return {}; }
  Element times(const Element& e, Letter x) const {
    Element out(e);
    out.apply(x);
    return out;
  }
  Element evaluate(const Word& w) const { return zwrz_evaluate(w); }
  bool is_identity(const Element& e) const { return e.is_identity(); }
  std::string key(const Element& e) const { return e.key(); }
};

inline FOracle f_oracle() { return {}; }
inline F2Oracle f2_oracle() { return {}; }
inline ZwrZOracle zwrz_oracle() { return {}; }

enum class GroupKind { F, ZwrZ, F2 };

inline GroupKind parse_group(std::string_view s) {
  if (s == "f") return GroupKind::F;
  if (s == "zwrz") return GroupKind::ZwrZ;
  if (s == "f2") return GroupKind::F2;
  throw std::invalid_argument("unknown group '" + std::string(s) + "' (expected f, zwrz or f2)");
}

inline std::string_view group_name(GroupKind g) {
  switch (g) {
    case GroupKind::F: return FOracle::kName;
    case GroupKind::ZwrZ: return ZwrZOracle::kName;
    case GroupKind::F2: return F2Oracle::kName;
  }
  return "?";
}

template <class Fn>
decltype(auto) with_oracle(GroupKind g, Fn&& fn) {
  switch (g) {
    case GroupKind::ZwrZ: return std::forward<Fn>(fn)(ZwrZOracle{});
    case GroupKind::F2: return std::forward<Fn>(fn)(F2Oracle{});
    case GroupKind::F: break;
  }
  return std::forward<Fn>(fn)(FOracle{});
}

}  // namespace thompson
