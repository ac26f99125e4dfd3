#pragma once

// Normal forms of Thompson's group F over the infinite generating set
// x0, x1, x2, ... with relations x_j x_i = x_i x_{j+1} for i < j.
//
// An element is stored as x_{i1}^{r1} ... x_{in}^{rn} x_{jm}^{-sm} ... x_{j1}^{-s1}
// with strictly increasing index sequences on both sides. The stored form
// always satisfies the uniqueness condition: whenever an index i occurs on
// both sides, index i+1 occurs on at least one side.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thompson/words.hpp"

namespace thompson {

struct Term {
  std::uint32_t index = 0;
  std::uint32_t exponent = 0;
  friend constexpr bool operator==(Term, Term) = default;
};

using Terms = std::vector<Term>;

class NormalForm;

namespace detail {

// Positive-times-inverse-positive form P N^-1 with P, N sorted but without
// the uniqueness condition. Right multiplication by letters is O(|P| + |N|).
class SemiNormalForm {
 public:
  SemiNormalForm() = default;
  SemiNormalForm(Terms pos, Terms neg) : pos_(std::move(pos)), neg_(std::move(neg)) {}

  void push(Letter x) {
    if (x.sign > 0) {
      push_positive(x.generator);
    } else {
      push_negative(x.generator);
    }
  }

  // Exhaustive uniqueness reduction, processed from the highest index down.
  // A reduction at index i removes one x_i from each side and lowers every
  // index above i by one; `shift` counts reductions so far, and a kept term
  // remembers the count at the time it was kept so its final index can be
  // recovered at the end.
  void reduce() {
    scratch_.clear();
    std::uint32_t shift = 0;
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t next_above = kNone;
    std::size_t a = pos_.size(), b = neg_.size();
    bool any = false;
    while (a > 0 || b > 0) {
      std::uint32_t i = 0;
      if (a > 0) i = pos_[a - 1].index;
      if (b > 0) i = std::max(i, neg_[b - 1].index);
      std::uint32_t ep = 0, en = 0;
      if (a > 0 && pos_[a - 1].index == i) ep = pos_[--a].exponent;
      if (b > 0 && neg_[b - 1].index == i) en = neg_[--b].exponent;
      while (ep > 0 && en > 0 && next_above != i + 1) {
        --ep;
        --en;
        ++shift;
        any = true;
        if (next_above != kNone) --next_above;
      }
      if (ep > 0) scratch_.push_back({i, ep, shift, true});
      if (en > 0) scratch_.push_back({i, en, shift, false});
      if (ep > 0 || en > 0) next_above = i;
    }
    if (!any) return;
    pos_.clear();
    neg_.clear();
    for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) {
      Term t{it->index - (shift - it->shift_at), it->exponent};
      (it->positive ? pos_ : neg_).push_back(t);
    }
  }

  const Terms& positive() const { return pos_; }
  const Terms& negative() const { return neg_; }
  Terms& positive() { return pos_; }
  Terms& negative() { return neg_; }

 private:
  // P N^-1 x_k: move x_k left through N^-1 (smallest index first).
  void push_positive(std::uint32_t k) {
    std::size_t s = 0;
    for (; s < neg_.size(); ++s) {
      Term& t = neg_[s];
      if (t.index < k) {
        k += t.exponent;
      } else if (t.index == k) {
        if (--t.exponent == 0) neg_.erase(neg_.begin() + static_cast<std::ptrdiff_t>(s));
        return;
      } else {
        break;
      }
    }
    for (std::size_t r = s; r < neg_.size(); ++r) ++neg_[r].index;
    insert_into_positive(k);
  }

  // P x_k with P sorted: letters of P above k shift up by one.
  void insert_into_positive(std::uint32_t k) {
    auto it = std::lower_bound(pos_.begin(), pos_.end(), k,
                               [](const Term& t, std::uint32_t v) { return t.index < v; });
    for (auto r = it; r != pos_.end(); ++r) {
      if (r->index > k) ++r->index;
    }
    if (it != pos_.end() && it->index == k) {
      ++it->exponent;
    } else {
      pos_.insert(it, Term{k, 1});
    }
  }

  // P N^-1 x_k^-1 = P (x_k N)^-1: move x_k right through N.
  void push_negative(std::uint32_t k) {
    std::size_t s = 0;
    for (; s < neg_.size() && neg_[s].index < k; ++s) k += neg_[s].exponent;
    if (s < neg_.size() && neg_[s].index == k) {
      ++neg_[s].exponent;
    } else {
      neg_.insert(neg_.begin() + static_cast<std::ptrdiff_t>(s), Term{k, 1});
    }
  }

  Terms pos_;
  Terms neg_;
  struct ScratchEntry {
    std::uint32_t index, exponent, shift_at;
    bool positive;
  };
  std::vector<ScratchEntry> scratch_;

  friend class thompson::NormalForm;
};

inline void check_strictly_increasing(const Terms& terms, const char* side) {
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].exponent == 0) {
      throw std::invalid_argument(std::string("normal form: zero exponent in ") + side + " part");
    }
    if (t > 0 && terms[t - 1].index >= terms[t].index) {
      throw std::invalid_argument(std::string("normal form: indices not strictly increasing in ") +
                                  side + " part");
    }
  }
}

inline void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

}  // namespace detail

class NormalForm {
 public:
  NormalForm() = default;

  // Accepts any sorted pair of parts and reduces it to the unique form.
  static NormalForm from_parts(Terms pos, Terms neg) {
    detail::check_strictly_increasing(pos, "positive");
    detail::check_strictly_increasing(neg, "negative");
    detail::SemiNormalForm s(std::move(pos), std::move(neg));
    s.reduce();
    return NormalForm(std::move(s.pos_), std::move(s.neg_));
  }

  static NormalForm generator(Letter x) {
    detail::SemiNormalForm s;
    s.push(x);
    return NormalForm(std::move(s.pos_), std::move(s.neg_));
  }

  const Terms& positive() const { return pos_; }
  const Terms& negative() const { return neg_; }
  bool is_identity() const { return pos_.empty() && neg_.empty(); }

  NormalForm times(Letter x) const {
    detail::SemiNormalForm s(pos_, neg_);
    s.push(x);
    s.reduce();
    return NormalForm(std::move(s.pos_), std::move(s.neg_));
  }

  NormalForm inverse() const { return NormalForm(neg_, pos_); }

  // Expanded word x_{i1}^{r1} ... x_{j1}^{-s1} over the infinite alphabet.
  Word to_word() const {
    Word w;
    for (const Term& t : pos_) w.insert(w.end(), t.exponent, Letter{t.index, 1});
    for (auto it = neg_.rbegin(); it != neg_.rend(); ++it) {
      w.insert(w.end(), it->exponent, Letter{it->index, -1});
    }
    return w;
  }

  // Length-prefixed varint encoding of both parts; equal keys iff equal elements.
  std::string key() const {
    std::string out;
    out.reserve(2 + 2 * (pos_.size() + neg_.size()));
    for (const Terms* part : {&pos_, &neg_}) {
      detail::put_varint(out, part->size());
      for (const Term& t : *part) {
        detail::put_varint(out, t.index);
        detail::put_varint(out, t.exponent);
      }
    }
    return out;
  }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  NormalForm(Terms pos, Terms neg) : pos_(std::move(pos)), neg_(std::move(neg)) {}

  Terms pos_;
  Terms neg_;
};

// Running product of letters, kept in reduced form after every step.
class FElementBuilder {
 public:
  FElementBuilder() = default;
  explicit FElementBuilder(const NormalForm& u) : form_(u.positive(), u.negative()) {}

  FElementBuilder& operator*=(Letter x) {
    form_.push(x);
    form_.reduce();
    return *this;
  }

  NormalForm value() const { return NormalForm::from_parts(form_.positive(), form_.negative()); }
  const Terms& positive() const { return form_.positive(); }
  const Terms& negative() const { return form_.negative(); }

 private:
  detail::SemiNormalForm form_;
};

inline NormalForm normalize(const Letter* first, const Letter* last) {
  detail::SemiNormalForm s;
  for (; first != last; ++first) s.push(*first);
  return NormalForm::from_parts(std::move(s.positive()), std::move(s.negative()));
}

inline NormalForm normalize(const Word& w) { return normalize(w.data(), w.data() + w.size()); }

inline bool is_identity_f(const Word& w) { return normalize(w).is_identity(); }

inline NormalForm multiply(const NormalForm& u, const NormalForm& v) {
  detail::SemiNormalForm s(u.positive(), u.negative());
  for (Letter x : v.to_word()) s.push(x);
  return NormalForm::from_parts(std::move(s.positive()), std::move(s.negative()));
}

inline NormalForm inverse(const NormalForm& u) { return u.inverse(); }

inline std::string canonical_key(const NormalForm& u) { return u.key(); }

inline nlohmann::json to_json(const NormalForm& u) {
  auto part = [](const Terms& terms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Term& t : terms) arr.push_back({t.index, t.exponent});
    return arr;
  };
  return {{"pos", part(u.positive())}, {"neg", part(u.negative())}};
}

// Rejects input that violates ordering or the uniqueness condition.
inline NormalForm normal_form_from_json(const nlohmann::json& j) {
  auto part = [&](const char* name) {
    Terms terms;
    for (const auto& entry : j.at(name)) {
      if (!entry.is_array() || entry.size() != 2) {
        throw std::invalid_argument(std::string("normal form JSON: malformed entry in ") + name);
      }
      terms.push_back({entry[0].get<std::uint32_t>(), entry[1].get<std::uint32_t>()});
    }
    return terms;
  };
  Terms pos = part("pos");
  Terms neg = part("neg");
  NormalForm u = NormalForm::from_parts(pos, neg);
  if (u.positive() != pos || u.negative() != neg) {
    throw std::invalid_argument("normal form JSON: uniqueness condition violated");
  }
  return u;
}

}  // namespace thompson
