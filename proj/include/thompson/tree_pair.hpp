#pragma once

// Binary trees with carets numbered in infix order, and reduced tree pair
// diagrams for elements of F.
//
// A tree with n carets has n + 1 leaves numbered 0..n from the left; caret k
// sits between leaves k and k + 1 in infix order. The exponent of leaf k is
// the number of carets off the right spine whose leftmost leaf is k. For an
// element x_0^{a_0} x_1^{a_1} ... x_n^{-b_n} ... x_0^{-b_0} the domain tree
// carries the exponents a and the range tree carries b.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/normal_form.hpp"

namespace thompson {

class TreeStructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BinaryTree {
 public:
  static constexpr std::int32_t kLeaf = -1;

  BinaryTree() = default;

  std::size_t caret_count() const { return left_.size(); }
  std::size_t leaf_count() const { return left_.size() + 1; }
  std::int32_t root() const { return root_; }
  std::int32_t left(std::size_t caret) const { return left_[caret]; }
  std::int32_t right(std::size_t caret) const { return right_[caret]; }

  // Builds the unique tree with the given leaf exponents. `exponents` has one
  // entry per leaf; the last entry must be zero and the sequence must parse
  // into complete subtrees (see minimal_leaf_count).
  static BinaryTree from_exponents(const std::vector<std::uint32_t>& exponents) {
    if (exponents.empty() || exponents.back() != 0) {
      throw TreeStructureError("leaf exponent sequence must end with a zero");
    }
    BinaryTree t;
    const std::size_t n = exponents.size() - 1;
    t.left_.assign(n, kLeaf);
    t.right_.assign(n, kLeaf);
    std::size_t pos = 0;
    std::int32_t next = 0;
    std::int32_t prev_spine = kLeaf;
    while (pos < n) {
      std::int32_t sub = t.build_full(exponents, pos, next, n);
      std::int32_t spine = next++;
      t.left_[spine] = sub;
      if (prev_spine == kLeaf) {
        t.root_ = spine;
      } else {
        t.right_[prev_spine] = spine;
      }
      prev_spine = spine;
    }
    if (static_cast<std::size_t>(next) != n) {
      throw TreeStructureError("leaf exponent sequence does not describe a tree");
    }
    return t;
  }

  // Smallest leaf count for which the exponents (padded with zeros) form a tree.
  static std::size_t minimal_leaf_count(const std::vector<std::uint32_t>& exponents) {
    std::size_t pending = 0;
    for (std::uint32_t e : exponents) {
      pending = pending == 0 ? e : pending + e - 1;
    }
    return exponents.size() + pending + 1;
  }

  std::vector<std::uint32_t> leaf_exponents() const {
    const std::size_t n = caret_count();
    std::vector<std::uint32_t> exps(n + 1, 0);
    std::vector<std::int32_t> leftmost(n);
    for (std::size_t c = 0; c < n; ++c) {
      leftmost[c] = left_[c] == kLeaf ? static_cast<std::int32_t>(c) : leftmost[left_[c]];
    }
    std::vector<bool> on_right = right_spine_mask();
    for (std::size_t c = 0; c < n; ++c) {
      if (!on_right[c]) ++exps[leftmost[c]];
    }
    return exps;
  }

  // Root plus its chain of right children.
  std::vector<bool> right_spine_mask() const {
    std::vector<bool> mask(caret_count(), false);
    for (std::int32_t c = root_; c != kLeaf; c = right_[c]) mask[c] = true;
    return mask;
  }

  std::vector<bool> left_spine_mask() const {
    std::vector<bool> mask(caret_count(), false);
    for (std::int32_t c = root_; c != kLeaf; c = left_[c]) mask[c] = true;
    return mask;
  }

  // Carets whose two children are both leaves.
  bool is_exposed(std::size_t caret) const {
    return left_[caret] == kLeaf && right_[caret] == kLeaf;
  }

  // Replaces every marked (exposed) caret by a leaf and renumbers.
  BinaryTree without_carets(const std::vector<bool>& remove) const {
    const std::size_t n = caret_count();
    std::vector<std::int32_t> renumber(n, kLeaf);
    std::int32_t next = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!remove[c]) renumber[c] = next++;
    }
    BinaryTree t;
    t.left_.resize(next);
    t.right_.resize(next);
    auto map = [&](std::int32_t c) { return c == kLeaf ? kLeaf : renumber[c]; };
    for (std::size_t c = 0; c < n; ++c) {
      if (remove[c]) continue;
      t.left_[renumber[c]] = map(left_[c]);
      t.right_[renumber[c]] = map(right_[c]);
    }
    t.root_ = root_ == kLeaf ? kLeaf : renumber[root_];
    return t;
  }

  // Parenthesized text form: "." is a leaf, "(LR)" a caret with subtrees L, R.
  static BinaryTree parse(std::string_view text) {
    BinaryTree t;
    std::size_t pos = 0;
    t.root_ = t.parse_node(text, pos);
    if (pos != text.size()) throw TreeStructureError("trailing characters in tree text");
    return t;
  }

  std::string to_string() const {
    std::string out;
    write(out, root_);
    return out;
  }

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  // Full subtree from a preorder exponent run: the first entry d is the
  // length of the subtree's left spine; the right subtrees of the spine
  // follow, deepest first.
  std::int32_t build_full(const std::vector<std::uint32_t>& e, std::size_t& pos,
                          std::int32_t& next, std::size_t n) {
    if (pos >= n) throw TreeStructureError("leaf exponent sequence does not describe a tree");
    std::uint32_t d = e[pos++];
    std::int32_t cur = kLeaf;
    for (std::uint32_t j = 0; j < d; ++j) {
      if (static_cast<std::size_t>(next) >= n) {
        throw TreeStructureError("leaf exponent sequence does not describe a tree");
      }
      std::int32_t c = next++;
      left_[c] = cur;
      right_[c] = build_full(e, pos, next, n);
      cur = c;
    }
    return cur;
  }

  // Builds in infix order so caret ids come out numbered correctly.
  std::int32_t parse_node(std::string_view text, std::size_t& pos) {
    if (pos >= text.size()) throw TreeStructureError("unexpected end of tree text");
    if (text[pos] == '.') {
      ++pos;
      return kLeaf;
    }
    if (text[pos] != '(') {
      throw TreeStructureError("unexpected character in tree text at position " +
                               std::to_string(pos));
    }
    ++pos;
    std::int32_t l = parse_node(text, pos);
    std::int32_t c = static_cast<std::int32_t>(left_.size());
    left_.push_back(l);
    right_.push_back(kLeaf);
    std::int32_t r = parse_node(text, pos);
    right_[c] = r;
    if (pos >= text.size() || text[pos] != ')') {
      throw TreeStructureError("missing ')' in tree text at position " + std::to_string(pos));
    }
    ++pos;
    return c;
  }

  void write(std::string& out, std::int32_t c) const {
    if (c == kLeaf) {
      out.push_back('.');
      return;
    }
    out.push_back('(');
    write(out, left_[c]);
    write(out, right_[c]);
    out.push_back(')');
  }

  std::vector<std::int32_t> left_;
  std::vector<std::int32_t> right_;
  std::int32_t root_ = kLeaf;
};

struct TreePair {
  BinaryTree domain;
  BinaryTree range;

  bool is_reduced() const {
    if (domain.caret_count() != range.caret_count()) return false;
    for (std::size_t c = 0; c < domain.caret_count(); ++c) {
      if (domain.is_exposed(c) && range.is_exposed(c)) return false;
    }
    return true;
  }

  friend bool operator==(const TreePair&, const TreePair&) = default;
};

// Cancels common exposed carets until none remain.
inline TreePair reduce(TreePair t) {
  if (t.domain.leaf_count() != t.range.leaf_count()) {
    throw TreeStructureError("tree pair leaf counts differ: " +
                             std::to_string(t.domain.leaf_count()) + " vs " +
                             std::to_string(t.range.leaf_count()));
  }
  for (;;) {
    const std::size_t n = t.domain.caret_count();
    std::vector<bool> remove(n, false);
    bool any = false;
    for (std::size_t c = 0; c < n; ++c) {
      if (t.domain.is_exposed(c) && t.range.is_exposed(c)) {
        remove[c] = true;
        any = true;
      }
    }
    if (!any) return t;
    t.domain = t.domain.without_carets(remove);
    t.range = t.range.without_carets(remove);
  }
}

namespace detail {

inline std::vector<std::uint32_t> dense_exponents(const Terms& terms) {
  std::vector<std::uint32_t> e;
  if (!terms.empty()) e.assign(terms.back().index + 1, 0);
  for (const Term& t : terms) e[t.index] = t.exponent;
  return e;
}

inline Terms sparse_terms(const std::vector<std::uint32_t>& e) {
  Terms terms;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] != 0) terms.push_back({static_cast<std::uint32_t>(k), e[k]});
  }
  return terms;
}

}  // namespace detail

inline TreePair to_tree_pair(const NormalForm& u) {
  auto pos = detail::dense_exponents(u.positive());
  auto neg = detail::dense_exponents(u.negative());
  const std::size_t leaves =
      std::max(BinaryTree::minimal_leaf_count(pos), BinaryTree::minimal_leaf_count(neg));
  pos.resize(leaves, 0);
  neg.resize(leaves, 0);
  return reduce(TreePair{BinaryTree::from_exponents(pos), BinaryTree::from_exponents(neg)});
}

inline NormalForm from_tree_pair(const TreePair& t) {
  TreePair r = reduce(t);
  return NormalForm::from_parts(detail::sparse_terms(r.domain.leaf_exponents()),
                                detail::sparse_terms(r.range.leaf_exponents()));
}

}  // namespace thompson
