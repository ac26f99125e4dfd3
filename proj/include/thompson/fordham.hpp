#pragma once

// Exact word length in F with respect to {x0, x1}, computed from the reduced
// tree pair diagram. Each caret gets one of seven types; carets with the same
// infix number in the two trees are paired, and the length is the sum of the
// pair weights.
//
// Caret types:
//   L0   caret 0 (always on the left spine)
//   LL   any other caret on the left spine (the root included)
//   I0   interior caret whose right child is a leaf
//   IR   interior caret whose right child is a caret
//   R0   right-spine caret (root excluded) that is last in infix order
//   RI   right-spine caret followed in infix order by an interior caret
//   RNI  right-spine caret followed in infix order by a right-spine caret

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/tree_pair.hpp"

namespace thompson {

enum class CaretType : std::uint8_t { L0, LL, I0, IR, R0, RI, RNI };

inline constexpr std::size_t kCaretTypeCount = 7;
inline constexpr std::array<std::string_view, kCaretTypeCount> kCaretTypeNames = {
    "L0", "LL", "I0", "IR", "R0", "RI", "RNI"};

inline std::string_view name(CaretType t) { return kCaretTypeNames[static_cast<std::size_t>(t)]; }

inline std::vector<CaretType> classify_carets(const BinaryTree& tree) {
  const std::size_t n = tree.caret_count();
  std::vector<CaretType> types(n);
  if (n == 0) return types;
  const std::vector<bool> on_left = tree.left_spine_mask();
  std::vector<bool> on_right = tree.right_spine_mask();
  on_right[tree.root()] = false;
  for (std::size_t c = 0; c < n; ++c) {
    if (c == 0) {
      types[c] = CaretType::L0;
    } else if (on_left[c]) {
      types[c] = CaretType::LL;
    } else if (!on_right[c]) {
      types[c] = tree.right(c) == BinaryTree::kLeaf ? CaretType::I0 : CaretType::IR;
    } else if (c + 1 == n) {
      types[c] = CaretType::R0;
    } else {
      types[c] = on_right[c + 1] ? CaretType::RNI : CaretType::RI;
    }
  }
  return types;
}

// Symmetric 7x7 table of pair weights; -1 marks pairings that cannot occur.
class WeightTable {
 public:
  using Matrix = std::array<std::array<int, kCaretTypeCount>, kCaretTypeCount>;

  WeightTable() = default;
  explicit WeightTable(const Matrix& m) : m_(m) {}

  int operator()(CaretType a, CaretType b) const {
    return m_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  const Matrix& matrix() const { return m_; }

  // FNV-1a over the canonical text rendering.
  std::uint64_t checksum() const {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : to_text(false)) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string to_text(bool with_comment = true) const {
    std::ostringstream os;
    if (with_comment) os << "# caret-pair weight table v1\n";
    for (std::size_t t = 0; t < kCaretTypeCount; ++t) {
      os << kCaretTypeNames[t] << (t + 1 < kCaretTypeCount ? ' ' : '\n');
    }
    for (const auto& row : m_) {
      for (std::size_t t = 0; t < kCaretTypeCount; ++t) {
        os << row[t] << (t + 1 < kCaretTypeCount ? ' ' : '\n');
      }
    }
    return os.str();
  }

  // Text format: '#' comment lines, then the seven type names in order, then
  // seven rows of seven integers. When `expected_checksum` is given the parsed
  // table must match it.
  static WeightTable parse(std::string_view text,
                           std::optional<std::uint64_t> expected_checksum = std::nullopt) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      for (std::string tok; ls >> tok;) tokens.push_back(tok);
    }
    if (tokens.size() != kCaretTypeCount * (kCaretTypeCount + 1)) {
      throw std::invalid_argument("weight table: expected 7 names and 49 entries, got " +
                                  std::to_string(tokens.size()) + " tokens");
    }
    for (std::size_t t = 0; t < kCaretTypeCount; ++t) {
      if (tokens[t] != kCaretTypeNames[t]) {
        throw std::invalid_argument("weight table: type " + std::to_string(t) + " is '" +
                                    tokens[t] + "', expected '" +
                                    std::string(kCaretTypeNames[t]) + "'");
      }
    }
    Matrix m{};
    for (std::size_t r = 0; r < kCaretTypeCount; ++r) {
      for (std::size_t c = 0; c < kCaretTypeCount; ++c) {
        m[r][c] = std::stoi(tokens[kCaretTypeCount * (r + 1) + c]);
      }
    }
    for (std::size_t r = 0; r < kCaretTypeCount; ++r) {
      for (std::size_t c = 0; c < r; ++c) {
        if (m[r][c] != m[c][r]) throw std::invalid_argument("weight table: not symmetric");
      }
    }
    WeightTable table(m);
    if (expected_checksum && table.checksum() != *expected_checksum) {
      throw std::invalid_argument("weight table: checksum mismatch");
    }
    return table;
  }

 private:
  Matrix m_{};
};

// Shipped in data/fordham_weights.txt as well; both must carry this checksum.
inline constexpr std::string_view kDefaultWeightText =
    "# caret-pair weight table v1\n"
    "L0 LL I0 IR R0 RI RNI\n"
    "0 -1 -1 -1 -1 -1 -1\n"
    "-1 2 2 2 1 1 1\n"
    "-1 2 2 4 1 3 1\n"
    "-1 2 4 4 3 3 3\n"
    "-1 1 1 3 0 2 2\n"
    "-1 1 3 3 2 2 2\n"
    "-1 1 1 3 2 2 2\n";

inline constexpr std::uint64_t kDefaultWeightChecksum = 13302706311807682075ull;

inline const WeightTable& default_weight_table() {
  static const WeightTable table = WeightTable::parse(kDefaultWeightText, kDefaultWeightChecksum);
  return table;
}

inline std::uint64_t fordham_length(const TreePair& pair,
                                    const WeightTable& weights = default_weight_table()) {
  if (!pair.is_reduced()) throw TreeStructureError("fordham_length needs a reduced tree pair");
  const auto a = classify_carets(pair.domain);
  const auto b = classify_carets(pair.range);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    int w = weights(a[c], b[c]);
    if (w < 0) {
      throw std::logic_error("caret pairing " + std::string(name(a[c])) + "/" +
                             std::string(name(b[c])) + " has no weight");
    }
    total += static_cast<std::uint64_t>(w);
  }
  return total;
}

inline std::uint64_t fordham_length(const NormalForm& u,
                                    const WeightTable& weights = default_weight_table()) {
  return fordham_length(to_tree_pair(u), weights);
}

}  // namespace thompson
