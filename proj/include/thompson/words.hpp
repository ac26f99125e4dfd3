#pragma once

// Letters, words and the abelianization map over the rank-2 alphabet
// {x0, x1}. Text encoding: a = x0, A = x0^-1, b = x1, B = x1^-1.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thompson {

struct Letter {
  std::uint32_t generator = 0;
  std::int8_t sign = 1;  // +1 or -1

  constexpr Letter inverse() const { return {generator, static_cast<std::int8_t>(-sign)}; }
  friend constexpr bool operator==(Letter, Letter) = default;
};

inline constexpr Letter kX0{0, 1};
inline constexpr Letter kX0Inv{0, -1};
inline constexpr Letter kX1{1, 1};
inline constexpr Letter kX1Inv{1, -1};

// Generator order used everywhere a loop runs "over the four generators":
// a, A, b, B.
inline constexpr Letter kGenerators[4] = {kX0, kX0Inv, kX1, kX1Inv};

using Word = std::vector<Letter>;

class WordParseError : public std::invalid_argument {
 public:
  WordParseError(std::size_t position, char c)
      : std::invalid_argument("invalid letter '" + std::string(1, c) + "' at position " +
                              std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'a': w.push_back(kX0); break;
      case 'A': w.push_back(kX0Inv); break;
      case 'b': w.push_back(kX1); break;
      case 'B': w.push_back(kX1Inv); break;
      default: throw WordParseError(i, text[i]);
    }
  }
  return w;
}

inline char letter_char(Letter x) {
  if (x.generator > 1) {
    throw std::domain_error("letter x" + std::to_string(x.generator) +
                            " has no rank-2 text encoding");
  }
  if (x.generator == 0) return x.sign > 0 ? 'a' : 'A';
  return x.sign > 0 ? 'b' : 'B';
}

inline std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s.push_back(letter_char(x));
  return s;
}

struct AbelianImage {
  std::int64_t k = 0;  // exponent sum of x0
  std::int64_t l = 0;  // exponent sum of x1

  AbelianImage& operator+=(AbelianImage o) {
    k += o.k;
    l += o.l;
    return *this;
  }
  friend AbelianImage operator+(AbelianImage a, AbelianImage b) { return a += b; }
  friend constexpr bool operator==(AbelianImage, AbelianImage) = default;
};

inline AbelianImage abelianize(const Letter* first, const Letter* last) {
  AbelianImage img;
  for (; first != last; ++first) {
    switch (first->generator) {
      case 0: img.k += first->sign; break;
      case 1: img.l += first->sign; break;
      default:
        throw std::domain_error("abelianize: generator index " +
                                std::to_string(first->generator) + " outside rank-2 alphabet");
    }
  }
  return img;
}

inline AbelianImage abelianize(const Word& w) { return abelianize(w.data(), w.data() + w.size()); }

inline bool is_balanced(const Word& w) { return abelianize(w) == AbelianImage{}; }

inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline Word formal_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word concat(const Word& u, const Word& v) {
  Word out(u);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace thompson
