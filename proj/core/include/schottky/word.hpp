#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace schottky {

/// A generator or its inverse. Letters are ordered g1 < g1^-1 < g2 < g2^-1 < ...
struct Letter {
  std::size_t generator;
  bool inverse;

  /// Position in the alphabet order: 2 * generator + inverse.
  std::size_t code() const { return 2 * generator + (inverse ? 1 : 0); }
  static Letter from_code(std::size_t code) { return {code / 2, (code % 2) != 0}; }
  Letter inverted() const { return {generator, !inverse}; }
  bool cancels(const Letter& o) const { return generator == o.generator && inverse != o.inverse; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter& a, const Letter& b) { return a.code() <=> b.code(); }
};

/// A freely reduced word g_{l1} g_{l2} ... g_{lk}; acts on points rightmost letter first.
class ReducedWord {
 public:
  ReducedWord() = default;
  /// Throws InputError if two adjacent letters cancel.
  explicit ReducedWord(std::vector<Letter> letters);

  /// Parses "a B a" style text: lowercase letter = generator, uppercase = inverse.
  static ReducedWord parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// "a B a a"; generators beyond 26 are written as g27 / G27.
  std::string to_string() const;

  /// Length first, then lexicographic in the alphabet order.
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b);
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  std::size_t hash() const;

 private:
  std::vector<Letter> letters_;
};

}  // namespace schottky

template <>
struct std::hash<schottky::ReducedWord> {
  std::size_t operator()(const schottky::ReducedWord& w) const { return w.hash(); }
};
