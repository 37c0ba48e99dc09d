#pragma once

// Brute-force ground truth: enumerate every reduced word up to a length,
// evaluate it exactly, and look for relations (words equal to the identity)
// and for small displacements of a tree vertex.

#include "schottky/bt_tree.hpp"
#include "schottky/exact_arith.hpp"
#include "schottky/word.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace schottky::oracle {

/// Number of reduced words of length k >= 1 on n generators: 2n (2n-1)^(k-1).
std::uint64_t reduced_word_count(std::size_t n, std::size_t k);

/// Streams every reduced word of length 1..max_len once, length-lexicographically
/// with the alphabet g1 < g1^-1 < g2 < ...
class ReducedWordEnumerator {
 public:
  ReducedWordEnumerator(std::size_t generators, std::size_t max_len);
  std::optional<ReducedWord> next();

 private:
  void reset_from(std::size_t pos);

  std::size_t alphabet_;
  std::size_t max_len_;
  std::vector<std::size_t> codes_;
  bool done_ = false;
};

/// Product of the generator matrices along w (leftmost letter leftmost).
Matrix evaluate(const ReducedWord& w, const std::vector<Matrix>& gens);

struct DisplacementRecord {
  ReducedWord word;
  long displacement;
};

struct OracleReport {
  std::size_t generators = 0;
  std::size_t max_length = 0;
  std::uint64_t words_checked = 0;
  std::vector<std::uint64_t> words_per_length;  // entry k-1 counts length k
  /// First word (enumeration order) equal to the identity matrix.
  std::optional<ReducedWord> first_trivial_word;
  /// First word equal to a scalar matrix; such words act trivially on the tree.
  std::optional<ReducedWord> first_scalar_word;

  // Displacement scans only.
  std::optional<DisplacementRecord> min_displacement;
  std::vector<std::optional<long>> min_displacement_per_length;
  std::uint64_t zero_displacement_count = 0;
  std::uint64_t skipped_trivial = 0;
};

/// Evaluates every reduced word of length <= max_len. Each word costs one
/// matrix product (prefix reuse along the enumeration tree). Work is split by
/// first letter over `workers` threads (0: worker_count()); the report does not
/// depend on the split.
OracleReport freeness_check(const std::vector<Matrix>& gens, std::size_t max_len, std::size_t workers = 0);

/// For every reduced word w that is not the identity, measures d(x, w x).
OracleReport displacement_scan(const std::vector<tree::TreeIsometry>& gens, std::size_t max_len,
                               const tree::TreeVertex& basepoint, std::size_t workers = 0);

}  // namespace schottky::oracle
