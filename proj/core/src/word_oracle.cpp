#include "schottky/word_oracle.hpp"

#include "schottky/errors.hpp"
#include "schottky/parallel.hpp"

#include <algorithm>
#include <string>

namespace schottky::oracle {

std::uint64_t reduced_word_count(std::size_t n, std::size_t k) {
  if (k == 0) return 1;
  std::uint64_t c = 2 * n;
  for (std::size_t i = 1; i < k; ++i) c *= 2 * n - 1;
  return c;
}

// ---------------------------------------------------------------------------

ReducedWordEnumerator::ReducedWordEnumerator(std::size_t generators, std::size_t max_len)
    : alphabet_(2 * generators), max_len_(max_len) {
  if (generators < 1 || max_len < 1) throw InputError("enumeration needs n >= 1 and L >= 1");
}

void ReducedWordEnumerator::reset_from(std::size_t pos) {
  for (std::size_t k = pos; k < codes_.size(); ++k) {
    codes_[k] = 0;
    if (k > 0 && Letter::from_code(0).cancels(Letter::from_code(codes_[k - 1]))) codes_[k] = 1;
  }
}

std::optional<ReducedWord> ReducedWordEnumerator::next() {
  if (done_) return std::nullopt;
  if (codes_.empty()) {
    codes_.assign(1, 0);
  } else {
    std::size_t pos = codes_.size();
    for (;;) {
      if (pos == 0) {
        if (codes_.size() == max_len_) {
          done_ = true;
          return std::nullopt;
        }
        codes_.assign(codes_.size() + 1, 0);
        reset_from(0);
        break;
      }
      --pos;
      std::size_t c = codes_[pos] + 1;
      if (pos > 0 && c < alphabet_ && Letter::from_code(c).cancels(Letter::from_code(codes_[pos - 1]))) ++c;
      if (c < alphabet_) {
        codes_[pos] = c;
        reset_from(pos + 1);
        break;
      }
    }
  }
  std::vector<Letter> letters;
  letters.reserve(codes_.size());
  for (auto c : codes_) letters.push_back(Letter::from_code(c));
  return ReducedWord(std::move(letters));
}

Matrix evaluate(const ReducedWord& w, const std::vector<Matrix>& gens) {
  if (gens.empty()) throw InputError("no generators");
  Matrix m = Matrix::identity(gens.front().dim());
  for (const auto& l : w.letters()) {
    if (l.generator >= gens.size()) throw InputError("word uses generator " + std::to_string(l.generator + 1) + " of " + std::to_string(gens.size()));
    const Matrix& g = gens[l.generator];
    m = m * (l.inverse ? g.inverse() : g);
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

ReducedWord word_of(const std::vector<std::size_t>& codes) {
  std::vector<Letter> letters;
  letters.reserve(codes.size());
  for (auto c : codes) letters.push_back(Letter::from_code(c));
  return ReducedWord(std::move(letters));
}

bool earlier(const std::vector<std::size_t>& codes, const std::optional<ReducedWord>& best) {
  if (!best) return true;
  return word_of(codes) < *best;
}

void keep_earlier(std::optional<ReducedWord>& into, const std::optional<ReducedWord>& other) {
  if (other && (!into || *other < *into)) into = other;
}

// Depth-first walk of the reduced-word tree below one first letter. `visit`
// gets the letter codes and the product matrix of each word.
template <class Visit>
void walk(const std::vector<Matrix>& letters, std::size_t first, std::size_t max_len, Visit&& visit) {
  struct Frame {
    Matrix product;
    std::size_t next_code;
  };
  const std::size_t alphabet = letters.size();
  std::vector<std::size_t> codes{first};
  std::vector<Frame> stack;
  stack.reserve(max_len);
  stack.push_back({letters[first], 0});
  visit(codes, stack.back().product);
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (codes.size() == max_len || top.next_code == alphabet) {
      stack.pop_back();
      codes.pop_back();
      continue;
    }
    const std::size_t c = top.next_code++;
    if (Letter::from_code(c).cancels(Letter::from_code(codes.back()))) continue;
    codes.push_back(c);
    stack.push_back({top.product * letters[c], 0});
    visit(codes, stack.back().product);
  }
}

std::vector<Matrix> letter_matrices(const std::vector<Matrix>& gens) {
  std::vector<Matrix> out;
  for (const auto& g : gens) {
    out.push_back(g);
    out.push_back(g.inverse());
  }
  return out;
}

std::size_t resolve_workers(std::size_t w) { return w == 0 ? worker_count() : w; }

}  // namespace

OracleReport freeness_check(const std::vector<Matrix>& gens, std::size_t max_len, std::size_t workers) {
  if (gens.empty() || max_len < 1) throw InputError("freeness check needs generators and L >= 1");
  const auto letters = letter_matrices(gens);

  struct Partial {
    std::vector<std::uint64_t> per_length;
    std::optional<ReducedWord> trivial;
    std::optional<ReducedWord> scalar;
  };
  std::vector<Partial> parts(letters.size());
  parallel_for(letters.size(), resolve_workers(workers), [&](std::size_t first) {
    Partial& p = parts[first];
    p.per_length.assign(max_len, 0);
    walk(letters, first, max_len, [&](const std::vector<std::size_t>& codes, const Matrix& m) {
      ++p.per_length[codes.size() - 1];
      if (!m.is_scalar()) return;
      if (earlier(codes, p.scalar)) p.scalar = word_of(codes);
      if (m.is_identity() && earlier(codes, p.trivial)) p.trivial = word_of(codes);
    });
  });

  OracleReport r;
  r.generators = gens.size();
  r.max_length = max_len;
  r.words_per_length.assign(max_len, 0);
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < max_len; ++k) r.words_per_length[k] += p.per_length[k];
    keep_earlier(r.first_trivial_word, p.trivial);
    keep_earlier(r.first_scalar_word, p.scalar);
  }
  for (auto c : r.words_per_length) r.words_checked += c;
  return r;
}

OracleReport displacement_scan(const std::vector<tree::TreeIsometry>& gens, std::size_t max_len,
                               const tree::TreeVertex& basepoint, std::size_t workers) {
  if (gens.empty() || max_len < 1) throw InputError("displacement scan needs generators and L >= 1");
  std::vector<Matrix> mats;
  for (const auto& g : gens) {
    if (!(g.prime() == basepoint.prime())) throw InputError("mismatched primes");
    mats.push_back(g.matrix());
  }
  const auto letters = letter_matrices(mats);
  const Prime p = basepoint.prime();
  const Matrix base = basepoint.basis();

  struct Partial {
    std::vector<std::uint64_t> per_length;
    std::vector<std::optional<long>> per_length_min;
    std::optional<ReducedWord> trivial;
    std::optional<ReducedWord> scalar;
    std::optional<DisplacementRecord> best;
    std::uint64_t zero = 0;
    std::uint64_t skipped = 0;
  };
  std::vector<Partial> parts(letters.size());
  parallel_for(letters.size(), resolve_workers(workers), [&](std::size_t first) {
    Partial& part = parts[first];
    part.per_length.assign(max_len, 0);
    part.per_length_min.assign(max_len, std::nullopt);
    walk(letters, first, max_len, [&](const std::vector<std::size_t>& codes, const Matrix& m) {
      ++part.per_length[codes.size() - 1];
      if (m.is_scalar() && earlier(codes, part.scalar)) part.scalar = word_of(codes);
      if (m.is_identity()) {
        ++part.skipped;
        if (earlier(codes, part.trivial)) part.trivial = word_of(codes);
        return;
      }
      const long d = tree::distance(basepoint, tree::TreeVertex::from_basis(m * base, p));
      if (d == 0) ++part.zero;
      auto& slot = part.per_length_min[codes.size() - 1];
      if (!slot || d < *slot) slot = d;
      if (!part.best || d < part.best->displacement ||
          (d == part.best->displacement && word_of(codes) < part.best->word)) {
        part.best = DisplacementRecord{word_of(codes), d};
      }
    });
  });

  OracleReport r;
  r.generators = gens.size();
  r.max_length = max_len;
  r.words_per_length.assign(max_len, 0);
  r.min_displacement_per_length.assign(max_len, std::nullopt);
  for (const auto& part : parts) {
    for (std::size_t k = 0; k < max_len; ++k) {
      r.words_per_length[k] += part.per_length[k];
      const auto& s = part.per_length_min[k];
      if (s && (!r.min_displacement_per_length[k] || *s < *r.min_displacement_per_length[k])) {
        r.min_displacement_per_length[k] = s;
      }
    }
    keep_earlier(r.first_trivial_word, part.trivial);
    keep_earlier(r.first_scalar_word, part.scalar);
    if (part.best && (!r.min_displacement || part.best->displacement < r.min_displacement->displacement ||
                      (part.best->displacement == r.min_displacement->displacement &&
                       part.best->word < r.min_displacement->word))) {
      r.min_displacement = part.best;
    }
    r.zero_displacement_count += part.zero;
    r.skipped_trivial += part.skipped;
  }
  for (auto c : r.words_per_length) r.words_checked += c;
  return r;
}

}  // namespace schottky::oracle
