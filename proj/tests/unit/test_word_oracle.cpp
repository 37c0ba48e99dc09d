#include "doctest.h"
#include "oracles.hpp"

#include "schottky/errors.hpp"
#include "schottky/word_oracle.hpp"

#include <random>

using namespace schottky;
using namespace schottky::oracle;
using schottky::tree::TreeIsometry;
using schottky::tree::TreeVertex;

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

const Matrix kSanovA{{1, 2}, {0, 1}};
const Matrix kSanovB{{1, 0}, {2, 1}};

}  // namespace

TEST_CASE("reduced word counts") {
  CHECK(reduced_word_count(2, 1) == 4);
  CHECK(reduced_word_count(2, 2) == 12);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t k = 1; k <= 8; ++k) CHECK(reduced_word_count(n, k) == 2 * n * ipow(2 * n - 1, k - 1));
  }
}

TEST_CASE("enumerator: counts, order, reducedness") {
  for (std::size_t n = 1; n <= 3; ++n) {
    ReducedWordEnumerator e(n, 5);
    std::optional<ReducedWord> prev;
    std::vector<std::uint64_t> per(5, 0);
    while (auto w = e.next()) {
      if (prev) REQUIRE(*prev < *w);
      ++per[w->length() - 1];
      prev = w;
    }
    for (std::size_t k = 1; k <= 5; ++k) CHECK(per[k - 1] == reduced_word_count(n, k));
  }
  ReducedWordEnumerator e(2, 3);
  CHECK(e.next()->to_string() == "a");
  CHECK(e.next()->to_string() == "A");
  CHECK(e.next()->to_string() == "b");
  std::uint64_t total = 3;
  while (e.next()) ++total;
  CHECK(total == 4 + 12 + 36);
}

TEST_CASE("evaluate multiplies left to right") {
  CHECK(evaluate(ReducedWord::parse("a b"), {kSanovA, kSanovB}) == kSanovA * kSanovB);
  CHECK(evaluate(ReducedWord::parse("A"), {kSanovA, kSanovB}) == kSanovA.inverse());
  CHECK(evaluate(ReducedWord(), {kSanovA, kSanovB}).is_identity());
  CHECK_THROWS_AS(evaluate(ReducedWord::parse("c"), {kSanovA, kSanovB}), InputError);
}

TEST_CASE("Sanov pair has no relation up to length 10") {
  const auto r = freeness_check({kSanovA, kSanovB}, 10);
  CHECK_FALSE(r.first_trivial_word.has_value());
  CHECK_FALSE(r.first_scalar_word.has_value());
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= 10; ++k) total += reduced_word_count(2, k);
  CHECK(r.words_checked == total);
  CHECK(r.words_checked == 4 + 12 + 36 + 108 + 324 + 972 + 2916 + 8748 + 26244 + 78732);
}

TEST_CASE("relations are found at the first word in enumeration order") {
  const Matrix m{{2, 1}, {1, 1}};
  const auto same = freeness_check({m, m}, 4);
  REQUIRE(same.first_trivial_word.has_value());
  CHECK(same.first_trivial_word->to_string() == "a B");
  const auto inv = freeness_check({m, m.inverse()}, 4);
  REQUIRE(inv.first_trivial_word.has_value());
  CHECK(inv.first_trivial_word->to_string() == "a b");
  const auto minus = freeness_check({Matrix::diagonal({-1, -1}), m}, 3);
  CHECK(minus.first_scalar_word->to_string() == "a");
  CHECK(minus.first_trivial_word->length() == 2);
}

TEST_CASE("displacement scans") {
  const auto o = TreeVertex::standard(Prime(2));
  const auto sanov = displacement_scan({TreeIsometry(kSanovA, Prime(2)), TreeIsometry(kSanovB, Prime(2))}, 6, o);
  REQUIRE(sanov.min_displacement.has_value());
  CHECK(sanov.min_displacement->displacement == 0);
  CHECK(sanov.zero_displacement_count == sanov.words_checked);

  const Prime p(3);
  const TreeIsometry d(Matrix::diagonal({3, Rational(1, 3)}), p);
  const TreeIsometry t(Matrix{{1, 1}, {1, 2}}, p);
  const auto diag = displacement_scan({d, t.inverse() * d * t}, 3, TreeVertex::standard(p));
  REQUIRE(diag.min_displacement_per_length.size() == 3);
  CHECK(diag.min_displacement_per_length[0] == 2);
  CHECK(diag.min_displacement->displacement == 2);
  CHECK(diag.min_displacement->word.length() == 1);

  const TreeIsometry g1(Matrix::diagonal({5, Rational(1, 5)}), Prime(5));
  const auto demo = displacement_scan({g1, g1.conjugated_by(Matrix{{1, 1}, {1, 2}})}, 6,
                                      TreeVertex::standard(Prime(5)));
  CHECK(demo.min_displacement->displacement >= 1);
  CHECK(demo.zero_displacement_count == 0);
  // Every length-3 word with distinct-generator letters moves o by at least 6.
  CHECK(demo.min_displacement_per_length[2] >= 2);
}

TEST_CASE("relations and displacements are conjugation invariant") {
  std::mt19937_64 rng(19);
  const TreeIsometry g1(Matrix::diagonal({5, Rational(1, 5)}), Prime(5));
  const auto g2 = g1.conjugated_by(Matrix{{1, 1}, {1, 2}});
  const auto base = freeness_check({g1.matrix(), g2.matrix()}, 6);
  for (int t = 0; t < 10; ++t) {
    const Matrix h = oracles::random_sl2(rng, 5, 3, 1);
    const auto r = freeness_check({g1.conjugated_by(h).matrix(), g2.conjugated_by(h).matrix()}, 6);
    CHECK(r.first_trivial_word.has_value() == base.first_trivial_word.has_value());
    CHECK(r.words_checked == base.words_checked);
    // d(h o, w h o) for the conjugates equals d(o, w o) for the originals.
    const TreeIsometry hh(h, Prime(5));
    const auto o = TreeVertex::standard(Prime(5));
    const auto a = displacement_scan({g1, g2}, 4, o);
    const auto b = displacement_scan({g1.conjugated_by(h), g2.conjugated_by(h)}, 4, hh.apply(o));
    CHECK(a.min_displacement_per_length == b.min_displacement_per_length);
    CHECK(a.min_displacement->word == b.min_displacement->word);
  }
}

TEST_CASE("parallel and serial runs produce identical reports") {
  const Matrix m{{2, 1}, {1, 1}};
  const std::vector<Matrix> gens{kSanovA, kSanovB, m};
  const auto a = freeness_check(gens, 6, 1);
  const auto b = freeness_check(gens, 6, 8);
  CHECK(a.words_checked == b.words_checked);
  CHECK(a.words_per_length == b.words_per_length);
  CHECK(a.first_trivial_word == b.first_trivial_word);

  const std::vector<Matrix> rel{m, m, kSanovA};
  CHECK(freeness_check(rel, 5, 1).first_trivial_word == freeness_check(rel, 5, 6).first_trivial_word);

  const auto o = TreeVertex::standard(Prime(2));
  std::vector<TreeIsometry> isos{TreeIsometry(kSanovA, Prime(2)), TreeIsometry(Matrix::diagonal({2, Rational(1, 2)}), Prime(2))};
  const auto s = displacement_scan(isos, 6, o, 1);
  const auto q = displacement_scan(isos, 6, o, 5);
  CHECK(s.min_displacement_per_length == q.min_displacement_per_length);
  CHECK(s.min_displacement->word == q.min_displacement->word);
  CHECK(s.zero_displacement_count == q.zero_displacement_count);
  CHECK(s.skipped_trivial == q.skipped_trivial);
}
