#include "doctest.h"

#include "schottky/a2_link.hpp"
#include "schottky/errors.hpp"

using namespace schottky;
using namespace schottky::a2;

namespace {

// Plane axioms checked by brute force over all point and line pairs.
void check_axioms(const ProjPlane& plane) {
  const std::size_t q = plane.order();
  REQUIRE(plane.point_count() == q * q + q + 1);
  REQUIRE(plane.line_count() == q * q + q + 1);
  for (std::size_t l = 0; l < plane.line_count(); ++l) {
    std::size_t on = 0;
    for (std::size_t p = 0; p < plane.point_count(); ++p) on += plane.incident(p, l) ? 1 : 0;
    REQUIRE(on == q + 1);
  }
  for (std::size_t a = 0; a < plane.point_count(); ++a) {
    for (std::size_t b = a + 1; b < plane.point_count(); ++b) {
      std::size_t common = 0;
      for (std::size_t l = 0; l < plane.line_count(); ++l) common += plane.incident(a, l) && plane.incident(b, l);
      REQUIRE(common == 1);
      REQUIRE(plane.incident(a, plane.join(a, b)));
      REQUIRE(plane.incident(b, plane.join(a, b)));
    }
  }
  for (std::size_t l = 0; l < plane.line_count(); ++l) {
    for (std::size_t m = l + 1; m < plane.line_count(); ++m) {
      std::size_t common = 0;
      for (std::size_t p = 0; p < plane.point_count(); ++p) common += plane.incident(p, l) && plane.incident(p, m);
      REQUIRE(common == 1);
    }
  }
}

std::vector<std::vector<std::optional<bool>>> all_opposite(std::size_t n, bool value = true) {
  return std::vector<std::vector<std::optional<bool>>>(n, std::vector<std::optional<bool>>(n, value));
}

}  // namespace

TEST_CASE("classical planes satisfy the axioms") {
  for (std::uint32_t q : {2U, 3U, 5U}) {
    const auto plane = ProjPlane::classical(q);
    CHECK(plane.point_count() == q * q + q + 1);
    check_axioms(plane);
  }
  CHECK(ProjPlane::classical(2).point_count() == 7);
  CHECK(ProjPlane::classical(3).point_count() == 13);
  CHECK(ProjPlane::classical(5).point_count() == 31);
  CHECK_THROWS_AS(ProjPlane::classical(4), UnsupportedError);
}

TEST_CASE("planes from incidence data are validated") {
  const std::vector<std::vector<PointId>> fano{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                               {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  const auto plane = ProjPlane::from_lines(2, fano);
  check_axioms(plane);
  auto broken = fano;
  broken[6] = {2, 4, 6};
  CHECK_THROWS_AS(ProjPlane::from_lines(2, broken), InputError);
  CHECK_THROWS_AS(ProjPlane::from_lines(4, fano), InputError);
  CHECK_THROWS_AS(ProjPlane::from_lines(2, {{0, 1, 2}}), InputError);
}

TEST_CASE("chambers and opposition") {
  const auto plane = ProjPlane::classical(3);
  const LineId l = plane.lines_through(0)[0];
  CHECK_THROWS_AS(make_chamber(plane, 0, plane.lines_through(1).back() == l ? plane.lines_through(1).front() : plane.lines_through(1).back()),
                  InputError);
  const Chamber c = make_chamber(plane, 0, l);
  CHECK_FALSE(opposite(plane, c, c));
  // Same point, different line: not opposite.
  CHECK_FALSE(opposite(plane, c, make_chamber(plane, 0, plane.lines_through(0)[1])));
  for (PointId p = 0; p < plane.point_count(); ++p) {
    for (LineId m : plane.lines_through(p)) {
      const Chamber d{p, m};
      REQUIRE(opposite(plane, c, d) == opposite(plane, d, c));
    }
  }
}

TEST_CASE("opposite chambers: brute-force count in the Fano plane") {
  const auto plane = ProjPlane::classical(2);
  std::vector<Chamber> chambers;
  for (PointId p = 0; p < plane.point_count(); ++p) {
    for (LineId l : plane.lines_through(p)) chambers.push_back({p, l});
  }
  REQUIRE(chambers.size() == 21);
  // Each chamber of PG(2,q) is opposite q^3 others.
  for (const auto& c : chambers) {
    std::size_t count = 0;
    for (const auto& d : chambers) count += opposite(plane, c, d) ? 1 : 0;
    REQUIRE(count == 8);
  }
}

TEST_CASE("pairwise-opposite families from the lines through a point") {
  const auto plane = ProjPlane::classical(3);
  const auto pairs = opposite_chamber_pairs(plane, 2);
  REQUIRE(pairs.size() == 2);
  std::vector<Chamber> all;
  for (const auto& [a, b] : pairs) {
    all.push_back(a);
    all.push_back(b);
  }
  std::size_t opposite_pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      CHECK(opposite(plane, all[i], all[j]));
      ++opposite_pairs;
    }
  }
  CHECK(opposite_pairs == 6);
  CHECK(opposite_chamber_pairs(ProjPlane::classical(2), 1).size() == 1);
  CHECK_THROWS_AS(opposite_chamber_pairs(plane, 3), InputError);
  CHECK_THROWS_AS(opposite_chamber_pairs(plane, 0), InputError);
  CHECK(opposite_chamber_pairs(ProjPlane::classical(5), 3).size() == 3);
}

TEST_CASE("opposite-axes check: certified, rejected, inconclusive") {
  OppositeAxesInput in;
  in.translation_lengths = {Rational(4), Rational(6)};
  in.opposite = all_opposite(2);
  in.distances = {{Rational(0)}};
  in.locally_compact = true;
  auto v = check_opposite_axes(in);
  CHECK(v.status == OppositeAxesStatus::Certified);
  CHECK(v.center == std::optional<std::size_t>{0});
  CHECK(v.conclusion == "free of rank 2, discrete");
  CHECK(v.radius_bound == Rational(2));
  CHECK_FALSE(v.realizability_note.empty());

  in.distances = {{Rational(0), Rational(10)}, {Rational(10), Rational(0)}};
  CHECK(check_opposite_axes(in).status == OppositeAxesStatus::Rejected);

  // Diameter 5/2 with r = 2: 25/4 < 8, so some ball of radius r holds both.
  in.distances = {{Rational(0), Rational(5, 2)}, {Rational(5, 2), Rational(0)}};
  v = check_opposite_axes(in);
  CHECK(v.status == OppositeAxesStatus::Certified);
  CHECK_FALSE(v.center.has_value());

  // Diameter 3: 9 > 8 and 3 < 4.
  in.distances = {{Rational(0), Rational(3)}, {Rational(3), Rational(0)}};
  CHECK(check_opposite_axes(in).status == OppositeAxesStatus::Inconclusive);

  in.distances = {{Rational(0)}};
  in.opposite = all_opposite(2, false);
  v = check_opposite_axes(in);
  CHECK(v.status == OppositeAxesStatus::Rejected);
  CHECK(v.reason == "not pairwise opposite");

  in.opposite = all_opposite(2);
  in.opposite[0][1].reset();
  CHECK_THROWS_AS(check_opposite_axes(in), InputError);
  in.opposite = all_opposite(2);
  in.distances = {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}};
  CHECK_THROWS_AS(check_opposite_axes(in), InputError);
  in.distances = {};
  CHECK_THROWS_AS(check_opposite_axes(in), InputError);
}

TEST_CASE("opposite-axes check: three isometries through one vertex") {
  OppositeAxesInput in;
  in.translation_lengths = {Rational(2), Rational(2), Rational(2)};
  in.opposite = all_opposite(3);
  in.distances = std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0)));
  const auto v = check_opposite_axes(in);
  CHECK(v.status == OppositeAxesStatus::Certified);
  CHECK(v.conclusion == "free of rank 3");
}
