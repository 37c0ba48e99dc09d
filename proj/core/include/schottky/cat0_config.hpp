#pragma once

// Checker for the n-generator Schottky criterion on an abstract description
// of the axes: translation lengths, pairwise relations with their angles, and
// the projection footprints p_i(A_j). Nothing here is computed from geometry;
// the hypotheses are checked exactly as supplied.

#include "schottky/bt_tree.hpp"
#include "schottky/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace schottky::cat0 {

/// An angle stored as an exact rational multiple of pi.
struct Angle {
  Rational multiple_of_pi;

  static Angle pi() { return {Rational(1)}; }
  /// Accepts "pi", "num/den pi", "num/den*pi", "num/den·pi", or "0".
  static Angle parse(std::string_view text);
  bool is_pi() const { return multiple_of_pi == Rational(1); }
  std::string to_string() const;
};

struct AbstractAxis {
  std::string id;
  Rational translation_length;
};

/// Closed interval of axis coordinates.
struct Interval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

enum class PairKind { CaseI, CaseII };

struct PairRelation {
  std::size_t i = 0;
  std::size_t j = 0;
  PairKind kind = PairKind::CaseII;

  // CaseI: the shared segment S_ij on each axis, and the angles at its two endpoints.
  Interval segment_on_i;
  Interval segment_on_j;
  std::array<Angle, 2> segment_angles{Angle::pi(), Angle::pi()};

  // CaseII: the bridge B_ij and its four angles with A_i and A_j.
  Rational bridge_length;
  std::array<Angle, 4> bridge_angles{Angle::pi(), Angle::pi(), Angle::pi(), Angle::pi()};

  Interval footprint_on_i;  // p_i(A_j)
  Interval footprint_on_j;  // p_j(A_i)
};

struct Domain {
  std::size_t index;
  Rational lo;  // open interval (lo, hi) of length l_i
  Rational hi;
};

enum class ConfigStatus { Certified, Rejected };

struct ConfigVerdict {
  ConfigStatus status = ConfigStatus::Rejected;
  std::string reason;
  std::vector<Domain> domains;         // certified only
  std::vector<std::string> warnings;   // data flagged for manual review

  bool certified() const { return status == ConfigStatus::Certified; }
};

/// Throws InputError on a missing or duplicated pair, a non-positive length,
/// or Case I segment data inconsistent with the footprints.
ConfigVerdict check_configuration(const std::vector<AbstractAxis>& axes, const std::vector<PairRelation>& relations);

/// Converts a tree relation between generators i < j: angles become pi and
/// integer coordinates become rationals. Throws InputError for Inapplicable.
PairRelation relation_from_tree(const tree::AxisRelation& rel, std::size_t i, std::size_t j);

}  // namespace schottky::cat0
