#pragma once

// Combinatorics of vertex links in A~2 buildings: finite projective planes,
// chambers (incident point-line flags), opposition, the pairwise-opposite
// chamber families built from the lines through a point, and an exact checker
// for the pairwise-opposite / small-ball hypothesis on n building isometries.

#include "schottky/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace schottky::a2 {

using PointId = std::size_t;
using LineId = std::size_t;

class ProjPlane {
 public:
  /// Desarguesian plane PG(2, q) over the prime field F_q.
  /// Throws UnsupportedError("prime orders only") for non-prime q.
  static ProjPlane classical(std::uint32_t q);

  /// Plane given by its lines as point lists. Validates the plane axioms and
  /// throws InputError on failure. Coordinates are left empty.
  static ProjPlane from_lines(std::size_t order, const std::vector<std::vector<PointId>>& lines);

  std::size_t order() const { return order_; }
  std::size_t point_count() const { return point_count_; }
  std::size_t line_count() const { return lines_.size(); }

  bool incident(PointId p, LineId l) const { return incidence_[p * lines_.size() + l]; }
  const std::vector<PointId>& points_on(LineId l) const { return lines_.at(l); }
  const std::vector<LineId>& lines_through(PointId p) const { return pencils_.at(p); }

  /// Homogeneous coordinates (first nonzero entry 1); empty for planes from incidence data.
  const std::vector<std::array<std::uint32_t, 3>>& point_coordinates() const { return point_coords_; }
  const std::vector<std::array<std::uint32_t, 3>>& line_coordinates() const { return line_coords_; }

  /// Unique line through two distinct points.
  LineId join(PointId a, PointId b) const;
  /// Unique point on two distinct lines.
  PointId meet(LineId a, LineId b) const;

 private:
  ProjPlane() = default;
  void index();
  void validate() const;

  std::size_t order_ = 0;
  std::size_t point_count_ = 0;
  std::vector<std::vector<PointId>> lines_;
  std::vector<std::vector<LineId>> pencils_;
  std::vector<bool> incidence_;
  std::vector<std::array<std::uint32_t, 3>> point_coords_;
  std::vector<std::array<std::uint32_t, 3>> line_coords_;
};

/// Incident point-line flag.
struct Chamber {
  PointId point;
  LineId line;
  friend bool operator==(const Chamber&, const Chamber&) = default;
};

/// Throws InputError if the point is not on the line.
Chamber make_chamber(const ProjPlane& plane, PointId p, LineId l);

/// (p1, L1) and (p2, L2) are opposite iff p1 is off L2 and p2 is off L1.
bool opposite(const ProjPlane& plane, const Chamber& a, const Chamber& b);

/// Fix a point p, take the q+1 lines L_i through it and a point p_i != p on
/// each, and pair up the chambers (p_i, L_i). Returns k disjoint pairs, all
/// chambers pairwise opposite. Requires 1 <= k <= floor((q+1)/2).
std::vector<std::pair<Chamber, Chamber>> opposite_chamber_pairs(const ProjPlane& plane, std::size_t k);

struct OppositeAxesInput {
  std::vector<Rational> translation_lengths;
  /// opposite[i][j] for i != j; every off-diagonal flag must be present.
  std::vector<std::vector<std::optional<bool>>> opposite;
  /// Exact distances between the pairwise axis-intersection points.
  std::vector<std::vector<Rational>> distances;
  bool locally_compact = false;
};

enum class OppositeAxesStatus { Certified, Rejected, Inconclusive };

struct OppositeAxesVerdict {
  OppositeAxesStatus status = OppositeAxesStatus::Inconclusive;
  std::string reason;
  std::string conclusion;               // "free of rank n" [+ ", discrete"] when certified
  std::optional<std::size_t> center;    // intersection point serving as ball center, if any
  Rational radius_bound;                // half the minimum translation length
  std::string realizability_note;
};

/// Certifies when all isometries are pairwise opposite and the intersection
/// points fit in an open ball of radius min(l)/2. Only the distance table is
/// known, so the check is: some input point is a valid center, or the
/// diameter D satisfies D^2 < 2 r^2 (CAT(0) circumradius is at most D/sqrt 2).
/// D >= 2r rules every ball out. Anything in between is Inconclusive.
OppositeAxesVerdict check_opposite_axes(const OppositeAxesInput& input);

}  // namespace schottky::a2
