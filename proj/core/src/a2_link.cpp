#include "schottky/a2_link.hpp"

#include "schottky/errors.hpp"
#include "schottky/exact_arith.hpp"

#include <algorithm>

namespace schottky::a2 {

namespace {

// Normalized representatives of the points of P^2(F_q): first nonzero coordinate 1.
std::vector<std::array<std::uint32_t, 3>> projective_points(std::uint32_t q) {
  std::vector<std::array<std::uint32_t, 3>> out;
  for (std::uint32_t y = 0; y < q; ++y) {
    for (std::uint32_t z = 0; z < q; ++z) out.push_back({1, y, z});
  }
  for (std::uint32_t z = 0; z < q; ++z) out.push_back({0, 1, z});
  out.push_back({0, 0, 1});
  return out;
}

}  // namespace

ProjPlane ProjPlane::classical(std::uint32_t q) {
  if (!is_prime(q)) throw UnsupportedError("prime orders only");
  ProjPlane plane;
  plane.order_ = q;
  plane.point_coords_ = projective_points(q);
  plane.line_coords_ = plane.point_coords_;
  plane.point_count_ = plane.point_coords_.size();
  plane.lines_.resize(plane.line_coords_.size());
  for (LineId l = 0; l < plane.line_coords_.size(); ++l) {
    const auto& a = plane.line_coords_[l];
    for (PointId p = 0; p < plane.point_count_; ++p) {
      const auto& x = plane.point_coords_[p];
      const std::uint64_t dot = std::uint64_t{a[0]} * x[0] + std::uint64_t{a[1]} * x[1] + std::uint64_t{a[2]} * x[2];
      if (dot % q == 0) plane.lines_[l].push_back(p);
    }
  }
  plane.index();
  return plane;
}

ProjPlane ProjPlane::from_lines(std::size_t order, const std::vector<std::vector<PointId>>& lines) {
  ProjPlane plane;
  plane.order_ = order;
  plane.point_count_ = order * order + order + 1;
  plane.lines_ = lines;
  for (auto& l : plane.lines_) {
    std::sort(l.begin(), l.end());
    for (auto p : l) {
      if (p >= plane.point_count_) throw InputError("point id out of range");
    }
  }
  plane.index();
  plane.validate();
  return plane;
}

void ProjPlane::index() {
  pencils_.assign(point_count_, {});
  incidence_.assign(point_count_ * lines_.size(), false);
  for (LineId l = 0; l < lines_.size(); ++l) {
    for (PointId p : lines_[l]) {
      incidence_[p * lines_.size() + l] = true;
      pencils_[p].push_back(l);
    }
  }
}

void ProjPlane::validate() const {
  const std::size_t expected = order_ * order_ + order_ + 1;
  if (order_ < 2) throw InputError("plane order must be at least 2");
  if (lines_.size() != expected) throw InputError("plane must have q^2+q+1 lines");
  for (const auto& l : lines_) {
    if (l.size() != order_ + 1) throw InputError("every line needs q+1 points");
    if (std::adjacent_find(l.begin(), l.end()) != l.end()) throw InputError("repeated point on a line");
  }
  for (const auto& pencil : pencils_) {
    if (pencil.size() != order_ + 1) throw InputError("every point must lie on q+1 lines");
  }
  for (PointId a = 0; a < point_count_; ++a) {
    for (PointId b = a + 1; b < point_count_; ++b) {
      std::size_t common = 0;
      for (LineId l : pencils_[a]) common += incident(b, l) ? 1 : 0;
      if (common != 1) throw InputError("two points must share exactly one line");
    }
  }
}

LineId ProjPlane::join(PointId a, PointId b) const {
  if (a == b) throw InputError("join of a point with itself");
  for (LineId l : pencils_.at(a)) {
    if (incident(b, l)) return l;
  }
  throw InternalError("no line through two points");
}

PointId ProjPlane::meet(LineId a, LineId b) const {
  if (a == b) throw InputError("meet of a line with itself");
  for (PointId p : lines_.at(a)) {
    if (incident(p, b)) return p;
  }
  throw InternalError("no point on two lines");
}

Chamber make_chamber(const ProjPlane& plane, PointId p, LineId l) {
  if (p >= plane.point_count() || l >= plane.line_count() || !plane.incident(p, l)) {
    throw InputError("chamber needs an incident point-line pair");
  }
  return {p, l};
}

bool opposite(const ProjPlane& plane, const Chamber& a, const Chamber& b) {
  return !plane.incident(a.point, b.line) && !plane.incident(b.point, a.line);
}

std::vector<std::pair<Chamber, Chamber>> opposite_chamber_pairs(const ProjPlane& plane, std::size_t k) {
  const std::size_t bound = (plane.order() + 1) / 2;
  if (k < 1 || k > bound) {
    throw InputError("k = " + std::to_string(k) + " out of range: need 1 <= k <= floor((q+1)/2) = " +
                     std::to_string(bound));
  }
  const PointId p = 0;
  std::vector<Chamber> chambers;
  for (LineId l : plane.lines_through(p)) {
    const auto& pts = plane.points_on(l);
    const PointId other = pts.front() != p ? pts.front() : pts[1];
    chambers.push_back(make_chamber(plane, other, l));
  }
  std::vector<std::pair<Chamber, Chamber>> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(chambers[2 * i], chambers[2 * i + 1]);
  return out;
}

OppositeAxesVerdict check_opposite_axes(const OppositeAxesInput& in) {
  const std::size_t n = in.translation_lengths.size();
  if (n < 2) throw InputError("at least two isometries required");
  for (const auto& l : in.translation_lengths) {
    if (l.sign() <= 0) throw InputError("translation lengths must be positive");
  }
  if (in.opposite.size() != n) throw InputError("opposition matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (in.opposite[i].size() != n) throw InputError("opposition matrix must be n x n");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !in.opposite[i][j]) throw InputError("missing opposition flag");
    }
  }
  const std::size_t m = in.distances.size();
  if (m == 0) throw InputError("missing distances");
  for (std::size_t a = 0; a < m; ++a) {
    if (in.distances[a].size() != m) throw InputError("missing distances: table must be square");
    if (!in.distances[a][a].is_zero()) throw InputError("distance table needs a zero diagonal");
    for (std::size_t b = 0; b < m; ++b) {
      if (in.distances[a][b] != in.distances[b][a]) throw InputError("distance table must be symmetric");
      if (in.distances[a][b].sign() < 0) throw InputError("negative distance");
    }
  }

  OppositeAxesVerdict v;
  v.realizability_note = "whether these descriptors are realized by actual building isometries is not checked";
  v.radius_bound = *std::min_element(in.translation_lengths.begin(), in.translation_lengths.end()) / Rational(2);
  const Rational& r = v.radius_bound;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !*in.opposite[i][j]) {
        v.status = OppositeAxesStatus::Rejected;
        v.reason = "not pairwise opposite";
        return v;
      }
    }
  }

  Rational diameter;
  for (const auto& row : in.distances) diameter = std::max(diameter, *std::max_element(row.begin(), row.end()));

  for (std::size_t c = 0; c < m; ++c) {
    const Rational far = *std::max_element(in.distances[c].begin(), in.distances[c].end());
    if (far < r) {
      v.center = c;
      break;
    }
  }
  if (v.center || diameter * diameter < Rational(2) * r * r) {
    v.status = OppositeAxesStatus::Certified;
    v.reason = v.center ? "intersection point " + std::to_string(*v.center) + " centers an open ball of radius " +
                              r.to_string() + " containing all intersection points"
                        : "diameter " + diameter.to_string() + " < sqrt(2) * " + r.to_string() +
                              ": the circumradius is below the radius bound";
    v.conclusion = "free of rank " + std::to_string(n) + (in.locally_compact ? ", discrete" : "");
    return v;
  }
  if (diameter >= Rational(2) * r) {
    v.status = OppositeAxesStatus::Rejected;
    v.reason = "two intersection points at distance " + diameter.to_string() + " need radius " +
               (diameter / Rational(2)).to_string() + " > " + r.to_string();
    return v;
  }
  v.status = OppositeAxesStatus::Inconclusive;
  v.reason = "distance table alone does not decide the ball condition";
  return v;
}

}  // namespace schottky::a2
