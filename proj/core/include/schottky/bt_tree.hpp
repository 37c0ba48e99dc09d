#pragma once

// The Bruhat-Tits tree of SL2 over Q_p, restricted to what can be reached
// from rational lattice bases: vertices, distances, geodesics, classification
// of type-preserving isometries, axes, nearest-point projections, and the
// tree form of the n-generator Schottky criterion.

#include "schottky/exact_arith.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace schottky::tree {

/// Homothety class of a lattice in Q_p^2, stored in the canonical form
/// basis [[p^level, offset], [0, 1]] with offset reduced to a fixed
/// representative of Q / p^level Z_(p): offset = m / p^k, 0 <= m < p^(level+k).
class TreeVertex {
 public:
  /// The standard lattice Z_p^2.
  static TreeVertex standard(Prime p);
  /// Vertex spanned by the columns of an invertible 2x2 rational matrix.
  static TreeVertex from_basis(const Matrix& basis, Prime p);

  Prime prime() const { return Prime(prime_); }
  long level() const { return level_; }
  const Rational& offset() const { return offset_; }
  Matrix basis() const;

  std::string to_string() const;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
  std::size_t hash() const;

 private:
  TreeVertex(std::uint32_t p, long level, Rational offset)
      : prime_(p), level_(level), offset_(std::move(offset)) {}

  std::uint32_t prime_;
  long level_;
  Rational offset_;
};

/// Non-negative integer distance; throws InputError on mismatched primes.
long distance(const TreeVertex& v, const TreeVertex& w);

/// The p+1 vertices adjacent to v.
std::vector<TreeVertex> neighbors(const TreeVertex& v);

/// The unique path v = x_0, ..., x_d = w with d = distance(v, w).
std::vector<TreeVertex> geodesic(const TreeVertex& v, const TreeVertex& w);

/// All vertices within `radius` of `center`, in breadth-first order.
std::vector<TreeVertex> ball(const TreeVertex& center, long radius);

/// A 2x2 rational matrix acting on T_p. Only even vp(det) is accepted, so
/// the action preserves vertex types and has no inversions.
class TreeIsometry {
 public:
  /// Throws UnsupportedError if vp(det) is odd.
  TreeIsometry(Matrix matrix, Prime p);

  const Matrix& matrix() const { return matrix_; }
  Prime prime() const { return prime_; }

  TreeVertex apply(const TreeVertex& v) const;
  TreeIsometry inverse() const;
  TreeIsometry pow(long k) const;
  TreeIsometry conjugated_by(const Matrix& t) const;

  friend TreeIsometry operator*(const TreeIsometry& a, const TreeIsometry& b);

 private:
  Matrix matrix_;
  Prime prime_;
};

/// d(v, g v).
long displacement(const TreeIsometry& g, const TreeVertex& v);

enum class IsometryKind { Elliptic, Hyperbolic };

struct Classification {
  IsometryKind kind;
  long translation_length;  // 0 for elliptic, positive even for hyperbolic
  Valuation trace_valuation;  // of the determinant-normalized matrix
  long determinant_shift;     // g is normalized by p^-shift so that vp(det) = 0
};

Classification classify(const TreeIsometry& g);

/// Axis of a hyperbolic isometry, parametrized by integer coordinates with
/// vertex_at(0) = base and the owner translating by +translation_length.
/// Copies share a thread-safe cache of powers of the owner.
class Axis {
 public:
  const TreeIsometry& owner() const;
  long translation_length() const;
  const TreeVertex& base() const;
  Prime prime() const { return owner().prime(); }

  TreeVertex vertex_at(long k) const;
  /// Coordinate of a vertex known to lie on the axis. Throws InputError otherwise.
  long coordinate_of(const TreeVertex& v) const;
  /// d(x, axis).
  long distance_to(const TreeVertex& x) const;
  bool contains(const TreeVertex& x) const { return distance_to(x) == 0; }

 private:
  struct State;
  explicit Axis(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;

  friend Axis axis(const TreeIsometry& g);
};

/// Throws InputError if g is elliptic.
Axis axis(const TreeIsometry& g);

struct Projection {
  TreeVertex vertex;
  long coordinate;
  long distance;  // d(x, vertex)
};

/// Nearest-point projection onto an axis.
Projection project(const TreeVertex& x, const Axis& a);

/// Closed interval of integer axis coordinates.
struct IntInterval {
  long lo;
  long hi;
  long length() const { return hi - lo; }
  friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

enum class RelationKind { CaseI, CaseII, Inapplicable };

std::string to_string(RelationKind kind);

/// How two axes A_i, A_j sit relative to each other.
struct AxisRelation {
  RelationKind kind = RelationKind::Inapplicable;
  std::string reason;  // set for Inapplicable ("equal axes" | "shared end")

  // p_i(A_j) in A_i coordinates and p_j(A_i) in A_j coordinates.
  IntInterval footprint_on_i{0, 0};
  IntInterval footprint_on_j{0, 0};

  // CaseI: the shared segment S_ij, in both coordinate systems.
  IntInterval segment_on_i{0, 0};
  IntInterval segment_on_j{0, 0};
  long segment_length = 0;

  // CaseII: bridge B_ij from y_i on A_i to y_j on A_j.
  std::optional<TreeVertex> bridge_start;
  std::optional<TreeVertex> bridge_end;
  long bridge_length = 0;
};

/// Step bound for the projection-stabilization search on a pair of axes.
long stabilization_bound(const Axis& ai, const Axis& aj);

AxisRelation axes_relation(const Axis& ai, const Axis& aj);

/// Open interval (lo, hi) of axis coordinates; hi - lo is the translation length.
struct FundamentalDomain {
  std::size_t index;
  Rational lo;
  Rational hi;
};

enum class Side { None, Plus, Minus };

/// The ping-pong tables X_i^+ = p_i^-1([hi_i, inf)) and X_i^- = p_i^-1((-inf, lo_i]).
class PingPongSets {
 public:
  PingPongSets(std::vector<Axis> axes, std::vector<FundamentalDomain> domains);

  std::size_t size() const { return axes_.size(); }
  const Axis& axis_of(std::size_t i) const { return axes_.at(i); }
  const FundamentalDomain& domain(std::size_t i) const { return domains_.at(i); }

  /// Which ray of A_i minus D_i an axis coordinate falls in.
  Side ray_side(std::size_t i, long coordinate) const;
  Side side(std::size_t i, const TreeVertex& x) const;
  bool in_plus(std::size_t i, const TreeVertex& x) const { return side(i, x) == Side::Plus; }
  bool in_minus(std::size_t i, const TreeVertex& x) const { return side(i, x) == Side::Minus; }

  /// A vertex of A_0 whose coordinate lies inside D_0; it avoids every X_i^+-.
  TreeVertex outside_point() const;

 private:
  std::vector<Axis> axes_;
  std::vector<FundamentalDomain> domains_;
};

/// Throws InputError if a domain does not have length equal to the translation length.
PingPongSets pingpong_sets(const std::vector<TreeIsometry>& gens,
                           const std::vector<FundamentalDomain>& domains);

enum class VerdictStatus { Certified, Inconclusive };

struct PairRecord {
  std::size_t i;
  std::size_t j;
  AxisRelation relation;
};

struct GeneratorRecord {
  long translation_length;
  TreeVertex axis_base;
  std::vector<IntInterval> footprints;  // p_i(A_j) for j != i, in order of j
  IntInterval hull{0, 0};               // smallest interval containing P_i
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::string reason;
  std::vector<GeneratorRecord> generators;
  std::vector<PairRecord> pairs;
  std::vector<FundamentalDomain> domains;  // set when certified
  std::optional<PingPongSets> sets;        // set when certified

  bool certified() const { return status == VerdictStatus::Certified; }
};

/// Tree form of the Schottky criterion. Certification means the generators
/// are free of rank n and generate a discrete subgroup (T_p is locally finite).
/// Throws InputError for fewer than two generators, mixed primes, or an
/// elliptic generator.
Verdict schottky_check(const std::vector<TreeIsometry>& gens);

}  // namespace schottky::tree

template <>
struct std::hash<schottky::tree::TreeVertex> {
  std::size_t operator()(const schottky::tree::TreeVertex& v) const { return v.hash(); }
};
