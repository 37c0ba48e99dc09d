#include "schottky/bt_tree.hpp"

#include "schottky/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace schottky::tree {

namespace {

void require_same_prime(Prime a, Prime b) {
  if (!(a == b)) {
    throw InputError("mismatched primes " + std::to_string(a.value()) + " and " + std::to_string(b.value()));
  }
}

BigInt big_pow(std::uint32_t p, long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

// Representative of t + p^n Z_(p) of the form m / p^k with 0 <= m < p^(n+k).
Rational reduce_offset(const Rational& t, long n, Prime p) {
  if (t.is_zero()) return Rational();
  const long v = vp(t, p).value();
  const long k = std::max(0L, -v);
  const long e = n + k;
  if (e <= 0) return Rational();
  const BigInt modulus = big_pow(p.value(), e);
  // t * p^k = u / w with w prime to p.
  const Rational scaled = t * power_of(p.value(), k);
  BigInt w_inv;
  if (mpz_invert(w_inv.get_mpz_t(), scaled.den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw InternalError("denominator not invertible modulo p^e");
  }
  BigInt m = scaled.num() * w_inv;
  mpz_fdiv_r(m.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
  return Rational(m, big_pow(p.value(), k));
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_of(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return q;
}

// One step from `from` towards `to`; requires from != to.
TreeVertex step_towards(const TreeVertex& from, const TreeVertex& to, long current) {
  for (auto& n : neighbors(from)) {
    if (distance(n, to) == current - 1) return n;
  }
  throw InternalError("no neighbor decreases the distance");
}

}  // namespace

// ---------------------------------------------------------------------------
// Vertices

TreeVertex TreeVertex::standard(Prime p) { return TreeVertex(p.value(), 0, Rational()); }

TreeVertex TreeVertex::from_basis(const Matrix& basis, Prime p) {
  if (basis.dim() != 2) throw InputError("lattice basis must be 2x2");
  const Rational& b = basis(0, 1);
  const Rational& c = basis(1, 0);
  const Rational& d = basis(1, 1);
  // Put the entry of minimal valuation in the bottom row into column 2, clear
  // the bottom-left entry, then scale: [[p^n, b/d], [0, 1]].
  const bool swap = vp(c, p) < vp(d, p);
  const Rational& top = swap ? basis(0, 0) : b;
  const Rational& bottom = swap ? c : d;
  const long level = vp(basis.determinant(), p).value() - 2 * vp(bottom, p).value();
  return TreeVertex(p.value(), level, reduce_offset(top / bottom, level, p));
}

Matrix TreeVertex::basis() const {
  return Matrix{{power_of(prime_, level_), offset_}, {Rational(0), Rational(1)}};
}

std::string TreeVertex::to_string() const {
  std::ostringstream os;
  os << "[p^" << level_ << ", " << offset_ << "]";
  return os.str();
}

std::size_t TreeVertex::hash() const {
  return (static_cast<std::size_t>(level_) * 0x9E3779B97F4A7C15ULL) ^ offset_.hash() ^ prime_;
}

long distance(const TreeVertex& v, const TreeVertex& w) {
  require_same_prime(v.prime(), w.prime());
  if (v == w) return 0;
  const auto e = elementary_divisor_valuations(v.basis().inverse() * w.basis(), v.prime());
  return e.back() - e.front();
}

std::vector<TreeVertex> neighbors(const TreeVertex& v) {
  const Prime p = v.prime();
  const Matrix b = v.basis();
  std::vector<TreeVertex> out;
  out.reserve(p.value() + 1);
  for (std::uint32_t j = 0; j < p.value(); ++j) {
    out.push_back(TreeVertex::from_basis(b * Matrix{{Rational(p.value()), Rational(j)}, {0, 1}}, p));
  }
  out.push_back(TreeVertex::from_basis(b * Matrix{{1, 0}, {0, Rational(p.value())}}, p));
  return out;
}

std::vector<TreeVertex> geodesic(const TreeVertex& v, const TreeVertex& w) {
  long d = distance(v, w);
  std::vector<TreeVertex> path{v};
  path.reserve(static_cast<std::size_t>(d + 1));
  while (d > 0) {
    path.push_back(step_towards(path.back(), w, d));
    --d;
  }
  return path;
}

std::vector<TreeVertex> ball(const TreeVertex& center, long radius) {
  std::vector<TreeVertex> out{center};
  std::unordered_set<TreeVertex> seen{center};
  std::size_t frontier_begin = 0;
  for (long r = 0; r < radius; ++r) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (auto& n : neighbors(out[i])) {
        if (seen.insert(n).second) out.push_back(std::move(n));
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isometries

TreeIsometry::TreeIsometry(Matrix matrix, Prime p) : matrix_(std::move(matrix)), prime_(p) {
  if (matrix_.dim() != 2) throw InputError("tree isometries are 2x2 matrices");
  if (vp(matrix_.determinant(), prime_).value() % 2 != 0) {
    throw UnsupportedError("type-swapping isometry unsupported (odd determinant valuation)");
  }
}

TreeVertex TreeIsometry::apply(const TreeVertex& v) const {
  require_same_prime(prime_, v.prime());
  return TreeVertex::from_basis(matrix_ * v.basis(), prime_);
}

TreeIsometry TreeIsometry::inverse() const { return TreeIsometry(matrix_.inverse(), prime_); }

TreeIsometry TreeIsometry::pow(long k) const { return TreeIsometry(matrix_.pow(k), prime_); }

TreeIsometry TreeIsometry::conjugated_by(const Matrix& t) const {
  return TreeIsometry(t * matrix_ * t.inverse(), prime_);
}

TreeIsometry operator*(const TreeIsometry& a, const TreeIsometry& b) {
  require_same_prime(a.prime_, b.prime_);
  return TreeIsometry(a.matrix_ * b.matrix_, a.prime_);
}

long displacement(const TreeIsometry& g, const TreeVertex& v) { return distance(v, g.apply(v)); }

Classification classify(const TreeIsometry& g) {
  const Prime p = g.prime();
  const long shift = vp(g.matrix().determinant(), p).value() / 2;
  const Valuation tv = vp(g.matrix().trace() * power_of(p.value(), -shift), p);
  if (tv.is_infinite() || tv.value() >= 0) return {IsometryKind::Elliptic, 0, tv, shift};
  return {IsometryKind::Hyperbolic, -2 * tv.value(), tv, shift};
}

// ---------------------------------------------------------------------------
// Axes

struct Axis::State {
  TreeIsometry owner;
  long length;
  TreeVertex base;
  TreeVertex shifted_base;           // owner . base = vertex_at(length)
  std::vector<TreeVertex> segment;   // vertex_at(0 .. length-1)
  mutable std::mutex mutex;
  mutable std::map<long, Matrix> powers;
};

Axis axis(const TreeIsometry& g) {
  const Classification c = classify(g);
  if (c.kind != IsometryKind::Hyperbolic) throw InputError("axis of an elliptic isometry");

  // Displacement is convex along geodesics, so greedy descent reaches its minimum set.
  TreeVertex x = TreeVertex::standard(g.prime());
  long dx = displacement(g, x);
  for (;;) {
    bool moved = false;
    for (auto& n : neighbors(x)) {
      const long dn = displacement(g, n);
      if (dn < dx) {
        x = std::move(n);
        dx = dn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (dx != c.translation_length) {
    throw InternalError("displacement minimum " + std::to_string(dx) + " disagrees with translation length " +
                        std::to_string(c.translation_length));
  }
  TreeVertex gx = g.apply(x);
  auto path = geodesic(x, gx);
  path.pop_back();
  auto state = std::shared_ptr<Axis::State>(
      new Axis::State{g, c.translation_length, x, std::move(gx), std::move(path), {}, {}});
  return Axis(std::move(state));
}

const TreeIsometry& Axis::owner() const { return state_->owner; }
long Axis::translation_length() const { return state_->length; }
const TreeVertex& Axis::base() const { return state_->base; }

TreeVertex Axis::vertex_at(long k) const {
  const long q = floor_div(k, state_->length);
  const TreeVertex& rep = state_->segment[static_cast<std::size_t>(k - q * state_->length)];
  if (q == 0) return rep;
  if (q == 1 && k == state_->length) return state_->shifted_base;
  Matrix power = [&] {
    std::lock_guard lock(state_->mutex);
    auto it = state_->powers.find(q);
    if (it == state_->powers.end()) it = state_->powers.emplace(q, state_->owner.matrix().pow(q)).first;
    return it->second;
  }();
  return TreeVertex::from_basis(power * rep.basis(), prime());
}

long Axis::distance_to(const TreeVertex& x) const {
  return (displacement(state_->owner, x) - state_->length) / 2;
}

long Axis::coordinate_of(const TreeVertex& v) const {
  const long m = distance(state_->base, v);
  if (m == 0) return 0;
  if (!contains(v)) throw InputError("vertex " + v.to_string() + " is not on the axis");
  const long to_shifted = distance(v, state_->shifted_base);
  return to_shifted == std::abs(m - state_->length) ? m : -m;
}

Projection project(const TreeVertex& x, const Axis& a) {
  require_same_prime(x.prime(), a.prime());
  const long h = a.distance_to(x);
  if (h == 0) return {x, a.coordinate_of(x), 0};
  // Gate property: d(x, base) = h + |c| for the projection coordinate c.
  const long m = distance(x, a.base()) - h;
  if (m == 0) return {a.base(), 0, h};
  TreeVertex cand = a.vertex_at(m);
  if (distance(x, cand) == h) return {std::move(cand), m, h};
  return {a.vertex_at(-m), -m, h};
}

// ---------------------------------------------------------------------------
// Pairs of axes

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::CaseI: return "I";
    case RelationKind::CaseII: return "II";
    case RelationKind::Inapplicable: return "inapplicable";
  }
  return "?";
}

long stabilization_bound(const Axis& ai, const Axis& aj) {
  return 64 + 4 * (ai.translation_length() + aj.translation_length() + distance(ai.base(), aj.base()));
}

namespace {

struct EndProjections {
  std::optional<long> plus;
  std::optional<long> minus;
};

// Projections onto `onto` of the two ends of `from`. An end's projection is
// fixed once the distance to `onto` starts growing along that end: in a tree
// the remaining ray then lies in a single branch hanging off the gate point.
EndProjections end_projections(const Axis& onto, const Axis& from, long bound) {
  EndProjections out;
  for (int sign : {+1, -1}) {
    for (long k = 1; k <= bound; k *= 2) {
      const TreeVertex x = from.vertex_at(sign * k);
      const TreeVertex y = from.vertex_at(sign * (k + 1));
      if (onto.distance_to(y) > onto.distance_to(x)) {
        (sign > 0 ? out.plus : out.minus) = project(x, onto).coordinate;
        break;
      }
    }
  }
  return out;
}

IntInterval hull_of(long a, long b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

AxisRelation axes_relation(const Axis& ai, const Axis& aj) {
  require_same_prime(ai.prime(), aj.prime());
  const long bound = stabilization_bound(ai, aj);
  const EndProjections on_i = end_projections(ai, aj, bound);
  const EndProjections on_j = end_projections(aj, ai, bound);

  AxisRelation rel;
  const int unstable_i = !on_i.plus + !on_i.minus;
  const int unstable_j = !on_j.plus + !on_j.minus;
  if (unstable_i != unstable_j) throw InternalError("asymmetric end stabilization");
  if (unstable_i == 2) {
    rel.reason = "equal axes";
    return rel;
  }
  if (unstable_i == 1) {
    rel.reason = "shared end";
    return rel;
  }

  rel.footprint_on_i = hull_of(*on_i.plus, *on_i.minus);
  rel.footprint_on_j = hull_of(*on_j.plus, *on_j.minus);
  if (rel.footprint_on_i.length() != rel.footprint_on_j.length()) {
    throw InternalError("shared segment has different lengths on the two axes");
  }

  const TreeVertex yi = ai.vertex_at(rel.footprint_on_i.lo);
  const TreeVertex yj = aj.vertex_at(rel.footprint_on_j.lo);
  const long gap = aj.distance_to(yi);
  if (gap == 0) {
    if (!aj.contains(ai.vertex_at(rel.footprint_on_i.hi))) throw InternalError("segment endpoint off axis");
    rel.kind = RelationKind::CaseI;
    rel.segment_on_i = rel.footprint_on_i;
    rel.segment_on_j = rel.footprint_on_j;
    rel.segment_length = rel.footprint_on_i.length();
    return rel;
  }
  if (rel.footprint_on_i.length() != 0) throw InternalError("disjoint axes with non-point footprint");
  rel.kind = RelationKind::CaseII;
  rel.bridge_length = distance(yi, yj);
  if (rel.bridge_length != gap) throw InternalError("bridge length disagrees with axis distance");
  rel.bridge_start = yi;
  rel.bridge_end = yj;
  return rel;
}

// ---------------------------------------------------------------------------
// Ping-pong sets

PingPongSets::PingPongSets(std::vector<Axis> axes, std::vector<FundamentalDomain> domains)
    : axes_(std::move(axes)), domains_(std::move(domains)) {
  if (axes_.size() != domains_.size()) throw InputError("one fundamental domain per generator required");
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (domains_[i].index != i) throw InputError("fundamental domains out of order");
    if (domains_[i].hi - domains_[i].lo != Rational(axes_[i].translation_length())) {
      throw InputError("fundamental domain " + std::to_string(i) + " has length " +
                       (domains_[i].hi - domains_[i].lo).to_string() + ", expected " +
                       std::to_string(axes_[i].translation_length()));
    }
  }
}

Side PingPongSets::ray_side(std::size_t i, long coordinate) const {
  const Rational c(coordinate);
  const auto& d = domains_.at(i);
  if (c >= d.hi) return Side::Plus;
  if (c <= d.lo) return Side::Minus;
  return Side::None;
}

Side PingPongSets::side(std::size_t i, const TreeVertex& x) const {
  return ray_side(i, project(x, axes_.at(i)).coordinate);
}

TreeVertex PingPongSets::outside_point() const {
  const BigInt c = floor_of(domains_.front().lo) + 1;
  return axes_.front().vertex_at(c.get_si());
}

PingPongSets pingpong_sets(const std::vector<TreeIsometry>& gens, const std::vector<FundamentalDomain>& domains) {
  std::vector<Axis> axes;
  axes.reserve(gens.size());
  for (const auto& g : gens) axes.push_back(axis(g));
  return PingPongSets(std::move(axes), domains);
}

// ---------------------------------------------------------------------------
// Criterion

Verdict schottky_check(const std::vector<TreeIsometry>& gens) {
  if (gens.size() < 2) throw InputError("at least two generators required");
  for (const auto& g : gens) require_same_prime(gens.front().prime(), g.prime());

  std::vector<Axis> axes;
  Verdict verdict;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (classify(gens[i]).kind != IsometryKind::Hyperbolic) {
      throw InputError("generator " + std::to_string(i + 1) + " is elliptic");
    }
    axes.push_back(axis(gens[i]));
    verdict.generators.push_back({axes.back().translation_length(), axes.back().base(), {}, {0, 0}});
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      verdict.pairs.push_back({i, j, axes_relation(axes[i], axes[j])});
    }
  }
  for (const auto& pr : verdict.pairs) {
    if (pr.relation.kind == RelationKind::Inapplicable) {
      verdict.reason = pr.relation.reason + " (generators " + std::to_string(pr.i + 1) + " and " +
                       std::to_string(pr.j + 1) + ")";
      return verdict;
    }
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto& rec = verdict.generators[i];
    for (const auto& pr : verdict.pairs) {
      if (pr.i == i) rec.footprints.push_back(pr.relation.footprint_on_i);
      if (pr.j == i) rec.footprints.push_back(pr.relation.footprint_on_j);
    }
    rec.hull = rec.footprints.front();
    for (const auto& f : rec.footprints) rec.hull = {std::min(rec.hull.lo, f.lo), std::max(rec.hull.hi, f.hi)};
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& rec = verdict.generators[i];
    // A closed set of diameter d fits in an open interval of length l iff d < l.
    if (rec.hull.length() >= rec.translation_length) {
      verdict.reason = "projection condition fails for generator " + std::to_string(i + 1) + ": diameter " +
                       std::to_string(rec.hull.length()) + " >= translation length " +
                       std::to_string(rec.translation_length);
      return verdict;
    }
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& rec = verdict.generators[i];
    const Rational mid = Rational(rec.hull.lo + rec.hull.hi) / Rational(2);
    const Rational half = Rational(rec.translation_length) / Rational(2);
    verdict.domains.push_back({i, mid - half, mid + half});
  }
  verdict.sets.emplace(std::move(axes), verdict.domains);
  verdict.status = VerdictStatus::Certified;
  verdict.reason = "free of rank " + std::to_string(gens.size()) + " and discrete";
  return verdict;
}

}  // namespace schottky::tree
