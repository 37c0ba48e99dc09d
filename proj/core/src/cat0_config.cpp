#include "schottky/cat0_config.hpp"

#include "schottky/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace schottky::cat0 {

Angle Angle::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  for (const std::string sep : {"\xC2\xB7", "*"}) {
    for (auto pos = s.find(sep); pos != std::string::npos; pos = s.find(sep)) s.erase(pos, sep.size());
  }
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    const std::string coef = s.substr(0, s.size() - 2);
    if (coef.empty()) return pi();
    if (coef == "-") return {Rational(-1)};
    return {Rational::parse(coef)};
  }
  const Rational r = Rational::parse(s);
  if (!r.is_zero()) throw InputError("angle must be a rational multiple of pi: '" + std::string(text) + "'");
  return {r};
}

std::string Angle::to_string() const {
  if (multiple_of_pi.is_zero()) return "0";
  if (is_pi()) return "pi";
  return multiple_of_pi.to_string() + "pi";
}

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

PairRelation oriented(PairRelation r) {
  if (r.i < r.j) return r;
  std::swap(r.i, r.j);
  std::swap(r.segment_on_i, r.segment_on_j);
  std::swap(r.footprint_on_i, r.footprint_on_j);
  return r;
}

void require_interval(const Interval& iv, const std::string& what) {
  if (iv.hi < iv.lo) throw InputError(what + " has hi < lo");
}

}  // namespace

ConfigVerdict check_configuration(const std::vector<AbstractAxis>& axes, const std::vector<PairRelation>& relations) {
  const std::size_t n = axes.size();
  if (n < 2) throw InputError("at least two axes required");
  for (const auto& a : axes) {
    if (a.translation_length.sign() <= 0) throw InputError("axis " + a.id + ": translation length must be positive");
  }

  std::map<std::pair<std::size_t, std::size_t>, PairRelation> by_pair;
  for (const auto& raw : relations) {
    if (raw.i >= n || raw.j >= n || raw.i == raw.j) throw InputError("relation refers to a bad pair of axes");
    PairRelation r = oriented(raw);
    const std::string name = pair_name(r.i, r.j);
    require_interval(r.footprint_on_i, "footprint on first axis of " + name);
    require_interval(r.footprint_on_j, "footprint on second axis of " + name);
    if (r.kind == PairKind::CaseII && r.bridge_length.sign() <= 0) {
      throw InputError("pair " + name + ": bridge length must be positive");
    }
    if (r.kind == PairKind::CaseI) {
      require_interval(r.segment_on_i, "segment of " + name);
      require_interval(r.segment_on_j, "segment of " + name);
      if (r.segment_on_i.length() != r.segment_on_j.length()) {
        throw InputError("pair " + name + ": segment extents differ on the two axes");
      }
      if (!r.footprint_on_i.contains(r.segment_on_i) || !r.footprint_on_j.contains(r.segment_on_j)) {
        throw InputError("pair " + name + ": shared segment not contained in the projection footprints");
      }
    }
    if (!by_pair.emplace(std::make_pair(r.i, r.j), r).second) throw InputError("duplicate relation for pair " + name);
  }

  ConfigVerdict v;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!by_pair.count({i, j})) throw InputError("missing relation for pair " + pair_name(i, j));
    }
  }

  for (const auto& [key, r] : by_pair) {
    const std::string name = pair_name(r.i, r.j);
    if (r.kind == PairKind::CaseI) {
      if (r.footprint_on_i.length() != r.segment_on_i.length() || r.footprint_on_j.length() != r.segment_on_j.length()) {
        v.warnings.push_back("pair " + name + ": footprint strictly larger than the shared segment; review manually");
      }
    } else if (r.footprint_on_i.length().sign() != 0 || r.footprint_on_j.length().sign() != 0) {
      v.warnings.push_back("pair " + name + ": disjoint axes with a non-point footprint; review manually");
    }
  }

  for (const auto& [key, r] : by_pair) {
    const auto check = [&](const Angle& a) {
      if (!a.is_pi()) {
        v.reason = "angle hypothesis fails for pair " + pair_name(r.i, r.j) + ": angle " + a.to_string() + " != pi";
        return false;
      }
      return true;
    };
    const bool ok = r.kind == PairKind::CaseI ? std::all_of(r.segment_angles.begin(), r.segment_angles.end(), check)
                                              : std::all_of(r.bridge_angles.begin(), r.bridge_angles.end(), check);
    if (!ok) return v;
  }

  std::vector<Interval> hulls;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Interval> hull;
    for (const auto& [key, r] : by_pair) {
      const Interval* f = r.i == i ? &r.footprint_on_i : (r.j == i ? &r.footprint_on_j : nullptr);
      if (!f) continue;
      if (!hull) hull = *f;
      hull->lo = std::min(hull->lo, f->lo);
      hull->hi = std::max(hull->hi, f->hi);
    }
    // A closed set of diameter d fits in an open interval of length l iff d < l.
    if (hull->length() >= axes[i].translation_length) {
      v.reason = "projection condition fails on axis " + axes[i].id + ": footprint diameter " +
                 hull->length().to_string() + " >= translation length " + axes[i].translation_length.to_string();
      return v;
    }
    hulls.push_back(*hull);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Rational mid = (hulls[i].lo + hulls[i].hi) / Rational(2);
    const Rational half = axes[i].translation_length / Rational(2);
    v.domains.push_back({i, mid - half, mid + half});
  }
  if (n == 2) {
    const auto& r = by_pair.begin()->second;
    if (r.kind == PairKind::CaseI && (r.segment_on_i.length() >= axes[0].translation_length ||
                                      r.segment_on_i.length() >= axes[1].translation_length)) {
      v.warnings.push_back("inconsistent data: Case I segment not shorter than both translation lengths");
    }
  }
  v.status = ConfigStatus::Certified;
  v.reason = "free of rank " + std::to_string(n);
  return v;
}

PairRelation relation_from_tree(const tree::AxisRelation& rel, std::size_t i, std::size_t j) {
  const auto conv = [](const tree::IntInterval& iv) { return Interval{Rational(iv.lo), Rational(iv.hi)}; };
  PairRelation r;
  r.i = i;
  r.j = j;
  r.footprint_on_i = conv(rel.footprint_on_i);
  r.footprint_on_j = conv(rel.footprint_on_j);
  switch (rel.kind) {
    case tree::RelationKind::CaseI:
      r.kind = PairKind::CaseI;
      r.segment_on_i = conv(rel.segment_on_i);
      r.segment_on_j = conv(rel.segment_on_j);
      break;
    case tree::RelationKind::CaseII:
      r.kind = PairKind::CaseII;
      r.bridge_length = Rational(rel.bridge_length);
      break;
    case tree::RelationKind::Inapplicable:
      throw InputError("tree relation is inapplicable (" + rel.reason + ")");
  }
  return r;
}

}  // namespace schottky::cat0
