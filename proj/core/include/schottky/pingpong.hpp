#pragma once

// Generic ping-pong engine. Given generators acting on some point set and
// candidate tables X_i^+, X_i^-, it samples points and tries to refute the
// hypotheses
//   - the 2n sets are pairwise disjoint and miss the basepoint,
//   - g_i(X \ X_i^-) lies in X_i^+ and g_i^-1(X \ X_i^+) lies in X_i^-,
// and traces words through the tables. Sampling can only refute; a clean
// report means "no violation found", never a proof.

#include "schottky/errors.hpp"
#include "schottky/parallel.hpp"
#include "schottky/word.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace schottky::pingpong {

template <class Point>
struct ActionUniverse {
  std::size_t generators = 0;
  std::function<Point(const Letter&, const Point&)> apply;
  /// Optional; enables sampling from a ball around the basepoint.
  std::function<std::vector<Point>(const Point&)> neighbors;
  std::function<std::string(const Point&)> describe;
  Point basepoint;
  bool locally_compact = false;
};

/// Set index convention: 2i is X_{i+1}^+, 2i+1 is X_{i+1}^-.
inline std::string set_name(std::size_t k) {
  return "X" + std::to_string(k / 2 + 1) + (k % 2 == 0 ? "+" : "-");
}

template <class Point>
struct SetFamily {
  std::vector<std::function<bool(const Point&)>> plus;
  std::vector<std::function<bool(const Point&)>> minus;
  /// Optional batch form of the predicates; must agree with them.
  std::function<std::vector<bool>(const Point&)> labeler;
  bool closed_sets = false;

  std::size_t size() const { return plus.size(); }

  std::vector<bool> memberships(const Point& x) const {
    if (labeler) return labeler(x);
    std::vector<bool> m(2 * plus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
      m[2 * i] = plus[i](x);
      m[2 * i + 1] = minus[i](x);
    }
    return m;
  }
  bool in_plus(std::size_t i, const Point& x) const { return labeler ? labeler(x)[2 * i] : plus[i](x); }
  bool in_minus(std::size_t i, const Point& x) const { return labeler ? labeler(x)[2 * i + 1] : minus[i](x); }
  bool in_y(const Point& x) const {
    const auto m = memberships(x);
    return std::find(m.begin(), m.end(), true) != m.end();
  }
};

inline std::string label_of(const std::vector<bool>& m) {
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m[k]) continue;
    if (!out.empty()) out += ",";
    out += set_name(k);
  }
  return out.empty() ? "outside" : out;
}

struct Violation {
  long sample = -1;  // -1: basepoint / global check
  std::string kind;  // action | coverage | disjointness | containment | nonempty
  std::string detail;
  std::string point;
};

struct HypothesisReport {
  std::size_t samples = 0;
  std::size_t checks_run = 0;
  std::vector<Violation> violations;
  /// disjointness[a][b]: samples lying in both set a and set b (diagonal: in set a).
  std::vector<std::vector<std::size_t>> disjointness;

  bool clean() const { return violations.empty(); }
  std::string summary() const {
    if (clean()) return "no violation found in " + std::to_string(checks_run) + " checks";
    const auto& v = violations.front();
    return std::to_string(violations.size()) + " violation(s); first: " + v.kind + " at sample " +
           std::to_string(v.sample) + ": " + v.detail;
  }
};

struct SamplingOptions {
  std::size_t sample_count = 500;
  std::uint64_t seed = 0;
  long ball_radius = 5;
  std::size_t ball_cap = 20000;
  std::size_t max_word_length = 6;
  bool use_ball = true;
  bool use_words = true;
  std::size_t workers = 1;
};

/// Deterministic sample list: the 2n letter images of the basepoint, then
/// alternating seeded picks from the ball and images under random reduced words.
template <class Point>
std::vector<Point> draw_samples(const ActionUniverse<Point>& u, const SamplingOptions& opt) {
  const bool ball_ok = opt.use_ball && static_cast<bool>(u.neighbors);
  if (!ball_ok && !opt.use_words) throw InputError("empty sample source");

  std::vector<Point> ballpts;
  if (ball_ok) {
    std::unordered_set<Point> seen{u.basepoint};
    ballpts.push_back(u.basepoint);
    std::size_t begin = 0;
    for (long r = 0; r < opt.ball_radius && ballpts.size() < opt.ball_cap; ++r) {
      const std::size_t end = ballpts.size();
      for (std::size_t i = begin; i < end && ballpts.size() < opt.ball_cap; ++i) {
        for (auto& n : u.neighbors(ballpts[i])) {
          if (seen.insert(n).second) ballpts.push_back(std::move(n));
        }
      }
      begin = end;
    }
  }

  std::mt19937_64 rng(opt.seed);
  const std::size_t alphabet = 2 * u.generators;
  std::vector<Point> out;
  out.reserve(opt.sample_count);
  for (std::size_t c = 0; c < alphabet && out.size() < opt.sample_count; ++c) {
    out.push_back(u.apply(Letter::from_code(c), u.basepoint));
  }
  bool from_ball = ball_ok;
  while (out.size() < opt.sample_count) {
    if (from_ball) {
      out.push_back(ballpts[rng() % ballpts.size()]);
    } else {
      const std::size_t len = 1 + rng() % std::max<std::size_t>(1, opt.max_word_length);
      Point x = u.basepoint;
      std::size_t prev = alphabet;  // none
      for (std::size_t k = 0; k < len; ++k) {
        std::size_t code = rng() % alphabet;
        while (prev != alphabet && Letter::from_code(code).cancels(Letter::from_code(prev))) code = rng() % alphabet;
        x = u.apply(Letter::from_code(code), x);
        prev = code;
      }
      out.push_back(std::move(x));
    }
    if (ball_ok && opt.use_words) from_ball = !from_ball;
  }
  return out;
}

template <class Point>
HypothesisReport verify_hypotheses(const ActionUniverse<Point>& u, const SetFamily<Point>& f,
                                   const SamplingOptions& opt) {
  if (u.generators < 2 || f.size() != u.generators || f.minus.size() != u.generators) {
    throw InputError("ping-pong needs at least two generators with one pair of sets each");
  }
  if (opt.sample_count < 1) throw InputError("sample_count must be positive");
  const std::size_t n = u.generators;
  const auto describe = [&](const Point& x) { return u.describe ? u.describe(x) : std::string("?"); };

  HypothesisReport report;
  report.disjointness.assign(2 * n, std::vector<std::size_t>(2 * n, 0));

  ++report.checks_run;
  if (f.in_y(u.basepoint)) {
    report.violations.push_back({-1, "coverage", "basepoint lies in " + label_of(f.memberships(u.basepoint)),
                                 describe(u.basepoint)});
  }

  const std::vector<Point> samples = draw_samples(u, opt);
  report.samples = samples.size();

  struct Chunk {
    std::size_t checks = 0;
    std::vector<Violation> violations;
    std::vector<std::vector<std::size_t>> matrix;
  };
  const std::size_t workers = std::max<std::size_t>(1, opt.workers);
  const std::size_t chunk_count = std::min(samples.size(), workers * 4);
  std::vector<Chunk> chunks(chunk_count);

  parallel_for(chunk_count, workers, [&](std::size_t c) {
    Chunk& out = chunks[c];
    out.matrix.assign(2 * n, std::vector<std::size_t>(2 * n, 0));
    const std::size_t lo = samples.size() * c / chunk_count;
    const std::size_t hi = samples.size() * (c + 1) / chunk_count;
    for (std::size_t s = lo; s < hi; ++s) {
      const Point& x = samples[s];
      const long idx = static_cast<long>(s);
      const auto m = f.memberships(x);
      for (std::size_t a = 0; a < 2 * n; ++a) {
        for (std::size_t b = 0; b < 2 * n; ++b) out.matrix[a][b] += (m[a] && m[b]) ? 1 : 0;
      }
      ++out.checks;
      if (std::count(m.begin(), m.end(), true) > 1) {
        out.violations.push_back({idx, "disjointness", "point lies in " + label_of(m), describe(x)});
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (bool inv : {false, true}) {
          const Letter l{i, inv};
          const Point y = u.apply(l, x);
          ++out.checks;
          if (!(u.apply(l.inverted(), y) == x)) {
            out.violations.push_back({idx, "action", "inverse letter does not undo " + ReducedWord({l}).to_string(),
                                      describe(x)});
          }
          // g_i: X \ X_i^- -> X_i^+ ; g_i^-1: X \ X_i^+ -> X_i^-
          const bool source_excluded = inv ? m[2 * i] : m[2 * i + 1];
          if (source_excluded) continue;
          ++out.checks;
          const bool landed = inv ? f.in_minus(i, y) : f.in_plus(i, y);
          if (!landed) {
            out.violations.push_back(
                {idx, "containment",
                 ReducedWord({l}).to_string() + " maps a point outside " + set_name(2 * i + (inv ? 0 : 1)) +
                     " to " + label_of(f.memberships(y)) + ", expected " + set_name(2 * i + (inv ? 1 : 0)),
                 describe(x)});
          }
        }
      }
    }
  });

  for (auto& c : chunks) {
    report.checks_run += c.checks;
    for (std::size_t a = 0; a < 2 * n; ++a) {
      for (std::size_t b = 0; b < 2 * n; ++b) report.disjointness[a][b] += c.matrix[a][b];
    }
    for (auto& v : c.violations) report.violations.push_back(std::move(v));
  }
  for (std::size_t k = 0; k < 2 * n; ++k) {
    ++report.checks_run;
    if (report.disjointness[k][k] == 0) {
      report.violations.push_back({static_cast<long>(samples.size()), "nonempty",
                                   "no sampled point lies in " + set_name(k), ""});
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.sample < b.sample; });
  return report;
}

template <class Point>
HypothesisReport verify_hypotheses(const ActionUniverse<Point>& u, const SetFamily<Point>& f,
                                   std::size_t sample_count, std::uint64_t seed) {
  SamplingOptions opt;
  opt.sample_count = sample_count;
  opt.seed = seed;
  return verify_hypotheses(u, f, opt);
}

struct TraceStep {
  std::size_t letters_applied;
  std::string point;
  std::string membership;
};

struct WordTrace {
  ReducedWord word;
  std::vector<TraceStep> steps;
  bool ends_in_y = false;
  /// Nontrivial words must end in Y; the empty word must not.
  bool pass() const { return word.empty() ? !ends_in_y : ends_in_y; }
};

/// Applies w to x rightmost letter first, recording the set each point lies in.
/// Throws InputError if x is in Y.
template <class Point>
WordTrace trace_word(const ActionUniverse<Point>& u, const SetFamily<Point>& f, const ReducedWord& w,
                     const Point& x) {
  auto m = f.memberships(x);
  if (std::find(m.begin(), m.end(), true) != m.end()) throw InputError("trace start point lies in Y");
  const auto describe = [&](const Point& p) { return u.describe ? u.describe(p) : std::string("?"); };

  WordTrace t;
  t.word = w;
  t.steps.push_back({0, describe(x), label_of(m)});
  Point cur = x;
  const auto& letters = w.letters();
  for (std::size_t k = 0; k < letters.size(); ++k) {
    cur = u.apply(letters[letters.size() - 1 - k], cur);
    m = f.memberships(cur);
    t.steps.push_back({k + 1, describe(cur), label_of(m)});
  }
  t.ends_in_y = std::find(m.begin(), m.end(), true) != m.end();
  return t;
}

struct DiscretenessRationale {
  bool closed_sets = false;
  bool locally_compact = false;
  bool discreteness_claimed = false;
  std::string text;
};

template <class Point>
DiscretenessRationale discreteness_rationale(const ActionUniverse<Point>& u, const SetFamily<Point>& f) {
  DiscretenessRationale r{f.closed_sets, u.locally_compact, f.closed_sets && u.locally_compact, {}};
  if (r.discreteness_claimed) {
    r.text = "sets are closed and the space is locally compact: the generated group is discrete";
  } else if (!r.closed_sets) {
    r.text = "closedness of the sets not asserted: no discreteness claim";
  } else {
    r.text = "space not flagged locally compact: no discreteness claim";
  }
  return r;
}

}  // namespace schottky::pingpong
