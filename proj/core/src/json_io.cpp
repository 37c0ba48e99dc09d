#include "schottky/json_io.hpp"

#include "schottky/errors.hpp"

#include <map>

namespace schottky::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

cat0::Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("interval must be a [lo, hi] pair");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

std::string verdict_name(const tree::Verdict& v) { return v.certified() ? "certified" : "inconclusive"; }

}  // namespace

json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rational must be a string \"num/den\" or an integer");
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be an array of rows");
  const int dim = static_cast<int>(j.size());
  std::vector<Rational> entries;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) throw InputError("matrix must be square");
    for (const auto& x : row) entries.push_back(rational_from_json(x));
  }
  return Matrix(dim, std::move(entries));
}

// ---------------------------------------------------------------------------

std::vector<tree::TreeIsometry> GeneratorFile::isometries() const {
  std::vector<tree::TreeIsometry> out;
  const Prime p(prime);
  for (const auto& g : generators) out.emplace_back(g.matrix, p);
  return out;
}

GeneratorFile parse_generator_file(const json& j) {
  const json& prime = field(j, "prime");
  if (!prime.is_number_integer() || prime.get<long>() < 2) throw InputError("prime must be an integer >= 2");
  GeneratorFile f{static_cast<std::uint32_t>(prime.get<long>()), {}};
  (void)Prime(f.prime);
  const json& gens = field(j, "generators");
  if (!gens.is_array()) throw InputError("generators must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const json& g = gens[i];
    std::string name = g.contains("name") ? g.at("name").get<std::string>() : "g" + std::to_string(i + 1);
    Matrix m = matrix_from_json(field(g, "matrix"));
    if (m.dim() != 2) throw InputError("generator matrices must be 2x2");
    f.generators.push_back({std::move(name), std::move(m)});
  }
  return f;
}

json to_json(const GeneratorFile& f) {
  json gens = json::array();
  for (const auto& g : f.generators) gens.push_back({{"name", g.name}, {"matrix", to_json(g.matrix)}});
  return {{"prime", f.prime}, {"generators", gens}};
}

// ---------------------------------------------------------------------------

json to_json(const tree::TreeVertex& v) {
  return {{"level", v.level()}, {"offset", to_json(v.offset())}, {"basis", to_json(v.basis())}};
}

json to_json(const tree::IntInterval& iv) { return json::array({iv.lo, iv.hi}); }

json to_json(const tree::AxisRelation& r) {
  json j{{"kind", tree::to_string(r.kind)}};
  if (r.kind == tree::RelationKind::Inapplicable) {
    j["reason"] = r.reason;
    return j;
  }
  j["angles"] = "automatic (tree)";
  j["footprint_on_i"] = to_json(r.footprint_on_i);
  j["footprint_on_j"] = to_json(r.footprint_on_j);
  if (r.kind == tree::RelationKind::CaseI) {
    j["segment_length"] = r.segment_length;
    j["segment_on_i"] = to_json(r.segment_on_i);
    j["segment_on_j"] = to_json(r.segment_on_j);
  } else {
    j["bridge_length"] = r.bridge_length;
    j["bridge_start"] = to_json(*r.bridge_start);
    j["bridge_end"] = to_json(*r.bridge_end);
  }
  return j;
}

json to_json(const tree::Verdict& v, const std::vector<std::string>& names) {
  json gens = json::array();
  for (std::size_t i = 0; i < v.generators.size(); ++i) {
    const auto& g = v.generators[i];
    json rec{{"name", i < names.size() ? names[i] : "g" + std::to_string(i + 1)},
             {"translation_length", g.translation_length},
             {"axis_base", to_json(g.axis_base)}};
    if (!g.footprints.empty()) {
      json fps = json::array();
      for (const auto& f : g.footprints) fps.push_back(to_json(f));
      rec["projection_footprints"] = fps;
      rec["projection_hull"] = to_json(g.hull);
      rec["projection_diameter"] = g.hull.length();
    }
    if (i < v.domains.size()) {
      rec["fundamental_domain"] = {{"lo", to_json(v.domains[i].lo)}, {"hi", to_json(v.domains[i].hi)}, {"open", true}};
      rec["ray_plus"] = {{"from", to_json(v.domains[i].hi)}, {"to", "+inf"}};
      rec["ray_minus"] = {{"from", "-inf"}, {"to", to_json(v.domains[i].lo)}};
    }
    gens.push_back(std::move(rec));
  }
  json pairs = json::array();
  for (const auto& p : v.pairs) {
    json rec = to_json(p.relation);
    rec["i"] = p.i + 1;
    rec["j"] = p.j + 1;
    pairs.push_back(std::move(rec));
  }
  return {{"verdict", verdict_name(v)}, {"reason", v.reason}, {"generators", gens}, {"pairs", pairs}};
}

// ---------------------------------------------------------------------------

json to_json(const pingpong::HypothesisReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"sample", v.sample}, {"kind", v.kind}, {"detail", v.detail}, {"point", v.point}});
  }
  json names = json::array();
  for (std::size_t k = 0; k < r.disjointness.size(); ++k) names.push_back(pingpong::set_name(k));
  return {{"samples", r.samples},
          {"checks_run", r.checks_run},
          {"summary", r.summary()},
          {"violations", violations},
          {"disjointness", {{"sets", names}, {"co_membership", r.disjointness}}}};
}

json to_json(const pingpong::DiscretenessRationale& r) {
  return {{"closed_sets", r.closed_sets},
          {"locally_compact", r.locally_compact},
          {"discreteness_claimed", r.discreteness_claimed},
          {"rationale", r.text}};
}

json to_json(const pingpong::WordTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"letters_applied", s.letters_applied}, {"point", s.point}, {"membership", s.membership}});
  }
  return {{"word", t.word.to_string()}, {"steps", steps}, {"ends_in_y", t.ends_in_y}, {"pass", t.pass()}};
}

json to_json(const oracle::OracleReport& r) {
  json j{{"generators", r.generators},
         {"max_length", r.max_length},
         {"words_checked", r.words_checked},
         {"words_per_length", r.words_per_length},
         {"first_trivial_word", r.first_trivial_word ? json(r.first_trivial_word->to_string()) : json(nullptr)},
         {"first_scalar_word", r.first_scalar_word ? json(r.first_scalar_word->to_string()) : json(nullptr)}};
  if (!r.min_displacement_per_length.empty()) {
    json table = json::array();
    for (std::size_t k = 0; k < r.min_displacement_per_length.size(); ++k) {
      const auto& d = r.min_displacement_per_length[k];
      table.push_back({{"length", k + 1}, {"min_displacement", d ? json(*d) : json(nullptr)}});
    }
    j["min_displacement_table"] = table;
    j["zero_displacement_count"] = r.zero_displacement_count;
    j["skipped_trivial"] = r.skipped_trivial;
    j["min_displacement"] = r.min_displacement ? json{{"word", r.min_displacement->word.to_string()},
                                                      {"displacement", r.min_displacement->displacement}}
                                               : json(nullptr);
  }
  return j;
}

// ---------------------------------------------------------------------------

ConfigFile parse_config_file(const json& j) {
  ConfigFile cfg;
  std::map<std::string, std::size_t> ids;
  const json& axes = field(j, "axes");
  if (!axes.is_array()) throw InputError("axes must be an array");
  for (const auto& a : axes) {
    cat0::AbstractAxis axis{field(a, "id").get<std::string>(), rational_from_json(field(a, "translation_length"))};
    if (!ids.emplace(axis.id, cfg.axes.size()).second) throw InputError("duplicate axis id " + axis.id);
    cfg.axes.push_back(std::move(axis));
  }
  const json& rels = field(j, "relations");
  if (!rels.is_array()) throw InputError("relations must be an array");
  for (const auto& r : rels) {
    const json& pair = field(r, "pair");
    if (!pair.is_array() || pair.size() != 2) throw InputError("pair must name two axes");
    const auto lookup = [&](const json& id) {
      const auto it = ids.find(id.get<std::string>());
      if (it == ids.end()) throw InputError("unknown axis id " + id.dump());
      return it->second;
    };
    cat0::PairRelation rel;
    rel.i = lookup(pair[0]);
    rel.j = lookup(pair[1]);
    const std::string kind = field(r, "kind").get<std::string>();
    const json& angles = field(r, "angles");
    if (kind == "I") {
      rel.kind = cat0::PairKind::CaseI;
      if (!angles.is_array() || angles.size() != 2) throw InputError("case I needs two angles");
      for (std::size_t k = 0; k < 2; ++k) rel.segment_angles[k] = cat0::Angle::parse(angles[k].get<std::string>());
      const json& seg = field(r, "segment");
      rel.segment_on_i = interval_from_json(field(seg, "on_first"));
      rel.segment_on_j = interval_from_json(field(seg, "on_second"));
    } else if (kind == "II") {
      rel.kind = cat0::PairKind::CaseII;
      if (!angles.is_array() || angles.size() != 4) throw InputError("case II needs four angles");
      for (std::size_t k = 0; k < 4; ++k) rel.bridge_angles[k] = cat0::Angle::parse(angles[k].get<std::string>());
      rel.bridge_length = rational_from_json(field(r, "bridge_length"));
    } else {
      throw InputError("relation kind must be \"I\" or \"II\"");
    }
    const json& fp = field(r, "footprints");
    rel.footprint_on_i = interval_from_json(field(fp, "on_first"));
    rel.footprint_on_j = interval_from_json(field(fp, "on_second"));
    cfg.relations.push_back(std::move(rel));
  }
  return cfg;
}

json to_json(const cat0::ConfigVerdict& v) {
  json domains = json::array();
  for (const auto& d : v.domains) {
    domains.push_back({{"axis", d.index + 1}, {"lo", to_json(d.lo)}, {"hi", to_json(d.hi)}, {"open", true}});
  }
  return {{"verdict", v.certified() ? "certified" : "rejected"},
          {"reason", v.reason},
          {"fundamental_domains", domains},
          {"warnings", v.warnings}};
}

// ---------------------------------------------------------------------------

json to_json(const a2::ProjPlane& plane) {
  json lines = json::array();
  json incidence = json::array();
  for (a2::LineId l = 0; l < plane.line_count(); ++l) {
    json line{{"id", l}, {"points", plane.points_on(l)}};
    if (!plane.line_coordinates().empty()) line["coordinates"] = plane.line_coordinates()[l];
    lines.push_back(std::move(line));
    for (auto p : plane.points_on(l)) incidence.push_back(json::array({p, l}));
  }
  json points = json::array();
  for (a2::PointId p = 0; p < plane.point_count(); ++p) {
    json point{{"id", p}};
    if (!plane.point_coordinates().empty()) point["coordinates"] = plane.point_coordinates()[p];
    points.push_back(std::move(point));
  }
  return {{"order", plane.order()}, {"points", points}, {"lines", lines}, {"incidence", incidence}};
}

json to_json(const a2::Chamber& c) { return {{"point", c.point}, {"line", c.line}}; }

a2::OppositeAxesInput parse_opposite_axes_input(const json& j) {
  a2::OppositeAxesInput in;
  for (const auto& l : field(j, "translation_lengths")) in.translation_lengths.push_back(rational_from_json(l));
  for (const auto& row : field(j, "opposite")) {
    std::vector<std::optional<bool>> flags;
    for (const auto& x : row) flags.push_back(x.is_boolean() ? std::optional<bool>(x.get<bool>()) : std::nullopt);
    in.opposite.push_back(std::move(flags));
  }
  if (!j.contains("distances")) throw InputError("missing distances");
  for (const auto& row : j.at("distances")) {
    std::vector<Rational> d;
    for (const auto& x : row) d.push_back(rational_from_json(x));
    in.distances.push_back(std::move(d));
  }
  in.locally_compact = j.value("locally_compact", false);
  return in;
}

json to_json(const a2::OppositeAxesInput& in) {
  json lengths = json::array();
  for (const auto& l : in.translation_lengths) lengths.push_back(to_json(l));
  json opp = json::array();
  for (const auto& row : in.opposite) {
    json r = json::array();
    for (const auto& f : row) r.push_back(f ? json(*f) : json(nullptr));
    opp.push_back(std::move(r));
  }
  json dist = json::array();
  for (const auto& row : in.distances) {
    json r = json::array();
    for (const auto& d : row) r.push_back(to_json(d));
    dist.push_back(std::move(r));
  }
  return {{"translation_lengths", lengths}, {"opposite", opp}, {"distances", dist}, {"locally_compact", in.locally_compact}};
}

json to_json(const a2::OppositeAxesVerdict& v) {
  const char* status = v.status == a2::OppositeAxesStatus::Certified
                           ? "certified"
                           : (v.status == a2::OppositeAxesStatus::Rejected ? "rejected" : "inconclusive");
  return {{"verdict", status},
          {"reason", v.reason},
          {"conclusion", v.conclusion},
          {"center", v.center ? json(*v.center) : json(nullptr)},
          {"radius_bound", to_json(v.radius_bound)},
          {"realizability", v.realizability_note}};
}

}  // namespace schottky::io
