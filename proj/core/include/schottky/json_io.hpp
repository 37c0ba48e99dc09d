#pragma once

// JSON encodings of inputs and reports. Rationals are strings "num/den"
// ("num" when the denominator is 1); matrices are row-major arrays of them.
// Objects use sorted keys, so equal values serialize to identical bytes.

#include "schottky/a2_link.hpp"
#include "schottky/bt_tree.hpp"
#include "schottky/cat0_config.hpp"
#include "schottky/pingpong.hpp"
#include "schottky/word_oracle.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace schottky::io {

using nlohmann::json;

json to_json(const Rational& r);
/// Accepts "n/d" strings and JSON integers.
Rational rational_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

struct NamedGenerator {
  std::string name;
  Matrix matrix;
};

struct GeneratorFile {
  std::uint32_t prime;
  std::vector<NamedGenerator> generators;

  std::vector<tree::TreeIsometry> isometries() const;
};

/// { "prime": int, "generators": [ { "name": str, "matrix": [[..],[..]] } ] }
GeneratorFile parse_generator_file(const json& j);
json to_json(const GeneratorFile& f);

json to_json(const tree::TreeVertex& v);
json to_json(const tree::IntInterval& iv);
json to_json(const tree::AxisRelation& r);
/// Verdict report body; names label the generators.
json to_json(const tree::Verdict& v, const std::vector<std::string>& names);

json to_json(const pingpong::HypothesisReport& r);
json to_json(const pingpong::DiscretenessRationale& r);
json to_json(const pingpong::WordTrace& t);

json to_json(const oracle::OracleReport& r);

struct ConfigFile {
  std::vector<cat0::AbstractAxis> axes;
  std::vector<cat0::PairRelation> relations;
};

/// { "axes": [{"id", "translation_length"}], "relations": [{"pair": [id, id],
///   "kind": "I"|"II", "angles": [...], "segment": {"on_first", "on_second"},
///   "bridge_length", "footprints": {"on_first", "on_second"}}] }
ConfigFile parse_config_file(const json& j);
json to_json(const cat0::ConfigVerdict& v);

json to_json(const a2::ProjPlane& plane);
json to_json(const a2::Chamber& c);
/// { "translation_lengths": [..], "opposite": [[..]], "distances": [[..]], "locally_compact": bool }
a2::OppositeAxesInput parse_opposite_axes_input(const json& j);
json to_json(const a2::OppositeAxesInput& in);
json to_json(const a2::OppositeAxesVerdict& v);

}  // namespace schottky::io
