#include "schottky/tree_pingpong.hpp"

namespace schottky::tree {

pingpong::ActionUniverse<TreeVertex> tree_universe(const std::vector<TreeIsometry>& gens, const PingPongSets& sets) {
  if (gens.size() != sets.size()) throw InputError("generator count does not match the ping-pong sets");
  std::vector<TreeIsometry> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  return pingpong::ActionUniverse<TreeVertex>{
      .generators = gens.size(),
      .apply = [letters = std::move(letters)](const Letter& l,
                                              const TreeVertex& v) { return letters[l.code()].apply(v); },
      .neighbors = [](const TreeVertex& v) { return neighbors(v); },
      .describe = [](const TreeVertex& v) { return v.to_string(); },
      .basepoint = sets.outside_point(),
      .locally_compact = true,
  };
}

pingpong::SetFamily<TreeVertex> tree_family(const PingPongSets& sets) {
  pingpong::SetFamily<TreeVertex> f;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    f.plus.push_back([sets, i](const TreeVertex& v) { return sets.in_plus(i, v); });
    f.minus.push_back([sets, i](const TreeVertex& v) { return sets.in_minus(i, v); });
  }
  f.labeler = [sets](const TreeVertex& v) {
    std::vector<bool> m(2 * sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const Side s = sets.side(i, v);
      m[2 * i] = s == Side::Plus;
      m[2 * i + 1] = s == Side::Minus;
    }
    return m;
  };
  f.closed_sets = true;
  return f;
}

}  // namespace schottky::tree
