#pragma once

#include "schottky/bt_tree.hpp"
#include "schottky/pingpong.hpp"

#include <vector>

namespace schottky::tree {

/// Tree vertices under the generators; basepoint is sets.outside_point().
pingpong::ActionUniverse<TreeVertex> tree_universe(const std::vector<TreeIsometry>& gens, const PingPongSets& sets);

/// X_i^+- as exact projection predicates; closed, since they are preimages of closed rays.
pingpong::SetFamily<TreeVertex> tree_family(const PingPongSets& sets);

}  // namespace schottky::tree
