#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gallmap/galls.hpp"
#include "gallmap/transform.hpp"

namespace gallmap::detail {

// Removes one in-edge per gall without checking the network class first.
std::pair<PhyloNetwork, CollapseMap> remove_reticulation_edges(
    const PhyloNetwork& net, const GallSet& galls);

// kept[g] is true when the left chain stayed attached to the reticulation.
std::vector<bool> kept_left(const GallSet& galls, const CollapseMap& map);

// Children of every node in one flat block, preserving edge order.
struct ChildTable {
  std::vector<std::uint32_t> ptr;
  std::vector<NodeId> flat;

  NodeSpan operator[](NodeId v) const {
    return {flat.data() + ptr[v], ptr[v + 1] - ptr[v]};
  }
  std::size_t size() const { return ptr.empty() ? 0 : ptr.size() - 1; }
};

// Children of every node after dropping the removed edges.
ChildTable tree_children(const PhyloNetwork& net, const CollapseMap& map);

// Same verdict as check_planarity(net).planar, reached after stripping
// pendant subtrees and suppressing degree-2 vertices so the planarity test
// only sees the small skeleton of cycles.
bool is_planar_fast(const PhyloNetwork& net);

}  // namespace gallmap::detail
