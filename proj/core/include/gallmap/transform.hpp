#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gallmap/galls.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

// Record of the reticulation in-edges removed when a network is reduced to
// its spanning tree. Indices refer to the original network's edge list, so
// the reduction can be undone exactly.
struct CollapseMap {
  struct RemovedEdge {
    std::size_t edge_index = 0;  // position in the original edge list
    Edge edge;
    std::size_t gall = 0;  // index into the GallSet the edge belongs to
  };

  std::vector<RemovedEdge> removed;

  bool empty() const noexcept { return removed.empty(); }
};

// Removes one in-edge per reticulation so the result is a tree on the same
// node set. The edge into the reticulation from its second parent is removed
// unless that side's chain is empty, in which case the beginning-side edge
// goes instead, keeping the reticulation attached to a chain.
//
// Throws Error(errc::not_a_galled_tree) unless the network classifies as a
// galled tree.
std::pair<PhyloNetwork, CollapseMap> collapse_galls(const PhyloNetwork& net,
                                                    const GallSet& galls);

// Restores the network a CollapseMap was produced from; node ids, labels and
// edge order all match the original exactly.
PhyloNetwork expand_collapsed(const PhyloNetwork& tree,
                              const CollapseMap& map);

// Record of how shared nodes were replicated when a galled network is pulled
// apart into a galled tree. Edge origins allow an exact inverse.
struct SplitMap {
  std::size_t original_node_count = 0;

  // copies[u] lists the replacements of original node u in gall-index order;
  // unshared nodes have a single entry (themselves).
  std::vector<std::vector<NodeId>> copies;

  // origin[v] is the original node a split-graph node v stands for.
  std::vector<NodeId> origin;

  // edge_origin[i] is the original edge index behind split edge i, or npos
  // for synthetic root edges.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> edge_origin;
  std::size_t original_edge_count = 0;

  // Present when the original root was shared: a fresh root added above its
  // replacements so the result stays single-sourced.
  std::optional<NodeId> super_root;

  bool empty() const noexcept;
};

// Replicates every node that lies on more than one gall, one copy per gall,
// so that the result classifies as a galled tree. Gall-cycle edges follow
// their gall's copy; other edges attach to the copy of the lowest-indexed
// gall; in-edges of beginnings are replicated to every copy. A galled tree
// passes through unchanged with an identity SplitMap.
//
// Throws Error(errc::not_a_galled_network) when the input classifies as
// Neither.
std::pair<PhyloNetwork, SplitMap> split_shared_nodes(const PhyloNetwork& net,
                                                     const GallSet& galls);

// Exact inverse of split_shared_nodes.
PhyloNetwork unify_split(const PhyloNetwork& split, const SplitMap& map);

// Cyclic neighbour order (undirected) per node of a planar drawing.
struct PlanarEmbedding {
  std::vector<std::vector<NodeId>> rotation;
};

struct PlanarityResult {
  bool planar = false;
  std::optional<PlanarEmbedding> embedding;  // present iff planar
};

// Planarity of the underlying undirected graph, with a combinatorial
// embedding as witness when planar.
PlanarityResult check_planarity(const PhyloNetwork& net);

// Child order per node of a split galled tree, derived from a planar
// embedding of the original network: children follow the cyclic order of
// their edges around the parent's original node, linearized at the parent's
// in-edge, and replacements of one original node that share a parent are
// kept consecutive. With an empty SplitMap the order is ascending by id.
//
// Throws Error(errc::embedding_inconsistent) when the rotation does not
// match the graph.
std::vector<std::vector<NodeId>> order_subtrees(const PhyloNetwork& tree,
                                                const SplitMap& map,
                                                const PlanarEmbedding& emb);

// Layers numbered 1..height bottom-up: every sink sits in layer 1 and
// layer(v) is one more than the deepest child, so layer(v) - 1 is the
// longest path from v to a sink and the root attains `height`.
struct LayerAssignment {
  std::vector<std::uint32_t> layer;
  std::uint32_t height = 0;
};

LayerAssignment assign_layers(const PhyloNetwork& net,
                              const CollapseMap& map = {});

}  // namespace gallmap
