#include "gallmap/layout.hpp"

#include <utility>

#include "detail.hpp"

namespace gallmap {

std::vector<double> compute_weights(const PhyloNetwork& net, WeightMode mode) {
  std::vector<double> w(net.node_count(), 0.0);
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    double share = 0.0;
    for (NodeId c : net.children(v))
      share += w[c] / static_cast<double>(net.in_degree(c));
    if (mode == WeightMode::uniform)
      w[v] = 1.0 + share;
    else
      w[v] = net.is_leaf(v) ? 1.0 : share;
  }
  return w;
}

std::vector<double> compute_tree_weights(const PhyloNetwork& tree,
                                         const PhyloNetwork& net,
                                         WeightMode mode) {
  if (tree.node_count() != net.node_count())
    throw Error(errc::constraint_violated,
                "tree and network disagree on node count");
  std::vector<double> w(tree.node_count(), 0.0);
  const auto& topo = tree.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    double sum = 0.0;
    if (mode == WeightMode::uniform)
      sum = 1.0;
    else if (net.is_leaf(v))
      sum = 1.0;
    for (NodeId c : tree.children(v)) sum += w[c];
    w[v] = sum;
  }
  return w;
}

namespace {

void reject_empty_chains(const GallSet& galls) {
  for (const Gall& gall : galls.galls)
    if (gall.left_chain.empty() || gall.right_chain.empty())
      throw Error(errc::unsupported_structure,
                  "a gall chain is empty, so no region assignment can keep "
                  "the reticulation inside both parents",
                  gall.reticulation);
}

DagMapLayout run_pipeline(const PhyloNetwork& net, const GallSet& galls,
                          const Rect& canvas, WeightMode mode) {
  auto [tree, map] = detail::remove_reticulation_edges(net, galls);
  const GallConstraints constraints = plan_layout(net, galls, map, false);
  const auto weights = compute_tree_weights(tree, net, mode);
  const auto rects = slice_and_dice(tree, weights, canvas, constraints);
  return expand_galls(rects, net, galls, map, constraints, mode);
}

}  // namespace

DagMapLayout layout_galled_tree(const PhyloNetwork& net, const GallSet& galls,
                                const Rect& canvas, WeightMode mode) {
  if (classify_network(net, galls) != NetworkClass::GalledTree)
    throw Error(errc::not_a_galled_tree, "galls share nodes");
  reject_empty_chains(galls);
  return run_pipeline(net, galls, canvas, mode);
}

DagMapLayout layout_galled_network(const PhyloNetwork& net,
                                   const GallSet& galls, const Rect& canvas,
                                   WeightMode mode) {
  const NetworkClass cls = classify_network(net, galls);
  if (cls == NetworkClass::Neither)
    throw Error(errc::not_a_galled_network,
                "a reticulation lies on two galls");
  reject_empty_chains(galls);
  if (cls == NetworkClass::GalledNetwork && !detail::is_planar_fast(net))
    throw Error(errc::not_planar,
                "the underlying graph admits no planar drawing");
  return run_pipeline(net, galls, canvas, mode);
}

}  // namespace gallmap
