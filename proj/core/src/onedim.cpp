#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "detail.hpp"
#include "gallmap/errors.hpp"
#include "gallmap/galls.hpp"
#include "gallmap/geometry.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"
#include "gallmap/transform.hpp"

namespace gallmap {

LayeredInfeasible::LayeredInfeasible(std::string message, NodeId node,
                                     std::uint32_t layer)
    : Error(errc::not_layered_planar,
            std::move(message) + ": node " + std::to_string(node) +
                " at layer " + std::to_string(layer),
            node),
      layer_(layer) {}

OneDimLayout layout_one_dimensional(const PhyloNetwork& net,
                                    const GallSet& galls,
                                    const LayerAssignment& layers,
                                    double axis_length) {
  if (!(axis_length > 0.0))
    throw Error(errc::constraint_violated, "axis length must be positive");
  if (layers.layer.size() != net.node_count())
    throw Error(errc::constraint_violated,
                "layer assignment does not match the network");
  if (classify_network(net, galls) == NetworkClass::Neither)
    throw Error(errc::not_a_galled_network,
                "reticulation cycles overlap, so the network has no galls");
  for (const Gall& gall : galls.galls)
    if (gall.left_chain.empty() || gall.right_chain.empty())
      throw Error(errc::unsupported_structure, "gall has an empty chain",
                  gall.reticulation);

  auto [tree, map] = detail::remove_reticulation_edges(net, galls);
  GallConstraints cons = plan_layout(net, galls, map, true);
  // One axis only: every strip is cut lengthwise, so gall columns are the
  // whole drawing and the cross direction always spans the full band.
  std::fill(cons.same_axis.begin(), cons.same_axis.end(), true);

  const std::vector<double> weights =
      compute_tree_weights(tree, net, WeightMode::leaf_count);
  const Rect canvas{0.0, 0.0, axis_length, 1.0};
  const std::vector<Rect> strips = slice_and_dice(tree, weights, canvas, cons);
  const DagMapLayout flat =
      expand_galls(strips, net, galls, map, cons, WeightMode::leaf_count);

  OneDimLayout od;
  od.axis_length = axis_length;
  od.layers = layers;
  od.interval.resize(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const Rect b = flat.node_region[v].bounds();
    od.interval[v] = {b.lo(Axis::horizontal), b.hi(Axis::horizontal)};
  }
  return od;
}

DagMapLayout banded_layout(const OneDimLayout& od, const PhyloNetwork& net,
                           double band_height) {
  if (!(band_height > 0.0))
    throw Error(errc::constraint_violated, "band height must be positive");
  if (od.interval.size() != net.node_count() ||
      od.layers.layer.size() != net.node_count())
    throw Error(errc::constraint_violated,
                "interval layout does not match the network");

  const double h = od.layers.height > 0 ? double(od.layers.height) : 1.0;
  DagMapLayout out;
  out.canvas = Rect{0.0, 0.0, od.axis_length, band_height};
  out.mode = WeightMode::leaf_count;
  out.weights = compute_weights(net, WeightMode::leaf_count);
  out.node_region.resize(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const Interval& iv = od.interval[v];
    const double top = band_height * od.layers.layer[v] / h;
    out.node_region[v] = RectPolygon(Rect{iv.lo, 0.0, iv.hi - iv.lo, top});
  }
  out.edge_region.reserve(net.edges().size());
  for (const Edge& e : net.edges()) {
    const Interval& a = od.interval[e.from];
    const Interval& b = od.interval[e.to];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    const double top = band_height * od.layers.layer[e.to] / h;
    out.edge_region.push_back(hi > lo ? Rect{lo, 0.0, hi - lo, top} : Rect{});
  }
  return out;
}

}  // namespace gallmap
