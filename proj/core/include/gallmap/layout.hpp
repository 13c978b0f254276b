#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gallmap/errors.hpp"
#include "gallmap/galls.hpp"
#include "gallmap/geometry.hpp"
#include "gallmap/network.hpp"
#include "gallmap/transform.hpp"

namespace gallmap {

enum class WeightMode : std::uint8_t {
  leaf_count,  // leaves weigh 1; a reticulation's weight splits evenly
               // between its two parents
  uniform,     // every node adds 1 of its own on top of its children's share
};

// Per-node weights under `mode`; weights[v] is the area share v's region
// receives relative to the root.
std::vector<double> compute_weights(const PhyloNetwork& net, WeightMode mode);

// Cumulative weights of the collapsed tree: the subtree total each node's
// strip receives before gall expansion. A reticulation counts fully on the
// side that kept it, so members of the removed side can reach zero.
std::vector<double> compute_tree_weights(const PhyloNetwork& tree,
                                         const PhyloNetwork& net,
                                         WeightMode mode);

// Side conventions and child orderings that let a treemap pass honour gall
// structure: chain continuations stay flush against their gall's seam, the
// two chain tops under a beginning sit adjacent, and the subdivision axis is
// held constant inside every gall column. Built by plan_layout; a
// default-constructed value means "plain tree, no constraints".
struct GallConstraints {
  // Drawing orientation per gall: false places the kept chain on the low
  // side of the seam.
  std::vector<bool> flipped;

  // Galls whose chain had to leave the shared column and re-attach across
  // the layer direction (their removed-side chain draws as a notch).
  std::vector<bool> cross_attached;

  // child_order[v] is the left-to-right order of v's tree children; empty
  // when v keeps insertion order.
  std::vector<std::vector<NodeId>> child_order;

  // Nodes whose children subdivide along the same axis their own strip was
  // cut on (chain members, so columns nest instead of alternating).
  std::vector<bool> same_axis;

  // Slot index the node's own unit strip takes in uniform mode; nonzero when
  // children pinned to the low edge must come first.
  std::vector<std::uint32_t> own_position;

  // Nodes whose strip may legitimately have zero width before expansion
  // (bare members of a gall's removed side).
  std::vector<bool> zero_width_ok;

  bool empty() const noexcept { return child_order.empty(); }
};

// Decides orientations, orderings and cross attachments for all galls.
// `one_dimensional` forbids cross attachment; an unplaceable gall then
// raises LayeredInfeasible instead. Throws Error(errc::unsupported_structure)
// for structures outside the supported drawing repertoire (see README).
GallConstraints plan_layout(const PhyloNetwork& net, const GallSet& galls,
                            const CollapseMap& map, bool one_dimensional);

// Weighted treemap of a tree: the root's rectangle is the canvas and every
// node's children tile a run of its rectangle in proportion to `weights`
// (cumulative subtree totals). The split axis alternates with depth except
// inside gall columns. Throws Error(errc::degenerate_area) when a strip's
// area underflows 1e-12 without being marked zero_width_ok, and
// Error(errc::constraint_violated) on malformed inputs.
std::vector<Rect> slice_and_dice(const PhyloNetwork& tree,
                                 const std::vector<double>& weights,
                                 const Rect& canvas,
                                 const GallConstraints& constraints = {});

struct DagMapLayout {
  Rect canvas;
  std::vector<RectPolygon> node_region;  // by node id
  std::vector<Rect> edge_region;         // aligned with net.edges()
  std::vector<double> weights;           // the weights the areas realise
  WeightMode mode = WeightMode::leaf_count;
};

// Turns a constrained treemap of the collapsed tree into a DAGmap of the
// original network: seam boundaries shift so each reticulation's rectangle
// straddles both parent columns, cross-attached galls carve their notch, and
// every edge receives a rectangle inside the intersection of its endpoint
// regions. Throws Error(errc::constraint_violated) if the treemap does not
// fit the constraints.
DagMapLayout expand_galls(const std::vector<Rect>& tree_rects,
                          const PhyloNetwork& net, const GallSet& galls,
                          const CollapseMap& map,
                          const GallConstraints& constraints,
                          WeightMode mode);

// Full pipeline for a galled tree: collapse, slice, expand. Linear time.
// Throws Error(errc::not_a_galled_tree) on other inputs and
// Error(errc::unsupported_structure) for galls with an empty chain, which
// provably admit no layout satisfying the validator's axioms.
DagMapLayout layout_galled_tree(const PhyloNetwork& net, const GallSet& galls,
                                const Rect& canvas,
                                WeightMode mode = WeightMode::leaf_count);

// Full pipeline for a planar galled network (galled trees pass through and
// produce the same geometry as layout_galled_tree). Throws
// Error(errc::not_planar) when the underlying graph is non-planar and
// Error(errc::not_a_galled_network) when the input classifies as Neither.
DagMapLayout layout_galled_network(const PhyloNetwork& net,
                                   const GallSet& galls, const Rect& canvas,
                                   WeightMode mode = WeightMode::leaf_count);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct OneDimLayout {
  std::vector<Interval> interval;  // by node id
  LayerAssignment layers;
  double axis_length = 0.0;
};

// Raised when some gall cannot keep both chains adjacent in the layered
// drawing; `node` is the reticulation that cannot be covered and `layer` the
// layer it sits in.
class LayeredInfeasible : public Error {
 public:
  LayeredInfeasible(std::string message, NodeId node, std::uint32_t layer);
  std::uint32_t layer() const noexcept { return layer_; }

 private:
  std::uint32_t layer_;
};

// One-dimensional DAGmap: one interval per node such that, for every layer,
// the intervals of that layer's nodes together with the corridors of edges
// crossing the layer tile [0, axis_length]. Leaf-count weights only.
OneDimLayout layout_one_dimensional(const PhyloNetwork& net,
                                    const GallSet& galls,
                                    const LayerAssignment& layers,
                                    double axis_length);

// Renders a one-dimensional layout as rectangles: node v draws as
// interval(v) x [0, H * layer(v) / height], which satisfies the planar
// DAGmap axioms whenever the interval layout is valid.
DagMapLayout banded_layout(const OneDimLayout& od, const PhyloNetwork& net,
                           double band_height);

struct ValidationReport {
  struct Violation {
    enum class Kind {
      root_mismatch,     // root region differs from the canvas
      outside_parents,   // node region not inside the union of its parents
      edge_outside,      // edge region escapes an endpoint region
      nonpositive_area,  // region area below 1e-12
      sibling_overlap,   // two children of one parent overlap
      disconnected,      // node region parts do not touch
    };
    Kind kind;
    std::string detail;
  };

  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Checks the DAGmap axioms with tolerance 1e-9 times the canvas diagonal:
// the root region equals the canvas, every other node region lies in the
// union of its parents' regions, edge regions lie in the intersection of
// their endpoint regions, all regions have positive area, and children of a
// common parent have disjoint interiors. Violations are data, not errors.
ValidationReport validate_dagmap(const DagMapLayout& layout,
                                 const PhyloNetwork& net);

// Layered counterpart: per-layer tiling of [0, axis_length] by node
// intervals and crossing-edge corridors (absolute tolerance 1e-9), and
// containment of every interval in the union of its parents' intervals.
ValidationReport validate_one_dimensional(const OneDimLayout& od,
                                          const PhyloNetwork& net);

}  // namespace gallmap
