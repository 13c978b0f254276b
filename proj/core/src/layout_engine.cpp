#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gallmap/layout.hpp"

#include "detail.hpp"

namespace gallmap {

namespace {

constexpr double kAreaGuard = 1e-12;

struct ChainView {
  const std::vector<NodeId>* kept;
  const std::vector<NodeId>* stripped;
};

ChainView chains_of(const Gall& gall, bool kept_left_side) {
  if (kept_left_side) return {&gall.left_chain, &gall.right_chain};
  return {&gall.right_chain, &gall.left_chain};
}

// Children either straight from a network or from a collapsed child table.
struct KidsRef {
  const PhyloNetwork* net = nullptr;
  const detail::ChildTable* table = nullptr;

  NodeSpan operator[](NodeId v) const {
    return net ? net->children(v) : (*table)[v];
  }
};

// Child placement along one axis of a rectangle, honouring child order, the
// own-strip slot and flush snapping at both ends.
struct Placement {
  KidsRef kids;
  const GallConstraints& cons;
  const std::vector<double>& weight;

  bool zero_ok(NodeId v) const {
    return !cons.zero_width_ok.empty() && cons.zero_width_ok[v];
  }
  bool same(NodeId v) const {
    return !cons.same_axis.empty() && cons.same_axis[v];
  }
  std::uint32_t own_slot(NodeId v) const {
    return cons.own_position.empty() ? 0 : cons.own_position[v];
  }
  NodeSpan order_of(NodeId v) const {
    if (!cons.child_order.empty() && !cons.child_order[v].empty())
      return {cons.child_order[v].data(), cons.child_order[v].size()};
    return kids[v];
  }
};

template <typename Emit>
void place_children(const Placement& p, NodeId v, const Rect& r, Axis a,
                    Emit&& emit) {
  const NodeSpan order = p.order_of(v);
  if (order.empty()) return;
  double child_sum = 0.0;
  for (NodeId c : order) child_sum += p.weight[c];
  const double total = p.weight[v];
  if (total <= 0.0 || r.extent(a) <= 0.0) {
    for (NodeId c : order) {
      Rect rc = r;
      rc.set_hi(a, r.lo(a));
      emit(c, rc);
    }
    return;
  }
  if (child_sum > total * (1.0 + 1e-9))
    throw Error(errc::constraint_violated, "children outweigh their parent", v);
  const double own = std::max(0.0, total - child_sum);
  const double scale = r.extent(a) / total;
  const std::size_t own_at =
      std::min<std::size_t>(p.own_slot(v), order.size());
  const bool snap_last = own <= 0.0 || own_at != order.size();
  double cur = r.lo(a);
  for (std::size_t i = 0; i <= order.size(); ++i) {
    if (i == own_at) cur += own * scale;
    if (i == order.size()) break;
    const NodeId c = order[i];
    Rect rc = r;
    rc.set_lo(a, cur);
    if (i + 1 == order.size() && snap_last) {
      rc.set_hi(a, r.hi(a));
      cur = r.hi(a);
    } else {
      cur += p.weight[c] * scale;
      rc.set_hi(a, cur);
    }
    emit(c, rc);
  }
}

void check_constraint_sizes(const GallConstraints& cons, std::size_t n,
                            KidsRef kids) {
  if (cons.empty()) return;
  if (cons.child_order.size() != n ||
      (!cons.same_axis.empty() && cons.same_axis.size() != n) ||
      (!cons.own_position.empty() && cons.own_position.size() != n) ||
      (!cons.zero_width_ok.empty() && cons.zero_width_ok.size() != n))
    throw Error(errc::constraint_violated,
                "constraint tables sized for a different tree");
  for (std::size_t v = 0; v < n; ++v) {
    if (cons.child_order[v].empty()) continue;
    auto given = cons.child_order[v];
    const NodeSpan span = kids[static_cast<NodeId>(v)];
    std::vector<NodeId> base(span.begin(), span.end());
    std::sort(given.begin(), given.end());
    std::sort(base.begin(), base.end());
    if (given != base)
      throw Error(errc::constraint_violated,
                  "child order is not a permutation of the children",
                  static_cast<NodeId>(v));
  }
}

std::vector<Axis> subdivision_axes(const PhyloNetwork& net, KidsRef kids,
                                   const Placement& p) {
  std::vector<Axis> axes(net.node_count(), Axis::horizontal);
  for (NodeId v : net.topological_order()) {
    const Axis a = axes[v];
    for (NodeId c : kids[v]) axes[c] = p.same(c) ? a : flip(a);
  }
  return axes;
}

}  // namespace

GallConstraints plan_layout(const PhyloNetwork& net, const GallSet& galls,
                            const CollapseMap& map, bool one_dimensional) {
  const std::size_t n = net.node_count();
  const std::size_t gcount = galls.galls.size();
  if (map.removed.size() != gcount)
    throw Error(errc::constraint_violated,
                "collapse map does not match the gall set");

  GallConstraints cons;
  cons.flipped.assign(gcount, false);
  cons.cross_attached.assign(gcount, false);
  cons.child_order.assign(n, {});
  cons.same_axis.assign(n, false);
  cons.own_position.assign(n, 0);
  cons.zero_width_ok.assign(n, false);

  for (const Gall& gall : galls.galls)
    if (gall.left_chain.empty() || gall.right_chain.empty())
      throw Error(errc::unsupported_structure, "gall has an empty chain",
                  gall.reticulation);

  const std::vector<bool> kept = detail::kept_left(galls, map);

  std::optional<LayerAssignment> layers;
  auto layered_fail = [&](const char* why, NodeId ret) {
    if (!layers) layers = assign_layers(net);
    throw LayeredInfeasible(why, ret, layers->layer[ret]);
  };

  for (std::size_t g = 0; g < gcount; ++g) {
    const ChainView view = chains_of(galls.galls[g], kept[g]);
    for (NodeId v : *view.kept) cons.same_axis[v] = true;
    for (NodeId v : *view.stripped) {
      cons.same_axis[v] = true;
      cons.zero_width_ok[v] = true;
    }
  }

  // A node has two sides, so it can host at most two chains; past that the
  // youngest gall leaves the column (fatal in the layered drawing). Claims
  // live in one flat bucket table; evictions only decrement live counts.
  std::vector<bool> evicted(gcount, false);
  struct Claim {
    NodeId node;
    std::uint32_t gall;
    bool kept;
  };
  std::vector<Claim> entries;
  for (std::size_t g = 0; g < gcount; ++g) {
    const ChainView view = chains_of(galls.galls[g], kept[g]);
    const auto gid = static_cast<std::uint32_t>(g);
    for (NodeId v : *view.kept) entries.push_back({v, gid, true});
    for (NodeId v : *view.stripped) entries.push_back({v, gid, false});
  }
  std::vector<std::uint32_t> claim_ptr(n + 1, 0);
  for (const Claim& c : entries) ++claim_ptr[c.node + 1];
  for (std::size_t v = 0; v < n; ++v) claim_ptr[v + 1] += claim_ptr[v];
  std::vector<Claim> claim_at(entries.size());
  {
    std::vector<std::uint32_t> slot(claim_ptr.begin(), claim_ptr.end() - 1);
    for (const Claim& c : entries) claim_at[slot[c.node]++] = c;
  }
  std::vector<std::uint32_t> live(n, 0);
  for (const Claim& c : entries) ++live[c.node];

  auto evict = [&](std::size_t g) {
    evicted[g] = true;
    cons.cross_attached[g] = true;
    const ChainView view = chains_of(galls.galls[g], kept[g]);
    for (NodeId v : *view.kept) --live[v];
    for (NodeId v : *view.stripped) --live[v];
  };

  for (NodeId v = 0; v < n; ++v) {
    while (live[v] > 2) {
      std::size_t worst = 0;
      for (std::uint32_t k = claim_ptr[v]; k < claim_ptr[v + 1]; ++k)
        if (!evicted[claim_at[k].gall])
          worst = std::max<std::size_t>(worst, claim_at[k].gall);
      if (one_dimensional)
        layered_fail("three chains meet at one node",
                     galls.galls[worst].reticulation);
      evict(worst);
    }
  }

  // Both chains through a node must face opposite sides of it; that is a
  // parity condition between the orientations of the two galls involved.
  for (;;) {
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(gcount);
    for (NodeId v = 0; v < n; ++v) {
      if (live[v] != 2) continue;
      const Claim* pair[2] = {nullptr, nullptr};
      std::size_t found = 0;
      for (std::uint32_t k = claim_ptr[v]; k < claim_ptr[v + 1] && found < 2;
           ++k)
        if (!evicted[claim_at[k].gall]) pair[found++] = &claim_at[k];
      const Claim& a = *pair[0];
      const Claim& b = *pair[1];
      const int parity = a.kept == b.kept ? 1 : 0;
      adj[a.gall].push_back({b.gall, parity});
      adj[b.gall].push_back({a.gall, parity});
    }
    std::vector<int> colour(gcount, -1);
    std::optional<std::size_t> clash;
    for (std::size_t g = 0; g < gcount && !clash; ++g) {
      if (evicted[g] || colour[g] != -1) continue;
      colour[g] = 0;
      std::vector<std::size_t> stack{g};
      while (!stack.empty() && !clash) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (const auto& [y, parity] : adj[x]) {
          const int want = colour[x] ^ parity;
          if (colour[y] == -1) {
            colour[y] = want;
            stack.push_back(y);
          } else if (colour[y] != want) {
            clash = std::max(x, y);
          }
        }
      }
    }
    if (!clash) {
      for (std::size_t g = 0; g < gcount; ++g)
        cons.flipped[g] = colour[g] == 1;
      break;
    }
    if (one_dimensional)
      layered_fail("chain sides cannot be reconciled",
                   galls.galls[*clash].reticulation);
    evict(*clash);
  }

  const auto kids = detail::tree_children(net, map);

  struct FlushPin {
    NodeId child = 0;
    bool set = false;
  };
  std::vector<FlushPin> pin_low(n), pin_high(n);
  auto pin = [&](std::vector<FlushPin>& pins, NodeId at, NodeId child) {
    if (pins[at].set && pins[at].child != child)
      throw Error(errc::constraint_violated,
                  "two children pinned to the same edge", at);
    pins[at] = {child, true};
  };

  for (std::size_t g = 0; g < gcount; ++g) {
    if (evicted[g]) continue;
    const Gall& gall = galls.galls[g];
    const ChainView view = chains_of(gall, kept[g]);
    const bool o = cons.flipped[g];
    // The kept chain hugs the seam from one side, the stripped chain from
    // the other; continuations stay flush against that side.
    for (std::size_t i = 0; i < view.kept->size(); ++i) {
      const NodeId at = (*view.kept)[i];
      const NodeId next = i + 1 < view.kept->size() ? (*view.kept)[i + 1]
                                                    : gall.reticulation;
      pin(o ? pin_low : pin_high, at, next);
    }
    for (std::size_t i = 0; i + 1 < view.stripped->size(); ++i)
      pin(o ? pin_high : pin_low, (*view.stripped)[i], (*view.stripped)[i + 1]);
  }

  // The two chain tops of each gall must sit next to each other under the
  // beginning; several galls there chain those adjacencies into runs.
  struct PairEdge {
    NodeId lo;
    NodeId hi;
    std::size_t gall;
  };
  std::vector<std::vector<PairEdge>> pairs_at(n);
  for (std::size_t g = 0; g < gcount; ++g) {
    if (evicted[g]) continue;
    const Gall& gall = galls.galls[g];
    const ChainView view = chains_of(gall, kept[g]);
    const NodeId kept_top = view.kept->front();
    const NodeId stripped_top = view.stripped->front();
    if (cons.flipped[g])
      pairs_at[gall.beginning].push_back({stripped_top, kept_top, g});
    else
      pairs_at[gall.beginning].push_back({kept_top, stripped_top, g});
  }

  for (NodeId v = 0; v < n; ++v) {
    if (pairs_at[v].empty() && !pin_low[v].set && !pin_high[v].set) continue;

    std::unordered_map<NodeId, const PairEdge*> next, prev;
    for (const PairEdge& e : pairs_at[v])
      if (!next.emplace(e.lo, &e).second || !prev.emplace(e.hi, &e).second)
        throw Error(errc::constraint_violated,
                    "conflicting chain-top adjacencies", v);

    std::unordered_set<NodeId> on_path;
    std::vector<std::vector<NodeId>> paths;
    for (const PairEdge& e : pairs_at[v]) {
      if (prev.count(e.lo) || on_path.count(e.lo)) continue;
      std::vector<NodeId> path{e.lo};
      on_path.insert(e.lo);
      NodeId at = e.lo;
      while (next.count(at)) {
        at = next[at]->hi;
        path.push_back(at);
        on_path.insert(at);
      }
      paths.push_back(std::move(path));
    }
    for (const PairEdge& e : pairs_at[v]) {
      if (on_path.count(e.lo)) continue;
      // adjacency edges that no run reaches close a ring of chain tops
      std::size_t ring = e.gall;
      for (const PairEdge& other : pairs_at[v])
        if (!on_path.count(other.lo)) ring = std::max(ring, other.gall);
      if (one_dimensional)
        layered_fail("chain tops close a ring around their beginning",
                     galls.galls[ring].reticulation);
      throw Error(errc::unsupported_structure,
                  "chain tops close a ring around their beginning",
                  galls.galls[ring].reticulation);
    }

    const NodeSpan base = kids[v];
    const std::unordered_set<NodeId> base_set(base.begin(), base.end());
    for (const PairEdge& e : pairs_at[v])
      if (!base_set.count(e.lo) || !base_set.count(e.hi))
        throw Error(errc::constraint_violated,
                    "chain top is not a child of its beginning", v);
    for (const FlushPin* pins : {&pin_low[v], &pin_high[v]})
      if (pins->set && !base_set.count(pins->child))
        throw Error(errc::constraint_violated,
                    "pinned child missing from the tree", v);

    auto path_with = [&](NodeId c) -> const std::vector<NodeId>* {
      for (const auto& p : paths)
        if (std::find(p.begin(), p.end(), c) != p.end()) return &p;
      return nullptr;
    };

    std::vector<NodeId> head, tail;
    std::unordered_set<NodeId> taken;
    if (pin_low[v].set) {
      if (const auto* p = path_with(pin_low[v].child)) {
        if (p->front() != pin_low[v].child)
          throw Error(errc::unsupported_structure,
                      "chain continuation buried inside an adjacency run", v);
        head = *p;
      } else {
        head = {pin_low[v].child};
      }
      taken.insert(head.begin(), head.end());
    }
    cons.own_position[v] = static_cast<std::uint32_t>(head.size());
    if (pin_high[v].set) {
      if (taken.count(pin_high[v].child)) {
        if (head.back() != pin_high[v].child ||
            head.size() != base.size())
          throw Error(errc::unsupported_structure,
                      "one adjacency run cannot span both pinned edges", v);
      } else if (const auto* p = path_with(pin_high[v].child)) {
        if (p->back() != pin_high[v].child)
          throw Error(errc::unsupported_structure,
                      "chain continuation buried inside an adjacency run", v);
        tail = *p;
        taken.insert(tail.begin(), tail.end());
      } else {
        tail = {pin_high[v].child};
        taken.insert(pin_high[v].child);
      }
    }

    std::vector<NodeId> order = head;
    for (NodeId c : base) {
      if (taken.count(c) || path_with(c)) continue;
      order.push_back(c);
    }
    for (NodeId c : base) {
      if (taken.count(c)) continue;
      const auto* p = path_with(c);
      if (!p || p->front() != c) continue;
      order.insert(order.end(), p->begin(), p->end());
      taken.insert(p->begin(), p->end());
    }
    order.insert(order.end(), tail.begin(), tail.end());
    if (order.size() != base.size())
      throw Error(errc::constraint_violated, "child ordering lost a node", v);
    cons.child_order[v] = std::move(order);
  }

  return cons;
}

std::vector<Rect> slice_and_dice(const PhyloNetwork& tree,
                                 const std::vector<double>& weights,
                                 const Rect& canvas,
                                 const GallConstraints& cons) {
  const std::size_t n = tree.node_count();
  if (weights.size() != n)
    throw Error(errc::constraint_violated, "one weight per node required");
  if (!canvas.positive())
    throw Error(errc::degenerate_area, "canvas has no area");
  for (std::size_t v = 0; v < n; ++v)
    if (!std::isfinite(weights[v]) || weights[v] < 0.0)
      throw Error(errc::constraint_violated,
                  "weights must be finite and non-negative",
                  static_cast<NodeId>(v));
  if (weights[tree.root()] <= 0.0)
    throw Error(errc::degenerate_area, "root weight must be positive");

  check_constraint_sizes(cons, n, KidsRef{&tree, nullptr});
  const Placement p{KidsRef{&tree, nullptr}, cons, weights};

  std::vector<Rect> rect(n);
  std::vector<Axis> axes(n, Axis::horizontal);
  rect[tree.root()] = canvas;
  for (NodeId v : tree.topological_order()) {
    const Axis a = axes[v];
    place_children(p, v, rect[v], a, [&](NodeId c, const Rect& rc) {
      if (rc.area() < kAreaGuard && !p.zero_ok(c))
        throw Error(errc::degenerate_area, "strip area underflows", c);
      rect[c] = rc;
      axes[c] = p.same(c) ? a : flip(a);
    });
  }
  return rect;
}

namespace {

// Recursive rectangle re-assignment of a subtree (used after a
// reticulation's rectangle moves).
void replace_subtree(const Placement& p, NodeId top, const Rect& inside,
                     Axis axis, std::vector<RectPolygon>& region,
                     std::vector<Axis>& axes) {
  region[top] = RectPolygon(inside);
  axes[top] = axis;
  struct Item {
    NodeId v;
    Rect r;
    Axis a;
  };
  std::vector<Item> queue{{top, inside, axis}};
  while (!queue.empty()) {
    const Item it = queue.back();
    queue.pop_back();
    place_children(p, it.v, it.r, it.a, [&](NodeId c, const Rect& rc) {
      if (rc.area() < kAreaGuard && !p.zero_ok(c))
        throw Error(errc::degenerate_area, "strip area underflows", c);
      region[c] = RectPolygon(rc);
      const Axis ca = p.same(c) ? it.a : flip(it.a);
      axes[c] = ca;
      queue.push_back({c, rc, ca});
    });
  }
}

// Region subdivision when the parent region is not a rectangle: children
// receive area-accurate slices, alternating the sweep axis with depth.
void replace_subtree_sliced(const Placement& p, NodeId top,
                            const RectPolygon& inside, Axis axis,
                            std::vector<RectPolygon>& region) {
  region[top] = inside;
  const auto& order = p.order_of(top);
  if (order.empty()) return;
  double child_sum = 0.0;
  for (NodeId c : order) child_sum += p.weight[c];
  const double total = p.weight[top];
  if (total <= 0.0)
    throw Error(errc::degenerate_area, "weightless subtree", top);
  const double scale = inside.area() / total;
  const std::size_t own_at =
      std::min<std::size_t>(p.own_slot(top), order.size());
  std::vector<double> areas;
  areas.reserve(order.size() + 1);
  for (std::size_t i = 0; i <= order.size(); ++i) {
    if (i == own_at)
      areas.push_back(std::max(0.0, total - child_sum) * scale);
    if (i == order.size()) break;
    areas.push_back(p.weight[order[i]] * scale);
  }
  const auto slices = slice_by_area(inside, axis, areas);
  std::size_t slot = 0;
  for (std::size_t i = 0; i <= order.size(); ++i) {
    if (i == own_at) ++slot;
    if (i == order.size()) break;
    const RectPolygon& slice = slices[slot++];
    if (slice.area() < kAreaGuard && !p.zero_ok(order[i]))
      throw Error(errc::degenerate_area, "slice area underflows", order[i]);
    replace_subtree_sliced(p, order[i], slice, flip(axis), region);
  }
}

}  // namespace

DagMapLayout expand_galls(const std::vector<Rect>& tree_rects,
                          const PhyloNetwork& net, const GallSet& galls,
                          const CollapseMap& map,
                          const GallConstraints& constraints,
                          WeightMode mode) {
  const std::size_t n = net.node_count();
  const std::size_t gcount = galls.galls.size();
  if (tree_rects.size() != n)
    throw Error(errc::constraint_violated, "one rectangle per node required");
  if (constraints.flipped.size() != gcount ||
      constraints.cross_attached.size() != gcount)
    throw Error(errc::constraint_violated,
                "constraints sized for a different gall set");

  const auto kids = detail::tree_children(net, map);
  check_constraint_sizes(constraints, n, KidsRef{nullptr, &kids});
  const std::vector<bool> kept = detail::kept_left(galls, map);

  // Cumulative tree weights drive strips, network weights size the
  // reticulation rectangles; the canvas area fixes the common scale.
  std::vector<double> tree_w(n, 0.0);
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    double sum = 0.0;
    if (mode == WeightMode::uniform)
      sum = 1.0;
    else if (net.is_leaf(v))
      sum = 1.0;
    for (NodeId c : kids[v]) sum += tree_w[c];
    tree_w[v] = sum;
  }
  const std::vector<double> net_w = compute_weights(net, mode);
  const Rect canvas = tree_rects[net.root()];
  if (!canvas.positive())
    throw Error(errc::degenerate_area, "root rectangle has no area");
  const double unit = canvas.area() / net_w[net.root()];
  const double snap_tol =
      1e-9 * std::hypot(canvas.width, canvas.height);

  DagMapLayout out;
  out.canvas = canvas;
  out.weights = net_w;
  out.mode = mode;
  out.node_region.reserve(n);
  for (NodeId v = 0; v < n; ++v) out.node_region.emplace_back(tree_rects[v]);

  const Placement placed{KidsRef{nullptr, &kids}, constraints, tree_w};
  std::vector<Axis> axes =
      subdivision_axes(net, KidsRef{nullptr, &kids}, placed);

  std::vector<std::size_t> topo_pos(n, 0);
  for (std::size_t i = 0; i < topo.size(); ++i) topo_pos[topo[i]] = i;
  std::vector<std::size_t> live, attached;
  for (std::size_t g = 0; g < gcount; ++g)
    (constraints.cross_attached[g] ? attached : live).push_back(g);
  std::sort(live.begin(), live.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = topo_pos[galls.galls[a].beginning];
    const auto pb = topo_pos[galls.galls[b].beginning];
    return pa != pb ? pa < pb : a < b;
  });

  auto single_rect = [&](NodeId v) -> Rect {
    if (!out.node_region[v].single_rect())
      throw Error(errc::constraint_violated,
                  "gall member region is not a rectangle", v);
    return out.node_region[v].parts[0];
  };

  // Seam expansion: the boundary between the two chain columns moves inward
  // so the reticulation's rectangle can straddle both.
  for (std::size_t g : live) {
    const Gall& gall = galls.galls[g];
    const ChainView view = chains_of(gall, kept[g]);
    const bool o = constraints.flipped[g];
    const NodeId z = gall.reticulation;
    const Axis a = axes[gall.beginning];
    const Axis cross = flip(a);

    const Rect top_rect = single_rect(view.kept->front());
    const double seam = o ? top_rect.lo(a) : top_rect.hi(a);
    const double breadth = top_rect.extent(cross);
    if (breadth <= 0.0)
      throw Error(errc::degenerate_area, "gall column has no breadth", z);
    const double width = unit * net_w[z] / breadth;
    const double shifted = o ? seam + 0.5 * width : seam - 0.5 * width;

    for (NodeId v : *view.kept) {
      Rect r = single_rect(v);
      const double edge = o ? r.lo(a) : r.hi(a);
      if (std::abs(edge - seam) > snap_tol)
        throw Error(errc::constraint_violated,
                    "kept chain member is not flush with the seam", v);
      if (o)
        r.set_lo(a, shifted);
      else
        r.set_hi(a, shifted);
      out.node_region[v] = RectPolygon(r);
    }
    for (NodeId v : *view.stripped) {
      Rect r = single_rect(v);
      const double edge = o ? r.hi(a) : r.lo(a);
      if (std::abs(edge - seam) > snap_tol)
        throw Error(errc::constraint_violated,
                    "stripped chain member is not flush with the seam", v);
      if (o)
        r.set_hi(a, shifted);
      else
        r.set_lo(a, shifted);
      out.node_region[v] = RectPolygon(r);
    }

    Rect zr = top_rect;
    if (o) {
      zr.set_lo(a, seam);
      zr.set_hi(a, seam + width);
    } else {
      zr.set_lo(a, seam - width);
      zr.set_hi(a, seam);
    }
    replace_subtree(placed, z, zr, axes[z], out.node_region, axes);
  }

  // Cross attachment: an evicted gall leaves the shared column where its
  // kept chain diverges and draws its removed side as a notch.
  for (std::size_t g : attached) {
    const Gall& gall = galls.galls[g];
    const ChainView view = chains_of(gall, kept[g]);
    const NodeId z = gall.reticulation;

    for (NodeId v : *view.stripped) {
      if (galls.gall_of[v].size() > 1 || !kids[v].empty())
        throw Error(errc::unsupported_structure,
                    "removed-side chain of a re-attached gall must be bare",
                    v);
    }
    std::size_t diverge = view.kept->size();
    for (std::size_t i = view.kept->size(); i-- > 0;) {
      if (galls.gall_of[(*view.kept)[i]].size() > 1) {
        diverge = i;
        break;
      }
    }
    if (diverge == view.kept->size())
      throw Error(errc::constraint_violated,
                  "re-attached gall shares no chain member", z);
    const NodeId fork = (*view.kept)[diverge];
    std::vector<NodeId> continuation(view.kept->begin() +
                                         static_cast<std::ptrdiff_t>(diverge) +
                                         1,
                                     view.kept->end());

    // No other gall may own any node re-laid below the fork.
    std::vector<NodeId> scope;
    for (NodeId m : continuation)
      for (NodeId c : kids[m])
        if (c != z && std::find(continuation.begin(), continuation.end(), c) ==
                          continuation.end())
          scope.push_back(c);
    for (NodeId c : kids[z]) scope.push_back(c);
    while (!scope.empty()) {
      const NodeId v = scope.back();
      scope.pop_back();
      if (!galls.gall_of[v].empty())
        throw Error(errc::unsupported_structure,
                    "another gall lies below a re-attached gall's fork", v);
      for (NodeId c : kids[v]) scope.push_back(c);
    }

    const Axis a = axes[fork];
    const Axis cross = flip(a);
    const NodeId entry = continuation.empty() ? z : continuation.front();
    const Rect span = single_rect(entry);
    const double u0 = span.lo(a);
    const double u1 = span.hi(a);
    const double y0 = span.lo(cross);
    const double y1 = span.hi(cross);
    if (u1 - u0 <= 0.0)
      throw Error(errc::degenerate_area, "fork continuation has no width", z);
    const double half = 0.5 * unit * net_w[z];
    const double notch_breadth = half / (u1 - u0);
    if (notch_breadth >= y1 - y0)
      throw Error(errc::constraint_violated,
                  "notch would swallow the whole continuation strip", z);
    const double y_notch = y1 - notch_breadth;
    const Rect notch = [&] {
      Rect r = span;
      r.set_lo(cross, y_notch);
      return r;
    }();

    for (std::size_t i = 0; i <= diverge; ++i) {
      const NodeId v = (*view.kept)[i];
      out.node_region[v] = subtract(out.node_region[v], notch);
      if (out.node_region[v].empty())
        throw Error(errc::constraint_violated,
                    "notch consumed a chain member", v);
    }
    for (NodeId v : *view.stripped) out.node_region[v] = RectPolygon(notch);

    const double band_breadth = y_notch - y0;
    double cur = u0;
    for (NodeId m : continuation) {
      Rect nested = span;
      nested.set_lo(a, cur);
      nested.set_hi(cross, y_notch);
      out.node_region[m] = RectPolygon(nested);
      axes[m] = a;
      double own = mode == WeightMode::uniform ? 1.0 : 0.0;
      if (mode == WeightMode::leaf_count && net.is_leaf(m)) own = 1.0;
      cur += unit * own / band_breadth;
      for (NodeId c : kids[m]) {
        if (c == z || (!continuation.empty() &&
                       std::find(continuation.begin(), continuation.end(),
                                 c) != continuation.end()))
          continue;
        Rect pr = span;
        pr.set_lo(a, cur);
        cur += unit * net_w[c] / band_breadth;
        pr.set_hi(a, cur);
        pr.set_hi(cross, y_notch);
        replace_subtree(placed, c, pr, cross, out.node_region, axes);
      }
    }

    Rect z_top = span;
    z_top.set_lo(a, std::abs(cur - u0) <= snap_tol ? u0 : cur);
    z_top.set_hi(cross, y_notch);
    RectPolygon z_region;
    z_region.parts = {z_top, notch};
    z_region.normalize();
    if (!kids[z].empty()) {
      Placement band{KidsRef{nullptr, &kids}, constraints, net_w};
      replace_subtree_sliced(band, z, z_region, cross, out.node_region);
    } else {
      out.node_region[z] = std::move(z_region);
    }
  }

  out.edge_region.resize(net.edge_count());
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    const Edge e = net.edges()[i];
    const RectPolygon& from = out.node_region[e.from];
    const RectPolygon& to = out.node_region[e.to];
    if (from.single_rect() && to.single_rect()) {
      const auto r = intersect(from.parts[0], to.parts[0]);
      out.edge_region[i] = r ? *r : Rect{};
      continue;
    }
    out.edge_region[i] = largest_part(intersect(from, to));
  }
  return out;
}

}  // namespace gallmap
