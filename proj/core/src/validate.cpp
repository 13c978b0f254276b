#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gallmap/errors.hpp"
#include "gallmap/geometry.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

namespace {

constexpr double kMinArea = 1e-12;

std::string node_name(NodeId v) { return "node " + std::to_string(v); }

std::string edge_name(const Edge& e) {
  return "edge " + std::to_string(e.from) + " -> " + std::to_string(e.to);
}

}  // namespace

ValidationReport validate_dagmap(const DagMapLayout& layout,
                                 const PhyloNetwork& net) {
  const std::size_t n = net.node_count();
  if (layout.node_region.size() != n ||
      layout.edge_region.size() != net.edges().size())
    throw Error(errc::constraint_violated,
                "layout does not match the network");

  using Kind = ValidationReport::Violation::Kind;
  ValidationReport report;
  auto flag = [&report](Kind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  const Rect& canvas = layout.canvas;
  const double tol = 1e-9 * std::hypot(canvas.width, canvas.height);
  const double guard = kMinArea * std::max(1.0, canvas.area());

  const RectPolygon canvas_poly{canvas};
  const RectPolygon& root = layout.node_region[net.root()];
  if (uncovered_area(root, canvas_poly, tol) > guard)
    flag(Kind::root_mismatch, "root region leaves the canvas");
  if (uncovered_area(canvas_poly, root, tol) > guard)
    flag(Kind::root_mismatch, "root region does not cover the canvas");

  for (NodeId v = 0; v < n; ++v) {
    const RectPolygon& region = layout.node_region[v];
    if (region.area() < kMinArea) {
      flag(Kind::nonpositive_area, node_name(v) + " has no area");
      continue;
    }
    if (!is_connected(region, tol))
      flag(Kind::disconnected, node_name(v) + " region is split");
    if (v == net.root()) continue;
    std::vector<const RectPolygon*> covers;
    covers.reserve(net.parents(v).size());
    for (NodeId p : net.parents(v)) covers.push_back(&layout.node_region[p]);
    if (uncovered_area(region, covers, tol) > guard) {
      std::string who;
      for (NodeId p : net.parents(v))
        who += (who.empty() ? "" : ", ") + std::to_string(p);
      flag(Kind::outside_parents,
           node_name(v) + " leaves the union of parents " + who);
    }
  }

  for (NodeId p = 0; p < n; ++p) {
    const NodeSpan kids = net.children(p);
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        if (interior_overlap(layout.node_region[kids[i]],
                             layout.node_region[kids[j]], tol) <= guard)
          continue;
        flag(Kind::sibling_overlap, node_name(kids[i]) + " and " +
                                        node_name(kids[j]) +
                                        " overlap under " + node_name(p));
      }
  }

  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    const Edge& e = net.edges()[i];
    const Rect& r = layout.edge_region[i];
    if (r.area() < kMinArea) {
      flag(Kind::nonpositive_area, edge_name(e) + " has no region");
      continue;
    }
    const RectPolygon band{r};
    if (uncovered_area(band, layout.node_region[e.from], tol) > guard)
      flag(Kind::edge_outside,
           edge_name(e) + " leaves the region of " + node_name(e.from));
    if (uncovered_area(band, layout.node_region[e.to], tol) > guard)
      flag(Kind::edge_outside,
           edge_name(e) + " leaves the region of " + node_name(e.to));
  }
  return report;
}

ValidationReport validate_one_dimensional(const OneDimLayout& od,
                                          const PhyloNetwork& net) {
  const std::size_t n = net.node_count();
  if (od.interval.size() != n || od.layers.layer.size() != n)
    throw Error(errc::constraint_violated,
                "interval layout does not match the network");
  if (!(od.axis_length > 0.0))
    throw Error(errc::constraint_violated, "axis length must be positive");

  using Kind = ValidationReport::Violation::Kind;
  ValidationReport report;
  auto flag = [&report](Kind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };
  const double tol = 1e-9;

  for (NodeId v = 0; v < n; ++v)
    if (!(od.interval[v].length() > 0.0))
      flag(Kind::nonpositive_area, node_name(v) + " has an empty interval");

  for (NodeId v = 0; v < n; ++v) {
    if (v == net.root()) continue;
    // Uncovered length of v's interval once all parent intervals, each
    // widened by the tolerance, are removed.
    std::vector<Interval> holes{od.interval[v]};
    for (NodeId p : net.parents(v)) {
      const Interval cut{od.interval[p].lo - tol, od.interval[p].hi + tol};
      std::vector<Interval> next;
      for (const Interval& h : holes) {
        if (cut.hi <= h.lo || cut.lo >= h.hi) {
          next.push_back(h);
          continue;
        }
        if (h.lo < cut.lo) next.push_back({h.lo, cut.lo});
        if (cut.hi < h.hi) next.push_back({cut.hi, h.hi});
      }
      holes = std::move(next);
    }
    double outside = 0.0;
    for (const Interval& h : holes) outside += h.length();
    if (outside > tol)
      flag(Kind::outside_parents,
           node_name(v) + " leaves the union of its parents' intervals");
  }

  struct Item {
    double lo;
    double hi;
    std::string name;
  };
  for (std::uint32_t j = 1; j <= od.layers.height; ++j) {
    std::vector<Item> items;
    for (NodeId v = 0; v < n; ++v)
      if (od.layers.layer[v] == j)
        items.push_back({od.interval[v].lo, od.interval[v].hi, node_name(v)});
    for (const Edge& e : net.edges()) {
      if (!(od.layers.layer[e.to] < j && j < od.layers.layer[e.from]))
        continue;
      const double lo = std::max(od.interval[e.from].lo, od.interval[e.to].lo);
      const double hi = std::min(od.interval[e.from].hi, od.interval[e.to].hi);
      if (hi > lo) items.push_back({lo, hi, edge_name(e)});
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.lo < b.lo; });

    const std::string where = "layer " + std::to_string(j);
    double cursor = 0.0;
    std::string last = "the low end";
    for (const Item& item : items) {
      if (item.lo > cursor + tol)
        flag(Kind::root_mismatch, where + " has a gap between " + last +
                                      " and " + item.name);
      if (item.lo < cursor - tol)
        flag(Kind::sibling_overlap,
             where + ": " + last + " and " + item.name + " overlap");
      cursor = std::max(cursor, item.hi);
      last = item.name;
    }
    if (cursor < od.axis_length - tol)
      flag(Kind::root_mismatch,
           where + " has a gap between " + last + " and the high end");
  }
  return report;
}

}  // namespace gallmap
