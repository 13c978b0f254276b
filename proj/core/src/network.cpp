#include "gallmap/network.hpp"

#include <algorithm>
#include <utility>

namespace gallmap {

const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::cycle_detected:
      return "cycle detected";
    case errc::multiple_roots:
      return "multiple roots";
    case errc::no_root:
      return "no root";
    case errc::parallel_edge:
      return "parallel edge";
    case errc::self_loop:
      return "self loop";
    case errc::unknown_node:
      return "unknown node";
    case errc::not_a_galled_tree:
      return "not a galled tree";
    case errc::not_a_galled_network:
      return "not a galled network";
    case errc::not_planar:
      return "not planar";
    case errc::not_layered_planar:
      return "not layered planar";
    case errc::embedding_inconsistent:
      return "embedding inconsistent";
    case errc::constraint_violated:
      return "constraint violated";
    case errc::degenerate_area:
      return "degenerate area";
    case errc::invalid_layout:
      return "invalid layout";
    case errc::unsupported_structure:
      return "unsupported structure";
    case errc::infeasible_spec:
      return "infeasible spec";
    case errc::syntax_error:
      return "syntax error";
    case errc::unbalanced_parens:
      return "unbalanced parentheses";
    case errc::dangling_hybrid_tag:
      return "dangling hybrid tag";
    case errc::schema_mismatch:
      return "schema mismatch";
  }
  return "unknown error";
}

namespace {

constexpr std::size_t knone = static_cast<std::size_t>(-1);

// Index of the earliest edge in [0, count) that repeats an earlier edge.
// All edges in that prefix must have in-range endpoints.
std::size_t earliest_duplicate(const std::vector<Edge>& edges,
                               std::size_t count, std::size_t node_count) {
  std::vector<std::uint32_t> ptr(node_count + 1, 0);
  for (std::size_t i = 0; i < count; ++i) ++ptr[edges[i].from + 1];
  for (std::size_t v = 0; v < node_count; ++v) ptr[v + 1] += ptr[v];
  std::vector<std::uint32_t> slot(ptr.begin(), ptr.end() - 1);
  std::vector<std::uint32_t> by_from(count);
  for (std::size_t i = 0; i < count; ++i)
    by_from[slot[edges[i].from]++] = static_cast<std::uint32_t>(i);

  std::size_t best = knone;
  std::vector<std::pair<NodeId, std::uint32_t>> block;
  for (std::size_t v = 0; v < node_count; ++v) {
    const std::size_t lo = ptr[v];
    const std::size_t hi = ptr[v + 1];
    if (hi - lo < 2) continue;
    if (hi - lo <= 32) {
      for (std::size_t a = lo; a < hi; ++a)
        for (std::size_t b = a + 1; b < hi; ++b)
          if (edges[by_from[a]].to == edges[by_from[b]].to)
            best = std::min<std::size_t>(
                best, std::max(by_from[a], by_from[b]));
      continue;
    }
    block.clear();
    for (std::size_t a = lo; a < hi; ++a)
      block.push_back({edges[by_from[a]].to, by_from[a]});
    std::sort(block.begin(), block.end());
    for (std::size_t a = 1; a < block.size(); ++a)
      if (block[a].first == block[a - 1].first)
        best = std::min<std::size_t>(best, block[a].second);
  }
  return best;
}

}  // namespace

PhyloNetwork PhyloNetwork::build(std::size_t node_count,
                                 std::vector<Edge> edges,
                                 std::vector<std::string> labels) {
  if (node_count == 0) throw Error(errc::no_root, "network has no nodes");

  PhyloNetwork net;
  labels.resize(node_count);
  net.labels_ = std::move(labels);

  // The first offending edge in insertion order wins, whichever check it
  // fails; later edges are not inspected once one is found.
  std::size_t bad = knone;
  for (std::size_t i = 0; i < edges.size() && bad == knone; ++i) {
    const Edge& e = edges[i];
    if (e.from >= node_count || e.to >= node_count || e.from == e.to)
      bad = i;
  }
  const std::size_t prefix = bad == knone ? edges.size() : bad;
  const std::size_t dup = earliest_duplicate(edges, prefix, node_count);
  if (dup != knone) {
    throw Error(errc::parallel_edge, "edge listed twice", edges[dup].from);
  }
  if (bad != knone) {
    const Edge& e = edges[bad];
    if (e.from >= node_count || e.to >= node_count)
      throw Error(errc::unknown_node, "edge endpoint out of range",
                  std::max(e.from, e.to));
    throw Error(errc::self_loop, "edge loops back to its source", e.from);
  }

  const std::size_t m = edges.size();
  net.out_ptr_.assign(node_count + 1, 0);
  net.in_ptr_.assign(node_count + 1, 0);
  for (const Edge& e : edges) {
    ++net.out_ptr_[e.from + 1];
    ++net.in_ptr_[e.to + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    net.out_ptr_[v + 1] += net.out_ptr_[v];
    net.in_ptr_[v + 1] += net.in_ptr_[v];
  }
  net.out_adj_.resize(m);
  net.in_adj_.resize(m);
  net.out_edge_.resize(m);
  std::vector<std::uint32_t> out_slot(net.out_ptr_.begin(),
                                      net.out_ptr_.end() - 1);
  std::vector<std::uint32_t> in_slot(net.in_ptr_.begin(),
                                     net.in_ptr_.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = edges[i];
    const std::uint32_t o = out_slot[e.from]++;
    net.out_adj_[o] = e.to;
    net.out_edge_[o] = static_cast<std::uint32_t>(i);
    net.in_adj_[in_slot[e.to]++] = e.from;
  }
  net.edges_ = std::move(edges);

  std::vector<NodeId> sources;
  for (NodeId v = 0; v < node_count; ++v)
    if (net.in_degree(v) == 0) sources.push_back(v);
  if (sources.empty()) throw Error(errc::no_root, "no source node");
  if (sources.size() > 1)
    throw Error(errc::multiple_roots, "more than one source node", sources[1]);
  net.root_ = sources[0];

  std::vector<std::uint32_t> pending(node_count);
  for (NodeId v = 0; v < node_count; ++v)
    pending[v] = static_cast<std::uint32_t>(net.in_degree(v));
  net.topo_.reserve(node_count);
  net.topo_.push_back(net.root_);
  for (std::size_t head = 0; head < net.topo_.size(); ++head) {
    const NodeId v = net.topo_[head];
    for (NodeId c : net.children(v))
      if (--pending[c] == 0) net.topo_.push_back(c);
  }
  if (net.topo_.size() != node_count)
    throw Error(errc::cycle_detected, "edge set contains a directed cycle");
  return net;
}

std::optional<std::size_t> PhyloNetwork::find_edge(NodeId from,
                                                   NodeId to) const {
  for (std::uint32_t k = out_ptr_[from]; k < out_ptr_[from + 1]; ++k)
    if (out_adj_[k] == to) return out_edge_[k];
  return std::nullopt;
}

std::vector<NodeId> PhyloNetwork::reticulations() const {
  std::vector<NodeId> out;
  for (NodeId v : topo_)
    if (in_degree(v) >= 2) out.push_back(v);
  return out;
}

PhyloNetwork build_network(std::size_t node_count, std::vector<Edge> edges,
                           std::vector<std::string> labels) {
  return PhyloNetwork::build(node_count, std::move(edges), std::move(labels));
}

NodeKind classify_node(const PhyloNetwork& net, NodeId v) {
  return net.kind(v);
}

std::pair<std::size_t, std::size_t> degrees(const PhyloNetwork& net, NodeId v) {
  return {net.in_degree(v), net.out_degree(v)};
}

}  // namespace gallmap
