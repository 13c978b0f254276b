#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gallmap/errors.hpp"

namespace gallmap {

using NodeId = std::uint32_t;

struct Edge {
  NodeId from = 0;
  NodeId to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class NodeKind : std::uint8_t { root, tree, reticulation };

// Non-owning view of a node's neighbours, backed by the network's adjacency.
class NodeSpan {
 public:
  using value_type = NodeId;
  using const_iterator = const NodeId*;

  constexpr NodeSpan() = default;
  constexpr NodeSpan(const NodeId* data, std::size_t size)
      : data_(data), size_(size) {}

  constexpr const NodeId* begin() const noexcept { return data_; }
  constexpr const NodeId* end() const noexcept { return data_ + size_; }
  constexpr std::size_t size() const noexcept { return size_; }
  constexpr bool empty() const noexcept { return size_ == 0; }
  constexpr NodeId operator[](std::size_t i) const { return data_[i]; }
  constexpr NodeId front() const { return data_[0]; }
  constexpr NodeId back() const { return data_[size_ - 1]; }

  friend bool operator==(NodeSpan s, const std::vector<NodeId>& v) {
    return std::equal(s.begin(), s.end(), v.begin(), v.end());
  }

 private:
  const NodeId* data_ = nullptr;
  std::size_t size_ = 0;
};

// A rooted directed acyclic graph with exactly one source. Edges into a node
// with in-degree >= 2 are reticulation edges; all others are tree edges.
class PhyloNetwork {
 public:
  // Validates and indexes the given edge set. Throws Error with one of
  // errc::unknown_node, errc::self_loop, errc::parallel_edge,
  // errc::cycle_detected, errc::no_root, errc::multiple_roots.
  static PhyloNetwork build(std::size_t node_count, std::vector<Edge> edges,
                            std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return out_ptr_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  NodeId root() const noexcept { return root_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Neighbors in edge insertion order.
  NodeSpan children(NodeId v) const {
    return {out_adj_.data() + out_ptr_[v], out_ptr_[v + 1] - out_ptr_[v]};
  }
  NodeSpan parents(NodeId v) const {
    return {in_adj_.data() + in_ptr_[v], in_ptr_[v + 1] - in_ptr_[v]};
  }

  std::size_t in_degree(NodeId v) const { return in_ptr_[v + 1] - in_ptr_[v]; }
  std::size_t out_degree(NodeId v) const {
    return out_ptr_[v + 1] - out_ptr_[v];
  }

  NodeKind kind(NodeId v) const {
    const std::size_t d = in_degree(v);
    if (d == 0) return NodeKind::root;
    return d >= 2 ? NodeKind::reticulation : NodeKind::tree;
  }

  bool is_reticulation(NodeId v) const { return in_degree(v) >= 2; }
  bool is_reticulation_edge(const Edge& e) const {
    return in_degree(e.to) >= 2;
  }
  bool is_leaf(NodeId v) const { return out_degree(v) == 0; }

  // Index into edges() of the edge from -> to, if present.
  std::optional<std::size_t> find_edge(NodeId from, NodeId to) const;

  // Nodes ordered so that every edge goes from an earlier to a later entry.
  const std::vector<NodeId>& topological_order() const noexcept { return topo_; }

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::vector<NodeId> reticulations() const;

 private:
  PhyloNetwork() = default;

  std::vector<Edge> edges_;
  std::vector<std::uint32_t> out_ptr_;
  std::vector<std::uint32_t> in_ptr_;
  std::vector<NodeId> out_adj_;
  std::vector<NodeId> in_adj_;
  std::vector<std::uint32_t> out_edge_;
  std::vector<NodeId> topo_;
  std::vector<std::string> labels_;
  NodeId root_ = 0;
};

// Convenience wrappers mirroring the class interface.
PhyloNetwork build_network(std::size_t node_count, std::vector<Edge> edges,
                           std::vector<std::string> labels = {});
NodeKind classify_node(const PhyloNetwork& net, NodeId v);
std::pair<std::size_t, std::size_t> degrees(const PhyloNetwork& net, NodeId v);

}  // namespace gallmap
