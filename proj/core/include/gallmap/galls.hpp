#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "gallmap/network.hpp"

namespace gallmap {

// The undirected cycle closed off by the two in-edges of a reticulation.
// Both chains run top-down from the beginning; the beginning and the
// reticulation are not part of either chain. Either chain may be empty,
// in which case the beginning is a direct parent of the reticulation.
struct Gall {
  NodeId beginning = 0;
  NodeId reticulation = 0;
  std::vector<NodeId> left_chain;   // side of the first in-edge
  std::vector<NodeId> right_chain;  // side of the second in-edge

  std::vector<NodeId> members() const;  // beginning, chains, reticulation
  bool contains(NodeId v) const;
};

// Non-owning view of the gall indices attached to one node.
class GallSpan {
 public:
  GallSpan() = default;
  GallSpan(const std::size_t* data, std::size_t size)
      : data_(data), size_(size) {}

  const std::size_t* begin() const noexcept { return data_; }
  const std::size_t* end() const noexcept { return data_ + size_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t operator[](std::size_t i) const noexcept { return data_[i]; }

  friend bool operator==(GallSpan s, const std::vector<std::size_t>& v) {
    return std::equal(s.begin(), s.end(), v.begin(), v.end());
  }

 private:
  const std::size_t* data_ = nullptr;
  std::size_t size_ = 0;
};

// Gall indices stored back-to-back, grouped by node; one slice per node in
// gall discovery order.
struct GallIndex {
  std::vector<std::uint32_t> ptr;
  std::vector<std::size_t> flat;

  GallSpan operator[](NodeId v) const noexcept {
    return {flat.data() + ptr[v], ptr[v + 1] - ptr[v]};
  }
  std::size_t size() const noexcept {
    return ptr.empty() ? 0 : ptr.size() - 1;
  }
};

struct GallSet {
  std::vector<Gall> galls;  // one per reticulation, in topological order

  // gall_of[v] lists the indices of galls containing v.
  GallIndex gall_of;
};

struct GallFailure {
  enum class Kind { indegree_exceeds_two, chains_never_meet };
  Kind kind = Kind::indegree_exceeds_two;
  NodeId node = 0;  // the offending reticulation
};

struct LocateResult {
  std::optional<GallSet> galls;
  std::optional<GallFailure> failure;

  bool ok() const noexcept { return galls.has_value(); }
};

enum class NetworkClass { GalledTree, GalledNetwork, Neither };

const char* to_string(NetworkClass c) noexcept;

struct GallAnalysis {
  NetworkClass network_class = NetworkClass::Neither;
  std::optional<GallSet> galls;            // present unless location failed
  std::optional<GallFailure> failure;      // present when location failed
  std::vector<NodeId> shared_nodes;        // nodes lying on two or more galls
  std::vector<NodeId> offending_nodes;     // why the class is Neither
};

// Walks the two parent chains of every reticulation upward in lockstep until
// they meet. Fails if some node has in-degree above two.
LocateResult locate_galls(const PhyloNetwork& net);

// GalledTree when all galls are pairwise node-disjoint, GalledNetwork when
// galls share tree nodes only, Neither otherwise.
NetworkClass classify_network(const PhyloNetwork& net, const GallSet& galls);

GallAnalysis analyze(const PhyloNetwork& net);

}  // namespace gallmap
