#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gallmap/errors.hpp"
#include "gallmap/generator.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

namespace {

struct Builder {
  std::mt19937_64 rng;
  std::vector<Edge> edges;
  std::uint32_t count = 1;  // node 0 is the root
  std::vector<std::uint32_t> member_depth;  // 0 = not on any gall
  std::vector<bool> is_ret;

  explicit Builder(std::uint64_t seed)
      : rng(seed), member_depth{0}, is_ret{false} {}

  std::uint32_t draw(std::uint32_t k) {
    return static_cast<std::uint32_t>(rng() % k);
  }

  NodeId add_node(std::uint32_t depth, bool ret = false) {
    member_depth.push_back(depth);
    is_ret.push_back(ret);
    return count++;
  }

  void link(NodeId from, NodeId to) { edges.push_back({from, to}); }
};

}  // namespace

PhyloNetwork generate(const GenSpec& spec) {
  if (spec.node_budget == 0)
    throw Error(errc::infeasible_spec, "node budget is zero");
  if (spec.gall_count > 0 && spec.max_chain == 0)
    throw Error(errc::infeasible_spec,
                "gall chains need at least one node each");

  Builder b(spec.seed);
  const std::uint64_t share_cut = static_cast<std::uint64_t>(
      std::llround(std::clamp(spec.share_probability, 0.0, 1.0) * 1e6));

  for (std::uint32_t g = 0; g < spec.gall_count; ++g) {
    // Pick the beginning: reuse a node of an earlier gall, reuse a node on
    // no gall, or grow a fresh pendant node when everything is taken.
    NodeId begin = 0;
    bool begin_is_new = false;
    std::uint32_t depth = 1;

    std::vector<NodeId> hosts;
    if (g > 0 && spec.nesting_depth > 0)
      for (NodeId v = 0; v < b.count; ++v)
        if (b.member_depth[v] > 0 && b.member_depth[v] < spec.nesting_depth &&
            !b.is_ret[v])
          hosts.push_back(v);

    const bool share = !hosts.empty() && share_cut > 0 &&
                       b.rng() % 1000000 < share_cut;
    if (share) {
      begin = hosts[b.draw(static_cast<std::uint32_t>(hosts.size()))];
      depth = b.member_depth[begin] + 1;
    } else {
      std::vector<NodeId> pool;
      for (NodeId v = 0; v < b.count; ++v)
        if (b.member_depth[v] == 0) pool.push_back(v);
      if (!pool.empty()) {
        begin = pool[b.draw(static_cast<std::uint32_t>(pool.size()))];
      } else {
        begin_is_new = true;
      }
    }

    const std::uint32_t reserve = 3 * (spec.gall_count - g - 1);
    const std::uint32_t avail = spec.node_budget - std::min(spec.node_budget, b.count);
    if (avail < reserve + 3 + (begin_is_new ? 1u : 0u))
      throw Error(errc::infeasible_spec,
                  "node budget cannot host " +
                      std::to_string(spec.gall_count) + " galls");
    const std::uint32_t budget = avail - reserve - (begin_is_new ? 1u : 0u);

    std::uint32_t la = 1 + b.draw(spec.max_chain);
    std::uint32_t lb = 1 + b.draw(spec.max_chain);
    while (la + lb + 1 > budget && lb > 1) --lb;
    while (la + lb + 1 > budget && la > 1) --la;

    if (begin_is_new) {
      const NodeId parent = b.draw(b.count);
      begin = b.add_node(depth);
      b.link(parent, begin);
    } else if (b.member_depth[begin] == 0) {
      b.member_depth[begin] = depth;
    }

    NodeId left = begin;
    for (std::uint32_t i = 0; i < la; ++i) {
      const NodeId next = b.add_node(depth);
      b.link(left, next);
      left = next;
    }
    NodeId right = begin;
    for (std::uint32_t i = 0; i < lb; ++i) {
      const NodeId next = b.add_node(depth);
      b.link(right, next);
      right = next;
    }
    const NodeId ret = b.add_node(depth, true);
    b.link(left, ret);
    b.link(right, ret);
  }

  while (b.count < spec.node_budget) {
    const NodeId parent = b.draw(b.count);
    b.link(parent, b.add_node(0));
  }

  std::vector<std::uint32_t> out_degree(b.count, 0);
  for (const Edge& e : b.edges) ++out_degree[e.from];
  std::vector<std::string> labels(b.count);
  for (NodeId v = 0; v < b.count; ++v)
    if (out_degree[v] == 0) labels[v] = "t" + std::to_string(v);

  return PhyloNetwork::build(b.count, std::move(b.edges), std::move(labels));
}

}  // namespace gallmap
