#pragma once

// Reference classifier that works straight from the definitions. It
// enumerates every undirected simple cycle of the network, keeps the ones
// with exactly one valley (a node both cycle edges point into), and applies
// the sharing rules to those. A network is a galled tree or galled network
// exactly when every reticulation is the valley of exactly one such cycle
// and the cycles obey the disjointness rules. Exponential, so only fit for
// small graphs; the production classifier must agree with it.

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "gallmap/galls.hpp"
#include "gallmap/network.hpp"

namespace gallmap::oracle {

// Every undirected simple cycle, listed once. Cycles are canonicalised by
// starting at their smallest node and walking toward the smaller of its two
// cycle neighbours.
inline std::vector<std::vector<NodeId>> undirected_cycles(
    const PhyloNetwork& net) {
  const std::size_t n = net.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : net.edges()) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }

  std::vector<std::vector<NodeId>> cycles;
  std::vector<NodeId> path;
  std::vector<char> on_path(n, 0);

  auto dfs = [&](auto&& self, NodeId start, NodeId u) -> void {
    for (NodeId w : adj[u]) {
      if (w == start) {
        if (path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
      } else if (w > start && !on_path[w]) {
        path.push_back(w);
        on_path[w] = 1;
        self(self, start, w);
        on_path[w] = 0;
        path.pop_back();
      }
    }
  };

  for (std::size_t s = 0; s < n; ++s) {
    path.assign(1, static_cast<NodeId>(s));
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[s] = 1;
    dfs(dfs, static_cast<NodeId>(s), static_cast<NodeId>(s));
  }
  return cycles;
}

struct ReticulationCycle {
  NodeId valley = 0;
  std::vector<NodeId> members;  // sorted
};

struct OracleVerdict {
  NetworkClass net_class = NetworkClass::Neither;

  // The single-valley cycles, sorted by valley. When the class is not
  // Neither these are exactly the galls, one per reticulation.
  std::vector<ReticulationCycle> cycles;
};

inline OracleVerdict oracle_classify(const PhyloNetwork& net) {
  std::set<std::pair<NodeId, NodeId>> dir;
  for (const Edge& e : net.edges()) dir.emplace(e.from, e.to);

  OracleVerdict verdict;
  for (const std::vector<NodeId>& c : undirected_cycles(net)) {
    const std::size_t k = c.size();
    std::vector<NodeId> valleys;
    for (std::size_t i = 0; i < k; ++i) {
      const NodeId prev = c[(i + k - 1) % k];
      const NodeId next = c[(i + 1) % k];
      if (dir.count({prev, c[i]}) && dir.count({next, c[i]}))
        valleys.push_back(c[i]);
    }
    if (valleys.size() != 1) continue;
    ReticulationCycle rc;
    rc.valley = valleys.front();
    rc.members = c;
    std::sort(rc.members.begin(), rc.members.end());
    verdict.cycles.push_back(std::move(rc));
  }
  std::sort(verdict.cycles.begin(), verdict.cycles.end(),
            [](const ReticulationCycle& a, const ReticulationCycle& b) {
              return a.valley < b.valley;
            });

  std::vector<std::size_t> cycles_at(net.node_count(), 0);
  for (const ReticulationCycle& rc : verdict.cycles) ++cycles_at[rc.valley];
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.is_reticulation(v) && cycles_at[v] != 1) {
      verdict.net_class = NetworkClass::Neither;
      return verdict;
    }
  }

  bool shares_tree_node = false;
  for (std::size_t i = 0; i < verdict.cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < verdict.cycles.size(); ++j) {
      std::vector<NodeId> common;
      std::set_intersection(verdict.cycles[i].members.begin(),
                            verdict.cycles[i].members.end(),
                            verdict.cycles[j].members.begin(),
                            verdict.cycles[j].members.end(),
                            std::back_inserter(common));
      for (NodeId v : common) {
        if (net.is_reticulation(v)) {
          verdict.net_class = NetworkClass::Neither;
          return verdict;
        }
      }
      if (!common.empty()) shares_tree_node = true;
    }
  }
  verdict.net_class = shares_tree_node ? NetworkClass::GalledNetwork
                                       : NetworkClass::GalledTree;
  return verdict;
}

}  // namespace gallmap::oracle
