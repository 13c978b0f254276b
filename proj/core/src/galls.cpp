#include "gallmap/galls.hpp"

#include <algorithm>
#include <cstdint>

namespace gallmap {

const char* to_string(NetworkClass c) noexcept {
  switch (c) {
    case NetworkClass::GalledTree:
      return "galled-tree";
    case NetworkClass::GalledNetwork:
      return "galled-network";
    case NetworkClass::Neither:
      return "neither";
  }
  return "neither";
}

std::vector<NodeId> Gall::members() const {
  std::vector<NodeId> out;
  out.reserve(left_chain.size() + right_chain.size() + 2);
  out.push_back(beginning);
  out.insert(out.end(), left_chain.begin(), left_chain.end());
  out.insert(out.end(), right_chain.begin(), right_chain.end());
  out.push_back(reticulation);
  return out;
}

bool Gall::contains(NodeId v) const {
  if (v == beginning || v == reticulation) return true;
  if (std::find(left_chain.begin(), left_chain.end(), v) != left_chain.end())
    return true;
  return std::find(right_chain.begin(), right_chain.end(), v) !=
         right_chain.end();
}

LocateResult locate_galls(const PhyloNetwork& net) {
  for (NodeId v : net.topological_order())
    if (net.in_degree(v) > 2)
      return {std::nullopt,
              GallFailure{GallFailure::Kind::indegree_exceeds_two, v}};

  const std::size_t n = net.node_count();
  GallSet set;

  // Per-walk membership stamps; tick changes per reticulation so the arrays
  // never need clearing.
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::uint8_t> side_of(n, 0);
  std::uint32_t tick = 0;

  std::vector<NodeId> chain[2];
  for (NodeId r : net.reticulations()) {
    ++tick;
    chain[0].clear();
    chain[1].clear();
    NodeId cursor[2] = {net.parents(r)[0], net.parents(r)[1]};
    bool done[2] = {false, false};
    for (int s = 0; s < 2; ++s) {
      chain[s].push_back(cursor[s]);
      stamp[cursor[s]] = tick;
      side_of[cursor[s]] = static_cast<std::uint8_t>(s);
    }

    std::optional<NodeId> meeting;
    std::optional<int> meeting_side;
    int s = 0;
    while (!meeting && (!done[0] || !done[1])) {
      if (done[s]) {
        s ^= 1;
        continue;
      }
      if (net.in_degree(cursor[s]) == 0) {
        done[s] = true;
        s ^= 1;
        continue;
      }
      const NodeId next = net.parents(cursor[s])[0];
      if (stamp[next] == tick && side_of[next] != s) {
        meeting = next;
        meeting_side = s;
        break;
      }
      chain[s].push_back(next);
      stamp[next] = tick;
      side_of[next] = static_cast<std::uint8_t>(s);
      cursor[s] = next;
      s ^= 1;
    }
    if (!meeting)
      return {std::nullopt,
              GallFailure{GallFailure::Kind::chains_never_meet, r}};

    // The meeting node becomes the beginning; the chain that reached it first
    // keeps only the entries strictly below it.
    const int other = *meeting_side ^ 1;
    const auto cut = std::find(chain[other].begin(), chain[other].end(),
                               *meeting);
    chain[other].erase(cut, chain[other].end());

    Gall gall;
    gall.beginning = *meeting;
    gall.reticulation = r;
    gall.left_chain.assign(chain[0].rbegin(), chain[0].rend());
    gall.right_chain.assign(chain[1].rbegin(), chain[1].rend());
    set.galls.push_back(std::move(gall));
  }

  GallIndex& index = set.gall_of;
  index.ptr.assign(n + 1, 0);
  for (const Gall& gall : set.galls) {
    ++index.ptr[gall.beginning + 1];
    ++index.ptr[gall.reticulation + 1];
    for (NodeId v : gall.left_chain) ++index.ptr[v + 1];
    for (NodeId v : gall.right_chain) ++index.ptr[v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) index.ptr[v + 1] += index.ptr[v];
  index.flat.resize(index.ptr[n]);
  std::vector<std::uint32_t> slot(index.ptr.begin(), index.ptr.end() - 1);
  for (std::size_t g = 0; g < set.galls.size(); ++g) {
    const Gall& gall = set.galls[g];
    const auto put = [&](NodeId v) { index.flat[slot[v]++] = g; };
    put(gall.beginning);
    for (NodeId v : gall.left_chain) put(v);
    for (NodeId v : gall.right_chain) put(v);
    put(gall.reticulation);
  }
  return {std::move(set), std::nullopt};
}

NetworkClass classify_network(const PhyloNetwork& net, const GallSet& galls) {
  bool shared = false;
  for (std::size_t v = 0; v < galls.gall_of.size(); ++v) {
    if (galls.gall_of[v].size() < 2) continue;
    shared = true;
    if (net.is_reticulation(static_cast<NodeId>(v)))
      return NetworkClass::Neither;
  }
  return shared ? NetworkClass::GalledNetwork : NetworkClass::GalledTree;
}

GallAnalysis analyze(const PhyloNetwork& net) {
  GallAnalysis out;
  LocateResult located = locate_galls(net);
  if (!located.ok()) {
    out.network_class = NetworkClass::Neither;
    out.failure = located.failure;
    out.offending_nodes = {located.failure->node};
    return out;
  }
  out.galls = std::move(located.galls);
  const GallSet& set = *out.galls;
  for (std::size_t v = 0; v < set.gall_of.size(); ++v) {
    if (set.gall_of[v].size() < 2) continue;
    out.shared_nodes.push_back(static_cast<NodeId>(v));
    if (net.is_reticulation(static_cast<NodeId>(v)))
      out.offending_nodes.push_back(static_cast<NodeId>(v));
  }
  if (!out.offending_nodes.empty())
    out.network_class = NetworkClass::Neither;
  else if (!out.shared_nodes.empty())
    out.network_class = NetworkClass::GalledNetwork;
  else
    out.network_class = NetworkClass::GalledTree;
  return out;
}

}  // namespace gallmap
