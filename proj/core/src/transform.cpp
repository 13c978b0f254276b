#include "gallmap/transform.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "detail.hpp"

namespace gallmap {

namespace detail {

std::pair<PhyloNetwork, CollapseMap> remove_reticulation_edges(
    const PhyloNetwork& net, const GallSet& galls) {
  CollapseMap map;
  map.removed.reserve(galls.galls.size());
  std::vector<char> drop(net.edge_count(), 0);
  for (std::size_t g = 0; g < galls.galls.size(); ++g) {
    const Gall& gall = galls.galls[g];
    NodeId source;
    if (gall.left_chain.empty() || gall.right_chain.empty())
      source = gall.beginning;
    else
      source = gall.right_chain.back();
    const auto idx = net.find_edge(source, gall.reticulation);
    if (!idx)
      throw Error(errc::constraint_violated,
                  "gall in-edge missing from the network", gall.reticulation);
    drop[*idx] = 1;
    map.removed.push_back({*idx, net.edges()[*idx], g});
  }
  std::vector<Edge> kept;
  kept.reserve(net.edge_count() - map.removed.size());
  for (std::size_t i = 0; i < net.edge_count(); ++i)
    if (!drop[i]) kept.push_back(net.edges()[i]);
  return {PhyloNetwork::build(net.node_count(), std::move(kept), net.labels()),
          std::move(map)};
}

std::vector<bool> kept_left(const GallSet& galls, const CollapseMap& map) {
  std::vector<bool> kept(galls.galls.size(), true);
  for (const auto& rem : map.removed) {
    const Gall& gall = galls.galls[rem.gall];
    const NodeId left_source =
        gall.left_chain.empty() ? gall.beginning : gall.left_chain.back();
    kept[rem.gall] = rem.edge.from != left_source;
  }
  return kept;
}

ChildTable tree_children(const PhyloNetwork& net, const CollapseMap& map) {
  const std::size_t n = net.node_count();
  const std::size_t m = net.edge_count();
  std::vector<char> drop(m, 0);
  for (const auto& rem : map.removed) {
    if (rem.edge_index >= m || !(net.edges()[rem.edge_index] == rem.edge))
      throw Error(errc::constraint_violated,
                  "collapse map does not match the network");
    drop[rem.edge_index] = 1;
  }
  ChildTable kids;
  kids.ptr.assign(n + 1, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (!drop[i]) ++kids.ptr[net.edges()[i].from + 1];
  for (std::size_t v = 0; v < n; ++v) kids.ptr[v + 1] += kids.ptr[v];
  kids.flat.resize(m - map.removed.size());
  std::vector<std::uint32_t> slot(kids.ptr.begin(), kids.ptr.end() - 1);
  for (std::size_t i = 0; i < m; ++i)
    if (!drop[i])
      kids.flat[slot[net.edges()[i].from]++] = net.edges()[i].to;
  return kids;
}

bool is_planar_fast(const PhyloNetwork& net) {
  const std::size_t n = net.node_count();
  const std::size_t m = net.edge_count();
  if (n <= 4) return true;
  if (m > 3 * n - 6) return false;

  // Undirected adjacency with edge identities, so suppressed paths can be
  // walked without revisiting an edge.
  std::vector<std::uint32_t> ptr(n + 1, 0);
  for (const Edge& e : net.edges()) {
    ++ptr[e.from + 1];
    ++ptr[e.to + 1];
  }
  for (std::size_t v = 0; v < n; ++v) ptr[v + 1] += ptr[v];
  std::vector<NodeId> adj(2 * m);
  std::vector<std::uint32_t> via(2 * m);
  std::vector<std::uint32_t> slot(ptr.begin(), ptr.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = net.edges()[i];
    adj[slot[e.from]] = e.to;
    via[slot[e.from]++] = static_cast<std::uint32_t>(i);
    adj[slot[e.to]] = e.from;
    via[slot[e.to]++] = static_cast<std::uint32_t>(i);
  }

  // Peel pendant vertices; the 2-core carries all cycles.
  std::vector<std::uint32_t> deg(n);
  std::vector<char> edge_alive(m, 1);
  std::vector<NodeId> peel;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = ptr[v + 1] - ptr[v];
    if (deg[v] <= 1) peel.push_back(v);
  }
  std::vector<char> alive(n, 1);
  for (std::size_t head = 0; head < peel.size(); ++head) {
    const NodeId v = peel[head];
    alive[v] = 0;
    for (std::uint32_t k = ptr[v]; k < ptr[v + 1]; ++k) {
      if (!edge_alive[via[k]]) continue;
      edge_alive[via[k]] = 0;
      const NodeId u = adj[k];
      if (alive[u] && --deg[u] == 1) peel.push_back(u);
    }
  }

  // Anchors are the 2-core vertices of degree three or more; chains of
  // degree-2 vertices between them collapse to single kernel edges.
  std::vector<NodeId> kernel_id(n, 0);
  std::vector<NodeId> anchors;
  for (NodeId v = 0; v < n; ++v)
    if (alive[v] && deg[v] >= 3) {
      kernel_id[v] = static_cast<NodeId>(anchors.size());
      anchors.push_back(v);
    }
  if (anchors.empty()) return true;

  std::vector<std::uint64_t> kernel_edges;
  std::vector<char> walked(m, 0);
  for (const NodeId a : anchors)
    for (std::uint32_t k = ptr[a]; k < ptr[a + 1]; ++k) {
      if (!edge_alive[via[k]] || walked[via[k]]) continue;
      walked[via[k]] = 1;
      NodeId cur = adj[k];
      while (alive[cur] && deg[cur] == 2) {
        bool advanced = false;
        for (std::uint32_t j = ptr[cur]; j < ptr[cur + 1]; ++j) {
          if (!edge_alive[via[j]] || walked[via[j]]) continue;
          walked[via[j]] = 1;
          cur = adj[j];
          advanced = true;
          break;
        }
        if (!advanced) break;
      }
      if (cur == a) continue;
      const std::uint64_t lo = std::min(kernel_id[a], kernel_id[cur]);
      const std::uint64_t hi = std::max(kernel_id[a], kernel_id[cur]);
      kernel_edges.push_back((lo << 32) | hi);
    }

  std::sort(kernel_edges.begin(), kernel_edges.end());
  kernel_edges.erase(std::unique(kernel_edges.begin(), kernel_edges.end()),
                     kernel_edges.end());
  const std::size_t kn = anchors.size();
  const std::size_t km = kernel_edges.size();
  if (kn <= 4) return true;
  if (km + 6 > 3 * kn) return false;

  using Graph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph g(kn);
  for (const std::uint64_t key : kernel_edges)
    boost::add_edge(static_cast<NodeId>(key >> 32),
                    static_cast<NodeId>(key & 0xffffffffu), g);
  return boost::boyer_myrvold_planarity_test(g);
}

}  // namespace detail

std::pair<PhyloNetwork, CollapseMap> collapse_galls(const PhyloNetwork& net,
                                                    const GallSet& galls) {
  if (classify_network(net, galls) != NetworkClass::GalledTree)
    throw Error(errc::not_a_galled_tree,
                "galls share nodes; collapsing needs a galled tree");
  return detail::remove_reticulation_edges(net, galls);
}

PhyloNetwork expand_collapsed(const PhyloNetwork& tree,
                              const CollapseMap& map) {
  if (map.empty()) return tree;
  const std::size_t total = tree.edge_count() + map.removed.size();
  std::vector<Edge> edges(total);
  std::vector<char> filled(total, 0);
  for (const auto& rem : map.removed) {
    if (rem.edge_index >= total || filled[rem.edge_index])
      throw Error(errc::constraint_violated,
                  "collapse map does not match the tree");
    edges[rem.edge_index] = rem.edge;
    filled[rem.edge_index] = 1;
  }
  std::size_t slot = 0;
  for (const Edge& e : tree.edges()) {
    while (slot < total && filled[slot]) ++slot;
    edges[slot] = e;
    filled[slot] = 1;
  }
  return PhyloNetwork::build(tree.node_count(), std::move(edges),
                             tree.labels());
}

bool SplitMap::empty() const noexcept { return origin.empty(); }

std::pair<PhyloNetwork, SplitMap> split_shared_nodes(const PhyloNetwork& net,
                                                     const GallSet& galls) {
  const NetworkClass cls = classify_network(net, galls);
  if (cls == NetworkClass::Neither)
    throw Error(errc::not_a_galled_network,
                "a reticulation lies on two galls");
  SplitMap map;
  if (cls == NetworkClass::GalledTree) return {net, std::move(map)};

  const std::size_t n = net.node_count();
  map.original_node_count = n;
  map.original_edge_count = net.edge_count();
  map.copies.resize(n);
  map.origin.resize(n);
  std::vector<std::string> labels = net.labels();
  for (NodeId v = 0; v < n; ++v) {
    map.copies[v] = {v};
    map.origin[v] = v;
  }
  NodeId next = static_cast<NodeId>(n);
  for (NodeId v = 0; v < n; ++v)
    for (std::size_t k = 1; k < galls.gall_of[v].size(); ++k) {
      map.copies[v].push_back(next++);
      map.origin.push_back(v);
      labels.push_back(net.labels()[v]);
    }

  auto copy_for = [&](NodeId v, std::size_t g) -> NodeId {
    const auto& owners = galls.gall_of[v];
    for (std::size_t k = 0; k < owners.size(); ++k)
      if (owners[k] == g) return map.copies[v][k];
    return map.copies[v][0];
  };

  // Galls whose cycle runs through each original edge, and galls beginning
  // at each node.
  std::vector<std::vector<std::size_t>> cycle_galls(net.edge_count());
  std::vector<std::vector<std::size_t>> begins_at(n);
  for (std::size_t g = 0; g < galls.galls.size(); ++g) {
    const Gall& gall = galls.galls[g];
    begins_at[gall.beginning].push_back(g);
    auto mark = [&](NodeId from, NodeId to) {
      const auto it = net.find_edge(from, to);
      if (!it)
        throw Error(errc::constraint_violated,
                    "gall cycle edge missing from the network", to);
      cycle_galls[*it].push_back(g);
    };
    NodeId prev = gall.beginning;
    for (NodeId v : gall.left_chain) {
      mark(prev, v);
      prev = v;
    }
    mark(prev, gall.reticulation);
    prev = gall.beginning;
    for (NodeId v : gall.right_chain) {
      mark(prev, v);
      prev = v;
    }
    mark(prev, gall.reticulation);
  }

  std::vector<Edge> edges;
  std::vector<std::size_t> edge_origin;
  edges.reserve(net.edge_count() + n);
  edge_origin.reserve(net.edge_count() + n);
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    const Edge e = net.edges()[i];
    const auto& owners = cycle_galls[i];
    NodeId primary_from;
    if (owners.empty()) {
      primary_from = map.copies[e.from][0];
      edges.push_back({primary_from, map.copies[e.to][0]});
      edge_origin.push_back(i);
    } else {
      for (std::size_t g : owners) {
        edges.push_back({copy_for(e.from, g), copy_for(e.to, g)});
        edge_origin.push_back(i);
      }
      primary_from = copy_for(e.from, owners.front());
    }
    // Replacements of a shared beginning all need the beginning's in-edge.
    if (galls.gall_of[e.to].size() < 2) continue;
    for (std::size_t g : begins_at[e.to]) {
      if (std::find(owners.begin(), owners.end(), g) != owners.end()) continue;
      const NodeId target = copy_for(e.to, g);
      if (owners.empty() && target == map.copies[e.to][0]) continue;
      edges.push_back({primary_from, target});
      edge_origin.push_back(i);
    }
  }
  if (map.copies[net.root()].size() > 1) {
    const NodeId super = next++;
    map.origin.push_back(net.root());
    labels.emplace_back();
    for (NodeId c : map.copies[net.root()]) {
      edges.push_back({super, c});
      edge_origin.push_back(SplitMap::npos);
    }
    map.super_root = super;
  }
  map.edge_origin = std::move(edge_origin);
  return {PhyloNetwork::build(next, std::move(edges), std::move(labels)),
          std::move(map)};
}

PhyloNetwork unify_split(const PhyloNetwork& split, const SplitMap& map) {
  if (map.empty()) return split;
  if (map.edge_origin.size() != split.edge_count())
    throw Error(errc::constraint_violated,
                "split map does not match the graph");
  std::vector<Edge> edges(map.original_edge_count);
  std::vector<char> seen(map.original_edge_count, 0);
  for (std::size_t i = 0; i < split.edge_count(); ++i) {
    const std::size_t orig = map.edge_origin[i];
    if (orig == SplitMap::npos) continue;
    if (orig >= map.original_edge_count)
      throw Error(errc::constraint_violated, "edge origin out of range");
    const Edge e = split.edges()[i];
    if (e.from >= map.origin.size() || e.to >= map.origin.size())
      throw Error(errc::constraint_violated, "split node out of range");
    edges[orig] = {map.origin[e.from], map.origin[e.to]};
    seen[orig] = 1;
  }
  for (std::size_t i = 0; i < map.original_edge_count; ++i)
    if (!seen[i])
      throw Error(errc::constraint_violated,
                  "original edge has no image in the split graph");
  std::vector<std::string> labels(
      split.labels().begin(),
      split.labels().begin() +
          static_cast<std::ptrdiff_t>(map.original_node_count));
  return PhyloNetwork::build(map.original_node_count, std::move(edges),
                             std::move(labels));
}

PlanarityResult check_planarity(const PhyloNetwork& net) {
  using Graph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                            boost::no_property,
                            boost::property<boost::edge_index_t, int>>;
  Graph g(net.node_count());
  int index = 0;
  for (const Edge& e : net.edges())
    boost::add_edge(e.from, e.to, index++, g);

  using EdgeDesc = boost::graph_traits<Graph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> storage(net.node_count());
  auto embedding = boost::make_iterator_property_map(
      storage.begin(), boost::get(boost::vertex_index, g));

  PlanarityResult out;
  out.planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = g,
      boost::boyer_myrvold_params::embedding = embedding);
  if (!out.planar) return out;

  PlanarEmbedding rotation;
  rotation.rotation.resize(net.node_count());
  for (std::size_t v = 0; v < net.node_count(); ++v)
    for (const EdgeDesc& ed : storage[v]) {
      const auto a = boost::source(ed, g);
      const auto b = boost::target(ed, g);
      rotation.rotation[v].push_back(static_cast<NodeId>(a == v ? b : a));
    }
  out.embedding = std::move(rotation);
  return out;
}

std::vector<std::vector<NodeId>> order_subtrees(const PhyloNetwork& tree,
                                                const SplitMap& map,
                                                const PlanarEmbedding& emb) {
  const std::size_t n = tree.node_count();
  std::vector<std::vector<NodeId>> order(n);
  if (map.empty()) {
    for (NodeId v = 0; v < n; ++v) {
      const NodeSpan kids = tree.children(v);
      order[v].assign(kids.begin(), kids.end());
      std::sort(order[v].begin(), order[v].end());
    }
    return order;
  }

  auto origin_of = [&](NodeId v) -> NodeId {
    if (v >= map.origin.size())
      throw Error(errc::embedding_inconsistent,
                  "node missing from the split map", v);
    return map.origin[v];
  };

  for (NodeId v = 0; v < n; ++v) {
    const NodeSpan kids = tree.children(v);
    if (kids.size() <= 1 || (map.super_root && *map.super_root == v)) {
      order[v].assign(kids.begin(), kids.end());
      continue;
    }
    const NodeId u = origin_of(v);
    if (u >= emb.rotation.size())
      throw Error(errc::embedding_inconsistent,
                  "embedding is missing a node", u);
    const auto& rot = emb.rotation[u];

    std::unordered_map<NodeId, std::vector<NodeId>> buckets;
    for (NodeId c : kids) buckets[origin_of(c)].push_back(c);

    std::size_t start = 0;
    if (!tree.parents(v).empty()) {
      const NodeId p = tree.parents(v)[0];
      if (!map.super_root || *map.super_root != p) {
        const auto anchor = std::find(rot.begin(), rot.end(), origin_of(p));
        if (anchor == rot.end())
          throw Error(errc::embedding_inconsistent,
                      "parent edge missing from the rotation", u);
        start = static_cast<std::size_t>(anchor - rot.begin()) + 1;
      }
    }

    std::vector<NodeId> sorted;
    sorted.reserve(kids.size());
    for (std::size_t k = 0; k < rot.size(); ++k) {
      const NodeId w = rot[(start + k) % rot.size()];
      const auto bucket = buckets.find(w);
      if (bucket == buckets.end()) continue;
      sorted.insert(sorted.end(), bucket->second.begin(), bucket->second.end());
      buckets.erase(bucket);
    }
    if (!buckets.empty() || sorted.size() != kids.size())
      throw Error(errc::embedding_inconsistent,
                  "child edges missing from the rotation", u);
    order[v] = std::move(sorted);
  }
  return order;
}

LayerAssignment assign_layers(const PhyloNetwork& net,
                              const CollapseMap& map) {
  const std::size_t n = net.node_count();
  const auto kids = detail::tree_children(net, map);
  LayerAssignment out;
  out.layer.assign(n, 0);
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    std::uint32_t deepest = 0;
    for (NodeId c : kids[v]) deepest = std::max(deepest, out.layer[c]);
    out.layer[v] = deepest + 1;
  }
  out.height = out.layer[net.root()];
  return out;
}

}  // namespace gallmap
