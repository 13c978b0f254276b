#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gallmap/errors.hpp"
#include "gallmap/galls.hpp"
#include "gallmap/geometry.hpp"
#include "gallmap/io.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(std::string what) {
  throw Error(errc::schema_mismatch, std::move(what));
}

json rect_to_json(const Rect& r) {
  return json{
      {"x", r.x}, {"y", r.y}, {"width", r.width}, {"height", r.height}};
}

double number_at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number())
    bad(std::string("expected a number at \"") + key + '"');
  return j[key].get<double>();
}

Rect rect_from_json(const json& j) {
  return Rect{number_at(j, "x"), number_at(j, "y"), number_at(j, "width"),
              number_at(j, "height")};
}

NodeId id_at(const json& j, const char* key, std::size_t limit) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_unsigned())
    bad(std::string("expected a node id at \"") + key + '"');
  const std::uint64_t v = j[key].get<std::uint64_t>();
  if (v >= limit) bad("node id " + std::to_string(v) + " is out of range");
  return static_cast<NodeId>(v);
}

std::vector<NodeId> id_list_at(const json& j, const char* key,
                               std::size_t limit) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array())
    bad(std::string("expected an id list at \"") + key + '"');
  std::vector<NodeId> out;
  for (const json& entry : j[key]) {
    if (!entry.is_number_unsigned())
      bad(std::string("expected a node id inside \"") + key + '"');
    const std::uint64_t v = entry.get<std::uint64_t>();
    if (v >= limit) bad("node id " + std::to_string(v) + " is out of range");
    out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

}  // namespace

LayoutDoc make_layout_doc(const PhyloNetwork& net, const GallAnalysis& analysis,
                          const DagMapLayout& layout) {
  if (layout.node_region.size() != net.node_count() ||
      layout.edge_region.size() != net.edges().size())
    throw Error(errc::constraint_violated,
                "layout does not match the network");
  LayoutDoc doc;
  doc.canvas = layout.canvas;
  doc.nodes.reserve(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v)
    doc.nodes.push_back({v, net.label(v), layout.node_region[v]});
  doc.edges.reserve(net.edges().size());
  for (std::size_t i = 0; i < net.edges().size(); ++i)
    doc.edges.push_back(
        {net.edges()[i].from, net.edges()[i].to, layout.edge_region[i]});
  doc.net_class = analysis.network_class;
  if (analysis.galls) doc.galls = analysis.galls->galls;
  return doc;
}

PhyloNetwork network_from_doc(const LayoutDoc& doc) {
  const std::size_t n = doc.nodes.size();
  std::vector<std::string> labels(n);
  for (const LayoutDoc::Node& node : doc.nodes) {
    if (node.id >= n) bad("node id " + std::to_string(node.id) +
                          " is out of range");
    labels[node.id] = node.label;
  }
  std::vector<Edge> edges;
  edges.reserve(doc.edges.size());
  for (const LayoutDoc::EdgeEntry& e : doc.edges)
    edges.push_back({e.from, e.to});
  return PhyloNetwork::build(n, std::move(edges), std::move(labels));
}

DagMapLayout layout_from_doc(const LayoutDoc& doc) {
  DagMapLayout out;
  out.canvas = doc.canvas;
  out.node_region.resize(doc.nodes.size());
  for (const LayoutDoc::Node& node : doc.nodes) {
    if (node.id >= doc.nodes.size())
      bad("node id " + std::to_string(node.id) + " is out of range");
    out.node_region[node.id] = node.region;
  }
  out.edge_region.reserve(doc.edges.size());
  for (const LayoutDoc::EdgeEntry& e : doc.edges)
    out.edge_region.push_back(e.region);
  return out;
}

std::string emit_json(const LayoutDoc& doc) {
  json root;
  root["canvas"] = rect_to_json(doc.canvas);

  json nodes = json::array();
  for (const LayoutDoc::Node& n : doc.nodes) {
    json entry;
    entry["id"] = n.id;
    entry["label"] = n.label;
    json region = json::array();
    for (const Rect& r : n.region.parts) region.push_back(rect_to_json(r));
    entry["region"] = std::move(region);
    nodes.push_back(std::move(entry));
  }
  root["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const LayoutDoc::EdgeEntry& e : doc.edges) {
    json entry;
    entry["from"] = e.from;
    entry["to"] = e.to;
    entry["region"] = rect_to_json(e.region);
    edges.push_back(std::move(entry));
  }
  root["edges"] = std::move(edges);

  root["class"] = to_string(doc.net_class);

  json galls = json::array();
  for (const Gall& g : doc.galls) {
    json entry;
    entry["beginning"] = g.beginning;
    entry["reticulation"] = g.reticulation;
    entry["left"] = g.left_chain;
    entry["right"] = g.right_chain;
    galls.push_back(std::move(entry));
  }
  root["galls"] = std::move(galls);

  return root.dump(2) + "\n";
}

LayoutDoc parse_json(std::string_view text) {
  const json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) bad("document is not valid JSON");
  if (!root.is_object()) bad("top level is not an object");
  for (const char* key : {"canvas", "nodes", "edges", "class", "galls"})
    if (!root.contains(key))
      bad(std::string("missing key \"") + key + '"');

  LayoutDoc doc;
  doc.canvas = rect_from_json(root["canvas"]);
  if (!(doc.canvas.width > 0.0) || !(doc.canvas.height > 0.0))
    bad("canvas is degenerate");

  if (!root["nodes"].is_array()) bad("\"nodes\" is not an array");
  const std::size_t n = root["nodes"].size();
  std::vector<bool> seen(n, false);
  for (const json& entry : root["nodes"]) {
    LayoutDoc::Node node;
    node.id = id_at(entry, "id", n);
    if (seen[node.id]) bad("duplicate node id " + std::to_string(node.id));
    seen[node.id] = true;
    if (entry.contains("label")) {
      if (!entry["label"].is_string()) bad("node label is not a string");
      node.label = entry["label"].get<std::string>();
    }
    if (!entry.contains("region") || !entry["region"].is_array())
      bad("node " + std::to_string(node.id) + " has no region array");
    for (const json& part : entry["region"])
      node.region.parts.push_back(rect_from_json(part));
    doc.nodes.push_back(std::move(node));
  }

  if (!root["edges"].is_array()) bad("\"edges\" is not an array");
  for (const json& entry : root["edges"]) {
    LayoutDoc::EdgeEntry e;
    e.from = id_at(entry, "from", n);
    e.to = id_at(entry, "to", n);
    if (!entry.contains("region"))
      bad("edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
          " has no region");
    e.region = rect_from_json(entry["region"]);
    doc.edges.push_back(e);
  }

  if (!root["class"].is_string()) bad("\"class\" is not a string");
  const std::string cls = root["class"].get<std::string>();
  if (cls == to_string(NetworkClass::GalledTree))
    doc.net_class = NetworkClass::GalledTree;
  else if (cls == to_string(NetworkClass::GalledNetwork))
    doc.net_class = NetworkClass::GalledNetwork;
  else if (cls == to_string(NetworkClass::Neither))
    doc.net_class = NetworkClass::Neither;
  else
    bad("unknown class \"" + cls + '"');

  if (!root["galls"].is_array()) bad("\"galls\" is not an array");
  for (const json& entry : root["galls"]) {
    Gall g;
    g.beginning = id_at(entry, "beginning", n);
    g.reticulation = id_at(entry, "reticulation", n);
    g.left_chain = id_list_at(entry, "left", n);
    g.right_chain = id_list_at(entry, "right", n);
    doc.galls.push_back(std::move(g));
  }
  return doc;
}

}  // namespace gallmap
