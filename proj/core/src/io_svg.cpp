#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "gallmap/errors.hpp"
#include "gallmap/galls.hpp"
#include "gallmap/geometry.hpp"
#include "gallmap/io.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value,
                    unsigned bytes) {
  for (unsigned i = 0; i < bytes; ++i) {
    hash ^= (value >> (8 * i)) & 0xffu;
    hash *= 1099511628211ull;
  }
  return hash;
}

// Colour from the path root -> node along first parents, so a node keeps
// its fill when unrelated parts of the network change.
double node_hue(const PhyloNetwork& net, NodeId v, std::uint64_t seed) {
  std::vector<NodeId> path{v};
  while (!net.parents(path.back()).empty())
    path.push_back(net.parents(path.back())[0]);
  std::uint64_t hash = fnv1a(14695981039346656037ull, seed, 8);
  for (std::size_t i = path.size(); i-- > 0;) hash = fnv1a(hash, path[i], 4);
  return double(hash % 3600) / 3600.0;
}

double hue_channel(double p, double q, double t) {
  if (t < 0.0) t += 1.0;
  if (t > 1.0) t -= 1.0;
  if (t < 1.0 / 6.0) return p + (q - p) * 6.0 * t;
  if (t < 1.0 / 2.0) return q;
  if (t < 2.0 / 3.0) return p + (q - p) * (2.0 / 3.0 - t) * 6.0;
  return p;
}

std::string hsl_hex(double h, double s, double l) {
  const double q = l < 0.5 ? l * (1.0 + s) : l + s - l * s;
  const double p = 2.0 * l - q;
  const auto channel = [&](double t) {
    return static_cast<unsigned>(std::lround(255.0 * hue_channel(p, q, t)));
  };
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(h + 1.0 / 3.0),
                channel(h), channel(h - 1.0 / 3.0));
  return buf;
}

std::string render(const LayoutDoc& doc, const PhyloNetwork& net,
                   const SvgOptions& options) {
  const Rect& canvas = doc.canvas;
  const double diag = std::hypot(canvas.width, canvas.height);
  const std::string stroke = num(0.002 * diag);
  const std::string font = num(0.03 * std::min(canvas.width, canvas.height));

  std::vector<const LayoutDoc::Node*> by_id(doc.nodes.size());
  for (const LayoutDoc::Node& node : doc.nodes) by_id[node.id] = &node;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"";
  svg += " viewBox=\"" + num(canvas.x) + ' ' + num(canvas.y) + ' ' +
         num(canvas.width) + ' ' + num(canvas.height) + '"';
  svg += " width=\"" + num(canvas.width) + "\" height=\"" +
         num(canvas.height) + "\">\n";

  for (NodeId v : net.topological_order()) {
    const LayoutDoc::Node& node = *by_id[v];
    const std::string fill =
        hsl_hex(node_hue(net, v, options.palette_seed), 0.62, 0.68);
    svg += "<g id=\"node-" + std::to_string(v) + "\">\n";
    for (const Rect& r : node.region.parts) {
      svg += "<rect x=\"" + num(r.x) + "\" y=\"" + num(r.y) + "\" width=\"" +
             num(r.width) + "\" height=\"" + num(r.height) + "\" fill=\"" +
             fill + "\" stroke=\"#2b2b2b\" stroke-width=\"" + stroke +
             "\"/>\n";
    }
    const Rect part = largest_part(node.region);
    const std::string text =
        node.label.empty() ? std::to_string(v) : node.label;
    svg += "<text x=\"" + num(part.x + part.width / 2.0) + "\" y=\"" +
           num(part.y + part.height / 2.0) + "\" font-size=\"" + font +
           "\" text-anchor=\"middle\" dominant-baseline=\"middle\""
           " font-family=\"sans-serif\">" +
           xml_escape(text) + "</text>\n";
    svg += "</g>\n";
  }

  if (options.show_edges) {
    svg += "<g fill=\"#1f2430\" fill-opacity=\"0.15\">\n";
    for (const LayoutDoc::EdgeEntry& e : doc.edges) {
      const Rect& r = e.region;
      svg += "<rect class=\"edge\" x=\"" + num(r.x) + "\" y=\"" + num(r.y) +
             "\" width=\"" + num(r.width) + "\" height=\"" + num(r.height) +
             "\"/>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string emit_svg(const LayoutDoc& doc, const SvgOptions& options) {
  PhyloNetwork net = [&doc] {
    try {
      return network_from_doc(doc);
    } catch (const Error& e) {
      throw Error(errc::invalid_layout,
                  std::string("document does not describe a network: ") +
                      e.what());
    }
  }();
  const DagMapLayout layout = layout_from_doc(doc);
  const ValidationReport report = validate_dagmap(layout, net);
  if (!report.ok())
    throw Error(errc::invalid_layout,
                "layout fails validation: " + report.violations.front().detail +
                    " (" + std::to_string(report.violations.size()) +
                    " violation(s))");
  return render(doc, net, options);
}

std::string emit_svg(const DagMapLayout& layout, const PhyloNetwork& net,
                     const SvgOptions& options) {
  return emit_svg(make_layout_doc(net, analyze(net), layout), options);
}

}  // namespace gallmap
