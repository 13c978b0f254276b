#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gallmap/galls.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

// Edge-list format: the first significant line holds the node count,
// "L <id> <text>" lines attach labels, and every remaining line is an edge
// "u v". '#' starts a comment that runs to end of line. Throws ParseError
// with errc::syntax_error (1-based line numbers) and forwards build errors.
PhyloNetwork parse_edge_list(std::string_view text);

std::string write_edge_list(const PhyloNetwork& net);

// Rooted Newick with hybrid tags and no branch lengths, e.g.
// "((a,(b)#H1),(#H1,c))r;". Occurrences of one #H<k> tag merge into a single
// node that keeps every parent. Throws ParseError with errc::syntax_error
// (character offsets), errc::unbalanced_parens or errc::dangling_hybrid_tag.
PhyloNetwork parse_extended_newick(std::string_view text);

// Serialisable layout document; the JSON schema uses the top-level keys
// canvas, nodes, edges, class and galls.
struct LayoutDoc {
  struct Node {
    NodeId id = 0;
    std::string label;
    RectPolygon region;
  };
  struct EdgeEntry {
    NodeId from = 0;
    NodeId to = 0;
    Rect region;
  };

  Rect canvas;
  std::vector<Node> nodes;
  std::vector<EdgeEntry> edges;
  NetworkClass net_class = NetworkClass::GalledTree;
  std::vector<Gall> galls;
};

LayoutDoc make_layout_doc(const PhyloNetwork& net, const GallAnalysis& analysis,
                          const DagMapLayout& layout);

// Rebuilds the network a document describes (nodes plus edges).
PhyloNetwork network_from_doc(const LayoutDoc& doc);
DagMapLayout layout_from_doc(const LayoutDoc& doc);

// Doubles keep at least 15 significant digits so parse(emit(doc)) is exact to
// 1e-12. parse_json throws Error(errc::schema_mismatch) on missing keys,
// a degenerate canvas or out-of-range ids.
std::string emit_json(const LayoutDoc& doc);
LayoutDoc parse_json(std::string_view text);

struct SvgOptions {
  bool show_edges = true;
  std::uint64_t palette_seed = 0;
};

// Deterministic SVG 1.1 document, one group per node, fill hue derived from
// the hash of the node's root path and the palette seed. The layout is
// re-validated first; violations raise Error(errc::invalid_layout).
std::string emit_svg(const LayoutDoc& doc, const SvgOptions& options = {});
std::string emit_svg(const DagMapLayout& layout, const PhyloNetwork& net,
                     const SvgOptions& options = {});

}  // namespace gallmap
