#include "support.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "gallmap/galls.hpp"
#include "gallmap/layout.hpp"

using namespace gallmap;
using gallmap::test::load_fixture;
using gallmap::test::rect_near;

namespace {

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

LayoutDoc doc_for(const PhyloNetwork& net, const Rect& canvas) {
  const GallAnalysis analysis = analyze(net);
  REQUIRE(analysis.galls.has_value());
  DagMapLayout layout =
      analysis.network_class == NetworkClass::GalledTree
          ? layout_galled_tree(net, *analysis.galls, canvas)
          : layout_galled_network(net, *analysis.galls, canvas);
  return make_layout_doc(net, analysis, layout);
}

void check_doc_equal(const LayoutDoc& a, const LayoutDoc& b, double tol) {
  CHECK(rect_near(b.canvas, a.canvas.x, a.canvas.y, a.canvas.width,
                  a.canvas.height, tol));
  REQUIRE(b.nodes.size() == a.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CAPTURE(i);
    CHECK(b.nodes[i].id == a.nodes[i].id);
    CHECK(b.nodes[i].label == a.nodes[i].label);
    const auto& pa = a.nodes[i].region.parts;
    const auto& pb = b.nodes[i].region.parts;
    REQUIRE(pb.size() == pa.size());
    for (std::size_t k = 0; k < pa.size(); ++k)
      CHECK(rect_near(pb[k], pa[k].x, pa[k].y, pa[k].width, pa[k].height, tol));
  }
  REQUIRE(b.edges.size() == a.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CAPTURE(i);
    CHECK(b.edges[i].from == a.edges[i].from);
    CHECK(b.edges[i].to == a.edges[i].to);
    const Rect& r = a.edges[i].region;
    CHECK(rect_near(b.edges[i].region, r.x, r.y, r.width, r.height, tol));
  }
  CHECK(b.net_class == a.net_class);
  REQUIRE(b.galls.size() == a.galls.size());
  for (std::size_t i = 0; i < a.galls.size(); ++i) {
    CHECK(b.galls[i].beginning == a.galls[i].beginning);
    CHECK(b.galls[i].reticulation == a.galls[i].reticulation);
    CHECK(b.galls[i].left_chain == a.galls[i].left_chain);
    CHECK(b.galls[i].right_chain == a.galls[i].right_chain);
  }
}

}  // namespace

TEST_CASE("edge lists round-trip through write and parse") {
  for (const char* name :
       {"gt_single.edges", "gt_chain.edges", "gn_shared_prefix.edges",
        "gn_shared_node.edges", "gn_nonplanar.edges", "neither.edges"}) {
    CAPTURE(name);
    PhyloNetwork net = load_fixture(name);
    PhyloNetwork again = parse_edge_list(write_edge_list(net));
    CHECK(again.node_count() == net.node_count());
    CHECK(again.edges() == net.edges());
    CHECK(again.labels() == net.labels());
  }
}

TEST_CASE("edge list labels run to the end of the line") {
  PhyloNetwork net = parse_edge_list("2\nL 1 tip one\n0 1\n");
  CHECK(net.label(1) == "tip one");
  CHECK(net.label(0).empty());

  PhyloNetwork commented = parse_edge_list("2 # count\n0 1 # edge\n");
  CHECK(commented.node_count() == 2);
  CHECK(commented.edge_count() == 1);
}

TEST_CASE("edge list errors carry one-based line numbers") {
  struct Case {
    const char* text;
    const char* message;
    std::size_t line;
  };
  const Case cases[] = {
      {"", "missing node count", 1},
      {"# only a comment\n", "missing node count", 1},
      {"abc\n", "expected a node count", 1},
      {"3\n0 x\n", "expected an edge \"u v\"", 2},
      {"3\nL 9 foo\n0 1\n0 2\n", "label for unknown node 9", 2},
  };
  for (const Case& c : cases) {
    CAPTURE(c.text);
    try {
      parse_edge_list(c.text);
      FAIL("expected a throw");
    } catch (const ParseError& e) {
      CHECK(e.code() == errc::syntax_error);
      CHECK(std::string(e.what()) == c.message);
      CHECK(e.line() == c.line);
    }
  }

  try {
    parse_edge_list("3\n0 1\n0 1\n0 2\n");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parallel_edge);
  }
}

TEST_CASE("newick hybrid tags merge into one reticulation") {
  PhyloNetwork net = parse_extended_newick("((a,(b)#H1)x,(#H1,c)y)r;");
  CHECK(net.node_count() == 7);
  CHECK(net.edge_count() == 7);
  CHECK(net.labels() ==
        std::vector<std::string>{"r", "x", "a", "", "b", "y", "c"});
  CHECK(net.edges() == std::vector<Edge>{{0, 1},
                                         {0, 5},
                                         {1, 2},
                                         {1, 3},
                                         {3, 4},
                                         {5, 3},
                                         {5, 6}});
  CHECK(analyze(net).network_class == NetworkClass::GalledTree);
}

TEST_CASE("newick errors carry character offsets") {
  struct Case {
    const char* text;
    errc code;
    std::size_t offset;
    const char* message;
  };
  const Case cases[] = {
      {"((a,b)x", errc::unbalanced_parens, 0, "unclosed '('"},
      {"(a,b))x;", errc::unbalanced_parens, 5, "unmatched ')'"},
      {"(a:1,b)r;", errc::syntax_error, 2, "branch lengths are not supported"},
      {"((a)#H1,b)r;", errc::dangling_hybrid_tag, 4,
       "hybrid tag #H1 appears only once"},
      {"(a,b)r; x", errc::syntax_error, 8, "text after the closing ';'"},
      {"(,a)r;", errc::syntax_error, 1, "expected a node"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.text);
    try {
      parse_extended_newick(c.text);
      FAIL("expected a throw");
    } catch (const ParseError& e) {
      CHECK(e.code() == c.code);
      CHECK(std::string(e.what()) == c.message);
      CHECK(e.line() == c.offset);
    }
  }
}

TEST_CASE("json emit and parse are inverse") {
  for (const char* name : {"gt_single.edges", "gt_chain.edges",
                           "gn_shared_prefix.edges", "gn_shared_node.edges"}) {
    CAPTURE(name);
    PhyloNetwork net = load_fixture(name);
    LayoutDoc doc = doc_for(net, {0, 0, 100, 100});
    LayoutDoc back = parse_json(emit_json(doc));
    check_doc_equal(doc, back, 1e-12);

    PhyloNetwork rebuilt = network_from_doc(back);
    CHECK(rebuilt.edges() == net.edges());
    CHECK(rebuilt.labels() == net.labels());

    DagMapLayout layout = layout_from_doc(back);
    CHECK(layout.node_region.size() == net.node_count());
    CHECK(layout.edge_region.size() == net.edge_count());
    CHECK(validate_dagmap(layout, rebuilt).ok());
  }
}

TEST_CASE("documents identify nodes by id, not position") {
  PhyloNetwork net = load_fixture("gt_single.edges");
  LayoutDoc doc = doc_for(net, {0, 0, 100, 100});
  std::reverse(doc.nodes.begin(), doc.nodes.end());

  PhyloNetwork rebuilt = network_from_doc(doc);
  CHECK(rebuilt.edges() == net.edges());
  CHECK(rebuilt.labels() == net.labels());

  DagMapLayout layout = layout_from_doc(doc);
  CHECK(gallmap::test::bounds_near(layout.node_region[0], 0, 0, 100, 100));
  CHECK(validate_dagmap(layout, rebuilt).ok());
}

TEST_CASE("json parse errors name the schema problem") {
  struct Case {
    const char* text;
    const char* message;
  };
  const Case cases[] = {
      {"not json", "document is not valid JSON"},
      {"{}", "missing key \"canvas\""},
      {"[]", "top level is not an object"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.text);
    try {
      parse_json(c.text);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == errc::schema_mismatch);
      CHECK(std::string(e.what()) == c.message);
    }
  }
}

TEST_CASE("svg output is deterministic and structured") {
  PhyloNetwork net = load_fixture("gt_single.edges");
  LayoutDoc doc = doc_for(net, {0, 0, 100, 100});

  const std::string svg = emit_svg(doc);
  const std::string header =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "viewBox=\"0.000000 0.000000 100.000000 100.000000\" "
      "width=\"100.000000\" height=\"100.000000\">\n"
      "<g id=\"node-0\">";
  CHECK(svg.rfind(header, 0) == 0);
  CHECK(count_occurrences(svg, "<g ") == 11);
  CHECK(count_occurrences(svg, "<rect") == 20);
  CHECK(svg.size() == 3962);
  CHECK(svg.find("<rect x=\"0.000000\" y=\"0.000000\" width=\"100.000000\" "
                 "height=\"100.000000\"") != std::string::npos);

  CHECK(emit_svg(doc) == svg);

  SvgOptions seeded;
  seeded.palette_seed = 1;
  CHECK(emit_svg(doc, seeded) != svg);

  SvgOptions bare;
  bare.show_edges = false;
  const std::string no_edges = emit_svg(doc, bare);
  CHECK(count_occurrences(no_edges, "<g ") == 10);
  CHECK(count_occurrences(no_edges, "<rect") == 10);
}

TEST_CASE("svg escapes labels and refuses invalid layouts") {
  PhyloNetwork net = build_network(2, {{0, 1}}, {"", "a&<b>"});
  LayoutDoc doc = doc_for(net, {0, 0, 50, 50});
  const std::string svg = emit_svg(doc);
  CHECK(svg.find("a&amp;&lt;b&gt;") != std::string::npos);
  CHECK(svg.find("a&<b>") == std::string::npos);

  PhyloNetwork gt = load_fixture("gt_single.edges");
  LayoutDoc bad = doc_for(gt, {0, 0, 100, 100});
  bad.nodes[6].region = RectPolygon{{10, 0, 25, 100}};
  try {
    emit_svg(bad);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_layout);
  }
}
