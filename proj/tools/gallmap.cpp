#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gallmap/errors.hpp"
#include "gallmap/galls.hpp"
#include "gallmap/generator.hpp"
#include "gallmap/io.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"
#include "gallmap/transform.hpp"

namespace {

using namespace gallmap;

int g_exit = 0;

// 0 ok, 1 bad input, 2 not a galled network, 3 layout infeasible,
// 4 invalid layout document.
int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::not_a_galled_tree:
    case errc::not_a_galled_network:
    case errc::not_planar:
    case errc::not_layered_planar:
    case errc::unsupported_structure:
    case errc::infeasible_spec:
    case errc::degenerate_area:
      return 3;
    case errc::invalid_layout:
      return 4;
    default:
      return 1;
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw Error(errc::syntax_error, "cannot read \"" + path + '"');
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw Error(errc::syntax_error, "cannot write \"" + path + '"');
  file << text;
}

PhyloNetwork parse_network(const std::string& text,
                           const std::string& format) {
  if (format == "newick") return parse_extended_newick(text);
  if (format == "edges") return parse_edge_list(text);
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') continue;
    if (c == '(') return parse_extended_newick(text);
    break;
  }
  return parse_edge_list(text);
}

Rect parse_canvas(const std::string& text) {
  double w = 0.0;
  double h = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lfx%lf%c", &w, &h, &tail) != 2 ||
      !(w > 0.0) || !(h > 0.0))
    throw Error(errc::syntax_error,
                "--canvas expects WxH with positive sizes, got \"" + text +
                    '"');
  return Rect{0.0, 0.0, w, h};
}

std::string id_list(const std::vector<NodeId>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out + "]";
}

struct ClassifyOptions {
  std::string input;
  std::string format = "auto";
  std::string out;
  bool json = false;
};

void cmd_classify(const ClassifyOptions& opt) {
  const PhyloNetwork net = parse_network(read_input(opt.input), opt.format);
  const GallAnalysis analysis = analyze(net);

  std::string text;
  if (opt.json) {
    nlohmann::ordered_json doc;
    doc["class"] = to_string(analysis.network_class);
    doc["nodes"] = net.node_count();
    doc["edges"] = net.edge_count();
    doc["gall_count"] =
        analysis.galls ? analysis.galls->galls.size() : std::size_t{0};
    nlohmann::ordered_json galls = nlohmann::ordered_json::array();
    if (analysis.galls)
      for (const Gall& g : analysis.galls->galls) {
        nlohmann::ordered_json entry;
        entry["beginning"] = g.beginning;
        entry["reticulation"] = g.reticulation;
        entry["left"] = g.left_chain;
        entry["right"] = g.right_chain;
        galls.push_back(std::move(entry));
      }
    doc["galls"] = std::move(galls);
    doc["shared_nodes"] = analysis.shared_nodes;
    doc["offending_nodes"] = analysis.offending_nodes;
    text = doc.dump(2) + "\n";
  } else {
    text = "class: ";
    text += to_string(analysis.network_class);
    text += '\n';
    const std::size_t count =
        analysis.galls ? analysis.galls->galls.size() : std::size_t{0};
    text += "galls: " + std::to_string(count) + '\n';
    if (analysis.galls)
      for (std::size_t i = 0; i < analysis.galls->galls.size(); ++i) {
        const Gall& g = analysis.galls->galls[i];
        text += "gall " + std::to_string(i) + ": beginning " +
                std::to_string(g.beginning) + ", reticulation " +
                std::to_string(g.reticulation) + ", left " +
                id_list(g.left_chain) + ", right " + id_list(g.right_chain) +
                '\n';
      }
    if (!analysis.shared_nodes.empty())
      text += "shared nodes: " + id_list(analysis.shared_nodes) + '\n';
    if (!analysis.offending_nodes.empty())
      text += "offending nodes: " + id_list(analysis.offending_nodes) + '\n';
  }
  write_output(opt.out, text);
  if (analysis.network_class == NetworkClass::Neither) g_exit = 2;
}

struct LayoutOptions {
  std::string input;
  std::string format = "auto";
  std::string mode = "auto";
  std::string canvas = "1000x1000";
  std::string weights = "leaves";
  std::string out;
  bool compact = false;
};

void cmd_layout(const LayoutOptions& opt) {
  const PhyloNetwork net = parse_network(read_input(opt.input), opt.format);
  const GallAnalysis analysis = analyze(net);
  const Rect canvas = parse_canvas(opt.canvas);
  const WeightMode mode =
      opt.weights == "uniform" ? WeightMode::uniform : WeightMode::leaf_count;

  std::string chosen = opt.mode;
  if (chosen == "auto") {
    switch (analysis.network_class) {
      case NetworkClass::GalledTree:
        chosen = opt.compact ? "one-dim" : "tree-2d";
        break;
      case NetworkClass::GalledNetwork:
      case NetworkClass::Neither:
        chosen = "network-2d";
        break;
    }
  }
  if (!analysis.galls)
    throw Error(errc::not_a_galled_network,
                "gall location failed at node " +
                    std::to_string(analysis.failure->node));

  DagMapLayout layout;
  if (chosen == "tree-2d") {
    layout = layout_galled_tree(net, *analysis.galls, canvas, mode);
  } else if (chosen == "network-2d") {
    layout = layout_galled_network(net, *analysis.galls, canvas, mode);
  } else {
    if (mode != WeightMode::leaf_count)
      throw Error(errc::syntax_error,
                  "one-dim layouts support --weights leaves only");
    const OneDimLayout od = layout_one_dimensional(
        net, *analysis.galls, assign_layers(net), canvas.width);
    layout = banded_layout(od, net, canvas.height);
  }
  write_output(opt.out, emit_json(make_layout_doc(net, analysis, layout)));
}

struct RenderOptions {
  std::string input;
  std::string out;
  bool no_edges = false;
  std::uint64_t palette_seed = 0;
};

void cmd_render(const RenderOptions& opt) {
  const LayoutDoc doc = parse_json(read_input(opt.input));
  SvgOptions options;
  options.show_edges = !opt.no_edges;
  options.palette_seed = opt.palette_seed;
  write_output(opt.out, emit_svg(doc, options));
}

struct GenerateOptions {
  GenSpec spec;
  std::string out;
};

void cmd_generate(const GenerateOptions& opt) {
  GenSpec spec = opt.spec;
  if (const char* env = std::getenv("GALLMAP_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw Error(errc::syntax_error,
                  "GALLMAP_SEED is not an unsigned integer");
    spec.seed = value;
  }
  write_output(opt.out, write_edge_list(generate(spec)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DAGmap layouts for galled trees and galled networks"};
  app.require_subcommand(1);

  ClassifyOptions classify_opt;
  CLI::App* classify =
      app.add_subcommand("classify", "Locate galls and classify a network");
  classify->add_option("input", classify_opt.input,
                       "Network file, or - for stdin")->required();
  classify->add_option("--format", classify_opt.format, "Input format")
      ->check(CLI::IsMember({"auto", "edges", "newick"}));
  classify->add_flag("--json", classify_opt.json, "Machine-readable report");
  classify->add_option("-o,--output", classify_opt.out, "Report file");
  classify->callback([&classify_opt] { cmd_classify(classify_opt); });

  LayoutOptions layout_opt;
  CLI::App* layout =
      app.add_subcommand("layout", "Compute a DAGmap layout document");
  layout->add_option("input", layout_opt.input,
                     "Network file, or - for stdin")->required();
  layout->add_option("--format", layout_opt.format, "Input format")
      ->check(CLI::IsMember({"auto", "edges", "newick"}));
  layout->add_option("--mode", layout_opt.mode, "Layout mode")
      ->check(CLI::IsMember({"auto", "tree-2d", "one-dim", "network-2d"}));
  layout->add_option("--canvas", layout_opt.canvas, "Canvas size WxH");
  layout->add_option("--weights", layout_opt.weights, "Weight scheme")
      ->check(CLI::IsMember({"leaves", "uniform"}));
  layout->add_flag("--compact", layout_opt.compact,
                   "Prefer one-dim in auto mode");
  layout->add_option("-o,--output", layout_opt.out, "Layout JSON file");
  layout->callback([&layout_opt] { cmd_layout(layout_opt); });

  RenderOptions render_opt;
  CLI::App* render =
      app.add_subcommand("render", "Render a layout document as SVG");
  render->add_option("input", render_opt.input,
                     "Layout JSON file, or - for stdin")->required();
  render->add_flag("--no-edges", render_opt.no_edges,
                   "Skip edge overlay rectangles");
  render->add_option("--palette-seed", render_opt.palette_seed,
                     "Seed for the fill palette");
  render->add_option("-o,--output", render_opt.out, "SVG file");
  render->callback([&render_opt] { cmd_render(render_opt); });

  GenerateOptions generate_opt;
  CLI::App* gen =
      app.add_subcommand("generate", "Generate a random galled network");
  gen->add_option("--nodes", generate_opt.spec.node_budget, "Node budget");
  gen->add_option("--galls", generate_opt.spec.gall_count, "Gall count");
  gen->add_option("--max-chain", generate_opt.spec.max_chain,
                  "Longest chain side");
  gen->add_option("--nesting-depth", generate_opt.spec.nesting_depth,
                  "How deep shared galls may stack");
  gen->add_option("--share", generate_opt.spec.share_probability,
                  "Probability a gall starts on an earlier gall");
  gen->add_option("--seed", generate_opt.spec.seed,
                  "Seed (GALLMAP_SEED overrides)");
  gen->add_option("-o,--output", generate_opt.out, "Edge-list file");
  gen->callback([&generate_opt] { cmd_generate(generate_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const gallmap::ParseError& e) {
    std::fprintf(stderr, "error: %s (position %zu)\n", e.what(), e.line());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
  return g_exit;
}
