#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gallmap/errors.hpp"
#include "gallmap/io.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Parses one unsigned integer off the front of `s`, advancing past it.
bool eat_number(std::string_view& s, std::uint64_t& value) {
  s = strip(s);
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - begin));
  return true;
}

}  // namespace

PhyloNetwork parse_edge_list(std::string_view text) {
  bool have_count = false;
  std::uint64_t node_count = 0;
  std::vector<Edge> edges;
  std::vector<std::string> labels;

  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;

    if (!have_count) {
      std::uint64_t value = 0;
      if (!eat_number(line, value) || !strip(line).empty())
        throw ParseError(errc::syntax_error, "expected a node count", line_no);
      if (value > UINT32_MAX)
        throw ParseError(errc::syntax_error, "node count out of range",
                         line_no);
      node_count = value;
      labels.assign(node_count, std::string());
      have_count = true;
      continue;
    }

    if (line.front() == 'L' &&
        (line.size() == 1 || line[1] == ' ' || line[1] == '\t')) {
      line.remove_prefix(1);
      std::uint64_t id = 0;
      if (!eat_number(line, id))
        throw ParseError(errc::syntax_error, "expected a node id after L",
                         line_no);
      if (id >= node_count)
        throw ParseError(errc::syntax_error,
                         "label for unknown node " + std::to_string(id),
                         line_no);
      labels[id] = std::string(strip(line));
      continue;
    }

    std::uint64_t from = 0;
    std::uint64_t to = 0;
    if (!eat_number(line, from) || !eat_number(line, to) ||
        !strip(line).empty())
      throw ParseError(errc::syntax_error, "expected an edge \"u v\"",
                       line_no);
    if (from > UINT32_MAX || to > UINT32_MAX)
      throw ParseError(errc::syntax_error, "node id out of range", line_no);
    edges.push_back({static_cast<NodeId>(from), static_cast<NodeId>(to)});
  }

  if (!have_count)
    throw ParseError(errc::syntax_error, "missing node count", line_no);
  return PhyloNetwork::build(node_count, std::move(edges), std::move(labels));
}

std::string write_edge_list(const PhyloNetwork& net) {
  std::string out = std::to_string(net.node_count());
  out += '\n';
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (!net.label(v).empty()) {
      out += "L ";
      out += std::to_string(v);
      out += ' ';
      out += net.label(v);
      out += '\n';
    }
  for (const Edge& e : net.edges()) {
    out += std::to_string(e.from);
    out += ' ';
    out += std::to_string(e.to);
    out += '\n';
  }
  return out;
}

}  // namespace gallmap
