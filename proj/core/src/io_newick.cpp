#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gallmap/errors.hpp"
#include "gallmap/io.hpp"
#include "gallmap/network.hpp"

namespace gallmap {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct RawNode {
  std::string name;
  std::string hybrid;          // tag text after '#', empty for plain nodes
  std::size_t hybrid_pos = 0;  // offset of the '#', for error reporting
  std::vector<std::size_t> kids;
};

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
         c != ')' && c != ',' && c != ';' && c != ':' && c != '#';
}

// Recursive descent over "subtree := '(' subtree (',' subtree)* ')' name?
// | name" where name is a label, a #H tag, or a label followed by a tag.
class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::size_t parse() {
    skip_ws();
    const std::size_t root = subtree();
    skip_ws();
    if (eof() || text_[pos_] != ';') {
      if (!eof() && text_[pos_] == ')')
        fail(errc::unbalanced_parens, "unmatched ')'");
      fail(errc::syntax_error, "expected ';' after the tree");
    }
    ++pos_;
    skip_ws();
    if (!eof()) fail(errc::syntax_error, "text after the closing ';'");
    return root;
  }

  std::vector<RawNode>& nodes() { return nodes_; }

 private:
  bool eof() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(errc code, std::string message) const {
    throw ParseError(code, std::move(message), pos_);
  }

  std::size_t subtree() {
    skip_ws();
    if (!eof() && text_[pos_] == '(') return internal();
    return leaf();
  }

  std::size_t internal() {
    const std::size_t open = pos_;
    ++pos_;
    const std::size_t v = nodes_.size();
    nodes_.emplace_back();
    std::vector<std::size_t> kids;
    kids.push_back(subtree());
    skip_ws();
    while (!eof() && text_[pos_] == ',') {
      ++pos_;
      kids.push_back(subtree());
      skip_ws();
    }
    if (eof() || text_[pos_] != ')')
      throw ParseError(errc::unbalanced_parens, "unclosed '('", open);
    ++pos_;
    read_name(v);
    nodes_[v].kids = std::move(kids);
    return v;
  }

  std::size_t leaf() {
    const std::size_t v = nodes_.size();
    nodes_.emplace_back();
    read_name(v);
    if (nodes_[v].name.empty() && nodes_[v].hybrid.empty())
      fail(errc::syntax_error, "expected a node");
    return v;
  }

  void read_name(std::size_t v) {
    skip_ws();
    std::string label;
    while (!eof() && is_name_char(text_[pos_])) label += text_[pos_++];
    if (!eof() && text_[pos_] == ':')
      fail(errc::syntax_error, "branch lengths are not supported");
    if (!eof() && text_[pos_] == '#') {
      nodes_[v].hybrid_pos = pos_;
      ++pos_;
      std::string tag;
      while (!eof() && is_name_char(text_[pos_])) tag += text_[pos_++];
      if (tag.empty()) fail(errc::syntax_error, "empty hybrid tag");
      if (!eof() && text_[pos_] == ':')
        fail(errc::syntax_error, "branch lengths are not supported");
      nodes_[v].hybrid = std::move(tag);
    }
    nodes_[v].name = std::move(label);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawNode> nodes_;
};

}  // namespace

PhyloNetwork parse_extended_newick(std::string_view text) {
  NewickParser parser(text);
  const std::size_t raw_root = parser.parse();
  std::vector<RawNode>& raw = parser.nodes();

  std::map<std::string, std::vector<std::size_t>> occurrences;
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (!raw[i].hybrid.empty()) occurrences[raw[i].hybrid].push_back(i);

  // All occurrences of a tag are one node: the single occurrence carrying a
  // subtree supplies its children, the first named one supplies its label.
  std::map<std::string, std::size_t> rep;
  for (const auto& [tag, occ] : occurrences) {
    if (occ.size() < 2)
      throw ParseError(errc::dangling_hybrid_tag,
                       "hybrid tag #" + tag + " appears only once",
                       raw[occ.front()].hybrid_pos);
    std::size_t with_kids = npos;
    for (std::size_t i : occ) {
      if (raw[i].kids.empty()) continue;
      if (with_kids != npos)
        throw ParseError(errc::syntax_error,
                         "hybrid tag #" + tag + " has two subtrees",
                         raw[i].hybrid_pos);
      with_kids = i;
    }
    rep[tag] = with_kids != npos ? with_kids : occ.front();
  }

  std::vector<std::size_t> canon(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    canon[i] = raw[i].hybrid.empty() ? i : rep[raw[i].hybrid];

  // Depth-first preorder over the merged graph fixes the final ids; the
  // root becomes node 0 and reticulations take the id of their first visit.
  std::unordered_map<std::size_t, NodeId> id_of;
  std::vector<std::size_t> stack{canon[raw_root]};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (id_of.count(v)) continue;
    id_of.emplace(v, static_cast<NodeId>(id_of.size()));
    const std::vector<std::size_t>& kids = raw[v].kids;
    for (std::size_t k = kids.size(); k-- > 0;)
      stack.push_back(canon[kids[k]]);
  }

  std::vector<Edge> edges;
  std::vector<std::string> labels(id_of.size());
  for (std::size_t p = 0; p < raw.size(); ++p)
    for (std::size_t k : raw[p].kids)
      edges.push_back({id_of.at(canon[p]), id_of.at(canon[k])});
  for (const auto& [tag, occ] : occurrences)
    for (std::size_t i : occ)
      if (!raw[i].name.empty()) {
        labels[id_of.at(rep[tag])] = raw[i].name;
        break;
      }
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (raw[i].hybrid.empty()) labels[id_of.at(i)] = raw[i].name;

  return PhyloNetwork::build(id_of.size(), std::move(edges),
                             std::move(labels));
}

}  // namespace gallmap
