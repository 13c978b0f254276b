#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gallmap {

enum class errc {
  // structural validation
  cycle_detected,
  multiple_roots,
  no_root,
  parallel_edge,
  self_loop,
  unknown_node,
  // classification and layout
  not_a_galled_tree,
  not_a_galled_network,
  not_planar,
  not_layered_planar,
  embedding_inconsistent,
  constraint_violated,
  degenerate_area,
  invalid_layout,
  unsupported_structure,
  // generation
  infeasible_spec,
  // parsing
  syntax_error,
  unbalanced_parens,
  dangling_hybrid_tag,
  schema_mismatch,
};

const char* to_string(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Error(errc code, std::string message, std::uint32_t node)
      : std::runtime_error(std::move(message)), code_(code), node_(node) {}

  errc code() const noexcept { return code_; }
  std::optional<std::uint32_t> node() const noexcept { return node_; }

 private:
  errc code_;
  std::optional<std::uint32_t> node_;
};

class ParseError : public Error {
 public:
  ParseError(errc code, std::string message, std::size_t line)
      : Error(code, std::move(message)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gallmap
