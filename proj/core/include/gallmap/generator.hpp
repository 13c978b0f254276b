#pragma once

#include <cstdint>

#include "gallmap/network.hpp"

namespace gallmap {

// Random-network recipe. node_budget is a hard upper bound on the node count;
// the generator spends what the requested structure needs and turns any
// leftover into pendant leaves. With share_probability > 0 consecutive galls
// may start at a node of an earlier gall, which yields a galled network whose
// shared nodes are never reticulations. Throws Error(errc::infeasible_spec)
// when the budget cannot host the requested galls.
struct GenSpec {
  std::uint32_t node_budget = 50;
  std::uint32_t gall_count = 0;
  std::uint32_t max_chain = 3;
  std::uint32_t nesting_depth = 2;
  double share_probability = 0.0;
  std::uint64_t seed = 0;
};

PhyloNetwork generate(const GenSpec& spec);

}  // namespace gallmap
