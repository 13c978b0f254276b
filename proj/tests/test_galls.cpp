#include "support.hpp"

#include <algorithm>
#include <vector>

#include "classify_oracle.hpp"
#include "gallmap/galls.hpp"
#include "gallmap/generator.hpp"

using namespace gallmap;
using gallmap::test::load_fixture;

namespace {

PhyloNetwork wheel() {
  // three galls around one beginning whose chain tops form a triangle
  return build_network(7, {{0, 1},
                           {0, 2},
                           {0, 3},
                           {1, 4},
                           {2, 4},
                           {2, 5},
                           {3, 5},
                           {3, 6},
                           {1, 6}});
}

std::vector<NodeId> sorted_members(const Gall& g) {
  std::vector<NodeId> m = g.members();
  std::sort(m.begin(), m.end());
  return m;
}

void check_against_oracle(const PhyloNetwork& net) {
  const GallAnalysis a = analyze(net);
  const oracle::OracleVerdict o = oracle::oracle_classify(net);
  REQUIRE(a.network_class == o.net_class);
  if (a.network_class == NetworkClass::Neither) return;
  REQUIRE(a.galls.has_value());
  REQUIRE(a.galls->galls.size() == o.cycles.size());
  for (const Gall& g : a.galls->galls) {
    bool matched = false;
    for (const auto& rc : o.cycles)
      if (rc.valley == g.reticulation && rc.members == sorted_members(g))
        matched = true;
    CHECK_MESSAGE(matched, "cycle of reticulation ", g.reticulation,
                  " differs from the oracle");
  }
}

}  // namespace

TEST_CASE("single gall is located with both chains") {
  PhyloNetwork net = load_fixture("gt_single.edges");
  LocateResult res = locate_galls(net);
  REQUIRE(res.ok());
  REQUIRE(res.galls->galls.size() == 1);

  const Gall& g = res.galls->galls.front();
  CHECK(g.beginning == 0);
  CHECK(g.reticulation == 5);
  CHECK(g.left_chain == std::vector<NodeId>{1, 2});
  CHECK(g.right_chain == std::vector<NodeId>{3, 4});
  CHECK(sorted_members(g) == std::vector<NodeId>{0, 1, 2, 3, 4, 5});
  CHECK(g.contains(4));
  CHECK(!g.contains(7));

  const auto& by_node = res.galls->gall_of;
  CHECK(by_node[0] == std::vector<std::size_t>{0});
  CHECK(by_node[5] == std::vector<std::size_t>{0});
  CHECK(by_node[6].empty());
}

TEST_CASE("gall below the root keeps its beginning off the root") {
  PhyloNetwork net = load_fixture("gt_chain.edges");
  LocateResult res = locate_galls(net);
  REQUIRE(res.ok());
  REQUIRE(res.galls->galls.size() == 1);
  const Gall& g = res.galls->galls.front();
  CHECK(g.beginning == 1);
  CHECK(g.reticulation == 6);
  CHECK(g.left_chain == std::vector<NodeId>{2, 3});
  CHECK(g.right_chain == std::vector<NodeId>{4, 5});
}

TEST_CASE("shared prefix galls are found in topological order") {
  PhyloNetwork net = load_fixture("gn_shared_prefix.edges");
  LocateResult res = locate_galls(net);
  REQUIRE(res.ok());
  REQUIRE(res.galls->galls.size() == 3);

  const auto& galls = res.galls->galls;
  CHECK(galls[0].reticulation == 5);
  CHECK(galls[0].left_chain == std::vector<NodeId>{1, 2, 3});
  CHECK(galls[0].right_chain == std::vector<NodeId>{4});
  CHECK(galls[1].reticulation == 9);
  CHECK(galls[1].left_chain == std::vector<NodeId>{1, 2, 7});
  CHECK(galls[2].reticulation == 16);
  CHECK(galls[2].left_chain == std::vector<NodeId>{1, 2, 11});
  CHECK(galls[2].right_chain == std::vector<NodeId>{12});
  for (const Gall& g : galls) CHECK(g.beginning == 0);

  CHECK(res.galls->gall_of[2] == std::vector<std::size_t>{0, 1, 2});
  CHECK(res.galls->gall_of[11] == std::vector<std::size_t>{2});
}

TEST_CASE("in-degree three defeats gall location") {
  PhyloNetwork net = load_fixture("neither.edges");
  LocateResult res = locate_galls(net);
  CHECK(!res.ok());
  REQUIRE(res.failure.has_value());
  CHECK(res.failure->kind == GallFailure::Kind::indegree_exceeds_two);
  CHECK(res.failure->node == 3);
}

TEST_CASE("classification of the fixture corpus") {
  CHECK(analyze(load_fixture("gt_single.edges")).network_class ==
        NetworkClass::GalledTree);
  CHECK(analyze(load_fixture("gt_chain.edges")).network_class ==
        NetworkClass::GalledTree);
  CHECK(analyze(load_fixture("gn_shared_prefix.edges")).network_class ==
        NetworkClass::GalledNetwork);
  CHECK(analyze(load_fixture("gn_shared_node.edges")).network_class ==
        NetworkClass::GalledNetwork);
  CHECK(analyze(load_fixture("gn_nonplanar.edges")).network_class ==
        NetworkClass::GalledNetwork);
  CHECK(analyze(load_fixture("neither.edges")).network_class ==
        NetworkClass::Neither);
  CHECK(analyze(wheel()).network_class == NetworkClass::GalledNetwork);
}

TEST_CASE("analysis reports shared and offending nodes") {
  GallAnalysis prefix = analyze(load_fixture("gn_shared_prefix.edges"));
  CHECK(prefix.shared_nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(prefix.offending_nodes.empty());

  GallAnalysis shared = analyze(load_fixture("gn_shared_node.edges"));
  CHECK(shared.shared_nodes == std::vector<NodeId>{2});

  GallAnalysis tree = analyze(load_fixture("gt_single.edges"));
  CHECK(tree.shared_nodes.empty());

  GallAnalysis bad = analyze(load_fixture("neither.edges"));
  CHECK(!bad.galls.has_value());
  REQUIRE(bad.failure.has_value());
  CHECK(bad.failure->node == 3);
  REQUIRE(!bad.offending_nodes.empty());
  CHECK(std::find(bad.offending_nodes.begin(), bad.offending_nodes.end(), 3) !=
        bad.offending_nodes.end());
}

TEST_CASE("a reticulation on another gall makes the network Neither") {
  // 0 -> 1 -> r1 <- 2, and r1 feeds a second reticulation r2; the walk for
  // r2 passes through r1, so the two cycles share a reticulation
  PhyloNetwork net = build_network(
      6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {2, 5}, {4, 5}});
  GallAnalysis a = analyze(net);
  CHECK(a.network_class == NetworkClass::Neither);
  check_against_oracle(net);
}

TEST_CASE("to_string names every class") {
  CHECK(std::string(to_string(NetworkClass::GalledTree)) == "galled-tree");
  CHECK(std::string(to_string(NetworkClass::GalledNetwork)) ==
        "galled-network");
  CHECK(std::string(to_string(NetworkClass::Neither)) == "neither");
}

TEST_CASE("classifier agrees with the cycle-enumeration oracle") {
  check_against_oracle(load_fixture("gt_single.edges"));
  check_against_oracle(load_fixture("gt_chain.edges"));
  check_against_oracle(load_fixture("gn_shared_prefix.edges"));
  check_against_oracle(load_fixture("gn_shared_node.edges"));
  check_against_oracle(load_fixture("gn_nonplanar.edges"));
  check_against_oracle(load_fixture("neither.edges"));
  check_against_oracle(wheel());

  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GenSpec spec;
    spec.node_budget = 5 + static_cast<std::uint32_t>(seed % 8);
    spec.gall_count = static_cast<std::uint32_t>(seed % 4);
    spec.max_chain = 1 + static_cast<std::uint32_t>(seed % 3);
    spec.nesting_depth = static_cast<std::uint32_t>(seed % 3);
    spec.share_probability = (seed % 5) * 0.25;
    spec.seed = seed;
    try {
      check_against_oracle(generate(spec));
    } catch (const Error& e) {
      CHECK(e.code() == errc::infeasible_spec);
    }
  }
}
