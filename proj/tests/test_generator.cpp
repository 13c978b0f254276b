#include "support.hpp"

#include <string>

#include "gallmap/galls.hpp"
#include "gallmap/generator.hpp"
#include "gallmap/transform.hpp"

using namespace gallmap;

TEST_CASE("generation is deterministic per seed") {
  GenSpec spec;
  spec.node_budget = 60;
  spec.gall_count = 3;
  spec.seed = 7;

  PhyloNetwork a = generate(spec);
  PhyloNetwork b = generate(spec);
  CHECK(a.edges() == b.edges());
  CHECK(a.labels() == b.labels());

  spec.seed = 8;
  PhyloNetwork c = generate(spec);
  CHECK(a.edges() != c.edges());
}

TEST_CASE("the node budget is filled exactly") {
  GenSpec spec;
  spec.node_budget = 30;
  spec.gall_count = 3;
  spec.seed = 42;

  PhyloNetwork net = generate(spec);
  CHECK(net.node_count() == 30);
  CHECK(net.edge_count() == 32);
  CHECK(net.reticulations().size() == 3);
  CHECK(analyze(net).network_class == NetworkClass::GalledTree);
}

TEST_CASE("leaves carry a tip label, internal nodes none") {
  GenSpec spec;
  spec.node_budget = 25;
  spec.gall_count = 2;
  spec.seed = 5;

  PhyloNetwork net = generate(spec);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    CAPTURE(v);
    if (net.is_leaf(v))
      CHECK(net.label(v) == "t" + std::to_string(v));
    else
      CHECK(net.label(v).empty());
  }
}

TEST_CASE("sharing produces planar galled networks") {
  GenSpec spec;
  spec.node_budget = 40;
  spec.gall_count = 4;
  spec.nesting_depth = 2;
  spec.share_probability = 0.9;
  spec.seed = 0;

  PhyloNetwork net = generate(spec);
  CHECK(analyze(net).network_class == NetworkClass::GalledNetwork);
  CHECK(check_planarity(net).planar);
}

TEST_CASE("impossible requests are refused") {
  const auto expect_infeasible = [](GenSpec spec) {
    try {
      generate(spec);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == errc::infeasible_spec);
    }
  };

  GenSpec tight;
  tight.node_budget = 5;
  tight.gall_count = 3;
  expect_infeasible(tight);

  GenSpec empty;
  empty.node_budget = 0;
  expect_infeasible(empty);

  GenSpec no_chain;
  no_chain.node_budget = 30;
  no_chain.gall_count = 1;
  no_chain.max_chain = 0;
  expect_infeasible(no_chain);
}
