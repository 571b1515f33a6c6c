#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "support.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/linalg.hpp"

using namespace tropharm;
using tropharm::testing::dumbbell;
using tropharm::testing::random_cubic_graph;
using tropharm::testing::tripod;

TEST_SUITE("graph") {

TEST_CASE("tripod is the smallest valid curve") {
  const MetricGraph g = tripod();
  CHECK(g.genus() == 0);
  CHECK(g.leaf_count() == 3);
  CHECK(g.edge_count() == 0);
  CHECK(g.vertex_count() == 1);
}

TEST_CASE("dumbbell with leaves has genus one") {
  const MetricGraph g = dumbbell();
  CHECK(g.genus() == 1);
  CHECK(g.leaf_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(genus(g.description()) == 1);
}

TEST_CASE("validation errors") {
  CubicGraph two_leaves;
  two_leaves.vertices = {"v"};
  two_leaves.leaves = {{"a", "v"}, {"b", "v"}};
  CHECK_ERROR_CODE(validate(two_leaves, {}), ErrorCode::NotCubic);

  CubicGraph loop;
  loop.vertices = {"v"};
  loop.edges = {{"e", {"v", "v"}}};
  loop.leaves = {{"a", "v"}};
  CHECK_ERROR_CODE(validate(loop, {{"e", 1.0}}), ErrorCode::SelfLoopEdge);

  CubicGraph two_tripods;
  two_tripods.vertices = {"u", "v"};
  for (const char* id : {"a", "b", "c"}) two_tripods.leaves.push_back({id, "u"});
  for (const char* id : {"d", "e", "f"}) two_tripods.leaves.push_back({id, "v"});
  CHECK_ERROR_CODE(validate(two_tripods, {}), ErrorCode::Disconnected);
  CHECK_ERROR_CODE(genus(two_tripods), ErrorCode::Disconnected);

  CubicGraph bad_length = dumbbell().description();
  CHECK_ERROR_CODE(validate(bad_length, {{"e1", 1.0}, {"e2", -2.0}}), ErrorCode::NonPositiveLength);
  CHECK_ERROR_CODE(validate(bad_length, {{"e1", 1.0}, {"e2", 0.0}}), ErrorCode::NonPositiveLength);

  CubicGraph bad_ribbon = dumbbell().description();
  bad_ribbon.ribbon["u"] = {"e1", "e1", "a"};
  CHECK_ERROR_CODE(validate(bad_ribbon, {{"e1", 1.0}, {"e2", 2.0}}), ErrorCode::BadRibbon);
  bad_ribbon.ribbon["u"] = {"e1", "b", "a"};
  CHECK_ERROR_CODE(validate(bad_ribbon, {{"e1", 1.0}, {"e2", 2.0}}), ErrorCode::BadRibbon);

  CubicGraph duplicate = dumbbell().description();
  duplicate.leaves[1].id = "a";
  CHECK_ERROR_CODE(validate(duplicate, {{"e1", 1.0}, {"e2", 2.0}}), ErrorCode::DuplicateId);

  CubicGraph unknown = dumbbell().description();
  unknown.leaves[1].vertex = "w";
  CHECK_ERROR_CODE(validate(unknown, {{"e1", 1.0}, {"e2", 2.0}}), ErrorCode::UnknownVertex);
}

TEST_CASE("theta graph: Euler counts are consistent at genus two") {
  CubicGraph theta;
  theta.vertices = {"u", "v"};
  theta.edges = {{"a", {"u", "v"}}, {"b", {"u", "v"}}, {"c", {"u", "v"}}};
  const MetricGraph g = validate(theta, {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}});
  CHECK(g.genus() == 2);
  CHECK(g.edge_count() == 3 * 2 - 3 + 0);
  CHECK(g.vertex_count() == 2 * 2 - 2 + 0);
  CHECK(cycle_basis(g).size() == 2);
}

TEST_CASE("explicit ribbon is kept, default ribbon is sorted") {
  CubicGraph d = dumbbell().description();
  CHECK(d.ribbon.at("u") == std::vector<std::string>{"a", "e1", "e2"});
  d.ribbon["u"] = {"e2", "e1", "a"};
  const MetricGraph g = validate(d, {{"e1", 1.0}, {"e2", 2.0}});
  const auto& out = g.outgoing(*g.find_vertex("u"));
  CHECK(g.id(out[0]) == "e2");
  CHECK(g.id(out[1]) == "e1");
  CHECK(g.id(out[2]) == "a");
}

TEST_CASE("cycle basis of the dumbbell") {
  const MetricGraph g = dumbbell();
  const auto loops = cycle_basis(g);
  REQUIRE(loops.size() == 1);
  const auto& loop = loops[0];
  CHECK(loop.loop);
  REQUIRE(loop.steps.size() == 2);
  CHECK(g.id(loop.steps[0]) == "e1");
  CHECK(loop.steps[0].forward);
  CHECK(g.id(loop.steps[1]) == "e2");
  CHECK_FALSE(loop.steps[1].forward);
  CHECK(cycle_basis(tripod()).empty());
}

TEST_CASE("leaf paths") {
  const MetricGraph t = tripod();
  const auto paths = leaf_paths(t, "a");
  REQUIRE(paths.size() == 2);
  CHECK(t.id(paths[0].steps.front()) == "a");
  CHECK(t.id(paths[0].steps.back()) == "b");
  CHECK(t.id(paths[1].steps.back()) == "c");
  for (const auto& p : paths) CHECK(p.is_leaf_to_leaf());

  const MetricGraph d = dumbbell();
  const auto dp = leaf_paths(d, "a");
  REQUIRE(dp.size() == 1);
  REQUIRE(dp[0].steps.size() == 3);
  CHECK(d.id(dp[0].steps[1]) == "e1");
  CHECK_ERROR_CODE(leaf_paths(d, "zz"), ErrorCode::UnknownLeaf);
}

TEST_CASE("path construction rejects malformed chains") {
  const MetricGraph d = dumbbell();
  CHECK_ERROR_CODE(make_path(d, {}), ErrorCode::NotPathOrLoop);
  CHECK_ERROR_CODE(make_loop(d, {OrientedEdgeRef::edge(0), OrientedEdgeRef::edge(0, false)}),
                   ErrorCode::NotPathOrLoop);
  CHECK_ERROR_CODE(make_loop(d, {OrientedEdgeRef::edge(0), OrientedEdgeRef::edge(1)}), ErrorCode::NotPathOrLoop);
  CHECK_ERROR_CODE(make_path(d, {OrientedEdgeRef::leaf_inward(1), OrientedEdgeRef::edge(0)}),
                   ErrorCode::NotPathOrLoop);
  const auto loop = make_loop(d, {OrientedEdgeRef::edge(1), OrientedEdgeRef::edge(0, false)});
  CHECK(edge_incidence(d, loop) == std::vector<int>{-1, 1});
}

TEST_CASE("reversing an oriented reference twice is the identity") {
  for (const auto& r : {OrientedEdgeRef::edge(3), OrientedEdgeRef::edge(1, false), OrientedEdgeRef::leaf_inward(2),
                        OrientedEdgeRef::leaf_outward(0)}) {
    CHECK(r.reversed().reversed() == r);
    CHECK_FALSE(r.reversed() == r);
  }
}

TEST_CASE("random graphs: Euler counts, basis rank, injective leaf paths") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t g = static_cast<std::size_t>(trial % 5);
    const std::size_t n = (g == 0 ? 3 : g == 1 ? 2 : 1) + static_cast<std::size_t>(trial % 4);
    const MetricGraph c = random_cubic_graph(rng, g, n).metric();
    CHECK(c.genus() == g);
    CHECK(c.edge_count() + 3 == 3 * g + n);
    CHECK(c.vertex_count() + 2 == 2 * g + n);

    const auto loops = cycle_basis(c);
    REQUIRE(loops.size() == g);
    Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g),
                                                      static_cast<Eigen::Index>(c.edge_count()));
    for (std::size_t r = 0; r < g; ++r) {
      const auto inc = edge_incidence(c, loops[r]);
      for (std::size_t e = 0; e < inc.size(); ++e) incidence(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e)) = inc[e];
      CHECK_NOTHROW(make_loop(c, loops[r].steps));
    }
    if (g > 0) CHECK(numerical_rank(incidence).rank == static_cast<Eigen::Index>(g));

    for (const auto& p : leaf_paths(c, c.leaf(0).id)) {
      std::set<std::pair<int, std::size_t>> seen;
      for (const auto& s : p.steps) CHECK(seen.insert({static_cast<int>(s.kind), s.index}).second);
      CHECK_NOTHROW(make_path(c, p.steps));
    }
  }
}

}  // TEST_SUITE
