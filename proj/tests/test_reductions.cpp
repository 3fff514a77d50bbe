#include "doctest.h"
#include "fixtures.hpp"
#include "pocover/harness.hpp"
#include "pocover/reductions.hpp"

using namespace pocover;

namespace {

UndirectedGraph triangle() { return UndirectedGraph(3, {{0, 1}, {1, 2}, {0, 2}}); }

UndirectedGraph complete(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return UndirectedGraph(n, e);
}

void require_roundtrip(ReductionKind kind, const Instance& source) {
  const auto r = roundtrip_one(kind, source);
  REQUIRE_FALSE(r.skipped);
  for (const auto& c : r.checks.items()) {
    INFO(to_string(kind) << " " << c.name << ": " << c.detail);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_SUITE("reductions") {

TEST_CASE("reduction kind names") {
  for (auto k : {ReductionKind::bpcc_to_ct, ReductionKind::dksh_to_rcp,
                 ReductionKind::rcp_to_dksh, ReductionKind::dks_to_urcp,
                 ReductionKind::degree_augment})
    CHECK(parse_reduction_kind(to_string(k)) == k);
  CHECK_FALSE(parse_reduction_kind("nope"));
}

TEST_CASE("clustered bin packing to covering") {
  BpccInstance b({{0, 1}, {2}}, {2, 2, 3}, 4);
  const auto a = bpcc_to_ct(b);
  CHECK(a.target.tree().sizes() == std::vector<Weight>{0, 8, 8, 2, 2, 3});
  CHECK(a.target.capacity() == 12);
  CHECK(a.parameters.at("K") == 12);
  CHECK(bpcc_leaf(a, 2) == 5);
  CHECK(bpcc_map(a, {0, 1}, Direction::lift) == VertexSet{0, 1, 3, 4});
  CHECK(bpcc_map(a, {0}, Direction::project).empty());
  CHECK(bpcc_map(a, {0, 2, 5}, Direction::project) == VertexSet{2});
  CHECK(exact_ct(a.target).size() == exact_bpcc(b).size());
  require_roundtrip(ReductionKind::bpcc_to_ct, b);
}

TEST_CASE("hypergraph to rule caching") {
  const auto a = dksh_to_rcp(fixtures::two_edges(3));
  CHECK(a.target.vertex_count() == 14);
  CHECK(a.target.graph().edges().size() == 15);
  CHECK(a.target.budget() == 11);
  CHECK(a.parameters.at("m") == 2);

  const auto lifted = dksh_rcp_map(a, {0, 1, 2}, Direction::lift);
  CHECK(lifted.size() == 10);
  CHECK(total_profit(a.target, lifted) == 1);
  CHECK(dksh_rcp_map(a, lifted, Direction::project) == VertexSet{0, 1, 2});

  const auto wide = dksh_to_rcp(fixtures::two_edges(4));
  CHECK(dksh_rcp_map(wide, {0, 1, 2, 3}, Direction::lift).size() == 14);
  CHECK_THROWS_AS(dksh_rcp_map(a, {0, 1, 2, 3}, Direction::lift), InputError);

  require_roundtrip(ReductionKind::dksh_to_rcp, fixtures::two_edges(3));
  require_roundtrip(ReductionKind::dksh_to_rcp, fixtures::two_edges(4));
}

TEST_CASE("rule caching to hypergraph") {
  const RcpInstance src(fixtures::small_dag(), {1, 1, 1, 1}, 2);
  const auto a = rcp_to_dksh(src);
  CHECK(a.target.hyperedges() ==
        std::vector<VertexSet>{{0, 3}, {0, 1, 2, 3}, {2}, {3}});
  CHECK(a.target.weight() == std::vector<Weight>{1, 1, 1, 1});
  CHECK(rcp_dksh_map(a, {0, 3}, Direction::lift) == VertexSet{0, 3});
  CHECK(rcp_dksh_map(a, {0, 2}, Direction::project) == VertexSet{2});
  require_roundtrip(ReductionKind::rcp_to_dksh, src);

  const RcpInstance cycle(Digraph(2, {{0, 1}, {1, 0}}), {2, 3}, 2);
  const auto c = rcp_to_dksh(cycle);
  CHECK(c.target.hyperedges() == std::vector<VertexSet>{{0, 1}, {0, 1}});
  require_roundtrip(ReductionKind::rcp_to_dksh, cycle);
}

TEST_CASE("minimalize keeps only covered vertices") {
  const auto h = fixtures::two_edges(4);
  CHECK(minimalize(h, {0, 1, 2}) == VertexSet{0, 1, 2});
  CHECK(minimalize(h, {0, 2, 3}) == VertexSet{2, 3});
  CHECK(minimalize(h, {0, 1}).empty());
  CHECK(minimalize(h, {0, 1, 2, 3}) == VertexSet{0, 1, 2, 3});
}

TEST_CASE("graph to unit rule caching") {
  const UndirectedGraph edge(2, {{0, 1}});
  const auto a = dks_to_urcp(edge, 2, 2);
  CHECK(a.target.vertex_count() == 9);
  CHECK(a.target.graph().edges().size() == 32);
  CHECK(a.target.budget() == 10);
  CHECK(a.parameters.at("h_m") == 10);
  const VertexSet all{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(urcp_project(a, all) == VertexSet{0, 1});
  CHECK(urcp_edge_count(a, all) == 1);
  // All copies of vertex 0 and nothing else is closed.
  CHECK(urcp_project(a, {0, 1, 2, 3}) == VertexSet{0});
  CHECK(urcp_edge_count(a, {0, 1, 2, 3}) == 0);
  CHECK_THROWS_AS(urcp_project(a, {0, 1, 2}), InputError);
}

TEST_CASE("densest subgraph pipeline examples") {
  CHECK(dks_via_urcp(triangle(), 2).induced_edges == 1);
  auto k4 = dks_via_urcp(complete(4), 3);
  CHECK(k4.induced_edges == 3);
  CHECK(k4.vertices.size() == 3);
  CHECK(dks_via_urcp(UndirectedGraph(3, {{0, 1}, {1, 2}}), 2).induced_edges == 1);
  // Trivial cases skip the oracle.
  auto empty = dks_via_urcp(UndirectedGraph(4, {}), 2);
  CHECK(empty.vertices == VertexSet{0, 1});
  CHECK_FALSE(empty.chosen_m);
  require_roundtrip(ReductionKind::dks_to_urcp, as_dksh(triangle(), 2));
  require_roundtrip(ReductionKind::dks_to_urcp, as_dksh(complete(4), 3));
}

TEST_CASE("degree augmentation") {
  const RcpInstance two(Digraph(2, {{0, 1}}), {1, 5}, 1);
  const auto a = degree_augment(two);
  CHECK(a.parameters.at("t") == 5);
  CHECK(a.parameters.at("k_I") == 5);
  CHECK(a.target.vertex_count() == 10);
  CHECK(augment_map(a, {0}, Direction::lift).size() == 5);
  CHECK(augment_owner(a, 9) == 1);
  CHECK(exact_rcp(a.target, {.canonical = false}).profit == 1);
  CHECK(exact_rcp(two).profit == 1);
  require_roundtrip(ReductionKind::degree_augment, two);

  const RcpInstance three(fixtures::small_dag(), {1, 1, 1, 1}, 2);
  const auto b = degree_augment(RcpInstance(Digraph(3, {{0, 1}, {2, 1}}), {1, 1, 1}, 1));
  CHECK(b.parameters.at("t") == 13);
  CHECK(b.target.vertex_count() == 39);
  require_roundtrip(ReductionKind::degree_augment, three);
}

}  // TEST_SUITE
