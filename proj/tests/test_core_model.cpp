#include "doctest.h"
#include "fixtures.hpp"
#include "pocover/core_model.hpp"
#include "pocover/instance_gen.hpp"

using namespace pocover;

TEST_SUITE("core_model") {

TEST_CASE("path weight sums the root path") {
  auto single = fixtures::tree({std::nullopt}, {0}, 1);
  CHECK(path_weight(single.tree(), 0) == 0);

  auto chain = fixtures::tree({std::nullopt, 0}, {2, 3}, 5);
  CHECK(path_weight(chain.tree(), 1) == 5);

  auto star = fixtures::star4x3();
  CHECK(path_weight(star.tree(), 2) == 3);

  CHECK_THROWS_AS(path_weight(star.tree(), 9), InputError);
  CHECK_THROWS_AS(path_weight(star.tree(), -1), InputError);
}

TEST_CASE("tree construction rejects malformed parents") {
  using P = std::vector<std::optional<Vertex>>;
  CHECK_THROWS_AS(SizedOutTree(P{std::nullopt, std::nullopt}, {1, 1}), InputError);
  CHECK_THROWS_AS(SizedOutTree(P{1, 0}, {1, 1}), InputError);
  CHECK_THROWS_AS(SizedOutTree(P{std::nullopt, 2, 1}, {0, 0, 0}), InputError);
  CHECK_THROWS_AS(SizedOutTree(P{std::nullopt, 5}, {0, 0}), InputError);
  CHECK_THROWS_AS(SizedOutTree(P{std::nullopt}, {-1}), InputError);
  CHECK_THROWS_AS(SizedOutTree(P{}, {}), InputError);
  CHECK_THROWS_AS(fixtures::tree({std::nullopt}, {3}, 2), InputError);
  CHECK_THROWS_AS(fixtures::tree({std::nullopt}, {0}, 0), InputError);
}

TEST_CASE("tree queries") {
  auto t = fixtures::chain_x(3).tree();
  CHECK(t.root() == 0);
  CHECK(t.ancestors(3) == VertexSet{0, 1, 3});
  CHECK(t.is_ancestor(1, 4));
  CHECK(t.is_ancestor(4, 4));
  CHECK_FALSE(t.is_ancestor(2, 3));
  CHECK(t.leaves() == VertexSet{2, 3, 4});
  CHECK(t.total_size() == 7);
  CHECK(t.preorder().front() == 0);
}

TEST_CASE("closure examples") {
  const auto g = fixtures::small_dag();
  CHECK(closure(g, {1}) == VertexSet{0, 1, 2, 3});
  CHECK(closure(g, {}).empty());
  const Digraph cycle(2, {{0, 1}, {1, 0}});
  CHECK(closure(cycle, {0}) == VertexSet{0, 1});
  CHECK_THROWS_AS(closure(g, {7}), InputError);
}

TEST_CASE("closure is idempotent and monotone") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenSpec spec{GenKind::digraph, 7, 3, seed, {}};
    const auto inst = std::get<RcpInstance>(generate(spec));
    const auto& g = inst.graph();
    Rng rng(seed ^ 0x9e37);
    VertexSet small, big;
    for (Vertex v = 0; v < 7; ++v) {
      const auto draw = rng.uniform(0, 2);
      if (draw == 0) small.push_back(v);
      if (draw <= 1) big.push_back(v);
    }
    const auto c = closure(g, small);
    CHECK(closure(g, c) == c);
    CHECK(is_subset(c, closure(g, big)));
    CHECK(is_closed(g, c));
  }
}

TEST_CASE("tree closure over reversed arcs is the ancestor set") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec{GenKind::out_tree, 9, 12, seed, {}};
    const auto inst = std::get<CtInstance>(generate(spec));
    const auto& t = inst.tree();
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex v = 0; v < t.vertex_count(); ++v)
      if (auto p = t.parent(v)) arcs.emplace_back(*p, v);
    const Digraph g(t.vertex_count(), arcs);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      const auto anc = closure(g, {v});
      CHECK(anc == t.ancestors(v));
      Weight sum = 0;
      for (Vertex u : anc) sum += t.size(u);
      CHECK(sum == path_weight(t, v));
    }
  }
}

TEST_CASE("validate_configuration") {
  auto inst = make_bp_star({3, 3}, 6);
  CHECK(validate_configuration(inst, {0, 1, 2}).ok());

  auto missing = validate_configuration(inst, {1});
  REQUIRE_FALSE(missing.ok());
  CHECK(missing.violation().vertex == 1);

  auto tight = make_bp_star({3, 3}, 5);
  auto over = validate_configuration(tight, {0, 1, 2});
  REQUIRE_FALSE(over.ok());
  CHECK(over.violation().excess == 1);
}

TEST_CASE("validate_cover") {
  auto single = fixtures::tree({std::nullopt}, {1}, 1);
  CHECK(validate_cover(single, Cover{{{{0}}}}).ok());

  auto star = make_bp_star({3, 3}, 6);
  auto missing = validate_cover(star, Cover{{{{0, 1}}}});
  REQUIRE_FALSE(missing.ok());
  CHECK(missing.violation().vertex == 2);

  auto open = validate_cover(star, Cover{{{{0, 1}}, {{2}}}});
  REQUIRE_FALSE(open.ok());
  CHECK(open.violation().reason.find("set 1") == 0);
}

TEST_CASE("contained hyperedges") {
  const auto h = fixtures::two_edges(3);
  auto a = contained_hyperedges(h, {0, 1, 2});
  CHECK(a.indices == std::vector<std::size_t>{0});
  CHECK(a.weight == 1);
  auto b = contained_hyperedges(h, {0, 1, 2, 3});
  CHECK(b.indices == std::vector<std::size_t>{0, 1});
  CHECK(b.weight == 2);
  auto c = contained_hyperedges(h, {});
  CHECK(c.indices.empty());
  CHECK(c.weight == 0);
}

TEST_CASE("general precedence configurations") {
  const auto g = fixtures::small_dag();
  const std::vector<Weight> size{1, 1, 1, 1};
  CHECK(validate_cpo_configuration(g, size, 2, {0, 3}).ok());
  CHECK_FALSE(validate_cpo_configuration(g, size, 2, {0}).ok());
  CHECK_FALSE(validate_cpo_configuration(g, size, 3, {0, 1, 2, 3}).ok());
}

TEST_CASE("instance invariants") {
  CHECK_THROWS_AS(Digraph(2, {{0, 0}}), InputError);
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), InputError);
  CHECK(Digraph(2, {{0, 1}, {0, 1}}).edges().size() == 1);
  CHECK_THROWS_AS(RcpInstance(Digraph(1, {}), {-1}, 1), InputError);
  CHECK_THROWS_AS(RcpInstance(Digraph(1, {}), {1}, 0), InputError);
  CHECK_THROWS_AS(DkshInstance(2, {{}}, {1}, 1), InputError);
  CHECK_THROWS_AS(DkshInstance(2, {{0, 2}}, {1}, 1), InputError);
  CHECK_THROWS_AS(BpccInstance({{0, 1}, {1}}, {1, 1}, 2), InputError);
  CHECK_THROWS_AS(BpccInstance({{0}, {}}, {1}, 2), InputError);
  CHECK_THROWS_AS(BpccInstance({{0}}, {1, 1}, 2), InputError);
  CHECK_THROWS_AS(BpccInstance({{0}}, {3}, 2), InputError);
  CHECK_NOTHROW(BpccInstance({{0, 1}, {2}}, {2, 2, 3}, 4));
}

TEST_CASE("bin validation respects clusters") {
  BpccInstance b({{0, 1}, {2}}, {2, 2, 3}, 4);
  CHECK(validate_bpcc_configuration(b, {0, 1}).ok());
  CHECK_FALSE(validate_bpcc_configuration(b, {1, 2}).ok());
  CHECK_FALSE(validate_bpcc_configuration(BpccInstance({{0, 1}}, {3, 3}, 4), {0, 1}).ok());
}

TEST_CASE("graph and hypergraph views") {
  UndirectedGraph g(3, {{1, 0}, {0, 1}, {2, 1}});
  CHECK(g.edges() == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}});
  auto h = as_dksh(g, 2);
  CHECK(h.hyperedges() == std::vector<VertexSet>{{0, 1}, {1, 2}});
  CHECK(as_graph(h).edges() == g.edges());
  CHECK_THROWS_AS(as_graph(fixtures::two_edges(2)), InputError);
}

TEST_CASE("fingerprints are stable and distinguish instances") {
  CHECK(fingerprint(fixtures::star4x3()) == fingerprint(make_bp_star({3, 3, 3, 3}, 6)));
  CHECK(fingerprint(fixtures::star4x3()) != fingerprint(fixtures::star3x4()));
  CHECK(fingerprint(fixtures::star4x3()).size() == 16);
}

}  // TEST_SUITE
