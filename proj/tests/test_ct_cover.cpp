#include "doctest.h"
#include "fixtures.hpp"
#include "pocover/ct_cover.hpp"
#include "pocover/harness.hpp"
#include "pocover/instance_gen.hpp"

using namespace pocover;

namespace {

std::vector<VertexSet> sets_of(const std::vector<Configuration>& sets) {
  std::vector<VertexSet> out;
  for (const auto& c : sets) out.push_back(c.members);
  return out;
}

VertexSet all_vertices(const CtInstance& inst) {
  VertexSet v;
  for (Vertex i = 0; i < inst.vertex_count(); ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_SUITE("ct_cover") {

TEST_CASE("preprocess rejects heavy root paths") {
  auto inst = fixtures::tree({std::nullopt, 0}, {2, 1}, 2);
  CHECK_THROWS_AS(preprocess(inst), Infeasible);
  CHECK_THROWS_AS(cover(inst), Infeasible);
}

TEST_CASE("preprocess forces full-weight leaves") {
  // r(2) with leaves l(3), l2(1), k=5.
  auto inst = fixtures::tree({std::nullopt, 0, 0}, {2, 3, 1}, 5);
  auto pre = preprocess(inst);
  CHECK(sets_of(pre.forced) == std::vector<VertexSet>{{0, 1}});
  REQUIRE(pre.reduced);
  CHECK(pre.to_original == std::vector<Vertex>{0, 2});
  CHECK(pre.reduced->tree().sizes() == std::vector<Weight>{2, 1});
  CHECK(pre.zero_leaves.empty());
}

TEST_CASE("preprocess detaches zero-size leaves") {
  // r(1) with leaves z(0), l(1), k=3.
  auto inst = fixtures::tree({std::nullopt, 0, 0}, {1, 0, 1}, 3);
  auto pre = preprocess(inst);
  CHECK(pre.forced.empty());
  CHECK(pre.zero_leaves == std::vector<ZeroLeaf>{{1, 0}});
  REQUIRE(pre.reduced);
  CHECK(pre.to_original == std::vector<Vertex>{0, 2});

  // With k=2 the leaf l reaches k and is forced; z then hangs off a covered root.
  auto tight = fixtures::tree({std::nullopt, 0, 0}, {1, 0, 1}, 2);
  auto pre2 = preprocess(tight);
  CHECK(sets_of(pre2.forced) == std::vector<VertexSet>{{0, 2}});
  CHECK(pre2.zero_leaves == std::vector<ZeroLeaf>{{1, 0}});
  CHECK_FALSE(pre2.reduced);
}

TEST_CASE("zero-size leaves under a full root path are not forced") {
  // r(8) -> a(0) -> {b(0), c(0)}; k=8.
  auto inst = fixtures::tree({std::nullopt, 0, 1, 1}, {8, 0, 0, 0}, 8);
  auto pre = preprocess(inst);
  // Only the root is left and it alone reaches k.
  CHECK(sets_of(pre.forced) == std::vector<VertexSet>{{0}});
  CHECK_FALSE(pre.reduced);
  CHECK(pre.zero_leaves == std::vector<ZeroLeaf>{{2, 1}, {3, 1}, {1, 0}});
  CHECK(sets_of(cover(inst).cover.sets) == std::vector<VertexSet>{{0, 1, 2, 3}});

  // A zero vertex that also lies on a forced path is covered only once.
  auto shared = fixtures::tree({std::nullopt, 0, 1, 1}, {3, 0, 5, 0}, 8);
  CHECK(sets_of(cover(shared).cover.sets) == std::vector<VertexSet>{{0, 1, 2, 3}});
}

TEST_CASE("preprocess reaches a fixpoint with strict paths and positive leaves") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenSpec spec{GenKind::out_tree, 12, 6, seed, {}};
    spec.shape.boundary = true;
    const auto inst = std::get<CtInstance>(generate(spec));
    const auto pre = preprocess(inst);
    if (!pre.reduced) continue;
    const auto& t = pre.reduced->tree();
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      CHECK(t.path_weight(v) < 6);
      if (t.is_leaf(v) && t.vertex_count() > 1) CHECK(t.size(v) > 0);
    }
  }
}

TEST_CASE("anchor step examples") {
  auto star = fixtures::star4x3();
  auto s = anchor_step(star, all_vertices(star));
  CHECK(s.fitting == VertexSet{1, 2, 3, 4});
  CHECK(s.anchors == VertexSet{0});

  auto chain = fixtures::chain_x(4);
  auto c = anchor_step(chain, all_vertices(chain));
  CHECK(c.anchors == VertexSet{1});
  CHECK(c.fitting == VertexSet{2, 3, 4, 5});

  auto small = make_bp_star({1}, 3);
  CHECK_THROWS_AS(anchor_step(small, {0, 1}), InternalError);
  CHECK_THROWS_AS(anchor_step(star, {1, 2}), InternalError);
}

TEST_CASE("next-fit examples") {
  auto star = fixtures::star4x3();
  auto a = next_fit(star, all_vertices(star), 0);
  CHECK(sets_of(a.sets) == std::vector<VertexSet>{{0, 1, 2}, {0, 3, 4}});
  CHECK(a.anchored == VertexSet{1, 2, 3, 4});
  CHECK(a.leftover.empty());

  auto odd = fixtures::star3x4();
  auto b = next_fit(odd, all_vertices(odd), 0);
  CHECK(sets_of(b.sets) == std::vector<VertexSet>{{0, 1}, {0, 2}});
  CHECK(b.leftover == VertexSet{3});

  auto chain = fixtures::chain_x(3);
  auto c = next_fit(chain, all_vertices(chain), 1);
  CHECK(sets_of(c.sets) == std::vector<VertexSet>{{0, 1, 2}, {0, 1, 3}});
  CHECK(c.anchored == VertexSet{2, 3});
  CHECK(c.leftover == VertexSet{4});
}

TEST_CASE("next-fit packs whole child subtrees") {
  // r(0) -> a(0) -> {b(2) -> c(1), d(2), e(2)}; k=5.
  auto inst = fixtures::tree({std::nullopt, 0, 1, 2, 1, 1}, {0, 0, 2, 1, 2, 2}, 5);
  auto nf = next_fit(inst, all_vertices(inst), 1);
  CHECK(sets_of(nf.sets) == std::vector<VertexSet>{{0, 1, 2, 3, 4}, {0, 1, 5}});
  CHECK(nf.leftover.empty());
}

TEST_CASE("cover golden examples") {
  CHECK(sets_of(cover(fixtures::star4x3()).cover.sets) ==
        std::vector<VertexSet>{{0, 1, 2}, {0, 3, 4}});
  CHECK(sets_of(cover(fixtures::star3x4()).cover.sets) ==
        std::vector<VertexSet>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(sets_of(cover(fixtures::chain_x(3)).cover.sets) ==
        std::vector<VertexSet>{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  CHECK(sets_of(cover(fixtures::tree({std::nullopt}, {1}, 1)).cover.sets) ==
        std::vector<VertexSet>{{0}});
}

TEST_CASE("trace of the odd star") {
  auto res = cover(fixtures::star3x4());
  const auto& tr = res.trace;
  REQUIRE(tr.anchors.size() == 1);
  const auto& a = tr.anchors[0];
  CHECK(a.anchor == 0);
  CHECK(a.iteration == 1);
  CHECK(a.h == 0);
  CHECK(a.anchored_size == 8);
  CHECK(a.leftover_size == 4);
  CHECK(a.anchored_vertices == VertexSet{1, 2});
  CHECK(a.leftover_vertices == VertexSet{3});
  CHECK(a.emitted_sets == std::vector<std::size_t>{0, 1});
  CHECK(tr.top_anchors == VertexSet{0});
  CHECK(tr.alpha == 1);
  REQUIRE(tr.final_residual_set);
  CHECK(tr.final_residual_set->members == VertexSet{0, 3});
  CHECK(tr.loop_set_count == 2);
}

TEST_CASE("bounds examples") {
  auto star = fixtures::star4x3();
  CHECK(bounds(cover(star).trace, star) == Bounds{2, 2, 0});
  auto odd = fixtures::star3x4();
  CHECK(bounds(cover(odd).trace, odd) == Bounds{2, 3, 1});
  auto chain = fixtures::chain_x(4);
  auto res = cover(chain);
  CHECK(res.cover.size() == 4);
  CHECK(bounds(res.trace, chain) == Bounds{2, 4, 0});
}

TEST_CASE("forced and zero-size leaves re-enter the cover") {
  auto forced = fixtures::tree({std::nullopt, 0, 0}, {2, 3, 1}, 5);
  auto a = cover(forced);
  CHECK(sets_of(a.cover.sets) == std::vector<VertexSet>{{0, 1}, {0, 2}});
  CHECK(sets_of(a.trace.forced_prefix) == std::vector<VertexSet>{{0, 1}});

  auto zero = fixtures::tree({std::nullopt, 0, 0}, {1, 0, 1}, 3);
  auto b = cover(zero);
  CHECK(sets_of(b.cover.sets) == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(b.trace.zero_leaf_attachments ==
        std::vector<std::pair<Vertex, std::size_t>>{{1, 0}});

  // Nested zero leaves: z2 hangs under z1.
  auto nested = fixtures::tree({std::nullopt, 0, 1, 0}, {1, 0, 0, 1}, 3);
  auto c = cover(nested);
  CHECK(sets_of(c.cover.sets) == std::vector<VertexSet>{{0, 1, 2, 3}});
}

TEST_CASE("multi-iteration run keeps trace invariants") {
  // Two anchors under the root, then the root anchors their leftovers.
  // r(0) -> a(1) -> 3 leaves(4); r -> b(1) -> 3 leaves(4); k=8.
  auto inst = fixtures::tree(
      {std::nullopt, 0, 1, 1, 1, 0, 5, 5, 5}, {0, 1, 4, 4, 4, 1, 4, 4, 4}, 8);
  auto res = cover(inst);
  CHECK(validate_cover(inst, res.cover).ok());
  CHECK(res.cover.size() == 6);
  REQUIRE(res.trace.anchors.size() == 3);
  CHECK(res.trace.anchors[0].anchor == 1);
  CHECK(res.trace.anchors[0].leftover_vertices == VertexSet{4});
  CHECK(res.trace.anchors[1].anchor == 5);
  CHECK(res.trace.anchors[2].anchor == 0);
  CHECK(res.trace.anchors[2].iteration == 2);
  CHECK(res.trace.top_anchors == VertexSet{0});
  CHECK(res.trace.alpha == 0);
  auto report = verify_one(inst, true);
  CHECK(report.passed());
  CHECK(report.exact_cardinality);
}

TEST_CASE("leftover already covered by an inner anchor needs no residual") {
  // Anchor 4 packs {5,7},{8} and keeps 4 in both sets; the root's NextFit
  // then leaves 4 over, but it is covered.
  auto inst = fixtures::tree({std::nullopt, 0, 0, 2, 0, 4, 5, 4, 4, 6, 4, 3},
                             {3, 3, 0, 4, 3, 1, 0, 1, 1, 0, 0, 0}, 8);
  auto res = cover(inst);
  CHECK(res.cover.size() == 4);
  CHECK(res.trace.alpha == 1);
  CHECK_FALSE(res.trace.final_residual_set);
  REQUIRE(res.trace.anchors.size() == 2);
  CHECK(res.trace.anchors[1].anchor == 0);
  CHECK(res.trace.anchors[1].leftover_vertices == VertexSet{4});
  CHECK(bounds(res.trace, inst) == Bounds{3, 5, 1});
  CHECK(verify_one(inst, true).passed());
}

TEST_CASE("random instances satisfy every verified property") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    GenSpec spec{GenKind::out_tree, static_cast<int>(rng.uniform(1, 12)),
                 rng.uniform(1, 10), seed, {}};
    spec.shape.boundary = seed % 3 == 0;
    const auto inst = std::get<CtInstance>(generate(spec));
    const auto report = verify_one(inst, true);
    for (const auto& c : report.checks.items()) {
      INFO("seed " << seed << " check " << c.name << ": " << c.detail);
      CHECK(c.pass);
    }
    if (report.exact_cardinality) ++checked;
  }
  CHECK(checked == 300);
}

}  // TEST_SUITE
