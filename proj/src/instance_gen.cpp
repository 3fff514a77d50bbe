#include "pocover/instance_gen.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace pocover {

namespace {

constexpr std::array<std::pair<GenKind, std::string_view>, 7> kKinds{{
    {GenKind::out_tree, "out_tree"},
    {GenKind::bp_star, "bp_star"},
    {GenKind::dag, "dag"},
    {GenKind::digraph, "digraph"},
    {GenKind::hypergraph, "hypergraph"},
    {GenKind::bpcc, "bpcc"},
    {GenKind::graph, "graph"},
}};

constexpr int kParentRetries = 64;

std::vector<Vertex> permutation(Rng& rng, Vertex n) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (Vertex i = n - 1; i > 0; --i)
    std::swap(p[i], p[rng.uniform(0, i)]);
  return p;
}

Weight size_cap(const GenSpec& spec) {
  return std::min(spec.shape.size_max.value_or(spec.k), spec.k);
}

CtInstance gen_out_tree(const GenSpec& spec, Rng& rng) {
  const Vertex n = spec.n;
  const Weight slack = spec.shape.boundary ? 0 : 1;
  std::vector<std::optional<Vertex>> parent(n);
  std::vector<Weight> size(n), h(n);
  std::vector<int> child_count(n, 0);
  for (Vertex i = 0; i < n; ++i) {
    Weight room = spec.k - slack;
    if (i > 0) {
      Vertex p = static_cast<Vertex>(rng.uniform(0, i - 1));
      for (int tries = 0; spec.shape.max_children &&
                          child_count[p] >= *spec.shape.max_children;
           ++tries) {
        if (tries == kParentRetries)
          throw GenerationError("could not place vertex under max_children");
        p = static_cast<Vertex>(rng.uniform(0, i - 1));
      }
      parent[i] = p;
      ++child_count[p];
      room -= h[p];
    }
    // Uniform over the admissible sizes: the same law as redrawing until
    // the root path stays within bound.
    const Weight hi = std::min(size_cap(spec), room);
    if (hi < spec.shape.size_min)
      throw GenerationError("size range cannot keep root paths within k at vertex " +
                            std::to_string(i));
    size[i] = rng.uniform(spec.shape.size_min, hi);
    h[i] = size[i] + (i > 0 ? h[*parent[i]] : 0);
  }
  return CtInstance(SizedOutTree(std::move(parent), std::move(size)), spec.k);
}

RcpInstance gen_rcp(const GenSpec& spec, Rng& rng, bool acyclic) {
  const Vertex n = spec.n;
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (acyclic) {
    const auto order = permutation(rng, n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (rng.chance_permille(spec.shape.edge_permille))
          edges.emplace_back(order[i], order[j]);
  } else {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && rng.chance_permille(spec.shape.edge_permille))
          edges.emplace_back(u, v);
  }
  std::vector<Weight> profit(n);
  for (auto& p : profit) p = rng.uniform(0, spec.shape.weight_max);
  return RcpInstance(Digraph(n, std::move(edges)), std::move(profit), spec.k);
}

DkshInstance gen_hypergraph(const GenSpec& spec, Rng& rng) {
  const Vertex n = spec.n;
  const int lo = spec.shape.arity_min;
  const int hi = std::min(spec.shape.arity_max, n);
  if (lo < 1 || lo > hi) throw GenerationError("empty arity range");
  const int count = spec.shape.edge_count.value_or(
      static_cast<int>(rng.uniform(0, 4)));
  std::vector<VertexSet> edges;
  std::vector<Weight> weight;
  for (int e = 0; e < count; ++e) {
    const auto arity = static_cast<Vertex>(rng.uniform(lo, hi));
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (Vertex i = 0; i < arity; ++i)
      std::swap(pool[i], pool[rng.uniform(i, n - 1)]);
    pool.resize(arity);
    edges.push_back(make_vertex_set(std::move(pool)));
    weight.push_back(rng.uniform(0, spec.shape.weight_max));
  }
  return DkshInstance(n, std::move(edges), std::move(weight), spec.k);
}

BpccInstance gen_bpcc(const GenSpec& spec, Rng& rng) {
  const Vertex n = spec.n;
  const int clusters = spec.shape.cluster_count.value_or(
      static_cast<int>(rng.uniform(1, n)));
  if (clusters < 1 || clusters > n)
    throw GenerationError("cluster count must lie in [1, n]");
  const auto order = permutation(rng, n);
  std::vector<VertexSet> groups(clusters);
  for (Vertex i = 0; i < n; ++i) {
    const auto c = i < clusters ? i : rng.uniform(0, clusters - 1);
    groups[c].push_back(order[i]);
  }
  const Weight hi = size_cap(spec);
  if (hi < spec.shape.size_min) throw GenerationError("empty weight range");
  std::vector<Weight> weight(n);
  for (auto& w : weight) w = rng.uniform(spec.shape.size_min, hi);
  return BpccInstance(std::move(groups), std::move(weight), spec.k);
}

DkshInstance gen_graph(const GenSpec& spec, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < spec.n; ++u)
    for (Vertex v = u + 1; v < spec.n; ++v)
      if (rng.chance_permille(spec.shape.edge_permille)) edges.emplace_back(u, v);
  return as_dksh(UndirectedGraph(spec.n, std::move(edges)), spec.k);
}

}  // namespace

std::string_view to_string(GenKind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

std::optional<GenKind> parse_gen_kind(std::string_view name) {
  for (const auto& [k, n] : kKinds)
    if (n == name) return k;
  return std::nullopt;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw GenerationError("empty integer range");
  const std::uint64_t range =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t threshold = (0 - range) % range;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold)
      return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                       x % range);
  }
}

CtInstance make_bp_star(const std::vector<Weight>& items, Weight k) {
  std::vector<std::optional<Vertex>> parent{std::nullopt};
  std::vector<Weight> size{0};
  for (Weight w : items) {
    parent.emplace_back(0);
    size.push_back(w);
  }
  return CtInstance(SizedOutTree(std::move(parent), std::move(size)), k);
}

Instance generate(const GenSpec& spec) {
  if (spec.n < 1) throw InputError("n must be at least 1");
  if (spec.k < 1) throw InputError("k must be at least 1");
  if (spec.shape.size_min < 0) throw InputError("negative size_min");
  Rng rng(spec.seed);
  switch (spec.kind) {
    case GenKind::out_tree:
      return gen_out_tree(spec, rng);
    case GenKind::bp_star: {
      const Weight hi = size_cap(spec);
      if (hi < spec.shape.size_min) throw GenerationError("empty size range");
      std::vector<Weight> items(spec.n);
      for (auto& w : items) w = rng.uniform(spec.shape.size_min, hi);
      return make_bp_star(items, spec.k);
    }
    case GenKind::dag:
      return gen_rcp(spec, rng, true);
    case GenKind::digraph:
      return gen_rcp(spec, rng, false);
    case GenKind::hypergraph:
      return gen_hypergraph(spec, rng);
    case GenKind::bpcc:
      return gen_bpcc(spec, rng);
    case GenKind::graph:
      return gen_graph(spec, rng);
  }
  throw InputError("unknown generator kind");
}

}  // namespace pocover
