#include "pocover/reductions.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace pocover {

namespace {

constexpr std::array<std::pair<ReductionKind, std::string_view>, 5> kNames{{
    {ReductionKind::bpcc_to_ct, "bpcc_to_ct"},
    {ReductionKind::dksh_to_rcp, "dksh_to_rcp"},
    {ReductionKind::rcp_to_dksh, "rcp_to_dksh"},
    {ReductionKind::dks_to_urcp, "dks_to_urcp"},
    {ReductionKind::degree_augment, "degree_augment"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

void check_range(const VertexSet& s, Vertex n) {
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end())
    throw InputError("solution is not a sorted vertex set");
  if (!s.empty() && (s.front() < 0 || s.back() >= n))
    throw InputError("solution vertex out of range");
}

void check_budget(const VertexSet& s, Weight budget) {
  if (static_cast<Weight>(s.size()) > budget)
    throw InputError("solution exceeds the cardinality budget");
}

void check_rcp(const RcpInstance& instance, const VertexSet& s) {
  check_range(s, instance.vertex_count());
  auto v = validate_rcp_solution(instance, s);
  if (!v) throw InputError("infeasible solution: " + v.violation().reason);
}

}  // namespace

std::string_view to_string(ReductionKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<ReductionKind> parse_reduction_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

BpccCtArtifact bpcc_to_ct(const BpccInstance& bpcc) {
  const Weight k = bpcc.capacity();
  const auto m = static_cast<Vertex>(bpcc.clusters().size());
  std::vector<std::optional<Vertex>> parent{std::nullopt};
  std::vector<Weight> size{0};
  for (Vertex i = 0; i < m; ++i) {
    parent.emplace_back(0);
    size.push_back(2 * k);
  }
  for (Vertex v = 0; v < bpcc.item_count(); ++v) {
    parent.emplace_back(1 + static_cast<Vertex>(bpcc.cluster_of(v)));
    size.push_back(bpcc.weight()[v]);
  }
  const Weight big_k = 3 * k;
  CtInstance target(SizedOutTree(std::move(parent), std::move(size)), big_k);
  Parameters params{{"k", k}, {"K", big_k}, {"clusters", m}};
  require(params.at("K") == 3 * params.at("k"), "K != 3k");
  return {ReductionKind::bpcc_to_ct, fingerprint(bpcc), bpcc, std::move(target),
          std::move(params)};
}

Vertex bpcc_leaf(const BpccCtArtifact& artifact, Vertex item) {
  return 1 + static_cast<Vertex>(artifact.source.clusters().size()) + item;
}

VertexSet bpcc_map(const BpccCtArtifact& artifact, const VertexSet& config,
                   Direction direction) {
  const auto& src = artifact.source;
  const auto m = static_cast<Vertex>(src.clusters().size());
  if (direction == Direction::lift) {
    check_range(config, src.item_count());
    auto v = validate_bpcc_configuration(src, config);
    if (!v) throw InputError("invalid bin: " + v.violation().reason);
    VertexSet out{0};
    if (!config.empty())
      out.push_back(1 + static_cast<Vertex>(src.cluster_of(config.front())));
    for (Vertex item : config) out.push_back(bpcc_leaf(artifact, item));
    return out;
  }
  check_range(config, artifact.target.vertex_count());
  auto v = validate_configuration(artifact.target, config);
  if (!v) throw InputError("invalid configuration: " + v.violation().reason);
  VertexSet out;
  for (Vertex u : config)
    if (u > m) out.push_back(u - 1 - m);
  return out;
}

// ---------------------------------------------------------------------------

DkshRcpArtifact dksh_to_rcp(const DkshInstance& dksh) {
  const Vertex n = dksh.vertex_count();
  const auto m = static_cast<Vertex>(dksh.hyperedges().size());
  const Weight k = dksh.budget();
  const Vertex copies = m + 1;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::vector<Weight> profit(static_cast<std::size_t>(n) * copies, 0);
  for (Vertex j = 0; j < m; ++j) {
    const Vertex e = n * copies + j;
    for (Vertex v : dksh.hyperedges()[j])
      for (Vertex i = 0; i < copies; ++i) arcs.emplace_back(v * copies + i, e);
    profit.push_back(dksh.weight()[j]);
  }
  const Weight c = k * (m + 1) + m;
  RcpInstance target(Digraph(n * copies + m, std::move(arcs)),
                     std::move(profit), c);
  Parameters params{{"k", k}, {"m", m}, {"c", c}};
  require(params.at("c") == params.at("k") * (params.at("m") + 1) +
                                params.at("m"),
          "c != k(m+1)+m");
  return {ReductionKind::dksh_to_rcp, fingerprint(dksh), dksh,
          std::move(target), std::move(params)};
}

VertexSet dksh_rcp_map(const DkshRcpArtifact& artifact,
                       const VertexSet& solution, Direction direction) {
  const auto& src = artifact.source;
  const Vertex n = src.vertex_count();
  const auto m = static_cast<Vertex>(src.hyperedges().size());
  const Vertex copies = m + 1;
  if (direction == Direction::lift) {
    check_range(solution, n);
    check_budget(solution, src.budget());
    VertexSet out;
    for (Vertex v : solution)
      for (Vertex i = 0; i < copies; ++i) out.push_back(v * copies + i);
    for (std::size_t j : contained_hyperedges(src, solution).indices)
      out.push_back(n * copies + static_cast<Vertex>(j));
    return out;
  }
  check_rcp(artifact.target, solution);
  VertexSet out;
  for (Vertex v = 0; v < n; ++v) {
    bool all = true;
    for (Vertex i = 0; i < copies && all; ++i)
      all = contains(solution, v * copies + i);
    if (all) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

RcpDkshArtifact rcp_to_dksh(const RcpInstance& rcp) {
  std::vector<VertexSet> hyperedges;
  for (Vertex v = 0; v < rcp.vertex_count(); ++v)
    hyperedges.push_back(closure(rcp.graph(), {v}));
  DkshInstance target(rcp.vertex_count(), std::move(hyperedges), rcp.profit(),
                      rcp.budget());
  Parameters params{{"k", rcp.budget()}};
  return {ReductionKind::rcp_to_dksh, fingerprint(rcp), rcp, std::move(target),
          std::move(params)};
}

VertexSet minimalize(const DkshInstance& dksh, const VertexSet& s) {
  check_range(s, dksh.vertex_count());
  VertexSet out;
  for (std::size_t j : contained_hyperedges(dksh, s).indices)
    out = set_union(out, dksh.hyperedges()[j]);
  return out;
}

VertexSet rcp_dksh_map(const RcpDkshArtifact& artifact,
                       const VertexSet& solution, Direction direction) {
  if (direction == Direction::lift) {
    check_rcp(artifact.source, solution);
    return solution;
  }
  check_range(solution, artifact.target.vertex_count());
  check_budget(solution, artifact.target.budget());
  return minimalize(artifact.target, solution);
}

// ---------------------------------------------------------------------------

UrcpArtifact dks_to_urcp(const UndirectedGraph& graph, Weight k, Weight m) {
  if (m < 1) throw InputError("m must be at least 1");
  if (k < 1) throw InputError("k must be at least 1");
  const Vertex n = graph.vertex_count();
  const auto copies = static_cast<Vertex>(2 * m);
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex i = 0; i < copies; ++i)
      for (Vertex j = 0; j < copies; ++j)
        if (i != j) arcs.emplace_back(v * copies + i, v * copies + j);
  const auto& edges = graph.edges();
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const Vertex e = n * copies + static_cast<Vertex>(j);
    for (Vertex i = 0; i < copies; ++i) {
      arcs.emplace_back(edges[j].first * copies + i, e);
      arcs.emplace_back(edges[j].second * copies + i, e);
    }
  }
  const Vertex total = n * copies + static_cast<Vertex>(edges.size());
  const Weight h = 2 * k * m + m;
  RcpInstance target(Digraph(total, std::move(arcs)),
                     std::vector<Weight>(total, 1), h);
  Parameters params{{"k", k}, {"m", m}, {"h_m", h}};
  require(params.at("h_m") == 2 * params.at("k") * params.at("m") +
                                  params.at("m"),
          "h_m != 2km+m");
  return {ReductionKind::dks_to_urcp, fingerprint(as_dksh(graph, k)), graph,
          std::move(target), std::move(params)};
}

VertexSet urcp_project(const UrcpArtifact& artifact,
                       const VertexSet& solution) {
  check_rcp(artifact.target, solution);
  const auto copies = static_cast<Vertex>(2 * artifact.parameters.at("m"));
  VertexSet out;
  for (Vertex v = 0; v < artifact.source.vertex_count(); ++v) {
    bool all = true;
    for (Vertex i = 0; i < copies && all; ++i)
      all = contains(solution, v * copies + i);
    if (all) out.push_back(v);
  }
  return out;
}

std::size_t urcp_edge_count(const UrcpArtifact& artifact,
                            const VertexSet& solution) {
  const auto copies = static_cast<Vertex>(2 * artifact.parameters.at("m"));
  const Vertex first = artifact.source.vertex_count() * copies;
  return static_cast<std::size_t>(
      solution.end() -
      std::lower_bound(solution.begin(), solution.end(), first));
}

namespace {

std::size_t induced_edge_count(const UndirectedGraph& graph,
                               const VertexSet& s) {
  std::size_t count = 0;
  for (const auto& [u, v] : graph.edges())
    if (contains(s, u) && contains(s, v)) ++count;
  return count;
}

}  // namespace

DksPipelineResult dks_via_urcp(const UndirectedGraph& graph, Weight k,
                               const UrcpOracle& oracle) {
  if (k < 1) throw InputError("k must be at least 1");
  const Vertex n = graph.vertex_count();
  DksPipelineResult out;
  if (k >= n || k < 2 || graph.edges().empty()) {
    const auto take = static_cast<Vertex>(std::min<Weight>(k, n));
    for (Vertex v = 0; v < take; ++v) out.vertices.push_back(v);
    out.induced_edges = induced_edge_count(graph, out.vertices);
    return out;
  }

  const Weight last = k * (k - 1) / 2;
  for (Weight m = 1; m <= last; ++m) {
    const auto artifact = dks_to_urcp(graph, k, m);
    const RcpSolution u = oracle(artifact.target);
    if (!validate_rcp_solution(artifact.target, u.vertices))
      throw InternalError("oracle returned an infeasible solution");
    UrcpStep step;
    step.m = m;
    step.budget = artifact.target.budget();
    step.profit = u.profit;
    step.edge_vertices = urcp_edge_count(artifact, u.vertices);
    const auto copies = static_cast<Vertex>(2 * m);
    for (Vertex v = 0; v < n; ++v) {
      Vertex inside = 0;
      for (Vertex i = 0; i < copies; ++i)
        inside += contains(u.vertices, v * copies + i) ? 1 : 0;
      if (inside != 0 && inside != copies) step.copies_all_or_nothing = false;
    }
    if (!out.chosen_m || step.edge_vertices > out.steps[*out.chosen_m - 1].edge_vertices) {
      out.chosen_m = m;
      out.vertices = urcp_project(artifact, u.vertices);
    }
    out.steps.push_back(step);
  }
  out.induced_edges = induced_edge_count(graph, out.vertices);
  return out;
}

DksPipelineResult dks_via_urcp(const UndirectedGraph& graph, Weight k) {
  return dks_via_urcp(graph, k, [](const RcpInstance& instance) {
    return exact_rcp(instance, {.canonical = false});
  });
}

// ---------------------------------------------------------------------------

namespace {

struct GadgetShape {
  Vertex n;
  Vertex leaves;  // m
  int levels;     // l0
  Vertex t;

  Vertex half() const { return (t - 1) / 2; }
  // Level 0 is x itself; index i runs over 1..2^level.
  Vertex in(Vertex x, int level, Vertex i) const {
    if (level == 0) return x;
    return n + x * (t - 1) + ((Vertex{1} << level) - 2) + (i - 1);
  }
  Vertex out(Vertex x, int level, Vertex i) const {
    if (level == 0) return x;
    return in(x, level, i) + half();
  }
};

GadgetShape shape_of(const AugmentArtifact& artifact) {
  return {artifact.source.vertex_count(),
          static_cast<Vertex>(artifact.parameters.at("m")),
          static_cast<int>(artifact.parameters.at("l0")),
          static_cast<Vertex>(artifact.parameters.at("t"))};
}

}  // namespace

AugmentArtifact degree_augment(const RcpInstance& rcp) {
  const Vertex n = rcp.vertex_count();
  if (n < 2) throw InputError("degree augmentation needs at least 2 vertices");
  const auto m = static_cast<Vertex>(std::bit_ceil(static_cast<unsigned>(n)));
  const int l0 = std::countr_zero(static_cast<unsigned>(m));
  Weight sum = 0;
  for (int l = 1; l <= l0; ++l) sum += Weight{1} << l;
  const auto t = static_cast<Vertex>(1 + 2 * sum);
  const GadgetShape g{n, m, l0, t};

  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (Vertex x = 0; x < n; ++x) {
    for (int l = 0; l < l0; ++l) {
      for (Vertex i = 1; i <= (Vertex{1} << l); ++i) {
        arcs.emplace_back(g.in(x, l + 1, 2 * i), g.in(x, l, i));
        arcs.emplace_back(g.in(x, l + 1, 2 * i - 1), g.in(x, l, i));
        arcs.emplace_back(g.out(x, l, i), g.out(x, l + 1, 2 * i));
        arcs.emplace_back(g.out(x, l, i), g.out(x, l + 1, 2 * i - 1));
      }
    }
    for (Vertex i = 1; i <= m; ++i)
      arcs.emplace_back(g.out(x, l0, i), g.in(x, l0, i));
  }
  for (const auto& [x, y] : rcp.graph().edges())
    arcs.emplace_back(g.out(x, l0, y + 1), g.in(y, l0, x + 1));

  const Vertex total = n * t;
  std::vector<Weight> profit(total, 0);
  std::copy(rcp.profit().begin(), rcp.profit().end(), profit.begin());
  const Weight k_i = rcp.budget() * t;
  RcpInstance target(Digraph(total, std::move(arcs)), std::move(profit), k_i);
  Parameters params{{"k", rcp.budget()}, {"m", m},     {"l0", l0},
                    {"t", t},            {"k_I", k_i}};
  Weight check = 1;
  for (Weight l = 1; l <= params.at("l0"); ++l) check += 2 * (Weight{1} << l);
  require(params.at("t") == check, "t does not match its defining sum");
  require(params.at("k_I") == params.at("k") * params.at("t"), "k_I != k*t");
  return {ReductionKind::degree_augment, fingerprint(rcp), rcp,
          std::move(target), std::move(params)};
}

VertexSet augment_gadget(const AugmentArtifact& artifact, Vertex x) {
  const auto g = shape_of(artifact);
  if (x < 0 || x >= g.n) throw InputError("vertex out of range");
  VertexSet out;
  const Vertex first = g.n + x * (g.t - 1);
  for (Vertex v = first; v < first + g.t - 1; ++v) out.push_back(v);
  return out;
}

Vertex augment_owner(const AugmentArtifact& artifact, Vertex v) {
  const auto g = shape_of(artifact);
  if (v < 0 || v >= g.n * g.t) throw InputError("vertex out of range");
  return v < g.n ? v : (v - g.n) / (g.t - 1);
}

VertexSet augment_map(const AugmentArtifact& artifact,
                      const VertexSet& solution, Direction direction) {
  if (direction == Direction::lift) {
    check_rcp(artifact.source, solution);
    VertexSet out = solution;
    for (Vertex x : solution) out = set_union(out, augment_gadget(artifact, x));
    return out;
  }
  check_rcp(artifact.target, solution);
  VertexSet out;
  for (Vertex v : solution) out.push_back(augment_owner(artifact, v));
  return make_vertex_set(std::move(out));
}

}  // namespace pocover
