#pragma once

// Instance transformers between the covering, rule-caching, and
// densest-subhypergraph problems, with solution maps in both directions.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pocover/core_model.hpp"
#include "pocover/exact_oracles.hpp"

namespace pocover {

enum class ReductionKind {
  bpcc_to_ct,
  dksh_to_rcp,
  rcp_to_dksh,
  dks_to_urcp,
  degree_augment,
};

std::string_view to_string(ReductionKind kind);
std::optional<ReductionKind> parse_reduction_kind(std::string_view name);

enum class Direction { lift, project };

using Parameters = std::map<std::string, Weight>;

template <class Source, class Target>
struct ReductionArtifact {
  ReductionKind kind;
  std::string source_fingerprint;
  Source source;
  Target target;
  Parameters parameters;
};

using BpccCtArtifact = ReductionArtifact<BpccInstance, CtInstance>;
using DkshRcpArtifact = ReductionArtifact<DkshInstance, RcpInstance>;
using RcpDkshArtifact = ReductionArtifact<RcpInstance, DkshInstance>;
using UrcpArtifact = ReductionArtifact<UndirectedGraph, RcpInstance>;
using AugmentArtifact = ReductionArtifact<RcpInstance, RcpInstance>;

// Root 0, cluster vertex 1+i per cluster i, leaf 1+m+v per item v.
BpccCtArtifact bpcc_to_ct(const BpccInstance& bpcc);
Vertex bpcc_leaf(const BpccCtArtifact& artifact, Vertex item);
VertexSet bpcc_map(const BpccCtArtifact& artifact, const VertexSet& config,
                   Direction direction);

// Copy i of vertex v is v*(m+1)+i; hyperedge j becomes vertex n*(m+1)+j.
DkshRcpArtifact dksh_to_rcp(const DkshInstance& dksh);
VertexSet dksh_rcp_map(const DkshRcpArtifact& artifact,
                       const VertexSet& solution, Direction direction);

// Hyperedge j is the predecessor closure of vertex j, weighted by its profit.
RcpDkshArtifact rcp_to_dksh(const RcpInstance& rcp);
// lift: a closed set is already a hypergraph solution. project: the
// minimalized hypergraph solution, which is closed in the source graph.
VertexSet rcp_dksh_map(const RcpDkshArtifact& artifact,
                       const VertexSet& solution, Direction direction);

// Vertices of S lying in some hyperedge contained in S.
VertexSet minimalize(const DkshInstance& dksh, const VertexSet& s);

// Copy i of vertex v is v*2m+i; edge j becomes vertex n*2m+j. Unit profits.
UrcpArtifact dks_to_urcp(const UndirectedGraph& graph, Weight k, Weight m);
// Vertices all of whose copies lie in the solution.
VertexSet urcp_project(const UrcpArtifact& artifact, const VertexSet& solution);
std::size_t urcp_edge_count(const UrcpArtifact& artifact,
                            const VertexSet& solution);

struct UrcpStep {
  Weight m = 0;
  Weight budget = 0;
  Weight profit = 0;
  std::size_t edge_vertices = 0;  // |U(m) ∩ E|
  bool copies_all_or_nothing = true;
};

struct DksPipelineResult {
  VertexSet vertices;
  std::size_t induced_edges = 0;
  std::optional<Weight> chosen_m;
  std::vector<UrcpStep> steps;
};

using UrcpOracle = std::function<RcpSolution(const RcpInstance&)>;

// Densest k-subgraph by solving the m-reduced instances for m = 1..C(k,2)
// and keeping the one with the most edge-vertices.
DksPipelineResult dks_via_urcp(const UndirectedGraph& graph, Weight k,
                               const UrcpOracle& oracle);
DksPipelineResult dks_via_urcp(const UndirectedGraph& graph, Weight k);

// Binary in/out-tree gadgets; every vertex ends with in- and out-degree <= 2.
// Original x keeps id x; gadget vertices of x occupy n + x*(t-1) + [0, t-1),
// in-tree levels 1..l0 first, then the out-tree.
AugmentArtifact degree_augment(const RcpInstance& rcp);
VertexSet augment_gadget(const AugmentArtifact& artifact, Vertex x);
Vertex augment_owner(const AugmentArtifact& artifact, Vertex v);
VertexSet augment_map(const AugmentArtifact& artifact,
                      const VertexSet& solution, Direction direction);

}  // namespace pocover
