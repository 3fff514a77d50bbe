#pragma once

// Domain types shared by every module: sized out-trees and the covering
// instance built on them, digraphs for rule caching, weighted hypergraphs,
// clustered bin packing, and the validators that decide feasibility.
//
// Vertex ids are dense integers 0..n-1. Every vertex set handed across an
// API boundary is a sorted, duplicate-free VertexSet.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pocover {

using Vertex = std::int32_t;
using Weight = std::int64_t;
using VertexSet = std::vector<Vertex>;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// No feasible solution exists for the instance.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact oracle refused an instance beyond its documented size limit.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

VertexSet make_vertex_set(std::vector<Vertex> vertices);
bool contains(const VertexSet& set, Vertex v);
bool is_subset(const VertexSet& sub, const VertexSet& super);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

// Rooted out-tree with nonnegative integer vertex sizes.
class SizedOutTree {
 public:
  SizedOutTree(std::vector<std::optional<Vertex>> parent,
               std::vector<Weight> size);

  Vertex vertex_count() const { return static_cast<Vertex>(size_.size()); }
  Vertex root() const { return root_; }
  std::optional<Vertex> parent(Vertex v) const;
  std::span<const Vertex> children(Vertex v) const;
  Weight size(Vertex v) const;
  bool is_leaf(Vertex v) const { return children(v).empty(); }
  // Total size along the root path, v included.
  Weight path_weight(Vertex v) const;
  // Parents always precede their children.
  std::span<const Vertex> preorder() const { return preorder_; }
  VertexSet ancestors(Vertex v) const;
  // Inclusive: every vertex is its own ancestor.
  bool is_ancestor(Vertex u, Vertex v) const;
  VertexSet leaves() const;
  Weight total_size() const;

  const std::vector<std::optional<Vertex>>& parents() const { return parent_; }
  const std::vector<Weight>& sizes() const { return size_; }

  friend bool operator==(const SizedOutTree& a, const SizedOutTree& b) {
    return a.parent_ == b.parent_ && a.size_ == b.size_;
  }

 private:
  void check(Vertex v) const;

  std::vector<std::optional<Vertex>> parent_;
  std::vector<Weight> size_;
  Vertex root_ = 0;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> preorder_;
  std::vector<Weight> path_weight_;
  std::vector<std::int32_t> depth_;
};

Weight path_weight(const SizedOutTree& tree, Vertex v);

class CtInstance {
 public:
  CtInstance(SizedOutTree tree, Weight capacity);

  const SizedOutTree& tree() const { return tree_; }
  Weight capacity() const { return capacity_; }
  Vertex vertex_count() const { return tree_.vertex_count(); }

  friend bool operator==(const CtInstance&, const CtInstance&) = default;

 private:
  SizedOutTree tree_;
  Weight capacity_;
};

struct Configuration {
  VertexSet members;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Cover {
  std::vector<Configuration> sets;
  std::size_t size() const { return sets.size(); }
  friend bool operator==(const Cover&, const Cover&) = default;
};

// Directed graph; duplicate edges are merged on construction, self-loops are
// rejected.
class Digraph {
 public:
  Digraph(Vertex vertex_count, std::vector<std::pair<Vertex, Vertex>> edges);

  Vertex vertex_count() const { return n_; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const {
    return edges_;
  }
  std::span<const Vertex> predecessors(Vertex v) const { return in_[v]; }
  std::span<const Vertex> successors(Vertex v) const { return out_[v]; }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<std::vector<Vertex>> out_;
};

class RcpInstance {
 public:
  RcpInstance(Digraph graph, std::vector<Weight> profit, Weight budget);

  const Digraph& graph() const { return graph_; }
  const std::vector<Weight>& profit() const { return profit_; }
  Weight budget() const { return budget_; }
  Vertex vertex_count() const { return graph_.vertex_count(); }

  friend bool operator==(const RcpInstance&, const RcpInstance&) = default;

 private:
  Digraph graph_;
  std::vector<Weight> profit_;
  Weight budget_;
};

// Weighted hypergraph with a cardinality budget. Parallel hyperedges are kept.
class DkshInstance {
 public:
  DkshInstance(Vertex vertex_count, std::vector<VertexSet> hyperedges,
               std::vector<Weight> weight, Weight budget);

  Vertex vertex_count() const { return n_; }
  const std::vector<VertexSet>& hyperedges() const { return hyperedges_; }
  const std::vector<Weight>& weight() const { return weight_; }
  Weight budget() const { return budget_; }

  friend bool operator==(const DkshInstance&, const DkshInstance&) = default;

 private:
  Vertex n_;
  std::vector<VertexSet> hyperedges_;
  std::vector<Weight> weight_;
  Weight budget_;
};

// Bin packing where a bin may only hold items of a single cluster.
class BpccInstance {
 public:
  BpccInstance(std::vector<VertexSet> clusters, std::vector<Weight> weight,
               Weight capacity);

  const std::vector<VertexSet>& clusters() const { return clusters_; }
  const std::vector<Weight>& weight() const { return weight_; }
  Weight capacity() const { return capacity_; }
  Vertex item_count() const { return static_cast<Vertex>(weight_.size()); }
  std::size_t cluster_of(Vertex item) const { return cluster_of_.at(item); }

  friend bool operator==(const BpccInstance& a, const BpccInstance& b) {
    return a.clusters_ == b.clusters_ && a.weight_ == b.weight_ &&
           a.capacity_ == b.capacity_;
  }

 private:
  std::vector<VertexSet> clusters_;
  std::vector<Weight> weight_;
  Weight capacity_;
  std::vector<std::size_t> cluster_of_;
};

// Simple undirected graph, used as densest-k-subgraph input.
class UndirectedGraph {
 public:
  UndirectedGraph(Vertex vertex_count,
                  std::vector<std::pair<Vertex, Vertex>> edges);

  Vertex vertex_count() const { return n_; }
  // Normalized to u < v, sorted, unique.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const {
    return edges_;
  }

 private:
  Vertex n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

// Arity-2 hypergraph with unit weights.
DkshInstance as_dksh(const UndirectedGraph& graph, Weight k);
UndirectedGraph as_graph(const DkshInstance& instance);

// Minimal superset of seed closed under predecessors.
VertexSet closure(const Digraph& graph, const VertexSet& seed);
bool is_closed(const Digraph& graph, const VertexSet& set);

struct Violation {
  std::string reason;
  std::optional<Vertex> vertex;
  std::optional<Weight> excess;
};

class Validation {
 public:
  Validation() = default;
  explicit Validation(Violation v) : violation_(std::move(v)) {}

  bool ok() const { return !violation_; }
  explicit operator bool() const { return ok(); }
  const Violation& violation() const { return *violation_; }

 private:
  std::optional<Violation> violation_;
};

Validation validate_configuration(const CtInstance& instance,
                                  const VertexSet& members);
Validation validate_cover(const CtInstance& instance, const Cover& cover);

// Configuration of the general covering problem on a digraph: closed under
// predecessors and within capacity.
Validation validate_cpo_configuration(const Digraph& graph,
                                      std::span<const Weight> size,
                                      Weight capacity,
                                      const VertexSet& members);

Validation validate_rcp_solution(const RcpInstance& instance,
                                 const VertexSet& solution);
Validation validate_bpcc_configuration(const BpccInstance& instance,
                                       const VertexSet& items);

struct ContainedHyperedges {
  std::vector<std::size_t> indices;
  Weight weight = 0;
};

ContainedHyperedges contained_hyperedges(const DkshInstance& instance,
                                         const VertexSet& s);

Weight total_profit(const RcpInstance& instance, const VertexSet& s);

// FNV-1a over the instance fields; stable across runs and platforms.
std::string fingerprint(const CtInstance& instance);
std::string fingerprint(const RcpInstance& instance);
std::string fingerprint(const DkshInstance& instance);
std::string fingerprint(const BpccInstance& instance);

}  // namespace pocover
