#include "pocover/core_model.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>

namespace pocover {

namespace {

std::string describe(Vertex v) { return "vertex " + std::to_string(v); }

class Fnv1a {
 public:
  void add(std::int64_t value) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= static_cast<std::uint64_t>((value >> (8 * i)) & 0xff);
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add_tag(const char* tag) {
    for (; *tag; ++tag) add(*tag);
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
  return vertices;
}

bool contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

bool is_subset(const VertexSet& sub, const VertexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// SizedOutTree

SizedOutTree::SizedOutTree(std::vector<std::optional<Vertex>> parent,
                           std::vector<Weight> size)
    : parent_(std::move(parent)), size_(std::move(size)) {
  const auto n = static_cast<Vertex>(size_.size());
  if (n == 0) throw InputError("tree must have at least one vertex");
  if (parent_.size() != size_.size())
    throw InputError("parent and size arrays differ in length");

  std::optional<Vertex> root;
  children_.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    if (size_[v] < 0) throw InputError("negative size at " + describe(v));
    if (!parent_[v]) {
      if (root) throw InputError("more than one root");
      root = v;
      continue;
    }
    const Vertex p = *parent_[v];
    if (p < 0 || p >= n || p == v)
      throw InputError("bad parent for " + describe(v));
    children_[p].push_back(v);
  }
  if (!root) throw InputError("tree has no root");
  root_ = *root;

  path_weight_.assign(n, 0);
  depth_.assign(n, -1);
  preorder_.reserve(n);
  std::vector<Vertex> stack{root_};
  depth_[root_] = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    preorder_.push_back(v);
    path_weight_[v] = size_[v] + (parent_[v] ? path_weight_[*parent_[v]] : 0);
    const auto& kids = children_[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      depth_[*it] = depth_[v] + 1;
      stack.push_back(*it);
    }
  }
  if (static_cast<Vertex>(preorder_.size()) != n)
    throw InputError("parent links contain a cycle or disconnected part");
}

void SizedOutTree::check(Vertex v) const {
  if (v < 0 || v >= vertex_count())
    throw InputError(describe(v) + " out of range");
}

std::optional<Vertex> SizedOutTree::parent(Vertex v) const {
  check(v);
  return parent_[v];
}

std::span<const Vertex> SizedOutTree::children(Vertex v) const {
  check(v);
  return children_[v];
}

Weight SizedOutTree::size(Vertex v) const {
  check(v);
  return size_[v];
}

Weight SizedOutTree::path_weight(Vertex v) const {
  check(v);
  return path_weight_[v];
}

VertexSet SizedOutTree::ancestors(Vertex v) const {
  check(v);
  VertexSet out;
  for (std::optional<Vertex> u = v; u; u = parent_[*u]) out.push_back(*u);
  std::sort(out.begin(), out.end());
  return out;
}

bool SizedOutTree::is_ancestor(Vertex u, Vertex v) const {
  check(u);
  check(v);
  while (depth_[v] > depth_[u]) v = *parent_[v];
  return u == v;
}

VertexSet SizedOutTree::leaves() const {
  VertexSet out;
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (children_[v].empty()) out.push_back(v);
  return out;
}

Weight SizedOutTree::total_size() const {
  return std::accumulate(size_.begin(), size_.end(), Weight{0});
}

Weight path_weight(const SizedOutTree& tree, Vertex v) {
  return tree.path_weight(v);
}

CtInstance::CtInstance(SizedOutTree tree, Weight capacity)
    : tree_(std::move(tree)), capacity_(capacity) {
  if (capacity_ < 1) throw InputError("capacity must be positive");
  for (Vertex v = 0; v < tree_.vertex_count(); ++v)
    if (tree_.size(v) > capacity_)
      throw InputError("size of " + describe(v) + " exceeds capacity");
}

// ---------------------------------------------------------------------------
// Digraph and friends

Digraph::Digraph(Vertex vertex_count,
                 std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 1) throw InputError("graph must have at least one vertex");
  for (const auto& [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop at " + describe(u));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  in_.assign(n_, {});
  out_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto& preds : in_) std::sort(preds.begin(), preds.end());
}

RcpInstance::RcpInstance(Digraph graph, std::vector<Weight> profit,
                         Weight budget)
    : graph_(std::move(graph)), profit_(std::move(profit)), budget_(budget) {
  if (static_cast<Vertex>(profit_.size()) != graph_.vertex_count())
    throw InputError("profit array length differs from vertex count");
  if (budget_ < 1) throw InputError("budget must be positive");
  for (Weight p : profit_)
    if (p < 0) throw InputError("negative profit");
}

DkshInstance::DkshInstance(Vertex vertex_count,
                           std::vector<VertexSet> hyperedges,
                           std::vector<Weight> weight, Weight budget)
    : n_(vertex_count),
      hyperedges_(std::move(hyperedges)),
      weight_(std::move(weight)),
      budget_(budget) {
  if (n_ < 1) throw InputError("hypergraph must have at least one vertex");
  if (hyperedges_.size() != weight_.size())
    throw InputError("weight array length differs from hyperedge count");
  if (budget_ < 1) throw InputError("budget must be positive");
  for (auto& e : hyperedges_) {
    e = make_vertex_set(std::move(e));
    if (e.empty()) throw InputError("empty hyperedge");
    if (e.front() < 0 || e.back() >= n_)
      throw InputError("hyperedge vertex out of range");
  }
  for (Weight w : weight_)
    if (w < 0) throw InputError("negative hyperedge weight");
}

BpccInstance::BpccInstance(std::vector<VertexSet> clusters,
                           std::vector<Weight> weight, Weight capacity)
    : clusters_(std::move(clusters)),
      weight_(std::move(weight)),
      capacity_(capacity) {
  if (capacity_ < 1) throw InputError("capacity must be positive");
  if (clusters_.empty()) throw InputError("no clusters");
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  cluster_of_.assign(weight_.size(), kUnassigned);
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    auto& cluster = clusters_[c];
    cluster = make_vertex_set(std::move(cluster));
    if (cluster.empty()) throw InputError("empty cluster");
    for (Vertex item : cluster) {
      if (item < 0 || item >= item_count())
        throw InputError("cluster item out of range");
      if (cluster_of_[item] != kUnassigned)
        throw InputError("clusters overlap at item " + std::to_string(item));
      cluster_of_[item] = c;
    }
  }
  for (Vertex item = 0; item < item_count(); ++item) {
    if (cluster_of_[item] == kUnassigned)
      throw InputError("item " + std::to_string(item) + " in no cluster");
    if (weight_[item] < 0) throw InputError("negative item weight");
    if (weight_[item] > capacity_)
      throw InputError("item " + std::to_string(item) + " exceeds capacity");
  }
}

UndirectedGraph::UndirectedGraph(Vertex vertex_count,
                                 std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 1) throw InputError("graph must have at least one vertex");
  for (auto& [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop at " + describe(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

DkshInstance as_dksh(const UndirectedGraph& graph, Weight k) {
  std::vector<VertexSet> hyperedges;
  for (const auto& [u, v] : graph.edges()) hyperedges.push_back({u, v});
  std::vector<Weight> weight(hyperedges.size(), 1);
  return DkshInstance(graph.vertex_count(), std::move(hyperedges),
                      std::move(weight), k);
}

UndirectedGraph as_graph(const DkshInstance& instance) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& e : instance.hyperedges()) {
    if (e.size() != 2)
      throw InputError("hypergraph is not a simple graph (arity != 2)");
    edges.emplace_back(e[0], e[1]);
  }
  return UndirectedGraph(instance.vertex_count(), std::move(edges));
}

VertexSet closure(const Digraph& graph, const VertexSet& seed) {
  std::vector<char> seen(graph.vertex_count(), 0);
  std::deque<Vertex> queue;
  for (Vertex v : seed) {
    if (v < 0 || v >= graph.vertex_count())
      throw InputError(describe(v) + " out of range");
    if (!seen[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : graph.predecessors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  VertexSet out;
  for (Vertex v = 0; v < graph.vertex_count(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool is_closed(const Digraph& graph, const VertexSet& set) {
  for (Vertex v : set)
    for (Vertex u : graph.predecessors(v))
      if (!contains(set, u)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Validators

Validation validate_configuration(const CtInstance& instance,
                                  const VertexSet& members) {
  const auto& tree = instance.tree();
  Weight total = 0;
  for (Vertex v : members) {
    if (v < 0 || v >= tree.vertex_count())
      return Validation({describe(v) + " out of range", v, std::nullopt});
    const auto p = tree.parent(v);
    if (p && !contains(members, *p))
      return Validation(
          {"missing ancestor " + std::to_string(*p) + " of " + describe(v),
           v, std::nullopt});
    total += tree.size(v);
  }
  if (total > instance.capacity())
    return Validation({"total size " + std::to_string(total) +
                           " exceeds capacity " +
                           std::to_string(instance.capacity()),
                       std::nullopt, total - instance.capacity()});
  return {};
}

Validation validate_cover(const CtInstance& instance, const Cover& cover) {
  std::vector<char> covered(instance.vertex_count(), 0);
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    const auto& members = cover.sets[i].members;
    if (!std::is_sorted(members.begin(), members.end()) ||
        std::adjacent_find(members.begin(), members.end()) != members.end())
      return Validation({"set " + std::to_string(i) + " is not a sorted set",
                         std::nullopt, std::nullopt});
    auto inner = validate_configuration(instance, members);
    if (!inner) {
      auto v = inner.violation();
      v.reason = "set " + std::to_string(i) + ": " + v.reason;
      return Validation(std::move(v));
    }
    for (Vertex v : members) covered[v] = 1;
  }
  for (Vertex v = 0; v < instance.vertex_count(); ++v)
    if (!covered[v])
      return Validation({describe(v) + " is not covered", v, std::nullopt});
  return {};
}

Validation validate_cpo_configuration(const Digraph& graph,
                                      std::span<const Weight> size,
                                      Weight capacity,
                                      const VertexSet& members) {
  if (static_cast<Vertex>(size.size()) != graph.vertex_count())
    throw InputError("size array length differs from vertex count");
  Weight total = 0;
  for (Vertex v : members) {
    if (v < 0 || v >= graph.vertex_count())
      return Validation({describe(v) + " out of range", v, std::nullopt});
    for (Vertex u : graph.predecessors(v))
      if (!contains(members, u))
        return Validation({"missing predecessor " + std::to_string(u) +
                               " of " + describe(v),
                           v, std::nullopt});
    total += size[v];
  }
  if (total > capacity)
    return Validation({"total size exceeds capacity", std::nullopt,
                       total - capacity});
  return {};
}

Validation validate_rcp_solution(const RcpInstance& instance,
                                 const VertexSet& solution) {
  for (Vertex v : solution) {
    if (v < 0 || v >= instance.vertex_count())
      return Validation({describe(v) + " out of range", v, std::nullopt});
    for (Vertex u : instance.graph().predecessors(v))
      if (!contains(solution, u))
        return Validation({"missing predecessor " + std::to_string(u) +
                               " of " + describe(v),
                           v, std::nullopt});
  }
  const auto count = static_cast<Weight>(solution.size());
  if (count > instance.budget())
    return Validation({"solution has " + std::to_string(count) +
                           " vertices, budget is " +
                           std::to_string(instance.budget()),
                       std::nullopt, count - instance.budget()});
  return {};
}

Validation validate_bpcc_configuration(const BpccInstance& instance,
                                       const VertexSet& items) {
  Weight total = 0;
  std::optional<std::size_t> cluster;
  for (Vertex item : items) {
    if (item < 0 || item >= instance.item_count())
      return Validation(
          {"item " + std::to_string(item) + " out of range", item, {}});
    const auto c = instance.cluster_of(item);
    if (cluster && *cluster != c)
      return Validation({"items from two clusters share a bin", item, {}});
    cluster = c;
    total += instance.weight()[item];
  }
  if (total > instance.capacity())
    return Validation({"bin weight exceeds capacity", std::nullopt,
                       total - instance.capacity()});
  return {};
}

ContainedHyperedges contained_hyperedges(const DkshInstance& instance,
                                         const VertexSet& s) {
  ContainedHyperedges out;
  for (std::size_t i = 0; i < instance.hyperedges().size(); ++i) {
    if (is_subset(instance.hyperedges()[i], s)) {
      out.indices.push_back(i);
      out.weight += instance.weight()[i];
    }
  }
  return out;
}

Weight total_profit(const RcpInstance& instance, const VertexSet& s) {
  Weight total = 0;
  for (Vertex v : s) total += instance.profit().at(v);
  return total;
}

std::string fingerprint(const CtInstance& instance) {
  Fnv1a h;
  h.add_tag("ct");
  h.add(instance.capacity());
  const auto& tree = instance.tree();
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    h.add(tree.parents()[v].value_or(-1));
    h.add(tree.sizes()[v]);
  }
  return h.hex();
}

std::string fingerprint(const RcpInstance& instance) {
  Fnv1a h;
  h.add_tag("rcp");
  h.add(instance.vertex_count());
  h.add(instance.budget());
  for (const auto& [u, v] : instance.graph().edges()) {
    h.add(u);
    h.add(v);
  }
  for (Weight p : instance.profit()) h.add(p);
  return h.hex();
}

std::string fingerprint(const DkshInstance& instance) {
  Fnv1a h;
  h.add_tag("dksh");
  h.add(instance.vertex_count());
  h.add(instance.budget());
  for (std::size_t i = 0; i < instance.hyperedges().size(); ++i) {
    h.add(-1);
    for (Vertex v : instance.hyperedges()[i]) h.add(v);
    h.add(instance.weight()[i]);
  }
  return h.hex();
}

std::string fingerprint(const BpccInstance& instance) {
  Fnv1a h;
  h.add_tag("bpcc");
  h.add(instance.capacity());
  for (const auto& cluster : instance.clusters()) {
    h.add(-1);
    for (Vertex v : cluster) h.add(v);
  }
  for (Weight w : instance.weight()) h.add(w);
  return h.hex();
}

}  // namespace pocover
