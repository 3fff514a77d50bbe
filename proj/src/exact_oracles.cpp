#include "pocover/exact_oracles.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <string>

#include "pocover/kernels/mask_kernels.hpp"

namespace pocover {

using kernels::Mask;

std::vector<Configuration> enumerate_configurations(const CtInstance& instance) {
  const auto& tree = instance.tree();
  const Vertex n = tree.vertex_count();
  if (n > kConfigurationGuard)
    throw GuardError("configuration enumeration is limited to " +
                     std::to_string(kConfigurationGuard) + " vertices, got " +
                     std::to_string(n));
  std::vector<Mask> preds(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (auto p = tree.parent(v)) preds[v] = Mask{1} << *p;
  const auto& sizes = tree.sizes();

  std::vector<Configuration> out;
  const Mask end = Mask{1} << n;
  for (Mask s = 1; s < end; ++s) {
    if (!kernels::is_closed(preds, s)) continue;
    if (kernels::masked_sum(sizes, s) > instance.capacity()) continue;
    Configuration c;
    for (Mask rest = s; rest; rest &= rest - 1)
      c.members.push_back(std::countr_zero(rest));
    out.push_back(std::move(c));
  }
  return out;
}

Cover exact_ct(const CtInstance& instance) {
  const auto& tree = instance.tree();
  for (Vertex v = 0; v < tree.vertex_count(); ++v)
    if (tree.path_weight(v) > instance.capacity())
      throw Infeasible("root path of vertex " + std::to_string(v) +
                       " exceeds capacity");
  const VertexSet leaves = tree.leaves();
  const auto leaf_count = static_cast<Vertex>(leaves.size());
  if (leaf_count > kExactCtLeafGuard)
    throw GuardError("exact cover is limited to " +
                     std::to_string(kExactCtLeafGuard) + " leaves");
  const auto configs = enumerate_configurations(instance);

  // Every vertex is an ancestor of a leaf, so covering the leaves suffices.
  // Leaf sets of configurations are closed under removing a leaf, so a set is
  // maximal iff no single-leaf extension occurs.
  std::vector<Vertex> leaf_index(tree.vertex_count(), -1);
  for (Vertex i = 0; i < leaf_count; ++i) leaf_index[leaves[i]] = i;
  const std::size_t states = std::size_t{1} << leaf_count;
  std::vector<std::int32_t> witness(states, -1);
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::uint32_t m = 0;
    for (Vertex v : configs[c].members)
      if (leaf_index[v] >= 0) m |= 1u << leaf_index[v];
    if (m && witness[m] < 0) witness[m] = static_cast<std::int32_t>(c);
  }
  std::vector<std::vector<std::uint32_t>> moves_with(leaf_count);
  for (std::uint32_t m = 1; m < states; ++m) {
    if (witness[m] < 0) continue;
    bool maximal = true;
    for (Vertex i = 0; i < leaf_count && maximal; ++i)
      if (!(m >> i & 1) && witness[m | (1u << i)] >= 0) maximal = false;
    if (!maximal) continue;
    for (Vertex i = 0; i < leaf_count; ++i)
      if (m >> i & 1) moves_with[i].push_back(m);
  }

  const std::uint32_t full = static_cast<std::uint32_t>(states - 1);
  std::vector<std::uint32_t> from(states, 0);
  std::vector<std::uint32_t> via(states, 0);
  std::vector<char> seen(states, 0);
  std::deque<std::uint32_t> queue{0};
  seen[0] = 1;
  while (!queue.empty() && !seen[full]) {
    const std::uint32_t s = queue.front();
    queue.pop_front();
    const int low = std::countr_one(s);
    for (std::uint32_t m : moves_with[low]) {
      const std::uint32_t t = s | m;
      if (seen[t]) continue;
      seen[t] = 1;
      from[t] = s;
      via[t] = m;
      queue.push_back(t);
    }
  }
  if (!seen[full]) throw InternalError("exact cover search found no cover");

  Cover cover;
  for (std::uint32_t s = full; s != 0; s = from[s])
    cover.sets.push_back(configs[witness[via[s]]]);
  std::reverse(cover.sets.begin(), cover.sets.end());
  return cover;
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= Mask{1} << (i % 64); }
  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
  void merge(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }
  std::int64_t count_missing(const Bits& o) const {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(o.words_[i] & ~words_[i]);
    return c;
  }
  std::int64_t count() const {
    std::int64_t c = 0;
    for (Mask w : words_) c += std::popcount(w);
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

 private:
  std::vector<Mask> words_;
};

// Components in reverse topological order (sinks first).
std::vector<std::vector<Vertex>> strongly_connected(const Digraph& g) {
  const Vertex n = g.vertex_count();
  std::vector<Vertex> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<Vertex>> out;
  Vertex counter = 0;
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& f = call.back();
      const auto succ = g.successors(f.v);
      if (f.next < succ.size()) {
        const Vertex w = succ[f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

class RcpSearch {
 public:
  RcpSearch(const RcpInstance& instance, std::uint64_t node_limit)
      : inst_(instance), n_(instance.vertex_count()), limit_(node_limit) {
    auto comps = strongly_connected(inst_.graph());
    std::reverse(comps.begin(), comps.end());
    comp_of_.assign(n_, 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (Vertex v : comps[c]) comp_of_[v] = c;
    for (const auto& comp : comps) {
      Weight p = 0;
      for (Vertex v : comp) p += inst_.profit()[v];
      if (p == 0) continue;
      Item item{Bits(n_), Bits(n_), static_cast<Weight>(comp.size()), p, {}};
      for (Vertex v : comp) item.own.set(v);
      for (Vertex v : closure(inst_.graph(), comp)) item.closure.set(v);
      items_.push_back(std::move(item));
    }
    for (std::size_t i = 0; i < items_.size(); ++i)
      for (std::size_t j = i + 1; j < items_.size(); ++j)
        if (items_[j].closure.intersects(items_[i].own))
          items_[i].descendants.push_back(j);
    by_density_.resize(items_.size());
    std::iota(by_density_.begin(), by_density_.end(), std::size_t{0});
    std::stable_sort(by_density_.begin(), by_density_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return items_[a].profit * items_[b].size >
                              items_[b].profit * items_[a].size;
                     });
  }

  // Best solution containing `required` and avoiding `forbidden`.
  std::optional<RcpSolution> optimize(const VertexSet& required,
                                      const VertexSet& forbidden) {
    find_mode_ = false;
    if (!reset(required, forbidden)) return std::nullopt;
    best_profit_ = -1;
    dfs(0);
    return best_;
  }

  // Some solution containing `required`, avoiding `forbidden`, with profit at
  // least `target`.
  std::optional<RcpSolution> find(const VertexSet& required,
                                  const VertexSet& forbidden, Weight target) {
    find_mode_ = true;
    target_ = target;
    if (!reset(required, forbidden)) return std::nullopt;
    best_.reset();
    dfs(0);
    return best_;
  }

  std::size_t component_of(Vertex v) const { return comp_of_[v]; }

 private:
  struct Item {
    Bits own;
    Bits closure;
    Weight size;
    Weight profit;
    std::vector<std::size_t> descendants;
  };
  enum class State : char { open, in };

  bool reset(const VertexSet& required, const VertexSet& forbidden) {
    chosen_ = Bits(n_);
    for (Vertex v : closure(inst_.graph(), required)) chosen_.set(v);
    count_ = chosen_.count();
    Bits banned(n_);
    for (Vertex v : forbidden) banned.set(v);
    if (count_ > inst_.budget() || chosen_.intersects(banned)) return false;
    state_.assign(items_.size(), State::open);
    blocked_.assign(items_.size(), 0);
    profit_ = 0;
    for (Vertex v = 0; v < n_; ++v)
      if (chosen_.test(v)) profit_ += inst_.profit()[v];
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (chosen_.intersects(items_[i].own)) state_[i] = State::in;
      if (items_[i].closure.intersects(banned)) blocked_[i] = 1;
    }
    best_.reset();
    nodes_ = 0;
    return true;
  }

  Weight bound(std::size_t from) const {
    Weight room = inst_.budget() - count_;
    Weight extra = 0;
    for (std::size_t i : by_density_) {
      if (i < from || state_[i] == State::in || blocked_[i]) continue;
      if (room <= 0) break;
      if (items_[i].size <= room) {
        extra += items_[i].profit;
        room -= items_[i].size;
      } else {
        extra += items_[i].profit * room / items_[i].size;
        room = 0;
      }
    }
    return profit_ + extra;
  }

  void record() {
    RcpSolution s;
    for (Vertex v = 0; v < n_; ++v)
      if (chosen_.test(v)) s.vertices.push_back(v);
    s.profit = profit_;
    best_ = std::move(s);
    best_profit_ = profit_;
  }

  // Returns true when the search can stop.
  bool dfs(std::size_t idx) {
    if (++nodes_ > limit_)
      throw GuardError("exact rule-caching search exceeded its node limit");
    if (find_mode_ && profit_ >= target_) {
      record();
      return true;
    }
    if (!find_mode_ && profit_ > best_profit_) record();
    while (idx < items_.size() &&
           (state_[idx] == State::in || blocked_[idx]))
      ++idx;
    if (idx == items_.size()) return false;
    const Weight b = bound(idx);
    if (find_mode_ ? b < target_ : b <= best_profit_) return false;

    const Item& item = items_[idx];
    const Weight cost = chosen_.count_missing(item.closure);
    if (count_ + cost <= inst_.budget()) {
      const Bits saved = chosen_;
      chosen_.merge(item.closure);
      count_ += cost;
      profit_ += item.profit;
      state_[idx] = State::in;
      const bool done = dfs(idx + 1);
      state_[idx] = State::open;
      profit_ -= item.profit;
      count_ -= cost;
      chosen_ = saved;
      if (done) return true;
    }
    for (std::size_t j : item.descendants) ++blocked_[j];
    ++blocked_[idx];
    const bool done = dfs(idx + 1);
    --blocked_[idx];
    for (std::size_t j : item.descendants) --blocked_[j];
    return done;
  }

  const RcpInstance& inst_;
  Vertex n_;
  std::uint64_t limit_;
  std::vector<std::size_t> comp_of_;
  std::vector<Item> items_;
  std::vector<std::size_t> by_density_;

  Bits chosen_;
  std::int64_t count_ = 0;
  Weight profit_ = 0;
  std::vector<State> state_;
  std::vector<int> blocked_;
  bool find_mode_ = false;
  Weight target_ = 0;
  Weight best_profit_ = -1;
  std::optional<RcpSolution> best_;
  std::uint64_t nodes_ = 0;
};

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    const std::uint64_t num = n - k + i;
    if (r > UINT64_MAX / num) return UINT64_MAX;
    r = r * num / i;
  }
  return r;
}

}  // namespace

RcpSolution exact_rcp(const RcpInstance& instance,
                      const ExactRcpOptions& options) {
  RcpSearch search(instance, options.node_limit);
  auto best = search.optimize({}, {});
  if (!best) throw InternalError("rule-caching search found no solution");
  if (!options.canonical) return *best;

  const Weight target = best->profit;
  VertexSet required, forbidden;
  std::vector<char> decided(instance.vertex_count(), 0);
  for (Vertex v = 0; v < instance.vertex_count(); ++v) {
    if (decided[v]) continue;
    VertexSet trial = set_union(required, closure(instance.graph(), {v}));
    if (static_cast<Weight>(trial.size()) <= instance.budget() &&
        search.find(trial, forbidden, target)) {
      required = std::move(trial);
      for (Vertex u : required) decided[u] = 1;
    } else {
      forbidden = set_union(forbidden, {v});
      decided[v] = 1;
    }
  }
  RcpSolution out{required, total_profit(instance, required)};
  if (out.profit != target)
    throw InternalError("canonical rule-caching pass lost optimality");
  return out;
}

DkshSolution exact_dksh(const DkshInstance& instance) {
  const Vertex n = instance.vertex_count();
  const auto k = static_cast<Vertex>(
      std::min<Weight>(instance.budget(), static_cast<Weight>(n)));
  if (n > 64) throw GuardError("exact hypergraph search supports n <= 64");
  if (binomial_saturating(n, k) > kDkshCombinationGuard)
    throw GuardError("exact hypergraph search exceeds " +
                     std::to_string(kDkshCombinationGuard) + " subsets");
  std::vector<Mask> edges;
  for (const auto& e : instance.hyperedges()) {
    Mask m = 0;
    for (Vertex v : e) m |= Mask{1} << v;
    edges.push_back(m);
  }
  const auto& weight = instance.weight();

  std::vector<Vertex> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  DkshSolution best{VertexSet(pick.begin(), pick.end()), -1};
  while (true) {
    Mask s = 0;
    for (Vertex v : pick) s |= Mask{1} << v;
    const Weight w = kernels::contained_weight(edges, weight, s);
    if (w > best.weight) best = {VertexSet(pick.begin(), pick.end()), w};
    Vertex i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (Vertex j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

std::vector<VertexSet> exact_bpcc(const BpccInstance& instance) {
  const Weight cap = instance.capacity();
  std::vector<VertexSet> bins;
  for (const auto& cluster : instance.clusters()) {
    const auto c = static_cast<int>(cluster.size());
    if (c > 20) throw GuardError("exact bin packing supports clusters <= 20");
    const std::size_t states = std::size_t{1} << c;
    struct Cell {
      Weight bins;
      Weight load;
      int last;
    };
    const Cell unset{INT64_MAX, INT64_MAX, -1};
    std::vector<Cell> dp(states, unset);
    dp[0] = {1, 0, -1};
    auto better = [](const Cell& a, const Cell& b) {
      return a.bins != b.bins ? a.bins < b.bins : a.load < b.load;
    };
    for (std::size_t s = 0; s < states; ++s) {
      if (dp[s].bins == INT64_MAX) continue;
      for (int i = 0; i < c; ++i) {
        if (s >> i & 1) continue;
        const Weight w = instance.weight()[cluster[i]];
        Cell next = dp[s].load + w <= cap ? Cell{dp[s].bins, dp[s].load + w, i}
                                          : Cell{dp[s].bins + 1, w, i};
        auto& slot = dp[s | (std::size_t{1} << i)];
        if (better(next, slot)) slot = next;
      }
    }
    std::vector<int> order;
    for (std::size_t s = states - 1; s != 0; s &= ~(std::size_t{1} << dp[s].last))
      order.push_back(dp[s].last);
    std::reverse(order.begin(), order.end());
    VertexSet bin;
    Weight load = 0;
    for (int i : order) {
      const Weight w = instance.weight()[cluster[i]];
      if (!bin.empty() && load + w > cap) {
        bins.push_back(make_vertex_set(std::move(bin)));
        bin.clear();
        load = 0;
      }
      bin.push_back(cluster[i]);
      load += w;
    }
    bins.push_back(make_vertex_set(std::move(bin)));
  }
  return bins;
}

}  // namespace pocover
