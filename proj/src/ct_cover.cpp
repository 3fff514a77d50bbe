#include "pocover/ct_cover.hpp"

#include <algorithm>
#include <string>

namespace pocover {

namespace {

std::vector<char> to_mask(Vertex n, const VertexSet& set) {
  std::vector<char> mask(n, 0);
  for (Vertex v : set) {
    if (v < 0 || v >= n)
      throw InputError("vertex " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

// Total size of {v} plus its descendants inside the active set.
std::vector<Weight> active_subtree_sizes(const SizedOutTree& tree,
                                         const std::vector<char>& active) {
  std::vector<Weight> sub(tree.vertex_count(), 0);
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (!active[v]) continue;
    sub[v] += tree.size(v);
    if (auto p = tree.parent(v)) sub[*p] += sub[v];
  }
  return sub;
}

void check_active(const SizedOutTree& tree, const std::vector<char>& active) {
  if (!active[tree.root()])
    throw InternalError("active set does not contain the root");
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    const auto p = tree.parent(v);
    if (active[v] && p && !active[*p])
      throw InternalError("active set is not ancestor-closed");
  }
}

void collect_subtree(const SizedOutTree& tree, const std::vector<char>& active,
                     Vertex u, VertexSet& out) {
  std::vector<Vertex> stack{u};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (Vertex c : tree.children(v))
      if (active[c]) stack.push_back(c);
  }
}

}  // namespace

Preprocessed preprocess(const CtInstance& instance) {
  const auto& tree = instance.tree();
  const Vertex n = tree.vertex_count();
  const Weight k = instance.capacity();

  for (Vertex v = 0; v < n; ++v)
    if (tree.path_weight(v) > k)
      throw Infeasible("root path of vertex " + std::to_string(v) +
                       " weighs " + std::to_string(tree.path_weight(v)) +
                       " > " + std::to_string(k));

  Preprocessed out;
  std::vector<char> alive(n, 1);
  std::vector<int> live_children(n, 0);
  for (Vertex v = 0; v < n; ++v)
    live_children[v] = static_cast<int>(tree.children(v).size());

  // Zero-size leaves go first: a zero leaf under a full root path would
  // otherwise be forced into a set of its own.
  auto detach_zero_leaves = [&] {
    for (bool again = true; again;) {
      again = false;
      for (Vertex v = 0; v < n; ++v) {
        if (!alive[v] || v == tree.root() || live_children[v] != 0 ||
            tree.size(v) != 0)
          continue;
        const Vertex p = *tree.parent(v);
        out.zero_leaves.push_back({v, p});
        alive[v] = 0;
        --live_children[p];
        again = true;
      }
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    detach_zero_leaves();
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v] || live_children[v] != 0 || tree.path_weight(v) != k)
        continue;
      out.forced.push_back({tree.ancestors(v)});
      for (Vertex u = v;;) {
        alive[u] = 0;
        const auto p = tree.parent(u);
        if (!p || --live_children[*p] > 0) break;
        u = *p;
      }
      changed = true;
    }
  }

  const bool root_alone = alive[tree.root()] &&
                          live_children[tree.root()] == 0;
  if (!alive[tree.root()] || (root_alone && !out.forced.empty()))
    return out;

  std::vector<Vertex> to_reduced(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    to_reduced[v] = static_cast<Vertex>(out.to_original.size());
    out.to_original.push_back(v);
  }
  std::vector<std::optional<Vertex>> parent;
  std::vector<Weight> size;
  for (Vertex v : out.to_original) {
    const auto p = tree.parent(v);
    parent.push_back(p ? std::optional<Vertex>(to_reduced[*p]) : std::nullopt);
    size.push_back(tree.size(v));
  }
  out.reduced.emplace(SizedOutTree(std::move(parent), std::move(size)), k);
  return out;
}

AnchorStep anchor_step(const CtInstance& instance, const VertexSet& active) {
  const auto& tree = instance.tree();
  const Weight k = instance.capacity();
  const auto mask = to_mask(tree.vertex_count(), active);
  check_active(tree, mask);
  const auto sub = active_subtree_sizes(tree, mask);
  if (sub[tree.root()] <= k)
    throw InternalError("anchor step called on an active set within capacity");

  AnchorStep out;
  std::vector<char> fits(tree.vertex_count(), 0);
  for (Vertex v : active) {
    const Weight des = sub[v] - tree.size(v);
    if (des <= k - tree.path_weight(v)) {
      fits[v] = 1;
      out.fitting.push_back(v);
    }
  }
  for (Vertex v : active) {
    if (fits[v]) continue;
    bool all_fit = true;
    for (Vertex c : tree.children(v))
      if (mask[c] && !fits[c]) all_fit = false;
    if (all_fit) out.anchors.push_back(v);
  }
  if (out.anchors.empty()) throw InternalError("no anchor found");
  return out;
}

NextFitResult next_fit(const CtInstance& instance, const VertexSet& active,
                       Vertex anchor) {
  const auto& tree = instance.tree();
  const Weight k = instance.capacity();
  const auto mask = to_mask(tree.vertex_count(), active);
  if (anchor < 0 || anchor >= tree.vertex_count() || !mask[anchor])
    throw InternalError("anchor is not active");
  check_active(tree, mask);
  const auto sub = active_subtree_sizes(tree, mask);
  const Weight h = tree.path_weight(anchor);
  if (h + sub[anchor] - tree.size(anchor) <= k)
    throw InternalError("anchor subtree fits within capacity");

  const VertexSet base = tree.ancestors(anchor);
  struct Bin {
    VertexSet members;
    Weight load;
  };
  std::vector<Bin> bins;
  for (Vertex u : tree.children(anchor)) {
    if (!mask[u]) continue;
    if (h + sub[u] > k)
      throw InternalError("child subtree of anchor exceeds residual capacity");
    if (bins.empty() || bins.back().load + sub[u] > k) bins.push_back({base, h});
    collect_subtree(tree, mask, u, bins.back().members);
    bins.back().load += sub[u];
  }

  NextFitResult out;
  if (bins.size() % 2 == 1) {
    out.leftover = set_difference(make_vertex_set(bins.back().members), base);
    bins.pop_back();
  }
  for (auto& bin : bins) {
    auto members = make_vertex_set(std::move(bin.members));
    out.anchored = set_union(out.anchored, set_difference(members, base));
    out.sets.push_back({std::move(members)});
  }
  return out;
}

CoverResult cover(const CtInstance& instance) {
  Preprocessed pre = preprocess(instance);
  CoverResult result;
  result.trace.forced_prefix = pre.forced;
  result.cover.sets = pre.forced;

  if (pre.reduced) {
    const CtInstance& red = *pre.reduced;
    const auto& tree = red.tree();
    const Vertex n = tree.vertex_count();
    const Weight k = red.capacity();
    const auto& orig = pre.to_original;
    auto lift = [&](const VertexSet& s) {
      VertexSet out;
      out.reserve(s.size());
      for (Vertex v : s) out.push_back(orig[v]);
      return out;
    };

    std::vector<char> active(n, 1);
    std::vector<char> covered(n, 0);
    Weight total = tree.total_size();
    std::vector<Vertex> anchor_ids;
    int t = 0;
    while (total > k) {
      if (++t > n) throw InternalError("anchor loop did not terminate");
      VertexSet act;
      for (Vertex v = 0; v < n; ++v)
        if (active[v]) act.push_back(v);
      const auto step = anchor_step(red, act);
      const auto sub = active_subtree_sizes(tree, active);
      std::vector<char> used(n, 0);
      for (Vertex a : step.anchors) {
        auto nf = next_fit(red, act, a);
        AnchorRecord rec;
        rec.anchor = orig[a];
        rec.iteration = t;
        rec.h = tree.path_weight(a);
        for (Vertex v : nf.anchored) rec.anchored_size += tree.size(v);
        for (Vertex v : nf.leftover) rec.leftover_size += tree.size(v);
        if (rec.anchored_size + rec.leftover_size != sub[a] - tree.size(a))
          throw InternalError("anchored and leftover sizes do not add up");
        rec.anchored_vertices = lift(nf.anchored);
        rec.leftover_vertices = lift(nf.leftover);
        for (const auto& q : nf.sets) {
          for (Vertex v : q.members) covered[v] = 1;
          rec.emitted_sets.push_back(result.cover.sets.size());
          result.cover.sets.push_back({lift(q.members)});
          ++result.trace.loop_set_count;
        }
        for (Vertex v : nf.anchored) used[v] = 1;
        anchor_ids.push_back(a);
        result.trace.anchors.push_back(std::move(rec));
      }
      for (Vertex v = 0; v < n; ++v) {
        if (used[v]) {
          active[v] = 0;
          total -= tree.size(v);
        }
      }
    }
    result.trace.iterations = t;

    bool uncovered = false;
    VertexSet residual;
    for (Vertex v = 0; v < n; ++v) {
      if (!active[v]) continue;
      residual.push_back(v);
      if (!covered[v]) uncovered = true;
    }
    if (uncovered) {
      result.trace.final_residual_set = Configuration{lift(residual)};
      result.cover.sets.push_back(*result.trace.final_residual_set);
    }

    std::vector<char> is_top(anchor_ids.size(), 1);
    for (std::size_t i = 0; i < anchor_ids.size(); ++i)
      for (std::size_t j = 0; j < anchor_ids.size(); ++j)
        if (i != j && tree.is_ancestor(anchor_ids[j], anchor_ids[i]))
          is_top[i] = 0;
    std::vector<Vertex> tops;
    for (std::size_t i = 0; i < anchor_ids.size(); ++i) {
      if (!is_top[i]) continue;
      tops.push_back(anchor_ids[i]);
      result.trace.top_anchors.push_back(orig[anchor_ids[i]]);
      if (result.trace.anchors[i].leftover_size > 0) result.trace.alpha = 1;
    }
    result.trace.top_anchors = make_vertex_set(result.trace.top_anchors);
    for (Vertex leaf : tree.leaves()) {
      bool under_top = false;
      for (Vertex a : tops)
        if (tree.is_ancestor(a, leaf)) under_top = true;
      if (!under_top) result.trace.alpha = 1;
    }
  }

  auto& sets = result.cover.sets;
  for (auto it = pre.zero_leaves.rbegin(); it != pre.zero_leaves.rend(); ++it) {
    auto target = std::find_if(sets.begin(), sets.end(), [&](const auto& c) {
      return contains(c.members, it->parent);
    });
    if (target == sets.end())
      throw InternalError("parent of a zero-size leaf is uncovered");
    auto& m = target->members;
    if (!contains(m, it->leaf))
      m.insert(std::upper_bound(m.begin(), m.end(), it->leaf), it->leaf);
    result.trace.zero_leaf_attachments.emplace_back(
        it->leaf, static_cast<std::size_t>(target - sets.begin()));
  }
  std::sort(result.trace.zero_leaf_attachments.begin(),
            result.trace.zero_leaf_attachments.end());
  return result;
}

Bounds bounds(const RunTrace& trace, const CtInstance& instance) {
  const Weight k = instance.capacity();
  Bounds b;
  b.alpha = trace.alpha;
  b.lb = b.ub = trace.alpha;
  for (const auto& rec : trace.anchors) {
    if (rec.h >= k) throw InternalError("anchor path weight reaches capacity");
    b.lb += rec.anchored_size / (k - rec.h);
    b.ub += 2 * (rec.anchored_size / (k - rec.h + 1));
  }
  return b;
}

}  // namespace pocover
