#pragma once

// Covering an out-tree with configurations: preprocessing, the anchor loop,
// next-fit packing at each anchor, and the instance-specific bounds.

#include <optional>
#include <vector>

#include "pocover/core_model.hpp"

namespace pocover {

struct ZeroLeaf {
  Vertex leaf;
  Vertex parent;
  friend bool operator==(const ZeroLeaf&, const ZeroLeaf&) = default;
};

struct Preprocessed {
  // Absent when the forced sets already cover every remaining vertex.
  std::optional<CtInstance> reduced;
  // Reduced id -> original id; increasing.
  std::vector<Vertex> to_original;
  std::vector<Configuration> forced;
  // In detachment order.
  std::vector<ZeroLeaf> zero_leaves;
};

// Throws Infeasible when some root path is heavier than the capacity.
Preprocessed preprocess(const CtInstance& instance);

struct AnchorStep {
  VertexSet fitting;  // X_t
  VertexSet anchors;  // A_t
};

// Requires the active set to contain the root, be ancestor-closed, and weigh
// more than the capacity.
AnchorStep anchor_step(const CtInstance& instance, const VertexSet& active);

struct NextFitResult {
  std::vector<Configuration> sets;
  VertexSet anchored;
  VertexSet leftover;
};

NextFitResult next_fit(const CtInstance& instance, const VertexSet& active,
                       Vertex anchor);

struct AnchorRecord {
  Vertex anchor = 0;
  int iteration = 0;
  Weight h = 0;
  Weight anchored_size = 0;
  Weight leftover_size = 0;
  VertexSet anchored_vertices;
  VertexSet leftover_vertices;
  std::vector<std::size_t> emitted_sets;
};

// Vertex ids in the trace refer to the original instance.
struct RunTrace {
  std::vector<AnchorRecord> anchors;
  VertexSet top_anchors;
  int alpha = 0;
  std::optional<Configuration> final_residual_set;
  std::vector<Configuration> forced_prefix;
  std::vector<std::pair<Vertex, std::size_t>> zero_leaf_attachments;
  std::size_t loop_set_count = 0;
  int iterations = 0;
};

struct CoverResult {
  Cover cover;
  RunTrace trace;
};

CoverResult cover(const CtInstance& instance);

struct Bounds {
  Weight lb = 0;
  Weight ub = 0;
  int alpha = 0;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

Bounds bounds(const RunTrace& trace, const CtInstance& instance);

}  // namespace pocover
