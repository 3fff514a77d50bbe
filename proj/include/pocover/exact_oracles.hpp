#pragma once

// Exact solvers for small instances. Each refuses inputs past its size guard
// with GuardError instead of running unbounded.

#include <cstdint>
#include <vector>

#include "pocover/core_model.hpp"

namespace pocover {

inline constexpr Vertex kConfigurationGuard = 20;
inline constexpr Vertex kExactCtLeafGuard = 16;
inline constexpr std::uint64_t kDkshCombinationGuard = 10'000'000;

// Nonempty ancestor-closed subsets within capacity, in increasing bitmask
// order (bit v set iff v is a member).
std::vector<Configuration> enumerate_configurations(const CtInstance& instance);

// Minimum-cardinality cover. Throws Infeasible when some root path exceeds
// the capacity.
Cover exact_ct(const CtInstance& instance);

struct RcpSolution {
  VertexSet vertices;
  Weight profit = 0;
};

struct ExactRcpOptions {
  // Pick the optimum that, scanning vertices by increasing id, includes each
  // vertex whenever some optimum extending the earlier choices does.
  bool canonical = true;
  std::uint64_t node_limit = 20'000'000;
};

// Branch and bound over the strongly connected components that carry profit.
RcpSolution exact_rcp(const RcpInstance& instance,
                      const ExactRcpOptions& options = {});

struct DkshSolution {
  VertexSet vertices;
  Weight weight = 0;
};

// Best set of exactly min(k, n) vertices; the lexicographically first among
// ties.
DkshSolution exact_dksh(const DkshInstance& instance);

// Minimum number of bins; each bin lists item ids. Clusters are packed
// independently, each by a subset dynamic program.
std::vector<VertexSet> exact_bpcc(const BpccInstance& instance);

}  // namespace pocover
