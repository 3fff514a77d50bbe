#pragma once

// Seeded instance generators. The generator is std::mt19937_64 (fully
// specified by the C++ standard) with rejection sampling for bounded
// integers, so a spec yields the same instance on every platform.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "pocover/core_model.hpp"

namespace pocover {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "graph" produces an arity-2, unit-weight hypergraph: a densest-k-subgraph
// instance in the common hypergraph format.
enum class GenKind { out_tree, bp_star, dag, digraph, hypergraph, bpcc, graph };

std::string_view to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(std::string_view name);

struct ShapeParams {
  std::optional<int> max_children;
  Weight size_min = 0;
  std::optional<Weight> size_max;  // defaults to k
  // Boundary trees allow root paths of weight exactly k; strict ones stay
  // below k.
  bool boundary = false;
  int edge_permille = 300;
  int arity_min = 1;
  int arity_max = 3;
  std::optional<int> edge_count;
  std::optional<int> cluster_count;
  Weight weight_max = 5;
};

struct GenSpec {
  GenKind kind = GenKind::out_tree;
  int n = 1;
  Weight k = 1;
  std::uint64_t seed = 0;
  ShapeParams shape;
};

using Instance = std::variant<CtInstance, RcpInstance, DkshInstance,
                              BpccInstance>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance_permille(int permille) { return uniform(0, 999) < permille; }

 private:
  std::mt19937_64 engine_;
};

Instance generate(const GenSpec& spec);

// Zero-size root with one leaf per item.
CtInstance make_bp_star(const std::vector<Weight>& items, Weight k);

}  // namespace pocover
