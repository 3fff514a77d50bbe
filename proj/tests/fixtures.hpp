#pragma once

#include <optional>
#include <vector>

#include "pocover/core_model.hpp"
#include "pocover/instance_gen.hpp"

namespace fixtures {

using pocover::CtInstance;
using pocover::SizedOutTree;
using pocover::Vertex;
using pocover::Weight;

inline CtInstance tree(std::vector<std::optional<Vertex>> parent,
                       std::vector<Weight> size, Weight k) {
  return CtInstance(SizedOutTree(std::move(parent), std::move(size)), k);
}

// r(0) with four leaves of size 3, k=6.
inline CtInstance star4x3() { return pocover::make_bp_star({3, 3, 3, 3}, 6); }
// r(0) with three leaves of size 4, k=6.
inline CtInstance star3x4() { return pocover::make_bp_star({4, 4, 4}, 6); }
// r(0) -> x(1) -> `leaves` leaves of size 2, k=4.
inline CtInstance chain_x(int leaves) {
  std::vector<std::optional<Vertex>> parent{std::nullopt, 0};
  std::vector<Weight> size{0, 1};
  for (int i = 0; i < leaves; ++i) {
    parent.emplace_back(1);
    size.push_back(2);
  }
  return tree(std::move(parent), std::move(size), 4);
}

// Arcs 3->0, 0->1, 2->1.
inline pocover::Digraph small_dag() {
  return pocover::Digraph(4, {{3, 0}, {0, 1}, {2, 1}});
}

// Unit-weight hyperedges {0,1,2} and {2,3} on four vertices.
inline pocover::DkshInstance two_edges(Weight k) {
  return pocover::DkshInstance(4, {{0, 1, 2}, {2, 3}}, {1, 1}, k);
}

}  // namespace fixtures
