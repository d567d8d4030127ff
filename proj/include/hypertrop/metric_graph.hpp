#pragma once

#include <vector>

#include "hypertrop/poly_t.hpp"

namespace hypertrop {

// Finite metric multigraph: the bounded part of a tropical curve.
struct MetricGraph {
  struct Edge {
    int u, v;
    Rat length;
    int mult;
  };
  int num_vertices = 0;
  std::vector<Edge> edges;

  int first_betti() const;
  int num_components() const;
  std::vector<int> valences() const;
  // Deterministic cycle basis: shortest cycles first, ties broken by the
  // sorted list of edge indices. Each cycle is a list of edge indices.
  std::vector<std::vector<int>> cycle_basis() const;
  std::vector<Rat> cycle_lengths() const;
  // Edge indices surviving after repeatedly removing degree-1 vertices.
  std::vector<int> core_edges() const;
};

}  // namespace hypertrop
