#ifndef KWAY_GENERATORS_HPP
#define KWAY_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kway/graph.hpp"

namespace kway {

WeightedGraph path_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
// a x b lattice; vertex (i, j) has id i * b + j.
WeightedGraph grid_graph(std::size_t a, std::size_t b);
WeightedGraph complete_graph(std::size_t n);
// `count` cliques of `size` vertices; clique i's last vertex is joined to
// clique i+1's first vertex by an edge of weight `bridge`.
WeightedGraph clique_union(std::size_t count, std::size_t size, double bridge);
// As clique_union, with one more bridge closing the chain into a ring.
WeightedGraph clique_ring(std::size_t count, std::size_t size, double bridge);

struct PlantedGraph {
  WeightedGraph graph;
  std::vector<VertexSet> truth;
};

// Stochastic block model: cluster c holds ids [c*size, (c+1)*size). Vertices
// left isolated are tied to a uniformly random vertex of their own cluster
// (any other vertex when size == 1). Throws DegenerateParameters.
PlantedGraph planted_partition(std::size_t clusters, std::size_t size, double p_in,
                               double p_out, std::uint64_t seed);

// Erdos-Renyi G(n, p) with isolated vertices tied to a random other vertex.
WeightedGraph gnp_graph(std::size_t n, double p, std::uint64_t seed);

inline constexpr std::size_t kMaxHypercubeDim = 14;

// Complete graph on {0,1}^dim with w(x, y) = eps^{hamming(x, y)} and no
// self-loops, so w(x) = (1 + eps)^dim - 1. Weights below `drop_below` are
// omitted, which makes the graph an approximation. Throws
// DimensionTooLarge above kMaxHypercubeDim.
WeightedGraph noisy_hypercube(std::size_t dim, double eps, double drop_below = 0.0);

}  // namespace kway

#endif  // KWAY_GENERATORS_HPP
