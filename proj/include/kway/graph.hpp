#ifndef KWAY_GRAPH_HPP
#define KWAY_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kway {

using Vertex = std::int32_t;

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

// Sorts and deduplicates in place; returns the argument for chaining.
VertexSet canonical(VertexSet s);

struct Edge {
  Vertex u;
  Vertex v;
  double w;
};

// Immutable undirected graph with strictly positive edge weights.
//
// Every vertex has positive weighted degree w(v) = sum of incident edge
// weights. Edges are stored once per unordered pair with u < v, sorted by
// (u, v); the adjacency lists are sorted by neighbour id.
class WeightedGraph {
 public:
  // Validates and canonicalises the edge list. Throws kway::Error with kind
  // VertexOutOfRange, NonPositiveWeight, SelfLoop, DuplicateEdge or
  // IsolatedVertex.
  static WeightedGraph build(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return degree_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  double degree(Vertex v) const { return degree_[static_cast<std::size_t>(v)]; }
  std::span<const double> degrees() const { return degree_; }
  double total_weight() const { return total_weight_; }
  double max_degree() const { return max_degree_; }
  double min_degree() const { return min_degree_; }

  std::span<const Vertex> neighbors(Vertex v) const;
  std::span<const double> neighbor_weights(Vertex v) const;

  // Weight of edge {u, v}, or 0 when absent. O(log deg(u)).
  double edge_weight(Vertex u, Vertex v) const;

  // w(S) = sum of degrees over S.
  double set_weight(std::span<const Vertex> s) const;

  // Total weight of edges with both endpoints in S, each edge counted once.
  double internal_weight(std::span<const Vertex> s) const;

  // Connected component label per vertex, labels 0..c-1 in order of first
  // appearance.
  std::vector<int> component_labels() const;
  int num_components() const;

 private:
  WeightedGraph() = default;

  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<double> adj_w_;
  std::vector<double> degree_;
  double total_weight_ = 0.0;
  double max_degree_ = 0.0;
  double min_degree_ = 0.0;
};

struct CutMetrics {
  VertexSet set;
  double cut_weight = 0.0;  // w(E(S, S^c))
  double set_weight = 0.0;  // w(S)
  double expansion = 0.0;   // cut_weight / set_weight
};

// Expansion of a nonempty vertex set; throws EmptySet.
CutMetrics expansion(const WeightedGraph& g, std::span<const Vertex> s);

// Same quantity through w(E(S,S^c)) = w(S) - 2 w(E(S,S)); used to
// cross-check the edge-scan route and for dense graphs where |S| is small.
double expansion_by_internal_weight(const WeightedGraph& g,
                                    std::span<const Vertex> s);

struct KWayExpansion {
  double value = 0.0;
  std::vector<VertexSet> witness;
};

inline constexpr std::size_t kDefaultBruteForceCap = 12;

// Exact rho_G(k): minimum over k disjoint nonempty sets of the largest
// expansion among them. Exponential; throws TooLarge when n exceeds cap.
KWayExpansion k_way_expansion_exact(const WeightedGraph& g, std::size_t k,
                                    std::size_t cap = kDefaultBruteForceCap);

}  // namespace kway

#endif  // KWAY_GRAPH_HPP
