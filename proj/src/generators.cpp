#include "kway/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "kway/error.hpp"
#include "kway/random.hpp"

namespace kway {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

Vertex id(std::size_t v) { return static_cast<Vertex>(v); }

void add_clique(std::vector<Edge>& edges, std::size_t first, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      edges.push_back({id(first + i), id(first + j), 1.0});
}

WeightedGraph cliques(std::size_t count, std::size_t size, double bridge, bool ring) {
  require(count >= 1 && size >= 1, "clique counts and sizes must be positive");
  require(bridge > 0.0, "bridge weight must be positive");
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < count; ++c) add_clique(edges, c * size, size);
  for (std::size_t c = 0; c + 1 < count; ++c)
    edges.push_back({id(c * size + size - 1), id((c + 1) * size), bridge});
  if (ring && count >= 3) edges.push_back({id(0), id(count * size - 1), bridge});
  return WeightedGraph::build(count * size, edges);
}

}  // namespace

WeightedGraph path_graph(std::size_t n) {
  require(n >= 2, "a path needs at least 2 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({id(i), id(i + 1), 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph cycle_graph(std::size_t n) {
  require(n >= 3, "a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({id(i), id((i + 1) % n), 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph grid_graph(std::size_t a, std::size_t b) {
  require(a >= 1 && b >= 1 && a * b >= 2, "a grid needs at least 2 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      std::size_t v = i * b + j;
      if (j + 1 < b) edges.push_back({id(v), id(v + 1), 1.0});
      if (i + 1 < a) edges.push_back({id(v), id(v + b), 1.0});
    }
  }
  return WeightedGraph::build(a * b, edges);
}

WeightedGraph complete_graph(std::size_t n) {
  require(n >= 2, "a complete graph needs at least 2 vertices");
  std::vector<Edge> edges;
  add_clique(edges, 0, n);
  return WeightedGraph::build(n, edges);
}

WeightedGraph clique_union(std::size_t count, std::size_t size, double bridge) {
  return cliques(count, size, bridge, false);
}

WeightedGraph clique_ring(std::size_t count, std::size_t size, double bridge) {
  return cliques(count, size, bridge, true);
}

PlantedGraph planted_partition(std::size_t clusters, std::size_t size, double p_in,
                               double p_out, std::uint64_t seed) {
  auto bad = [](const std::string& m) { return Error(ErrorKind::DegenerateParameters, m); };
  if (clusters < 1 || size < 1) throw bad("cluster count and size must be positive");
  if (clusters * size < 2) throw bad("need at least two vertices");
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw bad("probabilities must lie in [0, 1]");
  if (p_in < p_out) throw bad("p_in must be at least p_out");

  const std::size_t n = clusters * size;
  Rng rng(seed, 0x73626dULL);
  std::vector<Edge> edges;
  std::vector<char> touched(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      double p = (u / size == v / size) ? p_in : p_out;
      if (rng.bernoulli(p)) {
        edges.push_back({id(u), id(v), 1.0});
        touched[u] = touched[v] = 1;
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (touched[u]) continue;
    std::size_t v;
    if (size >= 2) {
      std::size_t base = (u / size) * size;
      do v = base + rng.below(size); while (v == u);
    } else {
      do v = rng.below(n); while (v == u);
    }
    edges.push_back({id(std::min(u, v)), id(std::max(u, v)), 1.0});
    touched[u] = touched[v] = 1;
  }
  PlantedGraph out{WeightedGraph::build(n, edges), {}};
  for (std::size_t c = 0; c < clusters; ++c) {
    VertexSet s;
    for (std::size_t i = 0; i < size; ++i) s.push_back(id(c * size + i));
    out.truth.push_back(std::move(s));
  }
  return out;
}

WeightedGraph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 2, "G(n,p) needs at least 2 vertices");
  require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
  Rng rng(seed, 0x676e70ULL);
  std::vector<Edge> edges;
  std::vector<char> touched(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) {
        edges.push_back({id(u), id(v), 1.0});
        touched[u] = touched[v] = 1;
      }
  for (std::size_t u = 0; u < n; ++u) {
    if (touched[u]) continue;
    std::size_t v;
    do v = rng.below(n); while (v == u);
    edges.push_back({id(std::min(u, v)), id(std::max(u, v)), 1.0});
    touched[u] = touched[v] = 1;
  }
  return WeightedGraph::build(n, edges);
}

WeightedGraph noisy_hypercube(std::size_t dim, double eps, double drop_below) {
  if (dim > kMaxHypercubeDim) {
    throw Error(ErrorKind::DimensionTooLarge,
                "hypercube dimension " + std::to_string(dim) + " exceeds " +
                    std::to_string(kMaxHypercubeDim));
  }
  require(dim >= 1, "hypercube dimension must be positive");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  const std::size_t n = std::size_t{1} << dim;
  std::vector<double> pw(dim + 1, 1.0);
  for (std::size_t d = 1; d <= dim; ++d) pw[d] = pw[d - 1] * eps;
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      double w = pw[static_cast<std::size_t>(std::popcount(x ^ y))];
      if (w >= drop_below) edges.push_back({id(x), id(y), w});
    }
  return WeightedGraph::build(n, edges);
}

}  // namespace kway
