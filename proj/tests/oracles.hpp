#ifndef KWAY_TESTS_ORACLES_HPP
#define KWAY_TESTS_ORACLES_HPP

// Reference computations written independently of the library code paths
// they check: plain loops over std::vector, no shared helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "kway/error.hpp"
#include "kway/graph.hpp"
#include "kway/random.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Cyclic Jacobi rotations; returns eigenvalues ascending.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// I - D^{-1/2} A D^{-1/2} assembled straight from the edge list.
inline Matrix normalized_laplacian(const kway::WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> deg(n, 0.0);
  for (const auto& e : g.edges()) {
    deg[static_cast<std::size_t>(e.u)] += e.w;
    deg[static_cast<std::size_t>(e.v)] += e.w;
  }
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  for (const auto& e : g.edges()) {
    auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    double s = e.w / std::sqrt(deg[u] * deg[v]);
    m[u][v] -= s;
    m[v][u] -= s;
  }
  return m;
}

// Expansion of the vertex set encoded by `mask` (bit v = vertex v).
inline double mask_expansion(const kway::WeightedGraph& g, std::uint32_t mask) {
  double cut = 0.0, vol = 0.0;
  for (const auto& e : g.edges()) {
    bool a = (mask >> e.u) & 1u, b = (mask >> e.v) & 1u;
    if (a) vol += e.w;
    if (b) vol += e.w;
    if (a != b) cut += e.w;
  }
  return cut / vol;
}

// rho_G(k) by labelling every vertex with 0..k (0 = unused) and scoring each
// labelling where all k labels occur. (k+1)^n work; intended for n <= 8.
inline double brute_rho(const kway::WeightedGraph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::uint32_t> masks(k + 1, 0);
    for (std::size_t v = 0; v < n; ++v) masks[label[v]] |= (1u << v);
    bool all = true;
    for (std::size_t c = 1; c <= k; ++c) all = all && masks[c] != 0;
    if (all) {
      double worst = 0.0;
      for (std::size_t c = 1; c <= k; ++c) worst = std::max(worst, mask_expansion(g, masks[c]));
      best = std::min(best, worst);
    }
    std::size_t i = 0;
    while (i < n && label[i] == k) label[i++] = 0;
    if (i == n) break;
    ++label[i];
  }
  return best;
}

// Best superlevel set of q by recomputing every candidate from scratch.
inline double brute_best_sweep(const kway::WeightedGraph& g, const std::vector<double>& q) {
  double best = std::numeric_limits<double>::infinity();
  for (double t : q) {
    if (!(t > 0.0)) continue;
    double cut = 0.0, vol = 0.0;
    for (const auto& e : g.edges()) {
      bool a = q[static_cast<std::size_t>(e.u)] >= t, b = q[static_cast<std::size_t>(e.v)] >= t;
      if (a) vol += e.w;
      if (b) vol += e.w;
      if (a != b) cut += e.w;
    }
    best = std::min(best, cut / vol);
  }
  return best;
}

inline double jaccard(const kway::VertexSet& a, const kway::VertexSet& b) {
  std::size_t i = 0, j = 0, both = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++both;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(both) / static_cast<double>(a.size() + b.size() - both);
}

// Connected random graph with weights in [0.5, 2): a random spanning tree
// plus G(n, p) extra edges.
inline kway::WeightedGraph random_weighted_graph(std::size_t n, double p, std::uint64_t seed) {
  kway::Rng rng(seed, 99);
  std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
  std::vector<kway::Edge> edges;
  auto add = [&](std::size_t u, std::size_t v) {
    if (u == v || has[u][v]) return;
    has[u][v] = has[v][u] = 1;
    edges.push_back({static_cast<kway::Vertex>(std::min(u, v)),
                     static_cast<kway::Vertex>(std::max(u, v)), rng.uniform(0.5, 2.0)});
  };
  for (std::size_t v = 1; v < n; ++v) add(v, rng.below(v));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) add(u, v);
  return kway::WeightedGraph::build(n, edges);
}

// True when f throws kway::Error of the given kind.
template <class F>
bool throws_kind(F&& f, kway::ErrorKind kind) {
  try {
    f();
  } catch (const kway::Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace oracle

#endif  // KWAY_TESTS_ORACLES_HPP
