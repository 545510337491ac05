#include "kway/graph.hpp"

#include <algorithm>
#include <limits>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "kway/error.hpp"

namespace kway {

VertexSet canonical(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

WeightedGraph WeightedGraph::build(std::size_t n, std::span<const Edge> edges) {
  WeightedGraph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
        static_cast<std::size_t>(e.v) >= n) {
      throw Error(ErrorKind::VertexOutOfRange,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") outside 0.." + std::to_string(n));
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::SelfLoop,
                  "self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorKind::NonPositiveWeight,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") has non-positive weight");
    }
    g.edges_.push_back(Edge{std::min(e.u, e.v), std::max(e.u, e.v), e.w});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].u == g.edges_[i - 1].u &&
        g.edges_[i].v == g.edges_[i - 1].v) {
      throw Error(ErrorKind::DuplicateEdge,
                  "duplicate edge (" + std::to_string(g.edges_[i].u) + "," +
                      std::to_string(g.edges_[i].v) + ")");
    }
  }

  std::vector<std::size_t> count(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++count[static_cast<std::size_t>(e.u) + 1];
    ++count[static_cast<std::size_t>(e.v) + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  g.offsets_ = count;
  g.adj_.resize(2 * g.edges_.size());
  g.adj_w_.resize(2 * g.edges_.size());
  g.degree_.assign(n, 0.0);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling in this order leaves every
  // adjacency list sorted: lower neighbours arrive via their own (u, *)
  // block before higher ones.
  for (const Edge& e : g.edges_) {
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    g.adj_[cursor[u]] = e.v;
    g.adj_w_[cursor[u]++] = e.w;
    g.adj_[cursor[v]] = e.u;
    g.adj_w_[cursor[v]++] = e.w;
    g.degree_[u] += e.w;
    g.degree_[v] += e.w;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!(g.degree_[v] > 0.0)) {
      throw Error(ErrorKind::IsolatedVertex,
                  "vertex " + std::to_string(v) + " has zero weighted degree");
    }
  }
  g.total_weight_ = std::accumulate(g.degree_.begin(), g.degree_.end(), 0.0);
  if (n > 0) {
    auto [mn, mx] = std::minmax_element(g.degree_.begin(), g.degree_.end());
    g.min_degree_ = *mn;
    g.max_degree_ = *mx;
  }
  return g;
}

std::span<const Vertex> WeightedGraph::neighbors(Vertex v) const {
  auto i = static_cast<std::size_t>(v);
  return std::span<const Vertex>(adj_).subspan(offsets_[i],
                                               offsets_[i + 1] - offsets_[i]);
}

std::span<const double> WeightedGraph::neighbor_weights(Vertex v) const {
  auto i = static_cast<std::size_t>(v);
  return std::span<const double>(adj_w_).subspan(offsets_[i],
                                                 offsets_[i + 1] - offsets_[i]);
}

double WeightedGraph::edge_weight(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0.0;
  return neighbor_weights(u)[static_cast<std::size_t>(it - nb.begin())];
}

double WeightedGraph::set_weight(std::span<const Vertex> s) const {
  double total = 0.0;
  for (Vertex v : s) total += degree(v);
  return total;
}

double WeightedGraph::internal_weight(std::span<const Vertex> s) const {
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      total += edge_weight(s[i], s[j]);
    }
  }
  return total;
}

std::vector<int> WeightedGraph::component_labels() const {
  const std::size_t n = num_vertices();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : edges_) {
    auto a = find(static_cast<std::size_t>(e.u));
    auto b = find(static_cast<std::size_t>(e.v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto r = find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

int WeightedGraph::num_components() const {
  auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

CutMetrics expansion(const WeightedGraph& g, std::span<const Vertex> s) {
  if (s.empty()) throw Error(ErrorKind::EmptySet, "expansion of empty set");
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) {
      throw Error(ErrorKind::VertexOutOfRange, "vertex id out of range");
    }
    in[static_cast<std::size_t>(v)] = 1;
  }
  CutMetrics m;
  m.set = canonical(VertexSet(s.begin(), s.end()));
  for (Vertex v : m.set) {
    m.set_weight += g.degree(v);
    auto nb = g.neighbors(v);
    auto nw = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!in[static_cast<std::size_t>(nb[i])]) m.cut_weight += nw[i];
    }
  }
  m.expansion = m.cut_weight / m.set_weight;
  return m;
}

double expansion_by_internal_weight(const WeightedGraph& g,
                                    std::span<const Vertex> s) {
  if (s.empty()) throw Error(ErrorKind::EmptySet, "expansion of empty set");
  VertexSet c = canonical(VertexSet(s.begin(), s.end()));
  double ws = g.set_weight(c);
  double cut = ws - 2.0 * g.internal_weight(c);
  return std::max(0.0, cut) / ws;
}

namespace {

// Largest number of pairwise disjoint family members inside each mask.
// Only the full-mask answer matters, but the table is needed to recover a
// witness.
std::vector<int> pack_table(std::size_t n, const std::vector<char>& family) {
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<int> best(full + 1u, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t low = mask & (~mask + 1u);
    int b = best[mask ^ low];
    std::uint32_t rest = mask ^ low;
    // Every submask of `mask` that contains `low`.
    for (std::uint32_t sub = rest;; sub = (sub - 1u) & rest) {
      std::uint32_t cand = sub | low;
      if (family[cand]) b = std::max(b, 1 + best[mask ^ cand]);
      if (sub == 0) break;
    }
    best[mask] = b;
  }
  return best;
}

}  // namespace

KWayExpansion k_way_expansion_exact(const WeightedGraph& g, std::size_t k,
                                    std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n > cap || n > 24) {
    throw Error(ErrorKind::TooLarge, "exact k-way expansion limited to n <= " +
                                         std::to_string(std::min<std::size_t>(cap, 24)));
  }
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidArgument, "k must lie in 1..n");
  }
  const std::uint32_t full = (1u << n) - 1u;

  // internal[mask] via the lowest-bit recurrence, then phi per mask.
  std::vector<double> internal(full + 1u, 0.0), weight(full + 1u, 0.0);
  double min_edge = std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) min_edge = std::min(min_edge, e.w);
  std::vector<double> phi(full + 1u, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto v = static_cast<Vertex>(std::countr_zero(mask));
    std::uint32_t rest = mask & (mask - 1u);
    double add = 0.0;
    auto nb = g.neighbors(v);
    auto nw = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (rest & (1u << nb[i])) add += nw[i];
    }
    internal[mask] = internal[rest] + add;
    weight[mask] = weight[rest] + g.degree(v);
    double cut = weight[mask] - 2.0 * internal[mask];
    // A nonzero cut is at least the lightest edge; smaller values are
    // cancellation residue.
    if (cut < 0.5 * min_edge) cut = 0.0;
    phi[mask] = cut / weight[mask];
  }

  std::vector<double> levels(phi.begin() + 1, phi.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto family_at = [&](double t) {
    std::vector<char> fam(full + 1u, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) fam[mask] = phi[mask] <= t;
    return fam;
  };

  std::size_t lo = 0, hi = levels.size() - 1;  // levels[hi] admits singletons
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto best = pack_table(n, family_at(levels[mid]));
    if (static_cast<std::size_t>(best[full]) >= k) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  KWayExpansion out;
  out.value = levels[lo];
  auto fam = family_at(levels[lo]);
  auto best = pack_table(n, fam);
  std::uint32_t mask = full;
  while (mask != 0 && out.witness.size() < k) {
    std::uint32_t low = mask & (~mask + 1u);
    if (best[mask] == best[mask ^ low]) {
      mask ^= low;
      continue;
    }
    std::uint32_t rest = mask ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1u) & rest) {
      std::uint32_t cand = sub | low;
      if (fam[cand] && best[mask] == 1 + best[mask ^ cand]) {
        VertexSet s;
        for (std::size_t v = 0; v < n; ++v) {
          if (cand & (1u << v)) s.push_back(static_cast<Vertex>(v));
        }
        out.witness.push_back(std::move(s));
        mask ^= cand;
        break;
      }
      if (sub == 0) break;
    }
  }
  std::sort(out.witness.begin(), out.witness.end());
  return out;
}

}  // namespace kway
