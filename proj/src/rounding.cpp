#include "kway/rounding.hpp"

#include <algorithm>
#include <numeric>

#include "kway/error.hpp"

namespace kway {

namespace {

SweepResult sweep_candidates(const WeightedGraph& g, EmbeddingRef psi,
                             std::vector<Vertex> cand) {
  if (static_cast<std::size_t>(psi.rows()) != g.num_vertices()) {
    throw Error(ErrorKind::DimensionMismatch, "map has wrong number of rows");
  }
  std::vector<double> q(g.num_vertices(), 0.0);
  double top = 0.0;
  for (Vertex v : cand) {
    q[static_cast<std::size_t>(v)] = psi.row(v).squaredNorm();
    top = std::max(top, q[static_cast<std::size_t>(v)]);
  }
  if (!(top > 0.0)) throw Error(ErrorKind::ZeroFunction, "map vanishes on the scope");
  std::erase_if(cand, [&](Vertex v) { return !(q[static_cast<std::size_t>(v)] > 0.0); });
  std::vector<double> level(cand.size());
  std::sort(cand.begin(), cand.end(), [&](Vertex a, Vertex b) {
    double qa = q[static_cast<std::size_t>(a)], qb = q[static_cast<std::size_t>(b)];
    return qa != qb ? qa > qb : a < b;
  });
  for (std::size_t i = 0; i < cand.size(); ++i)
    level[i] = q[static_cast<std::size_t>(cand[i])] / top;

  std::vector<char> in(g.num_vertices(), 0);
  double cut = 0.0, weight = 0.0;
  double best_phi = 0.0, best_weight = 0.0;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    Vertex u = cand[i];
    in[static_cast<std::size_t>(u)] = 1;
    weight += g.degree(u);
    auto nb = g.neighbors(u);
    auto nw = g.neighbor_weights(u);
    for (std::size_t j = 0; j < nb.size(); ++j)
      cut += in[static_cast<std::size_t>(nb[j])] ? -nw[j] : nw[j];
    if (i + 1 < cand.size() && level[i + 1] == level[i]) continue;
    double phi = std::max(cut, 0.0) / weight;
    if (best_len == 0 || phi < best_phi || (phi == best_phi && weight < best_weight)) {
      best_phi = phi;
      best_weight = weight;
      best_len = i + 1;
    }
  }

  SweepResult res;
  res.set.assign(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(best_len));
  res.threshold = q[static_cast<std::size_t>(cand[best_len - 1])];
  std::sort(res.set.begin(), res.set.end());
  auto cm = expansion(g, res.set);
  res.expansion = cm.expansion;
  res.cut_weight = cm.cut_weight;
  res.set_weight = cm.set_weight;
  return res;
}

}  // namespace

SweepResult cheeger_sweep(const WeightedGraph& g, EmbeddingRef psi) {
  std::vector<Vertex> all(g.num_vertices());
  std::iota(all.begin(), all.end(), Vertex{0});
  return sweep_candidates(g, psi, std::move(all));
}

SweepResult cheeger_sweep_within(const WeightedGraph& g, EmbeddingRef psi,
                                 const VertexSet& scope) {
  if (scope.empty()) throw Error(ErrorKind::EmptySet, "empty sweep scope");
  return sweep_candidates(g, psi, canonical(scope));
}

std::vector<SweepResult> multiway_threshold_round(
    const WeightedGraph& g, EmbeddingRef F, const std::vector<VertexSet>& groups,
    std::size_t r) {
  std::vector<SweepResult> found;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) {
      throw Error(ErrorKind::EmptyGroup, "group " + std::to_string(i) + " is empty");
    }
    bool any = false;
    for (Vertex v : groups[i]) any = any || F.row(v).squaredNorm() > 0.0;
    if (!any) continue;
    auto s = cheeger_sweep_within(g, F, groups[i]);
    s.source = i;
    found.push_back(std::move(s));
  }
  if (found.size() < r) {
    throw Error(ErrorKind::EmptyGroup, "only " + std::to_string(found.size()) +
                                           " groups produced a set; " +
                                           std::to_string(r) + " requested");
  }
  std::stable_sort(found.begin(), found.end(), [](const SweepResult& a, const SweepResult& b) {
    return a.expansion < b.expansion;
  });
  found.resize(r);
  return found;
}

double expected_threshold_weight(const WeightedGraph& g, EmbeddingRef F,
                                 const std::vector<VertexSet>& groups) {
  // Each v contributes w(v) * P[tau <= |F(v)|^2] = w(v) |F(v)|^2 / M, but the
  // integral is taken over the sorted breakpoints of the superlevel weight.
  std::vector<std::pair<double, double>> pts;  // (level, weight)
  double top = 0.0;
  for (const auto& grp : groups) {
    for (Vertex v : grp) {
      double q = F.row(v).squaredNorm();
      if (q > 0.0) pts.emplace_back(q, g.degree(v));
      top = std::max(top, q);
    }
  }
  if (!(top > 0.0)) return 0.0;
  std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.first > b.first; });
  double integral = 0.0, weight = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    weight += pts[i].second;
    double lo = i + 1 < pts.size() ? pts[i + 1].first : 0.0;
    integral += weight * (pts[i].first - lo);
  }
  return integral / top;
}

CompletedPartition complete_to_partition(const WeightedGraph& g,
                                         const std::vector<VertexSet>& sets) {
  if (sets.empty()) throw Error(ErrorKind::EmptyInput, "no sets to complete");
  std::vector<int> owner(g.num_vertices(), -1);
  std::vector<VertexSet> canon;
  std::vector<double> weight;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) {
      throw Error(ErrorKind::EmptyInput, "set " + std::to_string(i) + " is empty");
    }
    canon.push_back(canonical(sets[i]));
    for (Vertex v : canon.back()) {
      if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) {
        throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v));
      }
      auto& o = owner[static_cast<std::size_t>(v)];
      if (o >= 0) {
        throw Error(ErrorKind::Overlap, "vertex " + std::to_string(v) + " is in sets " +
                                            std::to_string(o) + " and " +
                                            std::to_string(i));
      }
      o = static_cast<int>(i);
    }
    weight.push_back(g.set_weight(canon.back()));
  }
  std::vector<std::size_t> order(canon.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });

  CompletedPartition out;
  std::vector<char> taken(g.num_vertices(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.max_input_expansion =
        std::max(out.max_input_expansion, expansion(g, canon[order[i]]).expansion);
    if (i + 1 == order.size()) break;
    out.parts.push_back(canon[order[i]]);
    for (Vertex v : canon[order[i]]) taken[static_cast<std::size_t>(v)] = 1;
  }
  VertexSet rest;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!taken[v]) rest.push_back(static_cast<Vertex>(v));
  out.parts.push_back(std::move(rest));
  for (const auto& p : out.parts) out.expansion.push_back(expansion(g, p).expansion);
  const double k = static_cast<double>(out.parts.size());
  out.bound_holds =
      out.expansion.back() <= k * out.max_input_expansion * (1.0 + 1e-9) + 1e-12;
  return out;
}

}  // namespace kway
