#include "kway/localize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kway/error.hpp"

namespace kway {

LocalizedFunction bump_localize(const MetricView& mv, const VertexSet& S,
                                double eps) {
  if (S.empty()) throw Error(ErrorKind::EmptySet, "cannot localize to an empty set");
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  const Embedding& F = mv.embedding();
  const std::size_t n = mv.size();

  LocalizedFunction out;
  out.source = canonical(S);
  out.eps = eps;
  out.theta.assign(n, 0.0);
  out.psi = Embedding::Zero(F.rows(), F.cols());
  auto dist = mv.induced_from_set(out.source);
  for (std::size_t v = 0; v < n; ++v) {
    double d = dist[v];
    double t = 0.0;
    if (d != kInfinity) t = eps == kInfinity ? 1.0 : std::max(0.0, 1.0 - d / eps);
    out.theta[v] = t;
    if (t > 0.0) {
      const auto row = static_cast<Eigen::Index>(v);
      out.psi.row(row) = t * F.row(row);
      if (!mv.is_zero(static_cast<Vertex>(v))) out.support.push_back(static_cast<Vertex>(v));
    }
  }

  const double factor = eps == kInfinity ? 1.0 : 1.0 + 2.0 / eps;
  for (const Edge& e : mv.graph().edges()) {
    double lhs = (out.psi.row(e.u) - out.psi.row(e.v)).norm();
    double base = (F.row(e.u) - F.row(e.v)).norm();
    if (base > 0.0) out.max_stretch = std::max(out.max_stretch, lhs / base);
    if (lhs > factor * base * (1.0 + 1e-9) + 1e-12) ++out.stretch_violations;
  }
  return out;
}

double group_separation(const MetricView& mv, const std::vector<VertexSet>& groups) {
  double best = kInfinity;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto dist = mv.induced_from_set(groups[i]);
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      for (Vertex v : groups[j]) best = std::min(best, dist[static_cast<std::size_t>(v)]);
  }
  return best;
}

DisjointBumps disjoint_bumps(const MetricView& mv,
                             const std::vector<VertexSet>& groups, double beta,
                             double delta) {
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  const WeightedGraph& g = mv.graph();
  const Embedding& F = mv.embedding();
  const double total = mv.total_mass();

  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) throw Error(ErrorKind::EmptySet, "empty group");
    double m = 0.0;
    for (Vertex v : groups[i]) m += mv.vertex_mass()[static_cast<std::size_t>(v)];
    if (m < delta * total * (1.0 - 1e-12)) {
      throw Error(ErrorKind::MassTooSmall,
                  "group " + std::to_string(i) + " holds mass " + std::to_string(m) +
                      " below delta * total = " + std::to_string(delta * total));
    }
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto dist = mv.induced_from_set(groups[i]);
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      for (Vertex v : groups[j]) {
        double d = dist[static_cast<std::size_t>(v)];
        if (d < beta * (1.0 - 1e-12)) {
          throw Error(ErrorKind::SeparationViolated,
                      "groups " + std::to_string(i) + " and " + std::to_string(j) +
                          " are at distance " + std::to_string(d) + " < beta = " +
                          std::to_string(beta));
        }
      }
    }
  }

  DisjointBumps out;
  out.beta = beta;
  out.separation = group_separation(mv, groups);
  const double eps = beta / 2.0;
  const double base_energy = edge_energy(g, F);
  const double base_rayleigh = total > 0.0 ? base_energy / total : 0.0;
  const double stretch = beta == kInfinity ? 1.0 : (1.0 + 4.0 / beta);
  out.energy_bound = 2.0 * stretch * stretch * base_energy;

  struct Item {
    LocalizedFunction loc;
    CoordinateChoice coord;
    double vec_r;
    std::size_t group;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto loc = bump_localize(mv, groups[i], eps);
    double e = edge_energy(g, loc.psi);
    double m = mass(g, loc.psi);
    double inside = 0.0;
    for (Vertex v : groups[i]) inside += mv.vertex_mass()[static_cast<std::size_t>(v)];
    if (m < inside * (1.0 - 1e-12)) out.mass_retained = false;
    out.energy += e;
    auto coord = best_coordinate(g, loc.psi);
    items.push_back({std::move(loc), std::move(coord), e / m, i});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.coord.rayleigh < b.coord.rayleigh;
  });
  out.energy_holds = out.energy <= out.energy_bound * (1.0 + 1e-9) + 1e-12;

  const std::size_t r = items.size();
  for (std::size_t i = 0; i < r; ++i) {
    double bound = 2.0 / (delta * static_cast<double>(r - i)) * stretch * stretch *
                   base_rayleigh;
    if (items[i].coord.rayleigh > bound * (1.0 + 1e-9) + 1e-12) out.averaging_holds = false;
    out.values.push_back(items[i].coord.values);
    out.coordinate.push_back(items[i].coord.index);
    out.rayleigh.push_back(items[i].coord.rayleigh);
    out.vector_rayleigh.push_back(items[i].vec_r);
    out.averaging_bound.push_back(bound);
    out.group.push_back(items[i].group);
    out.localized.push_back(std::move(items[i].loc));
  }
  return out;
}

}  // namespace kway
