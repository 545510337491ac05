#include "kway/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "kway/error.hpp"
#include "kway/random.hpp"

namespace kway {

namespace {

std::vector<Vertex> nonzero_vertices(const MetricView& mv) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < mv.size(); ++v)
    if (!mv.is_zero(static_cast<Vertex>(v))) out.push_back(static_cast<Vertex>(v));
  return out;
}

Eigen::MatrixXd gather_rows(const Embedding& rows, const std::vector<Vertex>& ids) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), rows.cols());
  for (std::size_t i = 0; i < ids.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = rows.row(ids[i]);
  return out;
}

RandomPartition assemble(const MetricView& mv, const std::vector<Vertex>& ids,
                         const std::vector<std::vector<std::size_t>>& index_cells,
                         PartitionScheme scheme, double diameter,
                         std::uint64_t seed) {
  RandomPartition p;
  p.scheme = scheme;
  p.diameter = diameter;
  p.seed = seed;
  p.total_mass = mv.total_mass();
  for (const auto& cell : index_cells) {
    VertexSet s;
    s.reserve(cell.size());
    double m = 0.0;
    for (std::size_t i : cell) {
      s.push_back(ids[i]);
      m += mv.vertex_mass()[static_cast<std::size_t>(ids[i])];
    }
    std::sort(s.begin(), s.end());
    p.cells.push_back(std::move(s));
    p.cell_mass.push_back(m);
  }
  return p;
}

}  // namespace

std::vector<std::vector<std::size_t>> carve_points(
    const Eigen::Ref<const Eigen::MatrixXd>& unit_points, double radius,
    std::uint64_t seed) {
  if (!(radius > 0.0 && radius <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "carving radius must lie in (0, 1]");
  }
  const auto m = static_cast<std::size_t>(unit_points.rows());
  const auto h = unit_points.cols();
  std::vector<std::vector<std::size_t>> cells;
  if (m == 0) return cells;
  if (h == 0) throw Error(ErrorKind::InvalidArgument, "points have dimension 0");

  Rng rng(seed, 0x6361727665ULL);
  std::vector<std::size_t> uncovered(m);
  std::iota(uncovered.begin(), uncovered.end(), std::size_t{0});
  const double r2 = radius * radius;
  Eigen::VectorXd x(h);
  std::vector<std::size_t> hit;
  while (!uncovered.empty()) {
    // Uniform point of B(p_i, R) for a uniform uncovered i, kept with
    // probability 1/(number of uncovered balls containing it): the accepted
    // centre is uniform on the unit ball intersected with their union.
    std::size_t i = uncovered[rng.below(uncovered.size())];
    double len = 0.0;
    do {
      for (Eigen::Index j = 0; j < h; ++j) x(j) = rng.normal();
      len = x.norm();
    } while (len == 0.0);
    double rho = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(h));
    x = unit_points.row(static_cast<Eigen::Index>(i)).transpose() + (rho / len) * x;
    if (x.squaredNorm() > 1.0) continue;
    hit.clear();
    for (std::size_t j : uncovered) {
      if ((unit_points.row(static_cast<Eigen::Index>(j)).transpose() - x).squaredNorm() <= r2)
        hit.push_back(j);
    }
    // The proposal came from ball i, so x lies in it up to rounding.
    if (hit.empty()) continue;
    if (rng.uniform() * static_cast<double>(hit.size()) >= 1.0) continue;
    std::vector<char> taken(m, 0);
    for (std::size_t j : hit) taken[j] = 1;
    std::erase_if(uncovered, [&](std::size_t j) { return taken[j] != 0; });
    cells.push_back(hit);
  }
  return cells;
}

RandomPartition ball_carving(const MetricView& mv, double radius,
                             std::uint64_t seed) {
  auto ids = nonzero_vertices(mv);
  auto cells = carve_points(gather_rows(mv.unit_rows(), ids), radius, seed);
  return assemble(mv, ids, cells, PartitionScheme::BallCarving, 2.0 * radius, seed);
}

std::vector<std::vector<std::size_t>> grid_points(
    const Eigen::Ref<const Eigen::MatrixXd>& points, double diameter,
    std::uint64_t seed) {
  if (!(diameter > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "grid diameter must be positive");
  }
  const auto h = points.cols();
  std::vector<std::vector<std::size_t>> cells;
  if (points.rows() == 0) return cells;
  if (h == 0) throw Error(ErrorKind::InvalidArgument, "points have dimension 0");
  const double side = diameter / std::sqrt(static_cast<double>(h));
  Rng rng(seed, 0x67726964ULL);
  std::vector<double> offset(static_cast<std::size_t>(h));
  for (auto& o : offset) o = rng.uniform(0.0, side);

  std::map<std::vector<std::int64_t>, std::size_t> index;
  std::vector<std::int64_t> key(static_cast<std::size_t>(h));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < h; ++j) {
      key[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(
          std::floor((points(i, j) + offset[static_cast<std::size_t>(j)]) / side));
    }
    auto [it, fresh] = index.try_emplace(key, cells.size());
    if (fresh) cells.emplace_back();
    cells[it->second].push_back(static_cast<std::size_t>(i));
  }
  return cells;
}

RandomPartition shifted_grid_partition(const MetricView& mv, double diameter,
                                       std::uint64_t seed) {
  auto ids = nonzero_vertices(mv);
  auto cells = grid_points(gather_rows(mv.unit_rows(), ids), diameter, seed);
  return assemble(mv, ids, cells, PartitionScheme::ShiftedGrid, diameter, seed);
}

RandomPartition induced_ball_carving(const MetricView& mv, double diameter,
                                     std::uint64_t seed) {
  if (!(diameter > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "carving diameter must be positive");
  }
  auto ids = nonzero_vertices(mv);
  Rng rng(seed, 0x636b72ULL);
  std::vector<Vertex> order = ids;
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  const double radius = rng.uniform(diameter / 4.0, diameter / 2.0);

  std::vector<std::size_t> slot(mv.size(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i) slot[static_cast<std::size_t>(ids[i])] = i;
  std::vector<char> covered(mv.size(), 0);
  std::size_t remaining = ids.size();
  std::vector<std::vector<std::size_t>> cells;
  for (Vertex c : order) {
    if (remaining == 0) break;
    std::vector<std::size_t> cell;
    for (Vertex v : mv.induced_ball(c, radius)) {
      auto vi = static_cast<std::size_t>(v);
      if (covered[vi]) continue;
      covered[vi] = 1;
      cell.push_back(slot[vi]);
    }
    if (cell.empty()) continue;
    remaining -= cell.size();
    cells.push_back(std::move(cell));
  }
  return assemble(mv, ids, cells, PartitionScheme::InducedBallCarving, diameter, seed);
}

RandomPartition padded_interior(const MetricView& mv, const RandomPartition& p,
                                double radius) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(mv.size(), kNone);
  for (std::size_t c = 0; c < p.cells.size(); ++c)
    for (Vertex v : p.cells[c]) owner[static_cast<std::size_t>(v)] = c;

  RandomPartition out;
  out.scheme = PartitionScheme::Interior;
  out.diameter = p.diameter;
  out.seed = p.seed;
  out.total_mass = p.total_mass;
  for (std::size_t c = 0; c < p.cells.size(); ++c) {
    VertexSet inner;
    double m = 0.0;
    for (Vertex x : p.cells[c]) {
      bool inside = true;
      for (Vertex y : mv.induced_ball(x, radius)) {
        if (owner[static_cast<std::size_t>(y)] != c) {
          inside = false;
          break;
        }
      }
      if (inside) {
        inner.push_back(x);
        m += mv.vertex_mass()[static_cast<std::size_t>(x)];
      }
    }
    if (inner.empty()) continue;
    out.cells.push_back(std::move(inner));
    out.cell_mass.push_back(m);
  }
  return out;
}

double max_cell_diameter(const MetricView& mv, const RandomPartition& p,
                         std::uint64_t seed) {
  double best = 0.0;
  Rng rng(seed, 0x6469616dULL);
  for (const auto& cell : p.cells) {
    if (cell.size() <= 512) {
      for (std::size_t i = 0; i < cell.size(); ++i)
        for (std::size_t j = i + 1; j < cell.size(); ++j)
          best = std::max(best, mv.radial(cell[i], cell[j]));
    } else {
      for (int s = 0; s < 4096; ++s) {
        Vertex a = cell[rng.below(cell.size())], b = cell[rng.below(cell.size())];
        best = std::max(best, mv.radial(a, b));
      }
    }
  }
  return best;
}

double grouping_mass_cap(std::size_t k, std::size_t r) {
  const double kk = static_cast<double>(k), rr = static_cast<double>(r);
  return 1.0 / kk + (kk - rr + 1.0) / (8.0 * kk * rr);
}

namespace {

std::vector<std::size_t> by_mass_descending(const std::vector<double>& mass) {
  std::vector<std::size_t> order(mass.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });
  return order;
}

void finish_groups(const RandomPartition& p, GroupedPartition& g) {
  g.groups.clear();
  g.group_mass.clear();
  for (const auto& members : g.members) {
    VertexSet s;
    double m = 0.0;
    for (std::size_t c : members) {
      s.insert(s.end(), p.cells[c].begin(), p.cells[c].end());
      m += p.cell_mass[c];
    }
    std::sort(s.begin(), s.end());
    g.groups.push_back(std::move(s));
    g.group_mass.push_back(m);
  }
}

}  // namespace

GroupedPartition group_cells_lemma(const RandomPartition& p, std::size_t k,
                                   std::size_t r) {
  if (k == 0 || r == 0 || 2 * r < k || r > k) {
    throw Error(ErrorKind::InvalidArgument, "grouping needs k/2 <= r <= k");
  }
  const double total = p.total_mass;
  if (!(total > 0.0)) throw Error(ErrorKind::InsufficientMass, "total mass is zero");
  const double cap = grouping_mass_cap(k, r) * total;
  const double target = total / (2.0 * static_cast<double>(k));
  for (std::size_t c = 0; c < p.cells.size(); ++c) {
    if (p.cell_mass[c] > cap * (1.0 + 1e-12)) {
      throw Error(ErrorKind::InsufficientMass,
                  "cell " + std::to_string(c) + " exceeds the spreading mass cap");
    }
  }

  GroupedPartition g;
  g.k = k;
  g.total_mass = total;
  g.members.emplace_back();
  double current = 0.0;
  for (std::size_t c : by_mass_descending(p.cell_mass)) {
    if (g.members.size() > r) break;
    g.members.back().push_back(c);
    current += p.cell_mass[c];
    if (current >= target) {
      g.members.emplace_back();
      current = 0.0;
    }
  }
  // Cells left after the r-th group closes join the last group; unions of
  // distinct cells keep their mutual separation.
  if (g.members.size() > r) {
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < r; ++i)
      used.insert(used.end(), g.members[i].begin(), g.members[i].end());
    g.members.resize(r);
    std::vector<char> in(p.cells.size(), 0);
    for (std::size_t c : used) in[c] = 1;
    for (std::size_t c = 0; c < p.cells.size(); ++c)
      if (!in[c]) g.members.back().push_back(c);
  }
  finish_groups(p, g);
  if (g.groups.size() < r || g.group_mass.back() < target) {
    throw Error(ErrorKind::InsufficientMass,
                "cells ran out before " + std::to_string(r) + " groups reached mass " +
                    std::to_string(target));
  }
  double consumed = 0.0;
  for (std::size_t i = 0; i + 1 < r; ++i) {
    if (g.group_mass[i] > cap * (1.0 + 1e-12)) {
      throw Error(ErrorKind::InsufficientMass, "greedy group exceeded the mass cap");
    }
    consumed += g.group_mass[i];
  }
  const double kk = static_cast<double>(k), rr = static_cast<double>(r);
  const double budget = (1.0 - (kk - rr + 1.0) / (4.0 * rr) - 1.0 / (2.0 * kk)) * total;
  if (consumed > budget * (1.0 + 1e-12) + 1e-300) {
    throw Error(ErrorKind::InsufficientMass,
                "first r-1 groups consumed more than the counting budget");
  }
  return g;
}

GroupedPartition balance_groups(const RandomPartition& p, std::size_t k_prime) {
  if (k_prime == 0) throw Error(ErrorKind::InvalidArgument, "k' must be positive");
  GroupedPartition g;
  g.total_mass = p.total_mass;
  auto order = by_mass_descending(p.cell_mass);
  const std::size_t lead = std::min(order.size(), k_prime);
  g.k = lead;
  std::vector<double> mass(lead);
  for (std::size_t i = 0; i < lead; ++i) {
    g.members.push_back({order[i]});
    mass[i] = p.cell_mass[order[i]];
  }
  for (std::size_t i = lead; i < order.size(); ++i) {
    auto j = static_cast<std::size_t>(std::min_element(mass.begin(), mass.end()) -
                                      mass.begin());
    g.members[j].push_back(order[i]);
    mass[j] += p.cell_mass[order[i]];
  }
  finish_groups(p, g);
  return g;
}

}  // namespace kway
