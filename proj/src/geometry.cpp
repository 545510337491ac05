#include "kway/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_map>
#include <utility>

#include "kway/error.hpp"
#include "kway/random.hpp"

namespace kway {

MetricView::MetricView(const WeightedGraph& g, Embedding F, MetricMode mode)
    : g_(&g), F_(std::move(F)), mode_(mode) {
  if (static_cast<std::size_t>(F_.rows()) != g.num_vertices()) {
    throw Error(ErrorKind::DimensionMismatch,
                "embedding rows must match the vertex count");
  }
  const auto n = F_.rows();
  unit_ = Embedding::Zero(n, F_.cols());
  norms_.resize(static_cast<std::size_t>(n));
  vertex_mass_.resize(static_cast<std::size_t>(n));
  for (Eigen::Index v = 0; v < n; ++v) {
    double nv = F_.row(v).norm();
    norms_[static_cast<std::size_t>(v)] = nv;
    if (nv > 0.0) unit_.row(v) = F_.row(v) / nv;
    double m = g.degree(static_cast<Vertex>(v)) * nv * nv;
    vertex_mass_[static_cast<std::size_t>(v)] = m;
    total_mass_ += m;
  }
}

double MetricView::radial(Vertex u, Vertex v) const {
  bool zu = is_zero(u), zv = is_zero(v);
  if (zu && zv) return 0.0;
  if (zu || zv) return kInfinity;
  return (unit_.row(u) - unit_.row(v)).norm();
}

std::vector<double> MetricView::induced_from(Vertex source) const {
  Vertex s[1] = {source};
  return induced_from_set(s);
}

std::vector<double> MetricView::induced_from_set(
    std::span<const Vertex> sources) const {
  std::vector<double> dist(size(), kInfinity);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (Vertex s : sources) {
    dist[static_cast<std::size_t>(s)] = 0.0;
    pq.emplace(0.0, s);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (Vertex v : g_->neighbors(u)) {
      double len = radial(u, v);
      if (len == kInfinity) continue;
      double nd = d + len;
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return dist;
}

std::vector<Vertex> MetricView::induced_ball(Vertex source,
                                             double radius) const {
  std::vector<Vertex> out;
  std::unordered_map<Vertex, double> dist;
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    out.push_back(u);
    for (Vertex v : g_->neighbors(u)) {
      double nd = d + radial(u, v);
      if (nd > radius) continue;
      auto it = dist.find(v);
      if (it == dist.end() || nd < it->second) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return out;
}

double MetricView::distance(Vertex u, Vertex v) const {
  if (mode_ == MetricMode::Radial) return radial(u, v);
  return induced_from(u)[static_cast<std::size_t>(v)];
}

NormLipschitzReport check_norm_lipschitz(const MetricView& mv, bool all_pairs,
                                         double rel_tol) {
  NormLipschitzReport rep;
  const Embedding& F = mv.embedding();
  auto check = [&](Vertex u, Vertex v) {
    if (mv.is_zero(u) != mv.is_zero(v)) return;
    double lhs = mv.radial(u, v) * mv.norm(u);
    double rhs = 2.0 * (F.row(u) - F.row(v)).norm();
    ++rep.checked;
    rep.max_slack = std::max(rep.max_slack, lhs - rhs);
    if (lhs > rhs + rel_tol * std::max(1.0, rhs)) ++rep.violations;
  };
  if (all_pairs) {
    const auto n = static_cast<Vertex>(mv.size());
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v) check(u, v);
  } else {
    for (const Edge& e : mv.graph().edges()) {
      check(e.u, e.v);
      check(e.v, e.u);
    }
  }
  return rep;
}

SpreadingCertificate spreading_check(const MetricView& mv, double diameter,
                                     double eta, std::size_t probes,
                                     std::uint64_t seed, double rel_tol) {
  if (!(diameter > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "spreading diameter must be positive");
  }
  SpreadingCertificate cert;
  cert.diameter = diameter;
  cert.eta = eta;
  const std::size_t n = mv.size();
  std::vector<Vertex> centers;
  if (n <= 4096) {
    for (std::size_t v = 0; v < n; ++v) centers.push_back(static_cast<Vertex>(v));
  } else {
    Rng rng(seed, 0x737072656164ULL);
    for (std::size_t i = 0; i < probes; ++i)
      centers.push_back(static_cast<Vertex>(rng.below(n)));
  }
  const double total = mv.total_mass();
  if (!(total > 0.0)) return cert;
  const double radius = diameter / 2.0;
  const double bound = eta * total;
  const auto& unit = mv.unit_rows();
  const auto& vm = mv.vertex_mass();
  for (Vertex c : centers) {
    if (mv.is_zero(c)) continue;  // its ball holds only massless vertices
    double ball = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (mv.is_zero(static_cast<Vertex>(v))) continue;
      double d = (unit.row(c) - unit.row(static_cast<Eigen::Index>(v))).norm();
      if (d <= radius) ball += vm[v];
    }
    ++cert.checked_sets;
    cert.max_fraction = std::max(cert.max_fraction, ball / total);
    if (ball > bound * (1.0 + rel_tol)) {
      cert.violations.push_back({c, ball, bound});
    }
  }
  return cert;
}

GaussianProjection::GaussianProjection(std::size_t k, std::size_t h,
                                       std::uint64_t seed)
    : k_(k), h_(h), seed_(seed) {
  if (k == 0 || h == 0) {
    throw Error(ErrorKind::InvalidArgument, "projection dimensions must be positive");
  }
  Rng rng(seed, 0x67617573ULL);
  matrix_.resize(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(k));
  const double scale = 1.0 / std::sqrt(static_cast<double>(h));
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
      matrix_(i, j) = scale * rng.normal();
}

Eigen::VectorXd GaussianProjection::apply(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != k_) {
    throw Error(ErrorKind::DimensionMismatch, "vector dimension differs from k");
  }
  return matrix_ * x;
}

Embedding project(const GaussianProjection& gp, EmbeddingRef F) {
  if (static_cast<std::size_t>(F.cols()) != gp.input_dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "embedding dimension differs from projection input");
  }
  return F * gp.matrix().transpose();
}

std::size_t concentration_projection_dimension(std::size_t k, double diameter) {
  const double d = diameter / 16.0;
  const double kk = static_cast<double>(k);
  double h = (12.0 / (d * d)) * std::log(256.0 * kk * kk * kk / (d * d));
  return static_cast<std::size_t>(std::ceil(h));
}

DimensionReduction reduce_dimension(const WeightedGraph& g, EmbeddingRef F,
                                    double diameter, const ReduceOptions& opts) {
  if (!(diameter > 0.0 && diameter <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "diameter must lie in (0, 1]");
  }
  const auto k = static_cast<std::size_t>(F.cols());
  const double base_mass = mass(g, F);
  if (!(base_mass > 0.0)) throw Error(ErrorKind::ZeroFunction, "embedding is zero");
  const double band = 2.0 * diameter / 16.0;
  const bool from_bound = opts.h == 0;
  const std::size_t h = from_bound ? concentration_projection_dimension(k, diameter) : opts.h;

  DimensionReduction out;
  if (h >= k) {
    out.F = F;
    out.h = k;
    out.identity = true;
    return out;
  }

  const double base_energy = edge_energy(g, F);
  const double d = diameter / 16.0;
  for (std::size_t attempt = 0; attempt < opts.retries; ++attempt) {
    GaussianProjection gp(k, h, Rng::mix(opts.seed) ^ Rng::mix(attempt + 1));
    Embedding P = project(gp, F);
    double m = mass(g, P);
    double e = edge_energy(g, P);
    double ratio = base_energy > 0.0 ? (e / m) / (base_energy / base_mass) : 1.0;
    if (base_energy == 0.0 && e > 0.0) ratio = kInfinity;
    double mass_ratio = m / base_mass;
    bool in_band = mass_ratio >= 1.0 - band && mass_ratio <= 1.0 + band;
    if (!(m > 0.0) || ratio > 8.0 || (from_bound && !in_band)) continue;

    std::size_t outside = 0;
    for (Eigen::Index v = 0; v < F.rows(); ++v) {
      double a = F.row(v).squaredNorm(), b = P.row(v).squaredNorm();
      if (b < (1.0 - d) * a || b > (1.0 + d) * a) ++outside;
    }
    out.F = std::move(P);
    out.h = h;
    out.attempts = attempt + 1;
    out.accepted_stream = attempt + 1;
    out.rayleigh_ratio = ratio;
    out.mass_ratio = mass_ratio;
    out.mass_in_band = in_band;
    out.out_of_band_fraction =
        static_cast<double>(outside) / static_cast<double>(F.rows());
    return out;
  }
  throw Error(ErrorKind::RetriesExhausted,
              "no projection met the Rayleigh bound within the retry budget");
}

}  // namespace kway
