#ifndef KWAY_GEOMETRY_HPP
#define KWAY_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "kway/graph.hpp"
#include "kway/spectral.hpp"

namespace kway {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class MetricMode { Radial, InducedPath };

// Distances derived from an embedding F : V -> R^h.
//
// Radial mode uses d_F(u,v) = || F(u)/|F(u)| - F(v)/|F(v)| ||, with
// d_F = 0 when both images vanish and +inf when exactly one does. Induced
// mode uses the shortest-path metric of G with edge lengths d_F, the largest
// metric agreeing with d_F on edges. The view borrows the graph, which must
// outlive it.
class MetricView {
 public:
  MetricView(const WeightedGraph& g, Embedding F,
             MetricMode mode = MetricMode::Radial);

  const WeightedGraph& graph() const { return *g_; }
  const Embedding& embedding() const { return F_; }
  MetricMode mode() const { return mode_; }
  std::size_t size() const { return static_cast<std::size_t>(F_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(F_.cols()); }

  double norm(Vertex v) const { return norms_[static_cast<std::size_t>(v)]; }
  bool is_zero(Vertex v) const { return norm(v) == 0.0; }
  // F(v)/|F(v)|, or the zero vector when F(v) = 0.
  const Embedding& unit_rows() const { return unit_; }

  double radial(Vertex u, Vertex v) const;

  // Single-source distances d^_F(source, .); unreachable vertices get +inf.
  std::vector<double> induced_from(Vertex source) const;
  // d^_F(S, .) via one multi-source shortest-path pass.
  std::vector<double> induced_from_set(std::span<const Vertex> sources) const;
  // Vertices v with d^_F(source, v) <= radius, in order of discovery.
  std::vector<Vertex> induced_ball(Vertex source, double radius) const;

  // Distance in this view's mode. Induced mode costs one shortest-path run.
  double distance(Vertex u, Vertex v) const;

  // Squared-norm mass w(v) |F(v)|^2 per vertex, and its total.
  const std::vector<double>& vertex_mass() const { return vertex_mass_; }
  double total_mass() const { return total_mass_; }

 private:
  const WeightedGraph* g_;
  Embedding F_;
  Embedding unit_;
  MetricMode mode_;
  std::vector<double> norms_;
  std::vector<double> vertex_mass_;
  double total_mass_ = 0.0;
};

struct NormLipschitzReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  // max over checked pairs of d_F(u,v)|F(u)| - 2|F(u)-F(v)|
  double max_slack = -kInfinity;
};

// Checks d_F(u,v) |F(u)| <= 2 |F(u) - F(v)| on every edge, and on every
// ordered pair when all_pairs is set (intended for n <= 256). Pairs where
// exactly one image vanishes are skipped: the inequality concerns nonzero
// vectors.
NormLipschitzReport check_norm_lipschitz(const MetricView& mv,
                                         bool all_pairs = false,
                                         double rel_tol = 1e-12);

struct SpreadingViolation {
  Vertex center = 0;
  double ball_mass = 0.0;
  double bound = 0.0;
};

struct SpreadingCertificate {
  double diameter = 0.0;  // Delta
  double eta = 0.0;
  std::size_t checked_sets = 0;
  double max_fraction = 0.0;  // largest ball mass / total mass seen
  std::vector<SpreadingViolation> violations;

  bool valid() const { return violations.empty(); }
};

// Probes d_F-balls of radius Delta/2 (diameter <= Delta) and checks that
// each carries at most eta of the total mass. Every vertex is a centre when
// n <= 4096; otherwise `probes` centres are drawn from `seed`.
SpreadingCertificate spreading_check(const MetricView& mv, double diameter,
                                     double eta, std::size_t probes,
                                     std::uint64_t seed,
                                     double rel_tol = 1e-9);

// x -> h^{-1/2} (<g_1, x>, ..., <g_h, x>) with g_i i.i.d. standard Gaussian
// vectors in R^k, drawn from a counter-based stream keyed by the seed.
class GaussianProjection {
 public:
  GaussianProjection(std::size_t k, std::size_t h, std::uint64_t seed);

  std::size_t input_dim() const { return k_; }
  std::size_t output_dim() const { return h_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }  // h x k, scaled

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::size_t k_;
  std::size_t h_;
  std::uint64_t seed_;
  Eigen::MatrixXd matrix_;
};

// Row-wise image of F; throws DimensionMismatch.
Embedding project(const GaussianProjection& gp, EmbeddingRef F);

// Smallest h with 2 exp(-d^2 h / 12) <= d^2 k^{-3} / 128 where d = Delta/16.
std::size_t concentration_projection_dimension(std::size_t k, double diameter);

struct DimensionReduction {
  Embedding F;
  std::size_t h = 0;
  bool identity = false;
  std::size_t attempts = 0;
  std::uint64_t accepted_stream = 0;
  double rayleigh_ratio = 1.0;    // R(F') / R(F), or 1 when R(F) = 0
  double mass_ratio = 1.0;        // total mass of F' over that of F
  bool mass_in_band = true;       // within [1 - 2d, 1 + 2d], d = Delta/16
  double out_of_band_fraction = 0.0;  // fraction of vertices outside U
};

struct ReduceOptions {
  std::size_t retries = 16;
  std::uint64_t seed = 0;
  // Explicit target dimension; 0 uses concentration_projection_dimension.
  std::size_t h = 0;
};

// Gaussian dimension reduction that retries until R(F') <= 8 R(F). When the
// target dimension comes from the concentration bound, the total-mass band
// is also required. Returns F unchanged when the target dimension is >= k.
// Throws RetriesExhausted.
DimensionReduction reduce_dimension(const WeightedGraph& g, EmbeddingRef F,
                                    double diameter,
                                    const ReduceOptions& opts = {});

}  // namespace kway

#endif  // KWAY_GEOMETRY_HPP
