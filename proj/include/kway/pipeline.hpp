#ifndef KWAY_PIPELINE_HPP
#define KWAY_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kway/geometry.hpp"
#include "kway/graph.hpp"
#include "kway/rounding.hpp"
#include "kway/spectral.hpp"

namespace kway {

// Carving radius R of the cuts route when none is configured.
inline constexpr double kDefaultCarvingRadius = 0.8;

struct PipelineConfig {
  std::size_t k = 2;
  double delta = 0.0;  // 0 selects 1/(2k)
  std::uint64_t seed = 0;
  std::size_t trials = 16;
  MetricMode metric = MetricMode::Radial;
  bool project = true;  // random projection in k_sparse_cuts
  double tol = 1e-8;
  std::size_t brute_force_cap = kDefaultBruteForceCap;
  std::size_t k_prime = 0;      // 0 selects ceil(3k/2)
  std::size_t eigen_count = 0;  // 0 selects min(2k, n) for cuts
  std::size_t h = 0;            // projected dimension; 0 selects a default
  double radius = 0.0;          // carving radius; 0 selects the default
  std::size_t threads = 1;
};

struct TrialSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  double score = 0.0;  // max R or max phi of the trial's output
  std::size_t cells = 0;
  std::size_t projected_dim = 0;
  std::string note;  // failure reason
};

struct PipelineReport {
  std::string algorithm;
  std::size_t k = 0;
  std::size_t required = 0;  // ceil((1 - delta) k)
  double delta = 0.0;
  double diameter = 0.0;  // Delta
  double radius = 0.0;    // padding radius or carving radius
  std::size_t embedding_dim = 0;
  std::size_t projected_dim = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd residuals;

  std::vector<Eigen::VectorXd> functions;
  std::vector<double> rayleigh;
  std::vector<VertexSet> sets;
  std::vector<double> expansion;
  double max_rayleigh = 0.0;
  double max_expansion = 0.0;

  // NaN when undefined (zero eigenvalue or k = 1).
  double phi_over_sqrt_lambda_k = 0.0;
  double phi_over_sqrt_lambda_2k_log_k = 0.0;
  double rayleigh_over_lambda_k = 0.0;

  std::string candidate;  // "carving", "sign-split" or "trivial"
  std::size_t best_trial = 0;
  std::uint64_t best_seed = 0;
  std::vector<TrialSummary> trials;
  double seconds = 0.0;
};

// Delta = sqrt(delta / (48 + delta)), the largest with
// (1 - Delta^2)^{-1} <= 1 + delta/48.
double functions_diameter(double delta);

// Largest Delta with (1 - 16 Delta^2)^{-1} (1 + 4 Delta) <= 1 + delta/48,
// found by bisection.
double reduced_functions_diameter(double delta);

// Seed of trial t; trials of one run form a prefix-stable sequence.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t t);

// k eigenfunctions, shifted-grid (or induced-metric) partition, padded
// interiors grouped to ceil((1 - delta/2) k) sets, bump localization, and the
// ceil((1 - delta) k) best functions. Best trial by largest Rayleigh
// quotient. Throws PipelineFailure when no trial succeeds.
PipelineReport disjoint_support_functions(const WeightedGraph& g,
                                          const PipelineConfig& cfg);

// As above, after a Gaussian projection of the eigenfunctions.
PipelineReport disjoint_support_functions_reduced(const WeightedGraph& g,
                                                  const PipelineConfig& cfg);

// Eigenfunctions (2k by default), optional projection, ball carving on the
// radial images, balancing into k' groups and per-group threshold sweeps;
// returns the ceil((1 - delta) k) sets of least expansion. For k = 2 the
// positive and negative parts of f_2 are swept as an extra candidate.
PipelineReport k_sparse_cuts(const WeightedGraph& g, const PipelineConfig& cfg);

// Disjoint functions at delta = 1/(2k), one sweep per function, then the
// heaviest set is replaced by the complement of the others.
PipelineReport k_way_partition(const WeightedGraph& g, const PipelineConfig& cfg);

}  // namespace kway

#endif  // KWAY_PIPELINE_HPP
