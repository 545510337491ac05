#ifndef KWAY_LOCALIZE_HPP
#define KWAY_LOCALIZE_HPP

#include <cstddef>
#include <vector>

#include "kway/geometry.hpp"
#include "kway/graph.hpp"
#include "kway/spectral.hpp"

namespace kway {

struct LocalizedFunction {
  Embedding psi;  // theta(v) * F(v)
  std::vector<double> theta;
  VertexSet support;  // vertices with psi(v) != 0
  VertexSet source;
  double eps = 0.0;
  // Edges where |psi(u)-psi(v)| > (1 + 2/eps) |F(u)-F(v)| beyond rounding.
  std::size_t stretch_violations = 0;
  double max_stretch = 0.0;  // max over edges of |psi(u)-psi(v)| / |F(u)-F(v)|
};

// theta(v) = max(0, 1 - d^_F(v, S)/eps) with d^_F the induced path metric of
// mv's embedding. eps may be +inf, giving theta = 1 wherever d^_F(v, S) is
// finite. Throws EmptySet.
LocalizedFunction bump_localize(const MetricView& mv, const VertexSet& S,
                                double eps);

struct DisjointBumps {
  std::vector<LocalizedFunction> localized;  // ordered like `values`
  std::vector<Eigen::VectorXd> values;       // scalar psi_i, ascending R
  std::vector<std::size_t> group;            // source group of each output
  std::vector<std::size_t> coordinate;       // coordinate kept for psi_i
  std::vector<double> rayleigh;              // scalar R(psi_i)
  std::vector<double> vector_rayleigh;       // R of the vector localization
  std::vector<double> averaging_bound;       // 2/(delta (r-i+1)) (1+4/beta)^2 R(F)
  double beta = 0.0;
  double separation = 0.0;  // measured min d^_F(T_i, T_j)
  double energy = 0.0;      // sum of vector localization energies
  double energy_bound = 0.0;  // 2 (1+4/beta)^2 * energy of F
  bool averaging_holds = true;
  bool energy_holds = true;
  bool mass_retained = true;
};

// Smallest d^_F(T_i, T_j) over i != j; +inf for fewer than two groups.
double group_separation(const MetricView& mv, const std::vector<VertexSet>& groups);

// Localizes each group with eps = beta/2, scalarizes with best_coordinate and
// sorts by Rayleigh quotient. Throws SeparationViolated when two groups are
// closer than beta in d^_F and MassTooSmall when a group carries less than
// delta of the total mass.
DisjointBumps disjoint_bumps(const MetricView& mv,
                             const std::vector<VertexSet>& groups, double beta,
                             double delta);

}  // namespace kway

#endif  // KWAY_LOCALIZE_HPP
