#ifndef KWAY_ROUNDING_HPP
#define KWAY_ROUNDING_HPP

#include <cstddef>
#include <vector>

#include "kway/graph.hpp"
#include "kway/spectral.hpp"

namespace kway {

struct SweepResult {
  VertexSet set;
  double threshold = 0.0;  // set = {v in scope : |psi(v)|^2 >= threshold}
  double expansion = 0.0;
  double cut_weight = 0.0;
  double set_weight = 0.0;
  std::size_t source = 0;
};

// Best superlevel set of |psi|^2 over all distinct positive levels. Levels
// are compared after scaling the largest to 1, and ties in expansion go to
// the lighter set. O(|E| + n log n).
SweepResult cheeger_sweep(const WeightedGraph& g, EmbeddingRef psi);

// Same, with membership restricted to `scope`; edges leaving the scope
// still count toward the cut.
SweepResult cheeger_sweep_within(const WeightedGraph& g, EmbeddingRef psi,
                                 const VertexSet& scope);

// Sweeps F inside each group and keeps the r results of least expansion
// (group index breaks ties), sorted by expansion. Groups whose F vanishes
// produce no candidate. Throws EmptyGroup for an empty group or when fewer
// than r groups produce a set.
std::vector<SweepResult> multiway_threshold_round(
    const WeightedGraph& g, EmbeddingRef F, const std::vector<VertexSet>& groups,
    std::size_t r);

// With tau uniform on (0, M], M = max |F|^2 over the groups, the exact value
// of E[sum_i w({v in T_i : |F(v)|^2 >= tau})], by integrating the
// piecewise-constant integrand.
double expected_threshold_weight(const WeightedGraph& g, EmbeddingRef F,
                                 const std::vector<VertexSet>& groups);

struct CompletedPartition {
  std::vector<VertexSet> parts;  // inputs by weight ascending, last replaced
  std::vector<double> expansion;
  double max_input_expansion = 0.0;
  bool bound_holds = true;  // phi(last) <= k * max_input_expansion
};

// Orders the sets by weight and replaces the heaviest with the complement of
// the others. Throws EmptyInput and Overlap.
CompletedPartition complete_to_partition(const WeightedGraph& g,
                                         const std::vector<VertexSet>& sets);

}  // namespace kway

#endif  // KWAY_ROUNDING_HPP
