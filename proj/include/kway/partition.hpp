#ifndef KWAY_PARTITION_HPP
#define KWAY_PARTITION_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kway/geometry.hpp"
#include "kway/graph.hpp"

namespace kway {

enum class PartitionScheme { BallCarving, ShiftedGrid, InducedBallCarving, Interior };

// Disjoint cells over the vertices with nonzero image. Every cell has
// d_F-diameter at most `diameter`. Masses are E(S) = sum_{v in S} w(v)|F(v)|^2
// under the embedding that drove the partition.
struct RandomPartition {
  std::vector<VertexSet> cells;
  std::vector<double> cell_mass;
  PartitionScheme scheme = PartitionScheme::BallCarving;
  double diameter = 0.0;
  std::uint64_t seed = 0;
  double total_mass = 0.0;  // over all of V, not only the cells
};

// Cells as index lists into the rows of `unit_points` (rows of norm one).
// Centres are i.i.d. uniform in the closed unit ball; each centre claims the
// still-uncovered points within distance `radius`. Centres that would claim
// nothing are skipped by sampling directly from the uniform law restricted
// to the union of radius-balls around uncovered points, which leaves the law
// of the resulting partition unchanged and bounds the number of rounds by
// the number of points.
std::vector<std::vector<std::size_t>> carve_points(
    const Eigen::Ref<const Eigen::MatrixXd>& unit_points, double radius,
    std::uint64_t seed);

// Ball carving on the radial images of the nonzero vertices of `mv`;
// cells have diameter <= 2 * radius. Requires 0 < radius <= 1.
RandomPartition ball_carving(const MetricView& mv, double radius,
                             std::uint64_t seed);

// Randomly shifted axis-aligned grid of side diameter / sqrt(h) over the
// radial images; each cube has diameter <= `diameter`.
RandomPartition shifted_grid_partition(const MetricView& mv, double diameter,
                                       std::uint64_t seed);

// Grid cells as index lists; exposed for direct geometric tests.
std::vector<std::vector<std::size_t>> grid_points(
    const Eigen::Ref<const Eigen::MatrixXd>& points, double diameter,
    std::uint64_t seed);

// Carving in the induced path metric: centres in uniformly random order, one
// common radius drawn uniformly from [diameter/4, diameter/2].
RandomPartition induced_ball_carving(const MetricView& mv, double diameter,
                                     std::uint64_t seed);

// Keeps, in each cell S, the vertices x whose induced-metric ball of the
// given radius lies inside S. Cells that become empty are dropped.
RandomPartition padded_interior(const MetricView& mv, const RandomPartition& p,
                                double radius);

// Largest pairwise d_F distance inside any cell: exhaustive for cells with
// at most 512 vertices, 4096 sampled pairs otherwise.
double max_cell_diameter(const MetricView& mv, const RandomPartition& p,
                         std::uint64_t seed = 0);

struct GroupedPartition {
  std::vector<VertexSet> groups;
  std::vector<double> group_mass;
  std::vector<std::vector<std::size_t>> members;  // cell indices per group
  std::size_t k = 0;
  double total_mass = 0.0;
};

// Upper bound on a cell's mass fraction under which greedy packing yields r
// groups of mass >= total / (2k): 1/k + (k - r + 1) / (8 k r).
double grouping_mass_cap(std::size_t k, std::size_t r);

// Packs cells (heaviest first) into r disjoint groups, closing a group once
// it reaches total/(2k). Requires k/2 <= r <= k. Throws InsufficientMass when
// a cell exceeds grouping_mass_cap or the cells run out first.
GroupedPartition group_cells_lemma(const RandomPartition& p, std::size_t k,
                                   std::size_t r);

// Sorts cells by mass (descending, stable) and folds every cell past the
// first k' into the currently lightest group (lowest index on ties).
GroupedPartition balance_groups(const RandomPartition& p, std::size_t k_prime);

}  // namespace kway

#endif  // KWAY_PARTITION_HPP
