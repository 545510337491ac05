#ifndef KWAY_SPECTRAL_HPP
#define KWAY_SPECTRAL_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "kway/graph.hpp"

namespace kway {

// A map V -> R^d stored as an n x d matrix; row v is the image of vertex v.
using Embedding = Eigen::MatrixXd;
using EmbeddingRef = Eigen::Ref<const Eigen::MatrixXd>;

// L_G = I - D^{-1/2} A D^{-1/2}, available as a dense matrix or as a
// matrix-(multi)vector product.
class NormalizedLaplacian {
 public:
  explicit NormalizedLaplacian(const WeightedGraph& g);

  std::size_t size() const { return static_cast<std::size_t>(scaled_adj_.rows()); }
  Eigen::MatrixXd dense() const;
  Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

 private:
  Eigen::SparseMatrix<double> scaled_adj_;  // D^{-1/2} A D^{-1/2}
};

struct SpectralEmbedding {
  std::size_t k = 0;
  Eigen::VectorXd eigenvalues;  // ascending
  // Column i is f_i; the f_i are orthonormal in l2(V, w).
  Embedding F;
  // ||L g_i - lambda_i g_i|| / ||g_i|| with g_i = D^{1/2} f_i.
  Eigen::VectorXd residuals;
  std::string method;  // "dense" or "block-lanczos"
  std::size_t basis_size = 0;
};

struct EigenOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  // Dense symmetric eigendecomposition up to this many vertices.
  std::size_t dense_limit = 512;
  // Krylov basis cap for the iterative path; 0 means n.
  std::size_t max_basis = 0;
};

// Bottom-k eigenpairs of L_G. Eigenvalues at or below
// 1e-10 * max(1, lambda_max) are reported as exactly zero. Each f_i is
// scaled so that its first entry of non-negligible magnitude is positive.
// Throws ConvergenceFailure when the residual tolerance is not met.
SpectralEmbedding eigenbasis(const WeightedGraph& g, std::size_t k,
                             const EigenOptions& opts = {});

// Sum over edges of w(u,v) ||psi(u) - psi(v)||^2.
double edge_energy(const WeightedGraph& g, EmbeddingRef psi);

// Sum over vertices of w(v) ||psi(v)||^2.
double mass(const WeightedGraph& g, EmbeddingRef psi);

// Rayleigh quotient of a vector-valued map; throws ZeroFunction.
double rayleigh(const WeightedGraph& g, EmbeddingRef psi);

struct CoordinateChoice {
  std::size_t index = 0;
  Eigen::VectorXd values;
  double rayleigh = 0.0;
};

// Coordinate j minimising the scalar Rayleigh quotient of v -> psi(v)_j,
// lowest index on ties. Coordinates that vanish identically are skipped.
CoordinateChoice best_coordinate(const WeightedGraph& g, EmbeddingRef psi);

// Vertex id followed by the row of F, tab separated.
void write_embedding_tsv(std::ostream& out, EmbeddingRef F);

}  // namespace kway

#endif  // KWAY_SPECTRAL_HPP
