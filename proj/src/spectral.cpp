#include "kway/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kway/error.hpp"
#include "kway/random.hpp"

namespace kway {

NormalizedLaplacian::NormalizedLaplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g.num_edges());
  for (const Edge& e : g.edges()) {
    double s = e.w / std::sqrt(g.degree(e.u) * g.degree(e.v));
    trips.emplace_back(e.u, e.v, s);
    trips.emplace_back(e.v, e.u, s);
  }
  scaled_adj_.resize(n, n);
  scaled_adj_.setFromTriplets(trips.begin(), trips.end());
}

Eigen::MatrixXd NormalizedLaplacian::dense() const {
  Eigen::MatrixXd m = -Eigen::MatrixXd(scaled_adj_);
  m.diagonal().array() += 1.0;
  return m;
}

Eigen::MatrixXd NormalizedLaplacian::apply(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  Eigen::MatrixXd y = x;
  y.noalias() -= scaled_adj_ * x;
  return y;
}

namespace {

// Orthonormalises the columns of `block` against `basis` (first `used`
// columns) and against each other. Columns that collapse are replaced by
// fresh random directions, so the result always has full column rank.
void orthonormalize_block(const Eigen::MatrixXd& basis, Eigen::Index used,
                          Eigen::MatrixXd& block, Rng& rng) {
  const Eigen::Index n = block.rows();
  auto project_out = [&](Eigen::VectorXd& c, Eigen::Index upto_col) {
    for (int pass = 0; pass < 2; ++pass) {
      if (used > 0) {
        auto b = basis.leftCols(used);
        c -= b * (b.transpose() * c);
      }
      if (upto_col > 0) {
        auto q = block.leftCols(upto_col);
        c -= q * (q.transpose() * c);
      }
    }
  };
  for (Eigen::Index j = 0; j < block.cols(); ++j) {
    Eigen::VectorXd c = block.col(j);
    for (int attempt = 0;; ++attempt) {
      double before = c.norm();
      project_out(c, j);
      double after = c.norm();
      if (after > 1e-10 * std::max(before, 1e-300) && after > 0.0) {
        block.col(j) = c / after;
        break;
      }
      if (attempt > 8) {
        throw Error(ErrorKind::ConvergenceFailure,
                    "could not extend Krylov basis");
      }
      for (Eigen::Index i = 0; i < n; ++i) c(i) = rng.normal();
    }
  }
}

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // columns, unit l2 norm
  std::size_t basis_size = 0;
};

EigenPairs dense_pairs(const NormalizedLaplacian& lap, std::size_t k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap.dense());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "dense eigensolver failed");
  }
  const auto kk = static_cast<Eigen::Index>(k);
  return {es.eigenvalues().head(kk), es.eigenvectors().leftCols(kk),
          lap.size()};
}

// Block Lanczos with full reorthogonalisation. A block of width >= k can
// capture up to k copies of a repeated eigenvalue, which a single-vector
// Krylov space cannot.
EigenPairs block_lanczos_pairs(const NormalizedLaplacian& lap, std::size_t k,
                               const EigenOptions& opts) {
  const auto n = static_cast<Eigen::Index>(lap.size());
  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::Index cap =
      opts.max_basis == 0 ? n
                          : std::min<Eigen::Index>(n, static_cast<Eigen::Index>(opts.max_basis));
  const Eigen::Index p = std::min<Eigen::Index>(cap, kk + 8);
  Rng rng(opts.seed, 0x6c616e637a6f73ULL);

  Eigen::MatrixXd basis(n, cap), lbasis(n, cap);
  Eigen::Index used = 0;
  Eigen::MatrixXd block(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) block(i, j) = rng.normal();
  orthonormalize_block(basis, used, block, rng);

  EigenPairs out;
  Eigen::VectorXd last_res;
  while (true) {
    Eigen::MatrixXd lblock = lap.apply(block);
    const Eigen::Index b = block.cols();
    basis.middleCols(used, b) = block;
    lbasis.middleCols(used, b) = lblock;
    used += b;

    if (used >= kk) {
      auto q = basis.leftCols(used);
      auto lq = lbasis.leftCols(used);
      Eigen::MatrixXd t = q.transpose() * lq;
      t = 0.5 * (t + t.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      Eigen::MatrixXd s = es.eigenvectors().leftCols(kk);
      Eigen::VectorXd theta = es.eigenvalues().head(kk);
      Eigen::MatrixXd y = q * s;
      Eigen::MatrixXd r = lq * s - y * theta.asDiagonal();
      last_res = r.colwise().norm().transpose();
      bool converged = (last_res.array() <= opts.tol).all();
      if (converged || used >= cap) {
        if (!converged) {
          std::string msg = "block Lanczos did not converge; residuals:";
          for (Eigen::Index i = 0; i < kk; ++i) msg += " " + std::to_string(last_res(i));
          throw Error(ErrorKind::ConvergenceFailure, msg);
        }
        out.values = theta;
        out.vectors = y;
        out.basis_size = static_cast<std::size_t>(used);
        return out;
      }
    }

    const Eigen::Index next = std::min<Eigen::Index>(p, cap - used);
    block = lblock.leftCols(next);
    orthonormalize_block(basis, used, block, rng);
  }
}

}  // namespace

SpectralEmbedding eigenbasis(const WeightedGraph& g, std::size_t k,
                             const EigenOptions& opts) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidArgument, "eigenbasis needs 1 <= k <= n");
  }
  NormalizedLaplacian lap(g);
  SpectralEmbedding emb;
  emb.k = k;
  EigenPairs pairs;
  if (n <= opts.dense_limit) {
    pairs = dense_pairs(lap, k);
    emb.method = "dense";
  } else {
    pairs = block_lanczos_pairs(lap, k, opts);
    emb.method = "block-lanczos";
  }
  emb.basis_size = pairs.basis_size;
  const auto kk = static_cast<Eigen::Index>(k);
  const auto nn = static_cast<Eigen::Index>(n);

  Eigen::VectorXd w(nn), sqrt_w(nn);
  for (Eigen::Index v = 0; v < nn; ++v) {
    w(v) = g.degree(static_cast<Vertex>(v));
    sqrt_w(v) = std::sqrt(w(v));
  }

  // f_i = D^{-1/2} g_i, then modified Gram-Schmidt (two sweeps) in l2(V, w).
  Eigen::MatrixXd f = sqrt_w.cwiseInverse().asDiagonal() * pairs.vectors;
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (Eigen::Index i = 0; i < kk; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        double c = (f.col(j).array() * f.col(i).array() * w.array()).sum();
        f.col(i) -= c * f.col(j);
      }
      double nrm = std::sqrt((f.col(i).array().square() * w.array()).sum());
      f.col(i) /= nrm;
    }
  }

  for (Eigen::Index i = 0; i < kk; ++i) {
    double scale = f.col(i).cwiseAbs().maxCoeff();
    for (Eigen::Index v = 0; v < nn; ++v) {
      if (std::abs(f(v, i)) > 1e-8 * scale) {
        if (f(v, i) < 0) f.col(i) = -f.col(i);
        break;
      }
    }
  }

  Eigen::MatrixXd gvec = sqrt_w.asDiagonal() * f;
  Eigen::MatrixXd lg = lap.apply(gvec);
  emb.eigenvalues.resize(kk);
  emb.residuals.resize(kk);
  double lam_max = std::max(1.0, pairs.values.maxCoeff());
  for (Eigen::Index i = 0; i < kk; ++i) {
    double lam = pairs.values(i);
    if (lam <= 1e-10 * lam_max) lam = 0.0;
    emb.eigenvalues(i) = lam;
    emb.residuals(i) = (lg.col(i) - lam * gvec.col(i)).norm() / gvec.col(i).norm();
  }
  emb.F = std::move(f);
  return emb;
}

double edge_energy(const WeightedGraph& g, EmbeddingRef psi) {
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    total += e.w * (psi.row(e.u) - psi.row(e.v)).squaredNorm();
  }
  return total;
}

double mass(const WeightedGraph& g, EmbeddingRef psi) {
  double total = 0.0;
  for (Eigen::Index v = 0; v < psi.rows(); ++v) {
    total += g.degree(static_cast<Vertex>(v)) * psi.row(v).squaredNorm();
  }
  return total;
}

double rayleigh(const WeightedGraph& g, EmbeddingRef psi) {
  if (static_cast<std::size_t>(psi.rows()) != g.num_vertices()) {
    throw Error(ErrorKind::DimensionMismatch, "map has wrong number of rows");
  }
  double m = mass(g, psi);
  if (!(m > 0.0)) throw Error(ErrorKind::ZeroFunction, "map is identically zero");
  return edge_energy(g, psi) / m;
}

CoordinateChoice best_coordinate(const WeightedGraph& g, EmbeddingRef psi) {
  if (static_cast<std::size_t>(psi.rows()) != g.num_vertices()) {
    throw Error(ErrorKind::DimensionMismatch, "map has wrong number of rows");
  }
  CoordinateChoice best;
  best.rayleigh = std::numeric_limits<double>::infinity();
  bool found = false;
  for (Eigen::Index j = 0; j < psi.cols(); ++j) {
    auto col = psi.col(j);
    double m = mass(g, col);
    if (!(m > 0.0)) continue;
    double r = edge_energy(g, col) / m;
    if (!found || r < best.rayleigh) {
      found = true;
      best.index = static_cast<std::size_t>(j);
      best.rayleigh = r;
    }
  }
  if (!found) throw Error(ErrorKind::ZeroFunction, "map is identically zero");
  best.values = psi.col(static_cast<Eigen::Index>(best.index));
  return best;
}

void write_embedding_tsv(std::ostream& out, EmbeddingRef F) {
  out.precision(17);
  for (Eigen::Index v = 0; v < F.rows(); ++v) {
    out << v;
    for (Eigen::Index j = 0; j < F.cols(); ++j) out << '\t' << F(v, j);
    out << '\n';
  }
}

}  // namespace kway
