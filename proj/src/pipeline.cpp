#include "kway/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

#include "kway/error.hpp"
#include "kway/localize.hpp"
#include "kway/partition.hpp"
#include "kway/random.hpp"

namespace kway {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t ceil_count(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

double resolve_delta(const PipelineConfig& cfg) {
  if (cfg.k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  double d = cfg.delta == 0.0 ? 1.0 / (2.0 * static_cast<double>(cfg.k)) : cfg.delta;
  if (!(d > 0.0 && d < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  return d;
}

std::size_t practical_projection_dim(std::size_t k) {
  return ceil_count(3.0 * (1.0 + std::log(static_cast<double>(k))));
}

// Runs body(t) for every trial, possibly on several threads; results are
// stored by trial index so the outcome does not depend on scheduling.
template <typename Result>
std::vector<std::optional<Result>> run_trials(
    std::size_t trials, std::size_t threads, std::vector<TrialSummary>& summary,
    const std::function<Result(std::size_t, TrialSummary&)>& body) {
  std::vector<std::optional<Result>> out(trials);
  summary.assign(trials, {});
  auto work = [&](std::size_t t) {
    summary[t].index = t;
    try {
      out[t] = body(t, summary[t]);
      summary[t].ok = true;
    } catch (const Error& e) {
      summary[t].note = std::string(to_string(e.kind())) + ": " + e.what();
    }
  };
  if (threads <= 1 || trials == 1) {
    for (std::size_t t = 0; t < trials; ++t) work(t);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < std::min(threads, trials); ++i) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < trials; t = next++) work(t);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

template <typename Result>
std::optional<std::size_t> best_index(const std::vector<std::optional<Result>>& res,
                                      const std::vector<TrialSummary>& summary) {
  std::optional<std::size_t> best;
  for (std::size_t t = 0; t < res.size(); ++t) {
    if (!res[t]) continue;
    if (!best || summary[t].score < summary[*best].score) best = t;
  }
  return best;
}

[[noreturn]] void fail(const std::string& what, const std::vector<TrialSummary>& summary) {
  std::string msg = what + "; no trial succeeded";
  for (const auto& s : summary) msg += "\n  trial " + std::to_string(s.index) + ": " + s.note;
  throw Error(ErrorKind::PipelineFailure, msg);
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : kNaN; }

void fill_ratios(PipelineReport& rep) {
  const auto k = static_cast<Eigen::Index>(rep.k);
  const Eigen::VectorXd& lam = rep.eigenvalues;
  rep.phi_over_sqrt_lambda_k = kNaN;
  rep.phi_over_sqrt_lambda_2k_log_k = kNaN;
  rep.rayleigh_over_lambda_k = kNaN;
  if (lam.size() >= k && k >= 1) {
    double lk = lam(k - 1);
    if (!rep.sets.empty()) rep.phi_over_sqrt_lambda_k = safe_ratio(rep.max_expansion, std::sqrt(lk));
    if (!rep.functions.empty()) rep.rayleigh_over_lambda_k = safe_ratio(rep.max_rayleigh, lk);
  }
  if (lam.size() >= 2 * k && k >= 2 && !rep.sets.empty()) {
    double d = std::sqrt(lam(2 * k - 1) * std::log(static_cast<double>(k)));
    rep.phi_over_sqrt_lambda_2k_log_k = safe_ratio(rep.max_expansion, d);
  }
}

struct FunctionsTrial {
  std::vector<Eigen::VectorXd> functions;
  std::vector<double> rayleigh;
};

// One randomized attempt of the localization route on the embedding Fs.
FunctionsTrial functions_trial(const WeightedGraph& g, const Embedding& Fs,
                               std::size_t k, double delta, double diameter,
                               MetricMode metric, std::uint64_t seed,
                               TrialSummary& s) {
  MetricView mv(g, Fs, MetricMode::Radial);
  RandomPartition part = metric == MetricMode::Radial
                             ? shifted_grid_partition(mv, diameter, seed)
                             : induced_ball_carving(mv, diameter, seed);
  s.cells = part.cells.size();
  const double h = static_cast<double>(Fs.cols());
  const double alpha = 48.0 * std::pow(h, 1.5) / delta;
  RandomPartition inner = padded_interior(mv, part, diameter / alpha);
  const std::size_t r_groups = ceil_count((1.0 - delta / 2.0) * static_cast<double>(k));
  GroupedPartition grouped = group_cells_lemma(inner, k, r_groups);
  double beta = group_separation(mv, grouped.groups);
  DisjointBumps bumps =
      disjoint_bumps(mv, grouped.groups, beta, 1.0 / (2.0 * static_cast<double>(k)));
  const std::size_t keep = ceil_count((1.0 - delta) * static_cast<double>(k));
  FunctionsTrial out;
  for (std::size_t i = 0; i < keep && i < bumps.values.size(); ++i) {
    out.functions.push_back(bumps.values[i]);
    out.rayleigh.push_back(bumps.rayleigh[i]);
  }
  s.score = out.rayleigh.empty() ? 0.0 : *std::max_element(out.rayleigh.begin(), out.rayleigh.end());
  return out;
}

EigenOptions eigen_options(const PipelineConfig& cfg) {
  EigenOptions o;
  o.tol = cfg.tol;
  o.seed = cfg.seed;
  return o;
}

PipelineReport functions_route(const WeightedGraph& g, const PipelineConfig& cfg,
                               bool reduced) {
  auto start = std::chrono::steady_clock::now();
  double delta = std::min(resolve_delta(cfg), 0.5);
  const std::size_t k = cfg.k;
  if (k > g.num_vertices()) throw Error(ErrorKind::InvalidArgument, "k exceeds n");
  SpectralEmbedding emb = eigenbasis(g, k, eigen_options(cfg));

  PipelineReport rep;
  rep.algorithm = reduced ? "functions-reduced" : "functions";
  rep.k = k;
  rep.delta = delta;
  rep.required = ceil_count((1.0 - delta) * static_cast<double>(k));
  rep.diameter = reduced ? reduced_functions_diameter(delta) : functions_diameter(delta);
  rep.embedding_dim = k;
  rep.eigenvalues = emb.eigenvalues;
  rep.residuals = emb.residuals;
  rep.candidate = "carving";

  auto trials = run_trials<FunctionsTrial>(
      cfg.trials, cfg.threads, rep.trials, [&](std::size_t t, TrialSummary& s) {
        s.seed = trial_seed(cfg.seed, t);
        Embedding Fs = emb.F;
        if (reduced) {
          ReduceOptions ro;
          ro.seed = s.seed;
          ro.h = cfg.h != 0 ? cfg.h : std::min(k, practical_projection_dim(k));
          auto red = reduce_dimension(g, emb.F, rep.diameter, ro);
          Fs = std::move(red.F);
        }
        s.projected_dim = static_cast<std::size_t>(Fs.cols());
        return functions_trial(g, Fs, k, delta, rep.diameter, cfg.metric, s.seed, s);
      });
  auto best = best_index(trials, rep.trials);
  if (!best) fail("disjoint_support_functions", rep.trials);
  const double h = static_cast<double>(rep.trials[*best].projected_dim);
  rep.radius = rep.diameter * delta / (48.0 * std::pow(h, 1.5));
  rep.projected_dim = rep.trials[*best].projected_dim;
  rep.best_trial = *best;
  rep.best_seed = rep.trials[*best].seed;
  rep.functions = trials[*best]->functions;
  rep.rayleigh = trials[*best]->rayleigh;
  rep.max_rayleigh = rep.trials[*best].score;
  fill_ratios(rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

double functions_diameter(double delta) { return std::sqrt(delta / (48.0 + delta)); }

double reduced_functions_diameter(double delta) {
  auto ok = [&](double d) {
    double den = 1.0 - 16.0 * d * d;
    return den > 0.0 && (1.0 + 4.0 * d) / den <= 1.0 + delta / 48.0;
  };
  double lo = 0.0, hi = 0.25;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t t) {
  return Rng(seed, 0x747269616cULL).split(t).next();
}

PipelineReport disjoint_support_functions(const WeightedGraph& g,
                                          const PipelineConfig& cfg) {
  return functions_route(g, cfg, false);
}

PipelineReport disjoint_support_functions_reduced(const WeightedGraph& g,
                                                  const PipelineConfig& cfg) {
  return functions_route(g, cfg, true);
}

PipelineReport k_sparse_cuts(const WeightedGraph& g, const PipelineConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  const double delta = resolve_delta(cfg);
  const std::size_t k = cfg.k;
  const std::size_t n = g.num_vertices();
  if (k > n) throw Error(ErrorKind::InvalidArgument, "k exceeds n");
  const std::size_t dims = cfg.eigen_count != 0 ? cfg.eigen_count : std::min(2 * k, n);
  if (dims < 1 || dims > n) throw Error(ErrorKind::InvalidArgument, "bad eigenfunction count");
  SpectralEmbedding emb = eigenbasis(g, dims, eigen_options(cfg));

  PipelineReport rep;
  rep.algorithm = "cuts";
  rep.k = k;
  rep.delta = delta;
  rep.required = ceil_count((1.0 - delta) * static_cast<double>(k));
  rep.embedding_dim = dims;
  rep.eigenvalues = emb.eigenvalues;
  rep.residuals = emb.residuals;
  rep.radius = cfg.radius != 0.0 ? cfg.radius : kDefaultCarvingRadius;
  rep.diameter = 2.0 * rep.radius;
  const std::size_t k_prime =
      cfg.k_prime != 0 ? cfg.k_prime : ceil_count(1.5 * static_cast<double>(k));
  const std::size_t h =
      cfg.h != 0 ? cfg.h : std::min(dims, practical_projection_dim(k));

  struct CutsTrial {
    std::vector<SweepResult> sets;
  };
  auto trials = run_trials<CutsTrial>(
      cfg.trials, cfg.threads, rep.trials, [&](std::size_t t, TrialSummary& s) {
        s.seed = trial_seed(cfg.seed, t);
        Embedding Fs = emb.F;
        if (cfg.project && h < dims) {
          ReduceOptions ro;
          ro.seed = s.seed;
          ro.h = h;
          Fs = reduce_dimension(g, emb.F, std::min(1.0, rep.diameter), ro).F;
        }
        s.projected_dim = static_cast<std::size_t>(Fs.cols());
        MetricView mv(g, Fs, cfg.metric);
        RandomPartition part = cfg.metric == MetricMode::Radial
                                   ? ball_carving(mv, rep.radius, s.seed)
                                   : induced_ball_carving(mv, rep.diameter, s.seed);
        s.cells = part.cells.size();
        GroupedPartition grouped = balance_groups(part, k_prime);
        CutsTrial out{multiway_threshold_round(g, Fs, grouped.groups, rep.required)};
        s.score = 0.0;
        for (const auto& r : out.sets) s.score = std::max(s.score, r.expansion);
        return out;
      });
  auto best = best_index(trials, rep.trials);

  std::optional<std::vector<SweepResult>> split;
  double split_score = std::numeric_limits<double>::infinity();
  if (k == 2 && dims >= 2 && rep.required == 2) {
    // The combination of f_1, f_2 orthogonal to constants. When lambda_1 <
    // lambda_2 this is f_2 itself; when lambda_2 = 0 the solver may return a
    // null-space basis without the constant, and f_2 need not change sign.
    Eigen::VectorXd w(static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v) w(static_cast<Eigen::Index>(v)) = g.degree(static_cast<Vertex>(v));
    const double c1 = w.dot(emb.F.col(0)), c2 = w.dot(emb.F.col(1));
    Eigen::VectorXd f = c2 * emb.F.col(0) - c1 * emb.F.col(1);
    Eigen::VectorXd pos = f.cwiseMax(0.0), neg = (-f).cwiseMax(0.0);
    if (pos.squaredNorm() > 0.0 && neg.squaredNorm() > 0.0) {
      split = std::vector<SweepResult>{cheeger_sweep(g, pos), cheeger_sweep(g, neg)};
      (*split)[1].source = 1;
      split_score = std::max((*split)[0].expansion, (*split)[1].expansion);
    }
  }
  if (!best && !split) fail("k_sparse_cuts", rep.trials);

  std::vector<SweepResult> chosen;
  if (best && rep.trials[*best].score <= split_score) {
    chosen = trials[*best]->sets;
    rep.candidate = "carving";
    rep.best_trial = *best;
    rep.best_seed = rep.trials[*best].seed;
    rep.projected_dim = rep.trials[*best].projected_dim;
  } else {
    chosen = *split;
    rep.candidate = "sign-split";
    rep.best_trial = cfg.trials;
    rep.projected_dim = dims;
  }
  std::stable_sort(chosen.begin(), chosen.end(), [](const SweepResult& a, const SweepResult& b) {
    return a.expansion < b.expansion;
  });
  for (const auto& r : chosen) {
    rep.sets.push_back(r.set);
    rep.expansion.push_back(r.expansion);
    rep.max_expansion = std::max(rep.max_expansion, r.expansion);
  }
  fill_ratios(rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

PipelineReport k_way_partition(const WeightedGraph& g, const PipelineConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  const std::size_t k = cfg.k;
  if (k < 1 || k > g.num_vertices()) throw Error(ErrorKind::InvalidArgument, "need 1 <= k <= n");
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  const double delta = 1.0 / (2.0 * static_cast<double>(k));
  SpectralEmbedding emb = eigenbasis(g, k, eigen_options(cfg));

  PipelineReport rep;
  rep.algorithm = "partition";
  rep.k = k;
  rep.delta = delta;
  rep.required = k;
  rep.diameter = functions_diameter(delta);
  rep.embedding_dim = k;
  rep.projected_dim = k;
  rep.eigenvalues = emb.eigenvalues;
  rep.residuals = emb.residuals;
  rep.radius = rep.diameter * delta / (48.0 * std::pow(static_cast<double>(k), 1.5));
  rep.candidate = "carving";

  struct PartitionTrial {
    FunctionsTrial functions;
    CompletedPartition parts;
  };
  auto trials = run_trials<PartitionTrial>(
      cfg.trials, cfg.threads, rep.trials, [&](std::size_t t, TrialSummary& s) {
        s.seed = trial_seed(cfg.seed, t);
        s.projected_dim = k;
        PartitionTrial out;
        out.functions =
            functions_trial(g, emb.F, k, delta, rep.diameter, cfg.metric, s.seed, s);
        std::vector<VertexSet> sets;
        for (const auto& psi : out.functions.functions) sets.push_back(cheeger_sweep(g, psi).set);
        out.parts = complete_to_partition(g, sets);
        s.score = *std::max_element(out.parts.expansion.begin(), out.parts.expansion.end());
        return out;
      });
  auto best = best_index(trials, rep.trials);
  if (!best) fail("k_way_partition", rep.trials);
  const auto& win = *trials[*best];
  rep.best_trial = *best;
  rep.best_seed = rep.trials[*best].seed;
  rep.functions = win.functions.functions;
  rep.rayleigh = win.functions.rayleigh;
  rep.max_rayleigh = *std::max_element(rep.rayleigh.begin(), rep.rayleigh.end());
  rep.sets = win.parts.parts;
  rep.expansion = win.parts.expansion;
  rep.max_expansion = rep.trials[*best].score;
  fill_ratios(rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace kway
