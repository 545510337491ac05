#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kway/error.hpp"
#include "kway/generators.hpp"
#include "kway/io.hpp"
#include "kway/pipeline.hpp"
#include "report.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitPipeline = 3;

struct Options {
  std::string input;
  bool merge_duplicates = false;
  std::string family;
  std::size_t n = 0, rows = 0, cols = 0, clusters = 0, size = 0, dim = 0;
  double bridge = 0.01, p_in = 0.5, p_out = 0.01, p = 0.5;
  std::string eps = "auto";
  std::uint64_t graph_seed = 0;

  std::size_t k = 2;
  double delta = 0.0;
  std::string algorithm = "cuts";
  std::size_t trials = 16;
  std::uint64_t seed = 0;
  std::string metric = "radial";
  std::string project = "on";
  double tol = 1e-8;
  std::size_t threads = 1;
  std::size_t k_prime = 0, eigs = 0, h = 0;
  double radius = 0.0;

  std::string output, labels, emit_csv;
};

int emit_error(std::string_view kind, const std::string& message, int code) {
  nlohmann::json j = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << '\n';
  return code;
}

int exit_code_for(kway::ErrorKind kind) {
  switch (kind) {
    case kway::ErrorKind::PipelineFailure:
    case kway::ErrorKind::ConvergenceFailure:
    case kway::ErrorKind::RetriesExhausted:
      return kExitPipeline;
    default:
      return kExitValidation;
  }
}

struct Built {
  kway::WeightedGraph graph;
  std::optional<double> hypercube_eps;
  std::size_t hypercube_dim = 0;
};

void need(bool ok, const std::string& what) {
  if (!ok) throw kway::Error(kway::ErrorKind::InvalidArgument, what);
}

Built build_graph(const Options& o) {
  using namespace kway;
  if (!o.input.empty()) {
    ReadOptions ro;
    ro.merge_duplicates = o.merge_duplicates;
    return {read_graph(o.input, ro), std::nullopt, 0};
  }
  const std::string& f = o.family;
  if (f == "path") return {path_graph(o.n), std::nullopt, 0};
  if (f == "cycle") return {cycle_graph(o.n), std::nullopt, 0};
  if (f == "complete") return {complete_graph(o.n), std::nullopt, 0};
  if (f == "grid") return {grid_graph(o.rows, o.cols), std::nullopt, 0};
  if (f == "clique-union") return {clique_union(o.clusters, o.size, o.bridge), std::nullopt, 0};
  if (f == "clique-ring") return {clique_ring(o.clusters, o.size, o.bridge), std::nullopt, 0};
  if (f == "planted-partition")
    return {planted_partition(o.clusters, o.size, o.p_in, o.p_out, o.graph_seed).graph,
            std::nullopt, 0};
  if (f == "gnp") return {gnp_graph(o.n, o.p, o.graph_seed), std::nullopt, 0};
  if (f == "noisy-hypercube") {
    double eps;
    if (o.eps == "auto") {
      need(o.dim >= 3, "--eps auto needs --dim >= 3 so that log 2 / log dim < 1");
      eps = std::log(2.0) / std::log(static_cast<double>(o.dim));
    } else {
      try {
        eps = std::stod(o.eps);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "--eps must be a number or 'auto'");
      }
    }
    return {noisy_hypercube(o.dim, eps), eps, o.dim};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + f + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-way spectral partitioning: k sparse cuts, disjointly supported "
               "functions and k-way partitions."};
  Options o;
  app.set_config("--config", "", "key=value configuration file; flags take precedence");

  auto* src = app.add_option_group("source");
  src->add_option("--input", o.input, "edge list or Matrix Market file");
  src->add_option("--family", o.family, "generated family")
      ->check(CLI::IsMember({"path", "cycle", "grid", "complete", "clique-union", "clique-ring",
                             "planted-partition", "gnp", "noisy-hypercube"}));
  src->require_option(1);
  app.add_flag("--merge-duplicates", o.merge_duplicates, "sum repeated edges in --input");
  app.add_option("--n", o.n, "vertex count (path, cycle, complete, gnp)");
  app.add_option("--rows", o.rows, "grid rows");
  app.add_option("--cols", o.cols, "grid columns");
  app.add_option("--clusters", o.clusters, "cliques or planted clusters");
  app.add_option("--size", o.size, "vertices per clique or cluster");
  app.add_option("--bridge", o.bridge, "bridge weight between cliques");
  app.add_option("--p-in", o.p_in, "planted in-cluster edge probability");
  app.add_option("--p-out", o.p_out, "planted cross-cluster edge probability");
  app.add_option("--p", o.p, "G(n,p) edge probability");
  app.add_option("--dim", o.dim, "hypercube dimension");
  app.add_option("--eps", o.eps, "hypercube noise, or 'auto' for log 2 / log dim");
  app.add_option("--graph-seed", o.graph_seed, "seed of random families");

  app.add_option("--k", o.k, "number of sets")->check(CLI::PositiveNumber);
  app.add_option("--delta", o.delta, "slack delta in (0,1); default 1/(2k)");
  app.add_option("--algorithm", o.algorithm, "functions | functions-reduced | cuts | partition")
      ->check(CLI::IsMember({"functions", "functions-reduced", "cuts", "partition"}));
  app.add_option("--trials", o.trials, "independent randomized trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "pipeline seed");
  app.add_option("--metric", o.metric, "radial | induced")
      ->check(CLI::IsMember({"radial", "induced"}));
  app.add_option("--project", o.project, "random projection in the cuts route: on | off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--tol", o.tol, "eigensolver residual tolerance");
  app.add_option("--threads", o.threads, "threads for parallel trials")->check(CLI::PositiveNumber);
  app.add_option("--k-prime", o.k_prime, "groups formed before rounding; default ceil(3k/2)");
  app.add_option("--eigs", o.eigs, "eigenfunction count of the cuts route; default 2k");
  app.add_option("--proj-dim", o.h, "projected dimension");
  app.add_option("--radius", o.radius, "ball carving radius");
  app.add_option("--output", o.output, "write the JSON report here instead of stdout");
  app.add_option("--labels", o.labels, "file with one vertex label per line");
  app.add_option("--emit-csv", o.emit_csv, "write per-trial metrics as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("InvalidArgument", e.what(), kExitValidation);
  }

  try {
    Built built = build_graph(o);
    const auto& g = built.graph;
    std::vector<std::string> labels;
    if (!o.labels.empty()) labels = kway::read_labels(o.labels);

    kway::PipelineConfig cfg;
    cfg.k = o.k;
    cfg.delta = o.delta;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.metric = o.metric == "induced" ? kway::MetricMode::InducedPath : kway::MetricMode::Radial;
    cfg.project = o.project == "on";
    cfg.tol = o.tol;
    cfg.threads = o.threads;
    cfg.k_prime = o.k_prime;
    cfg.eigen_count = o.eigs;
    cfg.h = o.h;
    cfg.radius = o.radius;

    kway::PipelineReport rep;
    if (o.algorithm == "functions") rep = kway::disjoint_support_functions(g, cfg);
    else if (o.algorithm == "functions-reduced") rep = kway::disjoint_support_functions_reduced(g, cfg);
    else if (o.algorithm == "cuts") rep = kway::k_sparse_cuts(g, cfg);
    else rep = kway::k_way_partition(g, cfg);

    nlohmann::json j = kway::tools::report_json(g, rep, labels.empty() ? nullptr : &labels);
    j["source"] = o.input.empty() ? nlohmann::json{{"family", o.family}}
                                  : nlohmann::json{{"input", o.input}};
    j["seed"] = o.seed;
    if (built.hypercube_eps) {
      const double eps = *built.hypercube_eps;
      const std::size_t d = built.hypercube_dim;
      auto emb = kway::eigenbasis(g, std::min(d, g.num_vertices()));
      double lam = emb.eigenvalues(emb.eigenvalues.size() - 1);
      j["hypercube"] = {{"dim", d},
                        {"eps", eps},
                        {"lambda_k", lam},
                        {"two_eps", 2.0 * eps},
                        {"lambda_k_le_two_eps", lam <= 2.0 * eps + 1e-9}};
    }

    if (!o.emit_csv.empty()) {
      std::ofstream csv(o.emit_csv);
      if (!csv) throw kway::Error(kway::ErrorKind::InvalidArgument, "cannot write " + o.emit_csv);
      csv << kway::tools::trials_csv(rep);
    }
    std::string text = j.dump(2) + "\n";
    if (o.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.output);
      if (!out) throw kway::Error(kway::ErrorKind::InvalidArgument, "cannot write " + o.output);
      out << text;
    }
  } catch (const kway::Error& e) {
    return emit_error(kway::to_string(e.kind()), e.what(), exit_code_for(e.kind()));
  }
  return 0;
}
