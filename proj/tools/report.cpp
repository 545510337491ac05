#include "report.hpp"

#include <cmath>
#include <sstream>

namespace kway::tools {

namespace {

nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json vec(const Eigen::VectorXd& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

}  // namespace

nlohmann::json report_json(const WeightedGraph& g, const PipelineReport& rep,
                           const std::vector<std::string>* labels) {
  using nlohmann::json;
  json j;
  j["schema"] = "kway-report";
  j["version"] = kReportVersion;
  j["graph"] = {{"n", g.num_vertices()},
                {"edges", g.num_edges()},
                {"total_weight", g.total_weight()}};
  j["algorithm"] = rep.algorithm;
  j["k"] = rep.k;
  j["delta"] = rep.delta;
  j["required"] = rep.required;
  j["diameter"] = number(rep.diameter);
  j["radius"] = number(rep.radius);
  j["embedding_dim"] = rep.embedding_dim;
  j["projected_dim"] = rep.projected_dim;
  j["eigenvalues"] = vec(rep.eigenvalues);
  j["residuals"] = vec(rep.residuals);

  json sets = json::array();
  for (std::size_t i = 0; i < rep.sets.size(); ++i) {
    auto cm = expansion(g, rep.sets[i]);
    json s = {{"vertices", rep.sets[i]},
              {"size", rep.sets[i].size()},
              {"expansion", rep.expansion[i]},
              {"cut_weight", cm.cut_weight},
              {"set_weight", cm.set_weight}};
    if (labels) {
      json names = json::array();
      for (Vertex v : rep.sets[i]) {
        auto idx = static_cast<std::size_t>(v);
        names.push_back(idx < labels->size() ? (*labels)[idx] : std::to_string(v));
      }
      s["labels"] = std::move(names);
    }
    sets.push_back(std::move(s));
  }
  j["sets"] = std::move(sets);

  json funcs = json::array();
  for (std::size_t i = 0; i < rep.functions.size(); ++i) {
    VertexSet support;
    const auto& f = rep.functions[i];
    for (Eigen::Index v = 0; v < f.size(); ++v)
      if (f(v) != 0.0) support.push_back(static_cast<Vertex>(v));
    funcs.push_back({{"rayleigh", rep.rayleigh[i]},
                     {"support", support},
                     {"values", vec(f)}});
  }
  j["functions"] = std::move(funcs);

  const auto r = static_cast<Eigen::Index>(rep.sets.size());
  json witness = nullptr;
  if (r >= 1) {
    witness = {{"sets", r},
               {"upper_bound", rep.max_expansion},
               {"lower_bound", r <= rep.eigenvalues.size() ? number(rep.eigenvalues(r - 1) / 2.0)
                                                           : json(nullptr)}};
  }
  j["rho_witness"] = std::move(witness);
  j["max_expansion"] = rep.sets.empty() ? json(nullptr) : json(rep.max_expansion);
  j["max_rayleigh"] = rep.functions.empty() ? json(nullptr) : json(rep.max_rayleigh);
  j["ratios"] = {{"phi_over_sqrt_lambda_k", number(rep.phi_over_sqrt_lambda_k)},
                 {"phi_over_sqrt_lambda_2k_log_k", number(rep.phi_over_sqrt_lambda_2k_log_k)},
                 {"rayleigh_over_lambda_k", number(rep.rayleigh_over_lambda_k)}};
  j["candidate"] = rep.candidate;
  j["best_trial"] = rep.best_trial;
  j["best_seed"] = rep.best_seed;

  json trials = json::array();
  for (const auto& t : rep.trials) {
    trials.push_back({{"index", t.index},
                      {"seed", t.seed},
                      {"ok", t.ok},
                      {"score", t.ok ? number(t.score) : json(nullptr)},
                      {"cells", t.cells},
                      {"projected_dim", t.projected_dim},
                      {"note", t.note}});
  }
  j["trials"] = std::move(trials);
  j["wall_time_seconds"] = rep.seconds;
  return j;
}

std::string trials_csv(const PipelineReport& rep) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,seed,ok,score,cells,projected_dim\n";
  for (const auto& t : rep.trials) {
    out << t.index << ',' << t.seed << ',' << (t.ok ? 1 : 0) << ',';
    if (t.ok) out << t.score;
    out << ',' << t.cells << ',' << t.projected_dim << '\n';
  }
  return out.str();
}

}  // namespace kway::tools
