#include <doctest.h>

#include <cmath>
#include <limits>

#include "kway/generators.hpp"
#include "kway/pipeline.hpp"
#include "oracles.hpp"
#include "report.hpp"

using namespace kway;

namespace {

bool disjoint_nonempty(const std::vector<VertexSet>& sets, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& s : sets) {
    if (s.empty()) return false;
    for (Vertex v : s)
      if (++seen[static_cast<std::size_t>(v)] > 1) return false;
  }
  return true;
}

bool covers(const std::vector<VertexSet>& sets, std::size_t n) {
  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  return total == n && disjoint_nonempty(sets, n);
}

std::string stable_dump(const WeightedGraph& g, const PipelineReport& rep) {
  auto j = tools::report_json(g, rep);
  j.erase("wall_time_seconds");
  return j.dump();
}

// rho(k) of a unit-weight path: optimal sets may be taken connected, so
// each is an interval. For every candidate threshold, greedy interval
// scheduling finds the most disjoint intervals with expansion under it.
double path_rho(std::size_t n, std::size_t k) {
  auto phi = [n](std::size_t a, std::size_t b) {  // [a, b]
    double vol = 0.0, cut = 0.0;
    for (std::size_t v = a; v <= b; ++v) vol += (v == 0 || v + 1 == n) ? 1.0 : 2.0;
    if (a > 0) cut += 1.0;
    if (b + 1 < n) cut += 1.0;
    return cut / vol;
  };
  std::vector<double> cand;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) cand.push_back(phi(a, b));
  std::sort(cand.begin(), cand.end());
  for (double t : cand) {
    std::size_t count = 0, next = 0;
    // Earliest right endpoint first.
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t a = next; a <= b; ++a) {
        if (phi(a, b) <= t) {
          ++count;
          next = b + 1;
          break;
        }
      }
    }
    if (count >= k) return t;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("diameters") {
  double d = functions_diameter(0.25);
  CHECK(1.0 / (1.0 - d * d) == doctest::Approx(1.0 + 0.25 / 48.0).epsilon(1e-12));
  double r = reduced_functions_diameter(0.25);
  CHECK((1.0 + 4.0 * r) / (1.0 - 16.0 * r * r) <= 1.0 + 0.25 / 48.0);
  CHECK((1.0 + 4.0 * (r * 1.001)) / (1.0 - 16.0 * r * r * 1.001 * 1.001) > 1.0 + 0.25 / 48.0);
  CHECK(trial_seed(5, 3) == trial_seed(5, 3));
  CHECK(trial_seed(5, 3) != trial_seed(5, 4));
}

TEST_CASE("cuts on components reach zero expansion") {
  auto g = clique_union(4, 6, 0.0001);
  std::vector<Edge> e;
  for (const auto& x : g.edges())
    if (x.w == 1.0) e.push_back(x);
  auto comps = WeightedGraph::build(24, e);
  PipelineConfig cfg;
  cfg.k = 4;
  cfg.eigen_count = 4;
  auto rep = k_sparse_cuts(comps, cfg);
  CHECK(rep.sets.size() >= rep.required);
  CHECK(disjoint_nonempty(rep.sets, 24));
  CHECK(rep.max_expansion == doctest::Approx(0.0));
  CHECK(rep.required == 4);
}

TEST_CASE("delta = 1/(2k) asks for all k sets") {
  PipelineConfig cfg;
  cfg.k = 3;
  auto g = clique_union(3, 8, 0.05);
  auto rep = k_sparse_cuts(g, cfg);
  CHECK(rep.delta == doctest::Approx(1.0 / 6.0));
  CHECK(rep.required == 3);
  CHECK(rep.sets.size() == 3);
  cfg.delta = 0.5;
  CHECK(k_sparse_cuts(g, cfg).required == 2);
  cfg.delta = 1.5;
  CHECK(oracle::throws_kind([&] { k_sparse_cuts(g, cfg); }, ErrorKind::InvalidArgument));
  cfg.delta = 0.0;
  cfg.k = 0;
  CHECK(oracle::throws_kind([&] { k_sparse_cuts(g, cfg); }, ErrorKind::InvalidArgument));
  cfg.k = 25;
  CHECK(oracle::throws_kind([&] { k_sparse_cuts(g, cfg); }, ErrorKind::InvalidArgument));
}

TEST_CASE("two cliques are recovered") {
  auto g = clique_union(2, 10, 0.01);
  PipelineConfig cfg;
  cfg.k = 2;
  auto rep = k_sparse_cuts(g, cfg);
  REQUIRE(rep.sets.size() == 2);
  VertexSet a(10), b(10);
  for (Vertex v = 0; v < 10; ++v) {
    a[static_cast<std::size_t>(v)] = v;
    b[static_cast<std::size_t>(v)] = v + 10;
  }
  auto s0 = rep.sets[0], s1 = rep.sets[1];
  if (s0.front() > s1.front()) std::swap(s0, s1);
  CHECK(s0 == a);
  CHECK(s1 == b);
  CHECK(rep.max_expansion == doctest::Approx(expansion(g, a).expansion));
}

TEST_CASE("outputs never beat the exact optimum") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    auto g = oracle::random_weighted_graph(7 + s % 2, 0.35, 2000 + s);
    for (std::size_t k : {2, 3}) {
      auto exact = k_way_expansion_exact(g, k);
      PipelineConfig cfg;
      cfg.k = k;
      cfg.seed = s;
      auto rep = k_sparse_cuts(g, cfg);
      REQUIRE(rep.sets.size() >= rep.required);
      CHECK(disjoint_nonempty(rep.sets, g.num_vertices()));
      if (rep.sets.size() >= k) CHECK(rep.max_expansion >= exact.value - 1e-12);
      for (std::size_t i = 0; i < rep.sets.size(); ++i)
        CHECK(rep.expansion[i] == expansion(g, rep.sets[i]).expansion);
    }
  }
}

TEST_CASE("path of 16 against the interval optimum") {
  auto g = path_graph(16);
  double rho4 = path_rho(16, 4);
  // End blocks of 3 (1/5) and middle blocks of 5 (2/10).
  CHECK(rho4 == doctest::Approx(1.0 / 5.0));
  CHECK(path_rho(8, 2) == doctest::Approx(k_way_expansion_exact(path_graph(8), 2).value));
  CHECK(path_rho(9, 3) == doctest::Approx(k_way_expansion_exact(path_graph(9), 3).value));
  PipelineConfig cfg;
  cfg.k = 4;
  cfg.delta = 0.01;
  auto rep = k_sparse_cuts(g, cfg);
  REQUIRE(rep.sets.size() == 4);
  CHECK(disjoint_nonempty(rep.sets, 16));
  CHECK(rep.max_expansion >= rho4 - 1e-12);
  auto part = k_way_partition(g, cfg);
  CHECK(covers(part.sets, 16));
  CHECK(part.max_expansion >= rho4 - 1e-12);
}

TEST_CASE("deterministic reports") {
  auto g = planted_partition(3, 20, 0.5, 0.02, 4).graph;
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.seed = 11;
  cfg.trials = 6;
  CHECK(stable_dump(g, k_sparse_cuts(g, cfg)) == stable_dump(g, k_sparse_cuts(g, cfg)));
  CHECK(stable_dump(g, k_way_partition(g, cfg)) == stable_dump(g, k_way_partition(g, cfg)));
  cfg.threads = 3;
  auto threaded = stable_dump(g, k_sparse_cuts(g, cfg));
  cfg.threads = 1;
  CHECK(threaded == stable_dump(g, k_sparse_cuts(g, cfg)));
}

TEST_CASE("more trials never hurt") {
  auto g = oracle::random_weighted_graph(60, 0.06, 31);
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.seed = 2;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t t : {1, 4, 16}) {
    cfg.trials = t;
    auto rep = k_sparse_cuts(g, cfg);
    CHECK(rep.max_expansion <= prev + 1e-15);
    prev = rep.max_expansion;
  }
}

TEST_CASE("disjoint support functions") {
  auto g = clique_ring(8, 6, 0.02);
  PipelineConfig cfg;
  cfg.k = 8;
  cfg.delta = 0.25;
  auto rep = disjoint_support_functions(g, cfg);
  CHECK(rep.required == 6);
  REQUIRE(rep.functions.size() == 6);
  std::vector<int> owner(48, -1);
  for (std::size_t i = 0; i < rep.functions.size(); ++i) {
    CHECK(rep.rayleigh[i] == doctest::Approx(rayleigh(g, rep.functions[i])).epsilon(1e-9));
    for (Eigen::Index v = 0; v < 48; ++v) {
      if (rep.functions[i](v) == 0.0) continue;
      CHECK(owner[static_cast<std::size_t>(v)] == -1);
      owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  CHECK(rep.max_rayleigh == doctest::Approx(*std::max_element(rep.rayleigh.begin(), rep.rayleigh.end())));
}

TEST_CASE("reduced route on a ring of sixteen cliques") {
  auto g = clique_ring(16, 6, 0.02);
  PipelineConfig cfg;
  cfg.k = 16;
  cfg.delta = 0.25;
  auto rep = disjoint_support_functions_reduced(g, cfg);
  CHECK(rep.required == 12);
  CHECK(rep.functions.size() == 12);
  CHECK(rep.projected_dim < 16);
  CHECK(rep.diameter == doctest::Approx(reduced_functions_diameter(0.25)));
}

TEST_CASE("projection stays close to the unprojected run") {
  auto g = planted_partition(4, 32, 0.5, 0.01, 5).graph;
  PipelineConfig cfg;
  cfg.k = 4;
  cfg.seed = 3;
  auto plain = cfg;
  plain.project = false;
  auto a = k_sparse_cuts(g, cfg), b = k_sparse_cuts(g, plain);
  CHECK(a.max_expansion <= 4.0 * b.max_expansion + 1e-12);
  CHECK(b.projected_dim == b.embedding_dim);
}

TEST_CASE("planted clusters within twice the planted expansion") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    auto pg = planted_partition(4, 32, 0.5, 0.01, 10 + s);
    double planted = 0.0;
    for (const auto& c : pg.truth) planted = std::max(planted, expansion(pg.graph, c).expansion);
    PipelineConfig cfg;
    cfg.k = 4;
    cfg.seed = s;
    cfg.eigen_count = 4;
    auto rep = k_sparse_cuts(pg.graph, cfg);
    REQUIRE(rep.sets.size() == 4);
    CHECK(disjoint_nonempty(rep.sets, 128));
    CHECK(rep.max_expansion <= 2.0 * planted);
  }
}

TEST_CASE("k-way partition covers the vertex set") {
  auto g = clique_union(3, 10, 0.01);
  PipelineConfig cfg;
  cfg.k = 3;
  auto rep = k_way_partition(g, cfg);
  REQUIRE(rep.sets.size() == 3);
  CHECK(covers(rep.sets, 30));
  for (std::size_t i = 0; i < 3; ++i) CHECK(rep.expansion[i] == expansion(g, rep.sets[i]).expansion);
}

TEST_CASE("hypercube run") {
  const std::size_t dim = 8;
  const double eps = std::log(2.0) / std::log(static_cast<double>(dim));
  auto g = noisy_hypercube(dim, eps);
  PipelineConfig cfg;
  cfg.k = dim;
  cfg.trials = 4;
  auto rep = k_sparse_cuts(g, cfg);
  CHECK(rep.eigenvalues(static_cast<Eigen::Index>(dim) - 1) <= 2.0 * eps + 1e-9);
  CHECK(disjoint_nonempty(rep.sets, g.num_vertices()));
  for (std::size_t i = 0; i < rep.sets.size(); ++i)
    if (rep.sets[i].size() <= g.num_vertices() / dim) CHECK(rep.expansion[i] >= 0.5 - 1e-9);
}

}  // TEST_SUITE
