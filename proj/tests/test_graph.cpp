#include <doctest.h>

#include <numeric>

#include "kway/generators.hpp"
#include "kway/graph.hpp"
#include "oracles.hpp"

using namespace kway;

namespace {

WeightedGraph two_triangles() {
  std::vector<Edge> e = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  return WeightedGraph::build(6, e);
}

// Component count by union-find over the edge list.
int union_find_components(const WeightedGraph& g) {
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int count = static_cast<int>(g.num_vertices());
  for (const auto& e : g.edges()) {
    auto a = find(static_cast<std::size_t>(e.u)), b = find(static_cast<std::size_t>(e.v));
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

// Small corpus: connected random graphs plus a few disconnected unions.
std::vector<WeightedGraph> small_corpus(std::size_t max_n) {
  std::vector<WeightedGraph> out;
  for (std::size_t n = 3; n <= max_n; ++n) {
    for (std::uint64_t s = 0; s < 3; ++s) out.push_back(oracle::random_weighted_graph(n, 0.3, s * 31 + n));
    out.push_back(path_graph(n));
  }
  out.push_back(two_triangles());
  out.push_back(clique_union(2, 3, 0.1));
  std::vector<Edge> three = {{0, 1, 1}, {2, 3, 2}, {4, 5, 1}, {5, 6, 1}};
  out.push_back(WeightedGraph::build(7, three));
  return out;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("build single edge") {
  std::vector<Edge> e = {{0, 1, 1.0}};
  auto g = WeightedGraph::build(2, e);
  CHECK(g.degree(0) == 1.0);
  CHECK(g.degree(1) == 1.0);
  CHECK(g.total_weight() == 2.0);
}

TEST_CASE("build rejects bad input") {
  std::vector<Edge> loop = {{0, 1, 1}, {1, 1, 1}};
  CHECK(oracle::throws_kind([&] { WeightedGraph::build(3, loop); }, ErrorKind::SelfLoop));
  std::vector<Edge> iso = {{0, 1, 1}};
  CHECK(oracle::throws_kind([&] { WeightedGraph::build(3, iso); }, ErrorKind::IsolatedVertex));
  std::vector<Edge> neg = {{0, 1, -1}};
  CHECK(oracle::throws_kind([&] { WeightedGraph::build(2, neg); }, ErrorKind::NonPositiveWeight));
  std::vector<Edge> dup = {{0, 1, 1}, {1, 0, 2}};
  CHECK(oracle::throws_kind([&] { WeightedGraph::build(2, dup); }, ErrorKind::DuplicateEdge));
  std::vector<Edge> out = {{0, 5, 1}};
  CHECK(oracle::throws_kind([&] { WeightedGraph::build(2, out); }, ErrorKind::VertexOutOfRange));
}

TEST_CASE("degrees match incident sums") {
  auto g = oracle::random_weighted_graph(40, 0.2, 7);
  std::vector<double> deg(g.num_vertices(), 0.0);
  for (const auto& e : g.edges()) {
    deg[static_cast<std::size_t>(e.u)] += e.w;
    deg[static_cast<std::size_t>(e.v)] += e.w;
  }
  double total = 0.0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    CHECK(g.degree(static_cast<Vertex>(v)) == doctest::Approx(deg[v]).epsilon(1e-12));
    total += deg[v];
  }
  CHECK(g.total_weight() == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("expansion examples") {
  auto p4 = path_graph(4);
  VertexSet all = {0, 1, 2, 3};
  CHECK(expansion(p4, all).expansion == 0.0);
  VertexSet s = {0, 1};
  auto cm = expansion(p4, s);
  CHECK(cm.cut_weight == 1.0);
  CHECK(cm.set_weight == 3.0);
  CHECK(cm.expansion == doctest::Approx(1.0 / 3.0));
  VertexSet none;
  CHECK(oracle::throws_kind([&] { expansion(p4, none); }, ErrorKind::EmptySet));
}

TEST_CASE("cut weight equals set weight minus twice internal weight") {
  Rng rng(3, 1);
  for (int t = 0; t < 200; ++t) {
    auto g = oracle::random_weighted_graph(5 + rng.below(30), 0.25, 1000 + static_cast<std::uint64_t>(t));
    VertexSet s;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (rng.bernoulli(0.4)) s.push_back(static_cast<Vertex>(v));
    if (s.empty()) s.push_back(0);
    auto cm = expansion(g, s);
    double rearranged = (g.set_weight(s) - 2.0 * g.internal_weight(s)) / g.set_weight(s);
    CHECK(cm.expansion == doctest::Approx(rearranged).epsilon(1e-9));
    CHECK(expansion_by_internal_weight(g, s) == doctest::Approx(cm.expansion).epsilon(1e-9));
    std::uint32_t mask = 0;
    if (g.num_vertices() <= 32) {
      for (Vertex v : s) mask |= 1u << v;
      CHECK(cm.expansion == doctest::Approx(oracle::mask_expansion(g, mask)).epsilon(1e-9));
    }
  }
}

TEST_CASE("exact rho examples") {
  auto tt = two_triangles();
  auto r = k_way_expansion_exact(tt, 2);
  CHECK(r.value == 0.0);
  REQUIRE(r.witness.size() == 2);
  auto a = canonical(r.witness[0]), b = canonical(r.witness[1]);
  if (a > b) std::swap(a, b);
  CHECK(a == VertexSet{0, 1, 2});
  CHECK(b == VertexSet{3, 4, 5});

  CHECK(k_way_expansion_exact(complete_graph(4), 2).value == doctest::Approx(2.0 / 3.0));
  auto p = k_way_expansion_exact(path_graph(4), 2);
  CHECK(p.value == doctest::Approx(1.0 / 3.0));

  CHECK(oracle::throws_kind([] { k_way_expansion_exact(path_graph(13), 2); }, ErrorKind::TooLarge));
  CHECK(k_way_expansion_exact(path_graph(13), 2, 13).value == doctest::Approx(1.0 / 11.0));
}

TEST_CASE("exact rho agrees with labelling enumeration") {
  for (const auto& g : small_corpus(7)) {
    for (std::size_t k = 1; k <= 3 && k <= g.num_vertices(); ++k) {
      auto r = k_way_expansion_exact(g, k);
      CHECK(r.value == doctest::Approx(oracle::brute_rho(g, k)).epsilon(1e-9));
      REQUIRE(r.witness.size() == k);
      double worst = 0.0;
      std::vector<int> seen(g.num_vertices(), 0);
      for (const auto& s : r.witness) {
        CHECK(!s.empty());
        worst = std::max(worst, expansion(g, s).expansion);
        for (Vertex v : s) CHECK(++seen[static_cast<std::size_t>(v)] == 1);
      }
      CHECK(worst == doctest::Approx(r.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("rho monotone in k and zero iff enough components") {
  for (const auto& g : small_corpus(8)) {
    const int comps = union_find_components(g);
    CHECK(g.num_components() == comps);
    double prev = 0.0;
    for (std::size_t k = 1; k <= std::min<std::size_t>(g.num_vertices(), 4); ++k) {
      double rho = k_way_expansion_exact(g, k).value;
      CHECK(rho >= prev - 1e-12);
      CHECK((rho == 0.0) == (comps >= static_cast<int>(k)));
      prev = rho;
    }
  }
}

}  // TEST_SUITE
