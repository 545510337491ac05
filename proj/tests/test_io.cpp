#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kway/generators.hpp"
#include "kway/io.hpp"
#include "oracles.hpp"

using namespace kway;

namespace {

WeightedGraph parse(const std::string& text, bool merge = false) {
  std::istringstream in(text);
  ReadOptions ro;
  ro.merge_duplicates = merge;
  return parse_edge_list(in, ro);
}

WeightedGraph parse_mm(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in);
}

std::string error_text(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("edge list basics") {
  auto g = parse("# comment\n0 1\n1 2 2.5\n\n  # indented comment\n2 0 0.5\n");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.edge_weight(0, 1) == 1.0);
  CHECK(g.edge_weight(2, 1) == 2.5);
  CHECK(g.degree(0) == 1.5);
}

TEST_CASE("edge list errors") {
  CHECK(oracle::throws_kind([] { parse("0 1\n1 x\n"); }, ErrorKind::ParseError));
  CHECK(error_text("0 1\n1 x\n").find("line 2") != std::string::npos);
  CHECK(oracle::throws_kind([] { parse("0 1 1 7\n"); }, ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse("0 1 abc\n"); }, ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse("-1 1\n"); }, ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse("# nothing\n"); }, ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse("0 1\n1 0 2\n"); }, ErrorKind::DuplicateEdge));
  CHECK(oracle::throws_kind([] { parse("0 0\n0 1\n"); }, ErrorKind::SelfLoop));
  CHECK(oracle::throws_kind([] { parse("0 1 -2\n"); }, ErrorKind::NonPositiveWeight));
  CHECK(parse("0 1\n3 2\n").num_vertices() == 4);
  CHECK(oracle::throws_kind([] { parse("0 2\n"); }, ErrorKind::IsolatedVertex));
}

TEST_CASE("merge duplicates sums weights") {
  auto g = parse("0 1\n1 0 2\n1 2\n", true);
  CHECK(g.edge_weight(0, 1) == 3.0);
  CHECK(g.num_edges() == 2);
}

TEST_CASE("matrix market") {
  auto g = parse_mm(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% comment\n"
      "3 3 3\n"
      "2 1 1.5\n"
      "3 2 2\n"
      "3 3 9\n");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(g.edge_weight(0, 1) == 1.5);
  CHECK(g.edge_weight(1, 2) == 2.0);

  auto pat = parse_mm("%%MatrixMarket matrix coordinate pattern general\n3 3 4\n1 2\n2 1\n2 3\n3 2\n");
  CHECK(pat.num_edges() == 2);
  CHECK(pat.edge_weight(1, 2) == 1.0);

  CHECK(oracle::throws_kind([] { parse_mm("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1\n2 1 3\n"); },
                            ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse_mm("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 1\n"); },
                            ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse_mm("%%MatrixMarket matrix array real general\n2 2\n"); },
                            ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse_mm("%%MatrixMarket matrix coordinate complex symmetric\n2 2 1\n2 1 1 0\n"); },
                            ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse_mm("%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n2 1 1\n"); },
                            ErrorKind::ParseError));
  CHECK(oracle::throws_kind([] { parse_mm("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n5 1 1\n"); },
                            ErrorKind::ParseError));
}

TEST_CASE("round trip through files") {
  auto g = oracle::random_weighted_graph(30, 0.2, 77);
  const std::string path = "kway_io_roundtrip.txt";
  {
    std::ofstream out(path);
    write_edge_list(out, g);
  }
  auto back = read_graph(path);
  REQUIRE(back.num_edges() == g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    CHECK(back.edges()[i].u == g.edges()[i].u);
    CHECK(back.edges()[i].v == g.edges()[i].v);
    CHECK(back.edges()[i].w == g.edges()[i].w);
  }
  std::remove(path.c_str());

  const std::string mm = "kway_io_roundtrip.mtx";
  {
    std::ofstream out(mm);
    out << "%%MatrixMarket matrix coordinate integer symmetric\n4 4 3\n2 1 1\n3 2 4\n4 3 1\n";
  }
  auto p = read_graph(mm);
  CHECK(p.edge_weight(1, 2) == 4.0);
  std::remove(mm.c_str());

  CHECK(oracle::throws_kind([] { read_graph("definitely/not/here.txt"); }, ErrorKind::InputNotFound));

  const std::string lab = "kway_io_labels.txt";
  {
    std::ofstream out(lab);
    out << "alpha\r\nbeta\n";
  }
  CHECK(read_labels(lab) == std::vector<std::string>{"alpha", "beta"});
  std::remove(lab.c_str());
}

}  // TEST_SUITE
