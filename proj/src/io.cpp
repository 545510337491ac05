#include "kway/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "kway/error.hpp"

namespace kway {

namespace {

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

class EdgeAccumulator {
 public:
  explicit EdgeAccumulator(bool merge) : merge_(merge) {}

  // Repeated pairs are summed when merging, otherwise rejected.
  void add(long long u, long long v, double w, std::size_t line) {
    if (u < 0 || v < 0) throw parse_error(line, "negative vertex id");
    if (u > 0x7fffffffLL || v > 0x7fffffffLL) throw parse_error(line, "vertex id too large");
    const auto a = static_cast<Vertex>(u), b = static_cast<Vertex>(v);
    const std::pair<Vertex, Vertex> key{std::min(a, b), std::max(a, b)};
    auto [it, fresh] = weights_.try_emplace(key, w);
    if (!fresh) {
      if (!merge_) {
        throw Error(ErrorKind::DuplicateEdge, "line " + std::to_string(line) +
                                                  ": repeated edge " +
                                                  std::to_string(key.first) + " " +
                                                  std::to_string(key.second));
      }
      it->second += w;
    }
    max_id_ = std::max({max_id_, u, v});
  }

  WeightedGraph build(std::size_t n) const {
    std::vector<Edge> edges;
    edges.reserve(weights_.size());
    for (const auto& [k, w] : weights_) edges.push_back({k.first, k.second, w});
    return WeightedGraph::build(n, edges);
  }

  std::size_t implied_size() const { return static_cast<std::size_t>(max_id_ + 1); }

 private:
  bool merge_;
  long long max_id_ = -1;
  std::map<std::pair<Vertex, Vertex>, double> weights_;
};

}  // namespace

WeightedGraph parse_edge_list(std::istream& in, const ReadOptions& opts) {
  EdgeAccumulator acc(opts.merge_duplicates);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long u, v;
    double w = 1.0;
    if (!(ss >> u >> v)) throw parse_error(lineno, "expected two vertex ids");
    if (!(ss >> w)) {
      if (!ss.eof()) throw parse_error(lineno, "bad weight");
      w = 1.0;
    }
    std::string extra;
    if (ss.clear(), ss >> extra) throw parse_error(lineno, "trailing field '" + extra + "'");
    acc.add(u, v, w, lineno);
  }
  if (acc.implied_size() == 0) throw Error(ErrorKind::ParseError, "no edges in input");
  return acc.build(acc.implied_size());
}

WeightedGraph parse_matrix_market(std::istream& in, const ReadOptions& opts) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty input");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw parse_error(1, "expected a '%%MatrixMarket matrix coordinate' banner");
  bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer")
    throw parse_error(1, "unsupported field '" + field + "'");
  bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general")
    throw parse_error(1, "unsupported symmetry '" + symmetry + "'");

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz)) throw parse_error(lineno, "bad size line");
    break;
  }
  if (rows < 0) throw Error(ErrorKind::ParseError, "missing size line");
  if (rows != cols) throw parse_error(lineno, "adjacency matrix must be square");

  std::map<std::pair<Vertex, Vertex>, double> seen;
  EdgeAccumulator acc(opts.merge_duplicates);
  long long count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    std::istringstream ss(line);
    long long i, j;
    double w = 1.0;
    if (!(ss >> i >> j)) throw parse_error(lineno, "expected row and column");
    if (!pattern && !(ss >> w)) throw parse_error(lineno, "expected a value");
    ++count;
    if (i < 1 || j < 1 || i > rows || j > cols) throw parse_error(lineno, "index out of range");
    if (i == j) continue;
    Vertex a = static_cast<Vertex>(i - 1), b = static_cast<Vertex>(j - 1);
    if (!symmetric) {
      if (!seen.try_emplace({a, b}, w).second) throw parse_error(lineno, "repeated entry");
      auto mirror = seen.find({b, a});
      if (mirror != seen.end()) {
        if (mirror->second != w) throw parse_error(lineno, "asymmetric weights");
        continue;
      }
    }
    acc.add(a, b, w, lineno);
  }
  if (count != nnz) {
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(nnz) +
                                           " entries, found " + std::to_string(count));
  }
  return acc.build(static_cast<std::size_t>(rows));
}

WeightedGraph read_graph(const std::string& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InputNotFound, "cannot open '" + path + "'");
  std::string head(14, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  in.clear();
  in.seekg(0);
  if (head == "%%MatrixMarket") return parse_matrix_market(in, opts);
  return parse_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out.precision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

std::vector<std::string> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InputNotFound, "cannot open '" + path + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    labels.push_back(line);
  }
  return labels;
}

}  // namespace kway
