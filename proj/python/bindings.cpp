#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "kway/error.hpp"
#include "kway/generators.hpp"
#include "kway/graph.hpp"
#include "kway/io.hpp"
#include "kway/pipeline.hpp"
#include "kway/rounding.hpp"
#include "kway/spectral.hpp"
#include "report.hpp"

namespace py = pybind11;
using namespace kway;

namespace {

PipelineConfig make_config(std::size_t k, double delta, std::uint64_t seed, std::size_t trials,
                           const std::string& metric, bool project, std::size_t eigs) {
  PipelineConfig cfg;
  cfg.k = k;
  cfg.delta = delta;
  cfg.seed = seed;
  cfg.trials = trials;
  if (metric == "induced") cfg.metric = MetricMode::InducedPath;
  else if (metric != "radial") throw Error(ErrorKind::InvalidArgument, "metric must be radial or induced");
  cfg.project = project;
  cfg.eigen_count = eigs;
  return cfg;
}

// Reports cross the boundary as the same JSON document the CLI prints.
py::object as_dict(const WeightedGraph& g, const PipelineReport& rep) {
  auto loads = py::module_::import("json").attr("loads");
  return loads(tools::report_json(g, rep).dump());
}

template <PipelineReport (*Run)(const WeightedGraph&, const PipelineConfig&)>
py::object run(const WeightedGraph& g, std::size_t k, double delta, std::uint64_t seed,
               std::size_t trials, const std::string& metric, bool project, std::size_t eigs) {
  PipelineReport rep;
  {
    py::gil_scoped_release nogil;
    rep = Run(g, make_config(k, delta, seed, trials, metric, project, eigs));
  }
  return as_dict(g, rep);
}

}  // namespace

PYBIND11_MODULE(_kway, m) {
  m.doc() = "Multi-way spectral partitioning";

  static py::exception<Error> error(m, "KwayError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(std::string(e.what()));
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<Vertex, Vertex, double>>& edges) {
             std::vector<Edge> es;
             es.reserve(edges.size());
             for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
             return WeightedGraph::build(n, es);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &WeightedGraph::num_vertices)
      .def_property_readonly("num_edges", &WeightedGraph::num_edges)
      .def_property_readonly("total_weight", &WeightedGraph::total_weight)
      .def_property_readonly("num_components", &WeightedGraph::num_components)
      .def("degree", &WeightedGraph::degree)
      .def("edges", [](const WeightedGraph& g) {
        std::vector<std::tuple<Vertex, Vertex, double>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
        return out;
      });

  m.def("read_graph", [](const std::string& path, bool merge) {
        ReadOptions ro;
        ro.merge_duplicates = merge;
        return read_graph(path, ro);
      }, py::arg("path"), py::arg("merge_duplicates") = false);

  m.def("expansion", [](const WeightedGraph& g, VertexSet s) {
        return expansion(g, canonical(std::move(s))).expansion;
      }, py::arg("graph"), py::arg("vertices"));
  m.def("k_way_expansion_exact", [](const WeightedGraph& g, std::size_t k) {
        auto r = k_way_expansion_exact(g, k);
        return py::make_tuple(r.value, r.witness);
      }, py::arg("graph"), py::arg("k"));

  m.def("eigenbasis", [](const WeightedGraph& g, std::size_t k, double tol, std::uint64_t seed) {
        EigenOptions o;
        o.tol = tol;
        o.seed = seed;
        auto e = eigenbasis(g, k, o);
        return py::make_tuple(Eigen::VectorXd(e.eigenvalues), Eigen::MatrixXd(e.F));
      }, py::arg("graph"), py::arg("k"), py::arg("tol") = 1e-8, py::arg("seed") = 0);
  m.def("rayleigh", [](const WeightedGraph& g, const Eigen::MatrixXd& F) { return rayleigh(g, F); },
        py::arg("graph"), py::arg("F"));
  m.def("cheeger_sweep", [](const WeightedGraph& g, const Eigen::MatrixXd& psi) {
        auto s = cheeger_sweep(g, psi);
        return py::make_tuple(s.set, s.expansion);
      }, py::arg("graph"), py::arg("psi"));

#define KWAY_PIPELINE(name, fn)                                                              \
  m.def(name, &run<fn>, py::arg("graph"), py::arg("k"), py::arg("delta") = 0.0,             \
        py::arg("seed") = 0, py::arg("trials") = 16, py::arg("metric") = "radial",           \
        py::arg("project") = true, py::arg("eigs") = 0)
  KWAY_PIPELINE("k_sparse_cuts", k_sparse_cuts);
  KWAY_PIPELINE("k_way_partition", k_way_partition);
  KWAY_PIPELINE("disjoint_support_functions", disjoint_support_functions);
  KWAY_PIPELINE("disjoint_support_functions_reduced", disjoint_support_functions_reduced);
#undef KWAY_PIPELINE

  m.def("path_graph", &path_graph, py::arg("n"));
  m.def("cycle_graph", &cycle_graph, py::arg("n"));
  m.def("grid_graph", &grid_graph, py::arg("rows"), py::arg("cols"));
  m.def("complete_graph", &complete_graph, py::arg("n"));
  m.def("clique_union", &clique_union, py::arg("count"), py::arg("size"), py::arg("bridge"));
  m.def("clique_ring", &clique_ring, py::arg("count"), py::arg("size"), py::arg("bridge"));
  m.def("gnp_graph", &gnp_graph, py::arg("n"), py::arg("p"), py::arg("seed") = 0);
  m.def("noisy_hypercube", &noisy_hypercube, py::arg("dim"), py::arg("eps"),
        py::arg("drop_below") = 0.0);
  m.def("planted_partition", [](std::size_t clusters, std::size_t size, double p_in, double p_out,
                                std::uint64_t seed) {
        auto pg = planted_partition(clusters, size, p_in, p_out, seed);
        return py::make_tuple(std::move(pg.graph), pg.truth);
      }, py::arg("clusters"), py::arg("size"), py::arg("p_in"), py::arg("p_out"),
      py::arg("seed") = 0);
}
