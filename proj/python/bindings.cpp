#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeta_cover/analysis.hpp"
#include "zeta_cover/error.hpp"
#include "zeta_cover/graph.hpp"
#include "zeta_cover/series_io.hpp"
#include "zeta_cover/torus.hpp"
#include "zeta_cover/zeta.hpp"

namespace py = pybind11;
using namespace zeta_cover;

namespace {

std::vector<double> values(const Spectrum& s) { return {s.values().begin(), s.values().end()}; }

py::int_ to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

py::dict series_dict(const ConvergenceSeries& s) {
  py::list entries;
  for (const auto& e : s.entries)
    entries.append(py::dict(py::arg("N") = e.n, py::arg("density") = e.density,
                            py::arg("abs_error") = e.abs_error));
  return py::dict(py::arg("entries") = entries, py::arg("limit") = s.limit,
                  py::arg("limit_error") = s.limit_error);
}

Graph plain_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g{n, {}};
  for (auto [u, v] : edges) g.edges.push_back({u, v});
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Zeta-regularized determinants of cyclic covers";

  static py::exception<Error> error_type(m, "ZetaCoverError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      inst.attr("detail") = e.detail();
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<VoltageGraph>(m, "VoltageGraph")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& edges) {
             std::vector<VoltageGraph::Edge> es;
             for (auto [u, v, w] : edges) es.push_back({u, v, w});
             return VoltageGraph(n, es);
           }),
           py::arg("vertex_count"), py::arg("edges"))
      .def_property_readonly("vertex_count", &VoltageGraph::vertex_count)
      .def_property_readonly("edges",
                             [](const VoltageGraph& g) {
                               std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> out;
                               for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.voltage);
                               return out;
                             })
      .def_property_readonly("connected", &VoltageGraph::connected)
      .def_property_readonly("surjective", &VoltageGraph::surjective)
      .def_property_readonly("cycle_gcd", &VoltageGraph::cycle_gcd);

  m.def("load_graph", [](const std::string& text) { return load_graph(text); }, py::arg("text"));
  m.def("load_graph_file", [](const std::string& path) { return load_graph_file(path); }, py::arg("path"));

  m.def("base_spectrum", [](const VoltageGraph& g) { return values(hermitian_eigenvalues(laplacian(g.underlying()))); },
        py::arg("graph"));
  m.def("twisted_spectrum",
        [](const VoltageGraph& g, double theta) { return values(hermitian_eigenvalues(twisted_laplacian(g, TwistParameter(theta)))); },
        py::arg("graph"), py::arg("theta"));
  m.def("cover_spectrum",
        [](const VoltageGraph& g, std::size_t n, bool direct, std::size_t jobs) {
          return values(direct ? cover_spectrum_direct(g, n) : cover_spectrum_twisted(g, n, jobs));
        },
        py::arg("graph"), py::arg("n"), py::arg("direct") = false, py::arg("jobs") = 1);
  m.def("cover_density", [](const VoltageGraph& g, std::size_t n, std::size_t jobs) { return cover_zeta(g, n, jobs).density; },
        py::arg("graph"), py::arg("n"), py::arg("jobs") = 1);
  m.def("theta_integral_limit",
        [](const VoltageGraph& g, double tol) {
          const auto e = theta_integral_limit(g, tol);
          return py::make_tuple(e.value, e.error);
        },
        py::arg("graph"), py::arg("tol") = 1e-8);
  m.def("convergence_series",
        [](const VoltageGraph& g, const std::vector<std::size_t>& ns, double tol, std::size_t jobs) {
          return series_dict(convergence_series(g, ns, tol, jobs));
        },
        py::arg("graph"), py::arg("n_list"), py::arg("tol") = 1e-8, py::arg("jobs") = 1);

  m.def("spanning_tree_count",
        [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
          return to_py(spanning_tree_count(plain_graph(n, edges)));
        },
        py::arg("vertex_count"), py::arg("edges"));
  m.def("brute_force_spanning_trees",
        [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
          return to_py(brute_force_spanning_trees(plain_graph(n, edges)));
        },
        py::arg("vertex_count"), py::arg("edges"));

  m.def("dedekind_eta", [](Complex tau) { return dedekind_eta(ModularParameter(tau)); }, py::arg("tau"));
  m.def("torus_det_zeta", [](Complex tau) { return torus_det_zeta(ModularParameter(tau)); }, py::arg("tau"));
  m.def("torus_zeta_prime_mellin",
        [](Complex tau, double tol) {
          const auto e = torus_zeta_prime_mellin(ModularParameter(tau), tol);
          return py::make_tuple(e.value, e.error);
        },
        py::arg("tau"), py::arg("tol") = 1e-8);
  m.def("torus_limit_series",
        [](double l, const std::vector<std::size_t>& ns) { return series_dict(torus_limit_series(l, ns)); },
        py::arg("L"), py::arg("n_list"));

  m.def("mckay_constant", &mckay_constant, py::arg("k"));
  m.def("lattice2d_limit",
        [](double tol) {
          const auto e = lattice2d_limit(tol);
          return py::make_tuple(e.value, e.error);
        },
        py::arg("tol") = 1e-8);

  m.def("gap_scan",
        [](const VoltageGraph& g, std::size_t grid) {
          const auto r = gap_scan(g, grid);
          return py::dict(py::arg("p") = r.p, py::arg("exponent") = r.exponent,
                          py::arg("amplitude") = r.amplitude, py::arg("lower") = r.lower,
                          py::arg("epsilon0") = r.epsilon0, py::arg("eta") = r.eta,
                          py::arg("r_squared") = r.r_squared);
        },
        py::arg("graph"), py::arg("grid") = 256);
  m.def("monodromy_zero_locus",
        [](const VoltageGraph& g, const std::vector<double>& angles, std::size_t grid) {
          return monodromy_zero_locus(g, Monodromy::diagonal(angles), grid).angles;
        },
        py::arg("graph"), py::arg("angles"), py::arg("grid") = 256);
  m.def("deck_sum_residual",
        [](const VoltageGraph& g, std::size_t n, double t, double tol) { return verify_deck_sum(g, n, t, tol).residual; },
        py::arg("graph"), py::arg("n"), py::arg("t"), py::arg("tol") = 1e-10);
}
