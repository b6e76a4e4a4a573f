#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptsc/engine.hpp"
#include "ptsc/io.hpp"
#include "ptsc/oracle.hpp"
#include "ptsc/struct_ctrl.hpp"

namespace py = pybind11;
using namespace ptsc;

namespace {

PerturbedStructuredSystem make_system(int n,
                                      const std::set<Pos>& a_stars,
                                      const std::set<int>& b_stars,
                                      const std::set<Pos>& f_stars) {
    std::set<Pos> b2;
    for (int r : b_stars) b2.emplace(r, 1);
    return {StructuredMatrix(n, n, a_stars), StructuredMatrix(n, 1, b2),
            StructuredMatrix(n, n + 1, f_stars)};
}

py::dict verdict_to_dict(const PtscVerdict& v) {
    py::dict d;
    d["structurally_controllable"] = v.structurally_controllable;
    d["reason"] = v.reason;
    d["ptsc"] = v.ptsc;
    py::list reports;
    for (const auto& r : v.edge_reports) {
        py::dict e;
        e["edge"] = py::make_tuple(r.edge.i, r.edge.j);
        e["zero_mode_ok"] = r.zero_mode.ok;
        e["r_j"] = r.zero_mode.r_j;
        e["grank_minus_i"] = r.zero_mode.grank_minus_i;
        e["nonzero_evaluated"] = r.nonzero_evaluated;
        e["nonzero_mode_ok"] = r.nonzero_mode.ok;
        e["i_star"] = r.i_star;
        e["omega"] = r.omega;
        e["passed"] = r.passed;
        e["failure"] = r.failure;
        reports.append(e);
    }
    d["edge_reports"] = reports;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ptsc, m) {
    m.doc() = "Perturbation-tolerant structural controllability verifier";

    py::class_<StructuredMatrix>(m, "StructuredMatrix")
        .def(py::init<int, int, std::set<Pos>>(), py::arg("rows"),
             py::arg("cols"), py::arg("stars") = std::set<Pos>{})
        .def_property_readonly("rows", &StructuredMatrix::rows)
        .def_property_readonly("cols", &StructuredMatrix::cols)
        .def_property_readonly("stars", &StructuredMatrix::stars)
        .def("has_star", &StructuredMatrix::has_star);

    m.def("vee", &vee);
    m.def("submatrix", &submatrix);
    m.def("generic_rank", &generic_rank);

    m.def("is_structurally_controllable",
          [](int n, const std::set<Pos>& a, const std::set<int>& b) {
              auto sys = make_system(n, a, b, {});
              auto res = is_structurally_controllable(sys);
              return py::make_tuple(res.controllable, res.reason);
          },
          py::arg("n"), py::arg("a_stars"), py::arg("b_stars"));

    m.def("verify_ptsc",
          [](int n, const std::set<Pos>& a, const std::set<int>& b,
             const std::set<Pos>& f, bool fail_fast) {
              return verdict_to_dict(
                  verify_ptsc(make_system(n, a, b, f), fail_fast));
          },
          py::arg("n"), py::arg("a_stars"), py::arg("b_stars"),
          py::arg("f_stars"), py::arg("fail_fast") = false);

    m.def("scrp_feasible",
          [](int n, const std::set<Pos>& a, const std::set<int>& b,
             const std::set<Pos>& f) {
              return scrp_feasible(make_system(n, a, b, f));
          },
          py::arg("n"), py::arg("a_stars"), py::arg("b_stars"),
          py::arg("f_stars"));

    m.def("oracle_verdict",
          [](int n, const std::set<Pos>& a, const std::set<int>& b,
             const std::set<Pos>& f, int trials, std::uint64_t seed) {
              OracleReport r =
                  oracle_verdict(make_system(n, a, b, f), trials, seed);
              py::dict d;
              d["pssc"] = r.pssc;
              d["trials_run"] = r.trials_run;
              if (r.pssc) {
                  d["edge"] = py::make_tuple(r.edge.i, r.edge.j);
                  d["t_star"] = r.witness.t_star;
                  d["lambda_star"] = r.witness.lambda_star;
              }
              return d;
          },
          py::arg("n"), py::arg("a_stars"), py::arg("b_stars"),
          py::arg("f_stars"), py::arg("trials") = 3, py::arg("seed") = 0);

    m.def("dm_dump",
          [](int n, const std::set<Pos>& a, const std::set<int>& b,
             const std::set<Pos>& f, int i, int j) {
              return dm_dump(make_system(n, a, b, f), {i, j});
          },
          py::arg("n"), py::arg("a_stars"), py::arg("b_stars"),
          py::arg("f_stars"), py::arg("i"), py::arg("j"));
}
