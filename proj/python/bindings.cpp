#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "pottssos/analysis.hpp"
#include "pottssos/core.hpp"
#include "pottssos/exactpoly.hpp"
#include "pottssos/oracle.hpp"
#include "pottssos/recursion.hpp"
#include "pottssos/solvers.hpp"

namespace py = pybind11;
using namespace pottssos;

namespace {

py::dict quotient_dict(const std::string& theta, const std::string& r) {
  const auto t = exact::parse_rational(theta);
  const auto rr = exact::parse_rational(r);
  const auto cq = exact::cycle_quotient(t, rr);
  const auto printed = quadratic_coeffs_t<exact::Rational>(t, rr);
  const std::vector<exact::Rational> abc{printed.c, printed.b, printed.a};
  std::vector<std::string> coeffs;
  for (const auto& c : cq.quotient.coefficients()) coeffs.push_back(exact::to_string(c));
  py::dict d;
  d["quotient"] = coeffs;
  d["degree_composed"] = cq.composed.degree();
  d["degree_fixed"] = cq.fixed.degree();
  d["remainder_zero"] = cq.remainder.is_zero();
  d["proportional"] = exact::proportional(cq.quotient, abc);
  return d;
}

}  // namespace

PYBIND11_MODULE(_pottssos, m) {
  m.doc() = "Boundary-law solvers for the Potts-SOS model on Cayley trees";

  py::class_<ModelParams>(m, "ModelParams")
      .def_readonly("k", &ModelParams::k)
      .def_readonly("m", &ModelParams::m)
      .def_readonly("J", &ModelParams::J)
      .def_readonly("J_p", &ModelParams::J_p)
      .def_readonly("beta", &ModelParams::beta)
      .def_readonly("theta", &ModelParams::theta)
      .def_readonly("r", &ModelParams::r)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(k=" + std::to_string(p.k) + ", m=" + std::to_string(p.m) +
               ", theta=" + std::to_string(p.theta) + ", r=" + std::to_string(p.r) + ")";
      });

  py::class_<TwoCycle>(m, "TwoCycle").def_readonly("z", &TwoCycle::z).def_readonly("w", &TwoCycle::w);

  py::class_<FieldPair>(m, "FieldPair").def_readonly("h", &FieldPair::h).def_readonly("l", &FieldPair::l);

  py::class_<PhasePoint>(m, "PhasePoint")
      .def_readonly("theta", &PhasePoint::theta)
      .def_readonly("r", &PhasePoint::r)
      .def_readonly("D", &PhasePoint::D)
      .def_readonly("b", &PhasePoint::b)
      .def_property_readonly("classification", [](const PhasePoint& p) { return std::string(to_string(p.classification)); });

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("make_params", &make_params, py::arg("k"), py::arg("m"), py::arg("J"), py::arg("J_p"), py::arg("beta"));
  m.def("params_from_weights", &params_from_weights, py::arg("k"), py::arg("m"), py::arg("theta"), py::arg("r"));

  m.def(
      "build_tree_levels",
      [](int k, int n) {
        const auto tree = build_tree(k, n);
        std::vector<std::size_t> sizes;
        for (int j = 0; j <= n; ++j) sizes.push_back(tree.level_size(j));
        return sizes;
      },
      py::arg("k"), py::arg("n"), "sizes |W_0|, ..., |W_n|");

  m.def(
      "boundary_map", [](const std::vector<double>& h, int mm, double theta, double r) { return boundary_map(h, mm, theta, r); },
      py::arg("h"), py::arg("m"), py::arg("theta"), py::arg("r"));

  m.def(
      "propagate",
      [](int k, int n, const std::vector<ReducedField>& boundary, int mm, double theta, double r) {
        return propagate(build_tree(k, n), boundary, mm, theta, r).fields;
      },
      py::arg("k"), py::arg("n"), py::arg("boundary"), py::arg("m"), py::arg("theta"), py::arg("r"),
      "fields per vertex in breadth-first order; None where the recursion is not evaluated");

  m.def("f_eval", &f_eval, py::arg("z"), py::arg("theta"), py::arg("r"), py::arg("k"));

  m.def(
      "ti_fixed_points",
      [](int mm, double theta, double r, int k, int seeds) {
        std::vector<std::pair<ReducedField, double>> out;
        for (const auto& s : ti_fixed_points(mm, theta, r, k, seeds).solutions) out.emplace_back(s.h, s.residual);
        return out;
      },
      py::arg("m"), py::arg("theta"), py::arg("r"), py::arg("k"), py::arg("seeds_per_axis") = 9,
      "list of (h, residual)");

  m.def(
      "two_cycles", [](double theta, double r, int k) { return two_cycles(theta, r, k).cycles; }, py::arg("theta"),
      py::arg("r"), py::arg("k"));

  m.def(
      "bipartite_solve",
      [](double theta, double r, int k, int seeds) {
        std::vector<std::tuple<FieldPair, bool, double>> out;
        for (const auto& s : bipartite_solve(theta, r, k, seeds).solutions)
          out.emplace_back(s.fields, s.translation_invariant, s.residual);
        return out;
      },
      py::arg("theta"), py::arg("r"), py::arg("k"), py::arg("seeds_per_axis") = 5,
      "list of (fields, translation_invariant, residual)");

  m.def(
      "injectivity_probe",
      [](double theta, double r, int samples, std::uint64_t seed) {
        const auto rep = injectivity_probe(theta, r, samples, seed);
        py::dict d;
        d["injective_on_samples"] = rep.injective_on_samples;
        d["pairs_tested"] = rep.samples;
        d["min_separation_ratio"] = rep.min_separation_ratio;
        d["witness"] = rep.witness ? py::cast(*rep.witness) : py::none();
        return d;
      },
      py::arg("theta"), py::arg("r"), py::arg("samples") = 1000, py::arg("rng_seed") = 0);

  m.def(
      "quadratic_coeffs",
      [](double theta, double r) {
        const auto q = quadratic_coeffs(theta, r);
        return std::make_tuple(q.a, q.b, q.c);
      },
      py::arg("theta"), py::arg("r"));
  m.def("discriminant", &discriminant, py::arg("theta"), py::arg("r"));
  m.def(
      "quadratic_roots",
      [](double a, double b, double c) { return quadratic_roots({a, b, c}); }, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("theta_d", &theta_d);
  m.def("classify_point", &classify_point, py::arg("theta"), py::arg("r"), py::arg("k") = 2);
  m.def(
      "phase_scan",
      [](double tmin, double tmax, int tsteps, double rmin, double rmax, int rsteps) {
        return phase_scan({tmin, tmax, tsteps}, {rmin, rmax, rsteps});
      },
      py::arg("theta_min"), py::arg("theta_max"), py::arg("theta_steps"), py::arg("r_min"), py::arg("r_max"),
      py::arg("r_steps"));
  m.def(
      "phase_scan_theta_squared",
      [](double tmin, double tmax, int steps) { return phase_scan_theta_squared({tmin, tmax, steps}); },
      py::arg("theta_min"), py::arg("theta_max"), py::arg("steps"));

  m.def("cycle_quotient", &quotient_dict, py::arg("theta"), py::arg("r"),
        "exact k = 2 quotient at rational parameters given as strings such as '1/2' or '0.3'");

  m.def(
      "compatibility_residual",
      [](const ModelParams& p, const std::vector<ReducedField>& prev, const std::vector<ReducedField>& last, int n) {
        return compatibility_residual(p, prev, last, n);
      },
      py::arg("params"), py::arg("fields_prev"), py::arg("fields_last"), py::arg("n") = 2);
}
