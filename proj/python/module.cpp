#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "gor/baselines.hpp"
#include "gor/datagen.hpp"
#include "gor/errors.hpp"
#include "gor/optimality.hpp"
#include "gor/realize.hpp"

namespace py = pybind11;

namespace {

// Polynomials cross the boundary highest power first, like numpy.roots.
gor::Vector highest_first(const gor::ModelPoly& p) { return p.coeffs().reverse(); }

gor::ModelPoly from_highest_first(const gor::Vector& c) { return gor::ModelPoly(c.reverse()); }

gor::Signal as_signal(const gor::Vector& y) { return gor::Signal(y); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Globally optimal least-squares realization of autonomous LTI models";

  auto base = py::register_exception<gor::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<gor::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<gor::DegenerateError>(m, "DegenerateError", base.ptr());
  py::register_exception<gor::SolverError>(m, "SolverError", base.ptr());
  py::register_exception<gor::NoRealSolutionError>(m, "NoRealSolutionError", base.ptr());

  py::class_<gor::FoncResidual>(m, "FoncResidual")
      .def_readonly("r_b", &gor::FoncResidual::r_b)
      .def_readonly("r_yhat", &gor::FoncResidual::r_yhat)
      .def_readonly("r_lambda", &gor::FoncResidual::r_lambda)
      .def_readonly("r_mu", &gor::FoncResidual::r_mu)
      .def("max", &gor::FoncResidual::max);

  py::class_<gor::CriticalPoint>(m, "CriticalPoint")
      .def_property_readonly("b", [](const gor::CriticalPoint& c) { return c.b.tail(); })
      .def_property_readonly("a", [](const gor::CriticalPoint& c) { return highest_first(c.a); })
      .def_readonly("poles", &gor::CriticalPoint::poles)
      .def_property_readonly("yhat", [](const gor::CriticalPoint& c) { return c.yhat.values(); })
      .def_readonly("misfit_sq", &gor::CriticalPoint::misfit_sq)
      .def_readonly("fonc", &gor::CriticalPoint::fonc)
      .def_readonly("hankel_rank", &gor::CriticalPoint::hankel_rank)
      .def_readonly("rank_borderline", &gor::CriticalPoint::rank_borderline);

  py::class_<gor::RealizationResult>(m, "RealizationResult")
      .def_readonly("candidates", &gor::RealizationResult::candidates)
      .def_readonly("n_affine", &gor::RealizationResult::n_affine)
      .def_readonly("n_real", &gor::RealizationResult::n_real)
      .def_readonly("n_infinite", &gor::RealizationResult::n_infinite)
      .def_readonly("warnings", &gor::RealizationResult::warnings)
      .def_property_readonly("best", &gor::RealizationResult::best,
                             py::return_value_policy::reference_internal);

  py::class_<gor::BaselineResult>(m, "BaselineResult")
      .def_property_readonly("method",
                             [](const gor::BaselineResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("estimated_poles", &gor::BaselineResult::estimated_poles)
      .def_property_readonly("combined_model",
                             [](const gor::BaselineResult& r) { return highest_first(r.combined_model); })
      .def_readonly("misfit_sq", &gor::BaselineResult::misfit_sq);

  m.def(
      "realize",
      [](const gor::Vector& y, int n, const std::vector<gor::Complex>& fixed, int max_degree) {
        gor::RealizeOptions options;
        options.max_macaulay_degree = max_degree;
        py::gil_scoped_release release;
        return gor::realize(as_signal(y), n, gor::FixedPoleSet::with_conjugates(fixed), options);
      },
      py::arg("y"), py::arg("n"), py::arg("fixed") = std::vector<gor::Complex>{},
      py::arg("max_degree") = 40,
      "All real critical points of the order-n fit, best first. Complex fixed poles get their "
      "conjugates added.");

  m.def(
      "npf",
      [](const gor::Vector& y, int n, const std::vector<gor::Complex>& fixed) {
        return gor::npf(as_signal(y), n, gor::FixedPoleSet::with_conjugates(fixed));
      },
      py::arg("y"), py::arg("n"), py::arg("fixed"));
  m.def(
      "tsd",
      [](const gor::Vector& y, int n, const std::vector<gor::Complex>& fixed) {
        return gor::tsd(as_signal(y), n, gor::FixedPoleSet::with_conjugates(fixed));
      },
      py::arg("y"), py::arg("n"), py::arg("fixed"));

  m.def(
      "project_misfit",
      [](const gor::Vector& a, const gor::Vector& y) {
        const auto r = gor::project_misfit(from_highest_first(a), as_signal(y));
        return py::make_tuple(r.yhat.values(), r.misfit.values(), r.misfit_sq);
      },
      py::arg("a"), py::arg("y"), "(yhat, misfit, misfit_sq) for a given highest power first.");

  m.def(
      "toeplitz",
      [](const gor::Vector& p, Eigen::Index rows) { return gor::toeplitz(from_highest_first(p), rows); },
      py::arg("p"), py::arg("rows"));
  m.def(
      "hankel", [](const gor::Vector& s, Eigen::Index cols) { return gor::hankel(as_signal(s), cols); },
      py::arg("s"), py::arg("cols"));
  m.def(
      "poly_from_roots",
      [](const std::vector<gor::Complex>& roots) {
        return highest_first(gor::poly_from_roots(gor::FixedPoleSet(roots)));
      },
      py::arg("roots"));

  m.def(
      "simulate",
      [](const std::vector<gor::Complex>& poles, const gor::Vector& C, const gor::Vector& x0,
         Eigen::Index N) {
        return gor::simulate(gor::StateSpaceModel::from_poles(poles, C, x0), N).values();
      },
      py::arg("poles"), py::arg("C"), py::arg("x0"), py::arg("N"));
  m.def(
      "add_noise",
      [](const gor::Vector& x, double sigma, std::uint64_t seed) {
        return gor::add_noise(as_signal(x), sigma, seed).values();
      },
      py::arg("x"), py::arg("sigma"), py::arg("seed"));

#ifdef GOR_VERSION
  m.attr("__version__") = GOR_VERSION;
#endif
}
