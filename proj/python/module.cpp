#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "renasym/burgers.hpp"
#include "renasym/kdv.hpp"
#include "renasym/profiles.hpp"
#include "renasym/specfun.hpp"
#include "renasym/verify.hpp"

namespace py = pybind11;

using namespace renasym;

PYBIND11_MODULE(_renasym, m) {
  m.doc() = "renormalized asymptotic solutions of Burgers and KdV";

  // special functions
  m.def("erfc", &specfun::erfc, py::arg("x"));
  m.def("erfcx", &specfun::erfcx, py::arg("x"));
  m.def("log_erfcx", &specfun::log_erfcx, py::arg("x"));
  m.def(
      "elliptic_ke",
      [](double k) {
        const auto p = specfun::elliptic_KE(k);
        return py::make_tuple(p.K, p.E);
      },
      py::arg("k"));
  m.def("jacobi_dn", &specfun::jacobi_dn, py::arg("u"), py::arg("k"));

  // profiles
  py::class_<profiles::InitialProfile>(m, "InitialProfile")
      .def_readonly("family", &profiles::InitialProfile::family)
      .def_readonly("limit_minus", &profiles::InitialProfile::limit_minus)
      .def_readonly("limit_plus", &profiles::InitialProfile::limit_plus)
      .def("value",
           [](const profiles::InitialProfile& p, double s) { return p.value(s); })
      .def("d1", [](const profiles::InitialProfile& p, double s) { return p.d1(s); })
      .def("d2", [](const profiles::InitialProfile& p, double s) { return p.d2(s); })
      .def("d3", [](const profiles::InitialProfile& p, double s) { return p.d3(s); });
  m.def("make_smoothed_step", &profiles::make_smoothed_step,
        py::arg("lambda_minus"), py::arg("lambda_plus"), py::arg("width"));
  m.def(
      "make_ramp_profile",
      [](const std::string& kind, double width) {
        return profiles::make_ramp_profile(kind == "burgers_t1"
                                               ? profiles::RampKind::kBurgersT1
                                               : profiles::RampKind::kKdvT2,
                                           width);
      },
      py::arg("kind"), py::arg("width") = 1.0);
  m.def("make_power_tail_profile", &profiles::make_power_tail_profile,
        py::arg("c_plus") = 1.0, py::arg("c_minus") = 2.0, py::arg("S") = 2.0);

  // burgers
  m.def("u0_weak", &burgers::u0_weak, py::arg("x"), py::arg("t"));
  m.def(
      "psi",
      [](double x, double t) {
        const auto v = burgers::psi(x, t);
        return py::make_tuple(v.log_psi, v.psi_x_over_psi, v.psi_xx_over_psi);
      },
      py::arg("x"), py::arg("t"));
  m.def("renorm_weak_burgers", &burgers::renorm_weak_burgers, py::arg("profile"),
        py::arg("x"), py::arg("t"), py::arg("eps"),
        py::arg("rel_tol") = 1e-10);
  m.def("large_gradient_burgers", &burgers::large_gradient_burgers,
        py::arg("profile"), py::arg("x"), py::arg("t"), py::arg("eps"),
        py::arg("rho"), py::arg("rel_tol") = 1e-10);
  m.def(
      "cole_hopf_step",
      [](double lm, double lp, double x, double t, double eps) {
        return burgers::cole_hopf_reference(burgers::ch_step(lm, lp), x, t, eps);
      },
      py::arg("lambda_minus"), py::arg("lambda_plus"), py::arg("x"),
      py::arg("t"), py::arg("eps"));
  m.def(
      "cole_hopf_ramp",
      [](double x, double t, double eps, double trunc) {
        return burgers::cole_hopf_reference(burgers::ch_ramp_weak(trunc), x, t,
                                            eps);
      },
      py::arg("x"), py::arg("t"), py::arg("eps"), py::arg("trunc") = 60.0);

  // kdv
  py::class_<kdv::WhithamPoint>(m, "WhithamPoint")
      .def_readonly("y", &kdv::WhithamPoint::y)
      .def_readonly("sigma", &kdv::WhithamPoint::sigma)
      .def_readonly("omega", &kdv::WhithamPoint::omega);
  m.def("sigma_of_y", &kdv::sigma_of_y, py::arg("y"));
  m.def("whitham_residual", &kdv::whitham_residual, py::arg("sigma"),
        py::arg("y"));
  m.def("gp_dsw_z", &kdv::gp_dsw_Z, py::arg("x"), py::arg("t"), py::arg("a"),
        py::arg("eps"));
  m.def("gp_renormalized", &kdv::gp_renormalized, py::arg("profile"),
        py::arg("x"), py::arg("t"), py::arg("eps"), py::arg("rho"),
        py::arg("rel_tol") = 1e-9);

  py::class_<kdv::PhiField>(m, "PhiField")
      .def("value", &kdv::PhiField::value, py::arg("x"), py::arg("t"),
           py::arg("extended") = false)
      .def_property_readonly("delta", &kdv::PhiField::delta)
      .def_property_readonly("times", &kdv::PhiField::times)
      .def("save", &kdv::PhiField::save, py::arg("path"))
      .def_static("load", &kdv::PhiField::load, py::arg("path"));
  m.def(
      "solve_faminskii",
      [](double L, int N, double delta, double tol,
         std::vector<double> capture_times) {
        kdv::FaminskiiConfig cfg;
        cfg.L = L;
        cfg.N = N;
        cfg.delta = delta;
        cfg.tol = tol;
        cfg.capture_times = std::move(capture_times);
        return kdv::solve_faminskii(cfg);
      },
      py::arg("L") = 150.0, py::arg("N") = 32768, py::arg("delta") = 0.5,
      py::arg("tol") = 1e-7, py::arg("capture_times") = std::vector<double>{});
  m.def("renorm_weak_kdv", &kdv::renorm_weak_kdv, py::arg("profile"),
        py::arg("phi"), py::arg("x"), py::arg("t"), py::arg("eps"),
        py::arg("rel_tol") = 1e-10, py::arg("extend_background") = true);

  // verification helpers
  m.def(
      "pde_residual",
      [](const std::function<double(double, double)>& u,
         const std::string& equation, double x, double t, double h) {
        const auto eq = equation == "burgers"
                            ? verify::Equation::kBurgersUnitViscosity
                            : verify::Equation::kKdvUnitDispersion;
        return verify::pde_residual(u, eq, x, t, h);
      },
      py::arg("u"), py::arg("equation"), py::arg("x"), py::arg("t"),
      py::arg("h"));
  m.def(
      "fit_order",
      [](const std::vector<double>& eps, const std::vector<double>& norms) {
        const auto f = verify::fit_order(eps, norms);
        return py::make_tuple(f.slope, f.r2);
      },
      py::arg("eps"), py::arg("norms"));
}
