#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cusptorsion/anomaly.hpp"
#include "cusptorsion/crosssection.hpp"
#include "cusptorsion/cuspops.hpp"
#include "cusptorsion/detzeta.hpp"
#include "cusptorsion/report.hpp"
#include "cusptorsion/specfun.hpp"
#include "cusptorsion/torsion.hpp"
#include "cusptorsion/verify.hpp"

namespace py = pybind11;
using namespace cusptorsion;

namespace {

py::dict report_dict(const torsion::TorsionReport& r) {
  py::dict d;
  d["total"] = r.total;
  d["breakdown"] = r.breakdown;
  d["inputs"] = r.inputs;
  d["cross_section_digest"] = r.cs_digest;
  return d;
}

py::dict bessel_dict(const specfun::BesselLog& b) {
  py::dict d;
  d["log_i"] = b.log_i;
  d["log_k"] = b.log_k;
  d["dlog_i"] = b.dlog_i;
  d["dlog_k"] = b.dlog_k;
  return d;
}

cuspops::CuspOperator cusp(double mu, double c, double R, std::optional<double> alpha, const std::string& convention) {
  cuspops::CuspOperator op{mu, c, R, cuspops::BoundaryCondition::dirichlet()};
  if (alpha) {
    cuspops::AlphaConvention conv;
    if (convention == "scaled") {
      conv = cuspops::AlphaConvention::scaled;
    } else if (convention == "absolute") {
      conv = cuspops::AlphaConvention::absolute;
    } else {
      throw std::invalid_argument("convention must be 'scaled' or 'absolute'");
    }
    op.bc = cuspops::BoundaryCondition::neumann(*alpha, conv);
  }
  op.validate();
  return op;
}

}  // namespace

PYBIND11_MODULE(_cusptorsion, m) {
  m.doc() = "Bindings for the cusptorsion library";

  py::register_exception<crosssection::SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<torsion::WittViolation>(m, "WittViolation", PyExc_ValueError);

  m.def("bessel_ik", [](double nu, double x) {
    const auto q = specfun::bessel_ik(nu, x);
    return py::make_tuple(q.i_val, q.k_val, q.i_prime, q.k_prime);
  }, py::arg("nu"), py::arg("x"), "I, K, I', K' at (nu, x).");
  m.def("bessel_ik_log", [](double nu, double x) { return bessel_dict(specfun::bessel_ik_log(nu, x)); },
        py::arg("nu"), py::arg("x"));
  m.def("uniform_ik_log", [](double nu, double s, int k_max) { return bessel_dict(specfun::uniform_ik_log(nu, s, k_max)); },
        py::arg("nu"), py::arg("s"), py::arg("k_max") = 4);
  m.def("wronskian_error", [](double nu, double x) {
    return specfun::wronskian_product(specfun::bessel_ik_log(nu, x), x) - 1.0;
  }, py::arg("nu"), py::arg("x"));

  m.def("resolvent_trace", [](double mu, double c, double R, std::optional<double> alpha, const std::string& conv) {
    return cuspops::resolvent_trace(cusp(mu, c, R, alpha, conv));
  }, py::arg("mu"), py::arg("c"), py::arg("R"), py::arg("neumann") = py::none(), py::arg("convention") = "scaled");
  m.def("logdet_halfline", [](double mu, double c, double R, std::optional<double> alpha, const std::string& conv) {
    const auto op = cusp(mu, c, R, alpha, conv);
    if (!alpha) return detzeta::logdet_wronskian_dirichlet(mu, R, c);
    return detzeta::logdet_wronskian_neumann(mu, R, c, op.bc.alpha_absolute(R));
  }, py::arg("mu"), py::arg("c"), py::arg("R"), py::arg("neumann") = py::none(), py::arg("convention") = "scaled");
  m.def("logdet_resolvent", [](double mu, double c, double R) {
    return detzeta::logdet_resolvent(cusp(mu, c, R, std::nullopt, "scaled")).value;
  }, py::arg("mu"), py::arg("c"), py::arg("R"));
  m.def("t_function", [](double z, double c, double mu, double R, std::optional<double> R_prime) {
    if (R_prime) {
      return detzeta::t_function(cuspops::IntervalOperator{mu, c, R, *R_prime, cuspops::BoundaryCondition::dirichlet(),
                                                           cuspops::BoundaryCondition::dirichlet()},
                                 z);
    }
    return detzeta::t_function(cusp(mu, c, R, std::nullopt, "scaled"), z);
  }, py::arg("z"), py::arg("c"), py::arg("mu"), py::arg("R"), py::arg("R_prime") = py::none());
  m.def("interval_logdet", [](double mu_p, double R, double R_prime) {
    return detzeta::bfk_interval_logdet({mu_p, R, R_prime, cuspops::HarmonicBc::Dirichlet}).value;
  }, py::arg("mu_p"), py::arg("R"), py::arg("R_prime"), "zeta'(0) of the harmonic interval operator.");
  m.def("interval_logdet_oracle", [](double mu_p, double R, double R_prime, int cutoff) {
    return detzeta::eigen_zeta_oracle({mu_p, R, R_prime, cuspops::HarmonicBc::Dirichlet}, cutoff).value;
  }, py::arg("mu_p"), py::arg("R"), py::arg("R_prime"), py::arg("cutoff") = 50);
  m.def("halfline_harmonic_zeta_prime0", [](double mu_p, double R, bool numeric) {
    return numeric ? detzeta::harmonic_halfline_zeta_prime0_numeric(mu_p, R).value
                   : detzeta::harmonic_halfline_zeta_prime0(mu_p, R).value;
  }, py::arg("mu_p"), py::arg("R"), py::arg("numeric") = false);
  m.def("neumann_dirichlet_diff", [](double mu_p, bool numeric) {
    return numeric ? detzeta::neumann_dirichlet_diff_numeric(mu_p) : detzeta::neumann_dirichlet_diff(mu_p);
  }, py::arg("mu_p"), py::arg("numeric") = false);

  py::class_<crosssection::CrossSection>(m, "CrossSection")
      .def_static("loads", &crosssection::load_text, py::arg("text"))
      .def_static("load", &crosssection::load_file, py::arg("path"))
      .def_static("flat_torus", &crosssection::generate_flat_torus_2d, py::arg("side"), py::arg("cutoff"))
      .def_readonly("n", &crosssection::CrossSection::n)
      .def_readonly("betti", &crosssection::CrossSection::betti)
      .def_readonly("rank_e", &crosssection::CrossSection::rank_e)
      .def_readonly("volume", &crosssection::CrossSection::volume)
      .def("dumps", [](const crosssection::CrossSection& cs) { return crosssection::serialize(cs); })
      .def("digest", [](const crosssection::CrossSection& cs) { return crosssection::digest(cs); })
      .def("euler_characteristic", [](const crosssection::CrossSection& cs) { return crosssection::euler_char(cs); })
      .def("witt", [](const crosssection::CrossSection& cs) { return crosssection::witt_check(cs); })
      .def("mu", &crosssection::CrossSection::mu, py::arg("p"))
      .def("zeta_ccl", [](const crosssection::CrossSection& cs, int p, double s) { return crosssection::zeta_ccl(cs, p, s); },
           py::arg("p"), py::arg("s"));

  m.def("model_cusp_torsion", [](const crosssection::CrossSection& cs, double R, double anomaly) {
    return report_dict(torsion::model_cusp_torsion(cs, R, anomaly));
  }, py::arg("cross_section"), py::arg("R"), py::arg("anomaly"));
  m.def("cone_defect", [](const crosssection::CrossSection& cs, double tau_cone, const std::string& basis) {
    return report_dict(torsion::cone_defect(cs, tau_cone, basis));
  }, py::arg("cross_section"), py::arg("tau_cone"), py::arg("basis"));
  m.def("truncated_cusp_expansion", [](const crosssection::CrossSection& cs, double R, double R_prime) {
    return report_dict(torsion::truncated_cusp_expansion(cs, R, R_prime));
  }, py::arg("cross_section"), py::arg("R"), py::arg("R_prime"));
  m.def("glue_assemble", &torsion::glue_assemble, py::arg("logT_K"), py::arg("logT_U"), py::arg("log_tau"),
        py::arg("chi"));
  m.def("det_norm_ratio", &torsion::det_norm_ratio, py::arg("n"), py::arg("p"), py::arg("R"), py::arg("R_prime"));

  m.def("secondary_class", [](int n, double fprime0, double volume, int rank, double kappa) {
    anomaly::AnomalyInput in;
    in.n = n;
    in.fprime0 = fprime0;
    in.volume = volume;
    in.rank_e = rank;
    in.kappa = kappa;
    return anomaly::b_secondary_class(in);
  }, py::arg("n"), py::arg("fprime0"), py::arg("volume") = 1.0, py::arg("rank") = 1, py::arg("kappa") = 1.0);

  m.def("verify", [](const std::string& suite, int jobs) {
    py::list out;
    for (const auto& c : verify::run_suite(suite, jobs)) {
      py::dict d;
      d["name"] = c.name;
      d["criterion"] = c.criterion;
      d["measured"] = c.measured;
      d["tolerance"] = c.tolerance;
      d["passed"] = c.passed;
      out.append(d);
    }
    return out;
  }, py::arg("suite") = "all", py::arg("jobs") = 1);
}
