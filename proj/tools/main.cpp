#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cusptorsion/anomaly.hpp"
#include "cusptorsion/crosssection.hpp"
#include "cusptorsion/cuspops.hpp"
#include "cusptorsion/detzeta.hpp"
#include "cusptorsion/report.hpp"
#include "cusptorsion/specfun.hpp"
#include "cusptorsion/torsion.hpp"
#include "cusptorsion/verify.hpp"

using namespace cusptorsion;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitNumerical = 4;

const CLI::Validator kFinite(
    [](std::string& s) -> std::string {
      try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) return "value must be a finite number";
      } catch (const std::exception&) {
        return "value must be a finite number";
      }
      return {};
    },
    "FINITE");

struct Globals {
  std::string csv_path;
  std::string output_path;
  int jobs = 1;
};

json bessel_json(double nu, double x, std::optional<int> uniform) {
  json j = json::object();
  j["nu"] = nu;
  j["x"] = x;
  specfun::BesselLog b;
  if (uniform) {
    if (*uniform < 0 || *uniform > specfun::kOlverMaxOrder) {
      throw std::invalid_argument("--uniform must be between 0 and " + std::to_string(specfun::kOlverMaxOrder));
    }
    b = specfun::uniform_ik_log(nu, x / nu, *uniform);
    j["method"] = "uniform";
    j["k_max"] = *uniform;
  } else {
    b = specfun::bessel_ik_log(nu, x);
    j["method"] = "direct";
  }
  j["log_i"] = b.log_i;
  j["log_k"] = b.log_k;
  j["dlog_i"] = b.dlog_i;
  j["dlog_k"] = b.dlog_k;
  j["wronskian_error"] = specfun::wronskian_product(b, x) - 1.0;
  try {
    const auto q = specfun::to_quad(b);
    j["i"] = q.i_val;
    j["k"] = q.k_val;
    j["i_prime"] = q.i_prime;
    j["k_prime"] = q.k_prime;
  } catch (const specfun::OverflowError&) {
    j["plain_values"] = "out of double range; use the log-scaled fields";
  }
  return j;
}

cuspops::AlphaConvention parse_convention(const std::string& s) {
  if (s == "scaled") return cuspops::AlphaConvention::scaled;
  if (s == "absolute") return cuspops::AlphaConvention::absolute;
  throw std::invalid_argument("--convention must be scaled or absolute");
}

json halfline_json(double mu, double c, double R, std::optional<double> alpha, const std::string& convention,
                   bool pipeline) {
  json j = json::object();
  j["mu"] = mu;
  j["c"] = c;
  j["R"] = R;
  cuspops::CuspOperator op{mu, c, R, cuspops::BoundaryCondition::dirichlet()};
  double logdet = 0.0;
  if (alpha) {
    op.bc = cuspops::BoundaryCondition::neumann(*alpha, parse_convention(convention));
    op.validate();
    const double a = op.bc.alpha_absolute(R);
    j["boundary"] = "neumann";
    j["alpha_absolute"] = a;
    logdet = detzeta::logdet_wronskian_neumann(mu, R, c, a);
    j["ddt_logdet"] = detzeta::ddt_logdet_neumann(mu, R, c, a);
  } else {
    op.validate();
    j["boundary"] = "dirichlet";
    logdet = detzeta::logdet_wronskian_dirichlet(mu, R, c);
    j["ddt_logdet"] = detzeta::ddt_logdet_dirichlet(mu, R, c);
  }
  j["logdet"] = logdet;
  j["provenance"] = detzeta::to_string(detzeta::Provenance::closed_form);
  j["resolvent_trace"] = cuspops::resolvent_trace(op, c);
  if (pipeline) {
    if (alpha) throw std::invalid_argument("--pipeline is available for the Dirichlet problem only");
    j["logdet_resolvent_pipeline"] = detzeta::logdet_resolvent(op, c).value;
  }
  return j;
}

json interval_json(double mu_p, double R, double R_prime) {
  const cuspops::HarmonicOperator op{mu_p, R, R_prime, cuspops::HarmonicBc::Dirichlet};
  op.validate();
  json j = json::object();
  j["mu_p"] = mu_p;
  j["R"] = R;
  j["R_prime"] = R_prime;
  j["zeta_prime0"] = detzeta::bfk_interval_logdet(op).value;
  j["provenance"] = detzeta::to_string(detzeta::Provenance::closed_form);
  try {
    j["zeta_prime0_eigen_oracle"] = detzeta::eigen_zeta_oracle(op).value;
  } catch (const std::domain_error&) {
    j["zeta_prime0_eigen_oracle"] = nullptr;
  }
  return j;
}

json tfunction_json(double z, double c, double mu, double R, std::optional<double> R_prime) {
  detzeta::TFunctionParts parts;
  if (R_prime) {
    const cuspops::IntervalOperator op{mu, c, R, *R_prime, cuspops::BoundaryCondition::dirichlet(),
                                       cuspops::BoundaryCondition::dirichlet()};
    parts = detzeta::t_function_parts(op, z);
  } else {
    parts = detzeta::t_function_parts(cuspops::CuspOperator{mu, c, R, cuspops::BoundaryCondition::dirichlet()}, z);
  }
  json j = json::object();
  j["z"] = z;
  j["c"] = c;
  j["mu"] = mu;
  j["R"] = R;
  if (R_prime) j["R_prime"] = *R_prime;
  j["total"] = parts.total;
  j["halfline"] = parts.halfline;
  j["interval_groups"] = parts.interval_groups;
  return j;
}

json anomaly_json(int n, double fprime0, double volume, int rank) {
  anomaly::AnomalyInput in;
  in.n = n;
  in.fprime0 = fprime0;
  in.volume = volume;
  in.rank_e = rank;
  json j = json::object();
  j["n"] = n;
  j["fprime0"] = fprime0;
  j["volume"] = volume;
  j["rank_e"] = rank;
  j["secondary_class"] = anomaly::b_secondary_class(in);
  j["flat_coefficient"] = anomaly::flat_coefficient(n);
  return j;
}

json verify_json(const std::vector<verify::Check>& checks, bool& all_passed) {
  json list = json::array();
  all_passed = true;
  for (const auto& c : checks) {
    json j = json::object();
    j["name"] = c.name;
    j["criterion"] = c.criterion;
    j["measured"] = c.measured;
    j["tolerance"] = c.tolerance;
    j["seconds"] = c.seconds;
    j["passed"] = c.passed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(j);
    all_passed = all_passed && c.passed;
  }
  json out = json::object();
  out["checks"] = list;
  out["passed"] = all_passed;
  return out;
}

void emit(const json& result, const Globals& g) {
  const std::string text = report::dump(result) + "\n";
  if (g.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.output_path, std::ios::binary);
    if (!out) throw crosssection::FileError("cannot write " + g.output_path);
    out << text;
  }
  if (!g.csv_path.empty()) {
    std::ofstream csv(g.csv_path, std::ios::binary);
    if (!csv) throw crosssection::FileError("cannot write " + g.csv_path);
    csv << report::to_csv(result);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinants, anomaly terms and analytic torsion of model cusps"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--csv", g.csv_path, "Also write name,value rows to this file");
  app.add_option("--output", g.output_path, "Write the JSON result to this file instead of stdout");
  app.add_option("--jobs", g.jobs, "Worker threads for grid evaluations")->check(CLI::Range(1, 256));

  double nu = 0, x = 0;
  std::optional<int> uniform;
  auto* bessel = app.add_subcommand("bessel", "Modified Bessel functions I and K");
  bessel->add_option("--nu", nu)->required()->check(kFinite);
  bessel->add_option("--x", x)->required()->check(kFinite);
  bessel->add_option("--uniform", uniform, "Use the uniform expansion with this many correction terms");

  auto* detz = app.add_subcommand("detzeta", "Regularized determinants");
  detz->require_subcommand(1);
  double mu = 1, c = 0, R = 1, R_prime = 0, mu_p = 0;
  std::optional<double> alpha;
  std::string convention = "scaled";
  bool pipeline = false;
  auto* halfline = detz->add_subcommand("halfline", "Half-line operator of order c");
  halfline->add_option("--mu", mu)->required()->check(kFinite);
  halfline->add_option("--c", c)->required()->check(kFinite);
  halfline->add_option("--R", R)->required()->check(kFinite);
  auto* neu = halfline->add_option("--neumann", alpha, "Generalized Neumann condition with this alpha")->check(kFinite);
  halfline->add_option("--convention", convention)->check(CLI::IsMember({"scaled", "absolute"}))->needs(neu);
  halfline->add_flag("--pipeline", pipeline, "Also run the resolvent-trace pipeline");
  auto* interval = detz->add_subcommand("interval", "Harmonic operator on an interval");
  interval->add_option("--mu_p", mu_p)->required()->check(kFinite);
  interval->add_option("--R", R)->required()->check(kFinite);
  interval->add_option("--Rprime", R_prime)->required()->check(kFinite);

  double z = 0;
  std::optional<double> tf_R_prime;
  auto* tfn = app.add_subcommand("tfunction", "t-function of the Dirichlet problem");
  tfn->add_option("--z", z)->required()->check(kFinite);
  tfn->add_option("--c", c)->required()->check(kFinite);
  tfn->add_option("--mu", mu)->required()->check(kFinite);
  tfn->add_option("--R", R)->required()->check(kFinite);
  tfn->add_option("--Rprime", tf_R_prime)->check(kFinite);

  std::string cs_path;
  double anomaly_value = 0;
  auto* model = app.add_subcommand("model-cusp", "Renormalized torsion of the model cusp");
  model->add_option("--cross-section", cs_path)->required();
  model->add_option("--R", R)->required()->check(kFinite);
  model->add_option("--anomaly", anomaly_value)->required()->check(kFinite);

  double tau_cone = 0;
  std::string basis;
  auto* defect = app.add_subcommand("defect", "Cheeger-Mueller defect from the cone torsion");
  defect->add_option("--cross-section", cs_path)->required();
  defect->add_option("--tau-cone", tau_cone)->required()->check(kFinite);
  defect->add_option("--basis", basis, "Basis of the cone torsion; only hN is accepted")
      ->required()
      ->check(CLI::IsMember({"hN"}));

  double logT_K = 0, logT_U = 0, log_tau = 0, chi = 0;
  auto* glue = app.add_subcommand("glue", "Gluing law for the torsion");
  glue->add_option("--logT-K", logT_K)->required()->check(kFinite);
  glue->add_option("--logT-U", logT_U)->required()->check(kFinite);
  glue->add_option("--log-tau", log_tau)->required()->check(kFinite);
  glue->add_option("--chi", chi)->required()->check(kFinite);

  int n = 2, rank = 1;
  double fprime0 = 0, volume = 1;
  auto* anom = app.add_subcommand("anomaly", "Boundary anomaly secondary class");
  anom->add_option("--n", n)->required();
  anom->add_option("--fprime0", fprime0)->required()->check(kFinite);
  anom->add_option("--volume", volume)->check(kFinite);
  anom->add_option("--rank", rank);

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run the built-in acceptance checks");
  ver->add_option("--suite", suite)->check(CLI::IsMember(verify::suite_names()));

  // global flags may follow the subcommand
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : detz->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    json result;
    int code = kExitOk;
    if (*bessel) {
      result = bessel_json(nu, x, uniform);
    } else if (*halfline) {
      result = halfline_json(mu, c, R, alpha, convention, pipeline);
    } else if (*interval) {
      result = interval_json(mu_p, R, R_prime);
    } else if (*tfn) {
      result = tfunction_json(z, c, mu, R, tf_R_prime);
    } else if (*model) {
      result = report::to_json(torsion::model_cusp_torsion(crosssection::load_file(cs_path), R, anomaly_value));
    } else if (*defect) {
      result = report::to_json(torsion::cone_defect(crosssection::load_file(cs_path), tau_cone, basis));
    } else if (*glue) {
      result = json::object();
      result["total"] = torsion::glue_assemble(logT_K, logT_U, log_tau, chi);
      result["cm_boundary"] = torsion::cm_boundary_term(chi);
      result["inputs"] = {{"logT_K", logT_K}, {"logT_U", logT_U}, {"log_tau", log_tau}, {"chi", chi}};
    } else if (*anom) {
      result = anomaly_json(n, fprime0, volume, rank);
    } else if (*ver) {
      bool passed = false;
      result = verify_json(verify::run_suite(suite, g.jobs), passed);
      result["suite"] = suite;
      if (!passed) code = kExitTolerance;
    }
    emit(result, g);
    return code;
  } catch (const crosssection::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
