#include "cusptorsion/torsion.hpp"

#include <cmath>

namespace cusptorsion::torsion {

using crosssection::CrossSection;

double TorsionReport::breakdown_sum() const {
  double s = 0.0;
  for (const auto& [k, v] : breakdown) s += v;
  return s;
}

namespace {

double sign_pow(int p) { return p % 2 ? -1.0 : 1.0; }  // (-1)^p

void finish(TorsionReport& r) { r.total = r.breakdown_sum(); }

void require_witt(const CrossSection& cs, const char* who) {
  if (!cs.witt()) throw WittViolation(std::string(who) + ": the middle Betti number must vanish");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(what);
}

}  // namespace

TorsionReport model_cusp_torsion(const CrossSection& cs, double R, double anomaly_integral) {
  cs.validate();
  require_positive(R, "model_cusp_torsion: R must be > 0");
  if (!std::isfinite(anomaly_integral)) throw std::invalid_argument("model_cusp_torsion: anomaly must be finite");
  double quarter = 0.0, half = 0.0, logr = 0.0;
  for (int p = 0; p <= cs.n; ++p) {
    const double b = static_cast<double>(cs.betti[p]);
    const double m = std::abs(cs.mu(p));
    const double s = -sign_pow(p);  // (-1)^{p+1}
    logr += s / 2.0 * b * m * std::log(R);
    if (2 * p == cs.n) continue;
    quarter += s / 4.0 * b * std::log(m);
    half += s / 2.0 * b * m * std::log(2.0 * m);
  }
  TorsionReport r;
  r.breakdown["anomaly"] = cs.rank_e / -2.0 * anomaly_integral;
  r.breakdown["quarter_log_mu"] = quarter;
  r.breakdown["half_mu_log_2mu"] = half;
  r.breakdown["mu_log_R"] = logr;
  r.inputs = {{"R", R}, {"anomaly", anomaly_integral}};
  r.cs_digest = crosssection::digest(cs);
  finish(r);
  return r;
}

TorsionReport truncated_cusp_expansion(const CrossSection& cs, double R, double R_prime) {
  cs.validate();
  require_positive(R, "truncated_cusp_expansion: R must be > 0");
  if (!(R_prime > R) || !std::isfinite(R_prime)) {
    throw std::invalid_argument("truncated_cusp_expansion: R' must exceed R");
  }
  TorsionReport r;
  const int h = cs.n / 2;
  if (cs.betti[h] != 0) {
    r.breakdown["middle_degree_loglog"] =
        sign_pow(h) / 2.0 * cs.betti[h] * (std::log(2.0) + std::log(std::log(R_prime)));
  }
  double interval = 0.0, neumann = 0.0;
  for (int p = 0; p <= cs.n; ++p) {
    if (p == h) continue;
    const double b = static_cast<double>(cs.betti[p]);
    const double m = std::abs(cs.mu(p));
    interval += sign_pow(p) / 2.0 * b * (m * std::log(R_prime) - 0.5 * std::log(m));
    neumann += sign_pow(p) / 2.0 * b * m * std::log(2.0 * m);
  }
  r.breakdown["harmonic_interval"] = interval;
  r.breakdown["neumann_correction"] = neumann;
  r.inputs = {{"R", R}, {"R_prime", R_prime}};
  r.cs_digest = crosssection::digest(cs);
  finish(r);
  return r;
}

double det_norm_ratio(int n, int p, double R, double R_prime) {
  require_positive(R, "det_norm_ratio: R must be > 0");
  if (!(R_prime > R) || !std::isfinite(R_prime)) throw std::invalid_argument("det_norm_ratio: R' must exceed R");
  if (n < 2 || n % 2 != 0 || p < 0 || p > n) throw std::invalid_argument("det_norm_ratio: invalid degree");
  if (2 * p == n) return (std::log(R_prime) - std::log(R)) / (R_prime - R);
  return det_norm_ratio_exponent(2.0 * p - n, R, R_prime);
}

double det_norm_ratio_exponent(double e, double R, double R_prime) {
  require_positive(R, "det_norm_ratio: R must be > 0");
  if (!(R_prime > R) || !std::isfinite(R_prime)) throw std::invalid_argument("det_norm_ratio: R' must exceed R");
  if (e == 0.0 || !std::isfinite(e)) throw std::invalid_argument("det_norm_ratio: exponent must be nonzero");
  // (R'^e - R^e) / e written with expm1 so that small exponents keep their digits
  const double num = std::pow(R, e) * std::expm1(e * std::log(R_prime / R));
  return num / (e * (R_prime - R));
}

TorsionReport intersection_rescale(const CrossSection& cs, double R) {
  cs.validate();
  require_positive(R, "intersection_rescale: R must be > 0");
  require_witt(cs, "intersection_rescale");
  double logr = 0.0, quarter = 0.0;
  for (int p = 0; p <= cs.n; ++p) {
    if (2 * p == cs.n) continue;
    const double b = static_cast<double>(cs.betti[p]);
    const double m = std::abs(cs.mu(p));
    logr += -sign_pow(p) / 2.0 * b * m * std::log(R);
    quarter += -sign_pow(p) / 4.0 * b * std::log(2.0 * m);
  }
  TorsionReport r;
  r.breakdown["mu_log_R"] = logr;
  r.breakdown["quarter_log_2mu"] = quarter;
  r.inputs = {{"R", R}};
  r.cs_digest = crosssection::digest(cs);
  finish(r);
  return r;
}

TorsionReport cone_defect(const CrossSection& cs, double tau_cone, const std::string& basis_note) {
  cs.validate();
  require_witt(cs, "cone_defect");
  if (basis_note != "hN") throw std::invalid_argument("cone_defect: tau_cone must be stated in the basis hN");
  if (!std::isfinite(tau_cone)) throw std::invalid_argument("cone_defect: tau_cone must be finite");
  double half = 0.0;
  for (int p = 0; p <= cs.n; ++p) {
    if (2 * p == cs.n) continue;
    const double m = std::abs(cs.mu(p));
    half += -sign_pow(p) / 2.0 * cs.betti[p] * m * std::log(2.0 * m);
  }
  TorsionReport r;
  r.breakdown["tau_cone"] = -tau_cone;
  r.breakdown["half_mu_log_2mu"] = half;
  r.inputs = {{"tau_cone", tau_cone}};
  r.cs_digest = crosssection::digest(cs);
  finish(r);
  return r;
}

TorsionReport cone_defect_via_anomaly_chain(const CrossSection& cs, double tau_cone, double R,
                                            double anomaly_integral) {
  require_witt(cs, "cone_defect");
  const TorsionReport model = model_cusp_torsion(cs, R, anomaly_integral);
  const TorsionReport rescale = intersection_rescale(cs, R);
  TorsionReport r;
  r.breakdown["model_cusp"] = model.total;
  r.breakdown["intersection_torsion"] = -(tau_cone + rescale.total);
  r.breakdown["cm_boundary"] = -cm_boundary_term(static_cast<double>(cs.euler_characteristic()));
  r.breakdown["metric_anomaly"] = cs.rank_e / 2.0 * anomaly_integral;
  r.inputs = {{"R", R}, {"anomaly", anomaly_integral}, {"tau_cone", tau_cone}};
  r.cs_digest = crosssection::digest(cs);
  finish(r);
  return r;
}

double glue_assemble(double logT_K, double logT_U_relN, double log_tau_H, double chi_N_E) {
  return logT_K + logT_U_relN + log_tau_H - chi_N_E * std::log(std::sqrt(2.0));
}

double glue_assemble_primed(double logT_K, double logT_U_relN, double log_tau_H_N) {
  return logT_K + logT_U_relN + log_tau_H_N;
}

double cm_boundary_term(double chi_N_E) { return chi_N_E / 4.0 * std::log(2.0); }

}  // namespace cusptorsion::torsion
