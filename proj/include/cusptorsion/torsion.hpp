#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "cusptorsion/crosssection.hpp"

namespace cusptorsion::torsion {

class WittViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct TorsionReport {
  double total = 0.0;
  std::map<std::string, double> breakdown;
  std::map<std::string, double> inputs;
  std::string cs_digest;

  /// Sum of the breakdown entries.
  double breakdown_sum() const;
};

/// Renormalized scalar analytic torsion of the model cusp over cs, with the
/// integrated anomaly supplied by the caller.
TorsionReport model_cusp_torsion(const crosssection::CrossSection& cs, double R, double anomaly_integral);

/// Divergent R' behaviour of log T(U_R \ U_R') - log T(U_R), o(1) dropped.
TorsionReport truncated_cusp_expansion(const crosssection::CrossSection& cs, double R, double R_prime);

/// Ratio of the L^2 norms of a harmonic p-form on (R, R') in the two metrics.
double det_norm_ratio(int n, int p, double R, double R_prime);
/// The generic branch with a real exponent e = 2p - n (e != 0).
double det_norm_ratio_exponent(double e, double R, double R_prime);

/// log tau(U_R*, h_g) - log tau(U_R*, h_N).
TorsionReport intersection_rescale(const crosssection::CrossSection& cs, double R);

/// Defect between renormalized analytic torsion and intersection R-torsion;
/// tau_cone is log tau(U*, E, h_N), stated in the basis named by basis_note.
TorsionReport cone_defect(const crosssection::CrossSection& cs, double tau_cone, const std::string& basis_note = "hN");

/// The same defect assembled from model_cusp_torsion, intersection_rescale,
/// the boundary term of the Cheeger-Mueller comparison and the metric anomaly.
TorsionReport cone_defect_via_anomaly_chain(const crosssection::CrossSection& cs, double tau_cone, double R,
                                            double anomaly_integral);

/// logT_K + logT_U + log_tau_H - chi log sqrt 2.
double glue_assemble(double logT_K, double logT_U_relN, double log_tau_H, double chi_N_E);
/// Variant without the Euler characteristic term.
double glue_assemble_primed(double logT_K, double logT_U_relN, double log_tau_H_N);

/// chi / 4 * log 2.
double cm_boundary_term(double chi_N_E);

}  // namespace cusptorsion::torsion
