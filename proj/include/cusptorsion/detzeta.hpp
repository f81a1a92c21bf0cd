#pragma once

#include <string>

#include "cusptorsion/crosssection.hpp"
#include "cusptorsion/cuspops.hpp"

namespace cusptorsion::detzeta {

enum class ZetaKind { zeta_at_s, zeta_prime_at_0, logdet };
enum class Provenance { closed_form, resolvent_pipeline, eigen_oracle };

struct ZetaValue {
  double value = 0.0;
  ZetaKind kind = ZetaKind::logdet;
  Provenance provenance = Provenance::closed_form;
};

std::string to_string(ZetaKind k);
std::string to_string(Provenance p);

/// log det of the Dirichlet operator of order t, computed as
/// -2 reg-int z Tr(D_t + z^2)^{-1} dz. The leading large-order behaviour of the
/// trace is subtracted and integrated analytically; the remainder is fitted.
ZetaValue logdet_resolvent(const cuspops::CuspOperator& op, double t);
ZetaValue logdet_resolvent(const cuspops::CuspOperator& op);

/// log of the Wronskian-normalized boundary value, -log(I' - (I/K) K')(mu R),
/// which equals log(mu R K_t(mu R)). Differences in t agree with logdet_resolvent.
double logdet_wronskian_dirichlet(double mu, double R, double t);

/// -log|I - rho K|(mu R) for the generalized Neumann condition with absolute alpha.
double logdet_wronskian_neumann(double mu, double R, double t, double alpha_abs);

/// t-derivatives of the two expressions above by central differences (step 1e-5).
double ddt_logdet_dirichlet(double mu, double R, double t);
double ddt_logdet_neumann(double mu, double R, double t, double alpha_abs);

struct TFunctionParts {
  double halfline = 0.0;
  double interval_groups = 0.0;  // zero for half-line operators
  double total = 0.0;
};

/// t(-z^2, D) = -log(det D_{c(mu z)} / det D_c) with c(mu z) = sqrt(c^2 + mu^2 z^2).
TFunctionParts t_function_parts(const cuspops::CuspOperator& op, double z);
TFunctionParts t_function_parts(const cuspops::IntervalOperator& op, double z);
double t_function(const cuspops::CuspOperator& op, double z);
double t_function(const cuspops::IntervalOperator& op, double z);

/// zeta'(0) of the harmonic operator on (R, R') with Dirichlet conditions,
/// from the Wronskian of the boundary-adapted solutions.
ZetaValue bfk_interval_logdet(const cuspops::HarmonicOperator& op);

/// zeta'(0) of the same operator from its explicit eigenvalues
/// mu_p^2 + (k pi / L)^2: the first `cutoff` terms directly, the rest through
/// the binomial expansion into Hurwitz zeta values. Requires |mu_p| L < pi (cutoff + 1).
ZetaValue eigen_zeta_oracle(const cuspops::HarmonicOperator& op, int cutoff = 50);

/// |mu_p| log R + log|mu_p| / 2, and 0 for mu_p = 0.
ZetaValue harmonic_halfline_zeta_prime0(double mu_p, double R);

/// Same value as 2 reg-int z Tr_r(Delta_H + z^2)^{-1} dz.
ZetaValue harmonic_halfline_zeta_prime0_numeric(double mu_p, double R,
                                                cuspops::HarmonicBc bc = cuspops::HarmonicBc::Dirichlet);

/// zeta'(0) of the Neumann realization minus that of the Dirichlet one.
double neumann_dirichlet_diff(double mu_p);
double neumann_dirichlet_diff_numeric(double mu_p);

/// -zeta(0, Delta_{p,ccl}) log 2.
double comparison_limit(const crosssection::CrossSection& cs, int p);

}  // namespace cusptorsion::detzeta
