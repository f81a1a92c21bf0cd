#include "cusptorsion/detzeta.hpp"

#include <cmath>
#include <stdexcept>

#include "cusptorsion/asymptote.hpp"
#include "cusptorsion/specfun.hpp"
#include "cusptorsion/zeta.hpp"

namespace cusptorsion::detzeta {

using cuspops::BcKind;
using cuspops::CuspOperator;
using cuspops::HarmonicBc;
using cuspops::HarmonicOperator;
using cuspops::IntervalOperator;

std::string to_string(ZetaKind k) {
  switch (k) {
    case ZetaKind::zeta_at_s: return "zeta_at_s";
    case ZetaKind::zeta_prime_at_0: return "zeta_prime_at_0";
    case ZetaKind::logdet: return "logdet";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::resolvent_pipeline: return "resolvent_pipeline";
    case Provenance::eigen_oracle: return "eigen_oracle";
  }
  return "?";
}

namespace {

constexpr double kOrderStep = 1e-5;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

struct SignedLog {
  double log_abs;
  double sign;
};

// log|a - b| for a, b given as signed logarithms
double log_abs_difference(SignedLog a, SignedLog b) {
  if (b.sign == 0.0) return a.log_abs;
  if (a.sign == 0.0) return b.log_abs;
  const bool same = a.sign == b.sign;
  const SignedLog& big = a.log_abs >= b.log_abs ? a : b;
  const SignedLog& small = a.log_abs >= b.log_abs ? b : a;
  const double r = std::exp(small.log_abs - big.log_abs);
  if (same) {
    if (r == 1.0) throw std::domain_error("vanishing Wronskian");
    return big.log_abs + std::log1p(-r);
  }
  return big.log_abs + std::log1p(r);
}

void check_kernel(double dlog_k, double shift, double mu) {
  if (std::abs(dlog_k + shift / mu) <= 1e-12) {
    throw std::domain_error("nontrivial kernel: generalized Neumann condition is satisfied by K");
  }
}

// log|(I/K)(mu I'/I + A)/(mu K'/K + A)| with sign
SignedLog neumann_rho(const specfun::BesselLog& b, double mu, double shift) {
  const double num = mu * b.dlog_i + shift;
  const double den = mu * b.dlog_k + shift;
  if (num == 0.0) return {0.0, 0.0};
  return {b.log_i - b.log_k + std::log(std::abs(num)) - std::log(std::abs(den)),
          (num > 0.0) == (den > 0.0) ? 1.0 : -1.0};
}

// log Phi for the half-line operator, Phi = I' - (I/K) K' or its Neumann analogue
double log_phi_dirichlet(double mu, double R, double nu) {
  const auto b = specfun::bessel_log_auto(nu, mu * R);
  return -std::log(mu * R) - b.log_k;
}

double log_phi_neumann(double mu, double R, double nu, double shift) {
  const auto b = specfun::bessel_log_auto(nu, mu * R);
  check_kernel(b.dlog_k, shift, mu);
  return -std::log(R) - b.log_k - std::log(std::abs(mu * b.dlog_k + shift));
}

double log_phi(const CuspOperator& op, double nu) {
  if (op.bc.kind == BcKind::Dirichlet) return log_phi_dirichlet(op.mu, op.R, nu);
  return log_phi_neumann(op.mu, op.R, nu, cuspops::neumann_shift(op.bc, op.R));
}

// additional logarithms of the interval operator at order nu
double interval_groups(const IntervalOperator& op, double nu) {
  const auto bR = specfun::bessel_log_auto(nu, op.mu * op.R);
  const auto bP = specfun::bessel_log_auto(nu, op.mu * op.R_prime);
  if (op.bc.kind == BcKind::Dirichlet) {
    const double e = bR.log_i - bR.log_k + bP.log_k - bP.log_i;
    return -(bP.log_i + std::log(-std::expm1(e)));
  }
  const double a = cuspops::neumann_shift(op.bc, op.R);
  const double ap = cuspops::neumann_shift(op.bc_prime, op.R_prime);
  check_kernel(bR.dlog_k, a, op.mu);
  check_kernel(bP.dlog_k, ap, op.mu);
  const double g1 = bP.log_k + std::log(std::abs(op.mu * bP.dlog_k + ap));
  const double g2 = log_abs_difference(neumann_rho(bP, op.mu, ap), neumann_rho(bR, op.mu, a));
  return -g1 - g2;
}

double shifted_order(double c, double mu, double z) { return std::hypot(c, mu * z); }

double central_difference(const std::function<double(double)>& f, double t) {
  return (f(t + kOrderStep) - f(std::abs(t - kOrderStep))) / (2.0 * kOrderStep);
}

}  // namespace

ZetaValue logdet_resolvent(const CuspOperator& op, double t) {
  op.validate();
  require(op.bc.kind == BcKind::Dirichlet, "logdet_resolvent: Dirichlet operator required");
  require(std::isfinite(t) && t >= 0.0, "logdet_resolvent: order must be >= 0");
  const double a = op.mu * op.R;
  // z Tr(D_t + z^2)^{-1} minus z/(2u) asinh(u/a), u = sqrt(t^2 + z^2)
  auto remainder = [&](double z) {
    if (z == 0.0) return 0.0;
    const double u = std::hypot(t, z);
    return z * cuspops::resolvent_trace(op, u) - z / (2.0 * u) * std::asinh(u / a);
  };
  asymptote::RegIntegralOptions opts;
  opts.z_first = 40.0;
  opts.z_last = 1600.0;
  opts.cut_count = 25;
  opts.abs_tol = 1e-9;
  const double rest = asymptote::reg_integral(remainder, 0.0, {{0.0, 1}}, opts);
  const double reference = -0.5 * (t * std::asinh(t / a) - std::hypot(t, a));
  return {-2.0 * (reference + rest), ZetaKind::logdet, Provenance::resolvent_pipeline};
}

ZetaValue logdet_resolvent(const CuspOperator& op) { return logdet_resolvent(op, op.shift); }

double logdet_wronskian_dirichlet(double mu, double R, double t) {
  require(mu > 0.0 && R > 0.0 && t >= 0.0, "logdet_wronskian_dirichlet: invalid arguments");
  return -log_phi_dirichlet(mu, R, t);
}

double logdet_wronskian_neumann(double mu, double R, double t, double alpha_abs) {
  require(mu > 0.0 && R > 0.0 && t >= 0.0, "logdet_wronskian_neumann: invalid arguments");
  return -log_phi_neumann(mu, R, t, alpha_abs - 0.5 / R);
}

double ddt_logdet_dirichlet(double mu, double R, double t) {
  require(mu > 0.0 && R > 0.0 && t >= 0.0, "ddt_logdet_dirichlet: invalid arguments");
  return central_difference([&](double s) { return -log_phi_dirichlet(mu, R, s); }, t);
}

double ddt_logdet_neumann(double mu, double R, double t, double alpha_abs) {
  require(mu > 0.0 && R > 0.0 && t >= 0.0, "ddt_logdet_neumann: invalid arguments");
  const double shift = alpha_abs - 0.5 / R;
  log_phi_neumann(mu, R, t, shift);  // kernel check at t itself
  return central_difference([&](double s) { return -log_phi_neumann(mu, R, s, shift); }, t);
}

TFunctionParts t_function_parts(const CuspOperator& op, double z) {
  op.validate();
  require(std::isfinite(z) && z >= 0.0, "t_function: z must be >= 0");
  TFunctionParts parts;
  if (z == 0.0) return parts;
  const double cz = shifted_order(op.shift, op.mu, z);
  parts.halfline = log_phi(op, cz) - log_phi(op, op.shift);
  parts.total = parts.halfline;
  return parts;
}

TFunctionParts t_function_parts(const IntervalOperator& op, double z) {
  op.validate();
  require(std::isfinite(z) && z >= 0.0, "t_function: z must be >= 0");
  require(op.bc.kind == op.bc_prime.kind, "t_function: both ends must carry the same kind of condition");
  TFunctionParts parts;
  if (z == 0.0) return parts;
  const CuspOperator half{op.mu, op.shift, op.R, op.bc};
  const double cz = shifted_order(op.shift, op.mu, z);
  parts.halfline = log_phi(half, cz) - log_phi(half, op.shift);
  parts.interval_groups = interval_groups(op, cz) - interval_groups(op, op.shift);
  parts.total = parts.halfline + parts.interval_groups;
  return parts;
}

double t_function(const CuspOperator& op, double z) { return t_function_parts(op, z).total; }
double t_function(const IntervalOperator& op, double z) { return t_function_parts(op, z).total; }

namespace {

struct IntervalData {
  double mu;  // |mu_p|
  double L;
};

IntervalData interval_data(const HarmonicOperator& op) {
  op.validate();
  if (!op.R_prime) throw std::invalid_argument("interval determinant: R' is required");
  if (op.bc != HarmonicBc::Dirichlet) throw std::invalid_argument("interval determinant: Dirichlet conditions required");
  return {std::abs(op.mu_p), std::log(*op.R_prime / op.R)};
}

}  // namespace

ZetaValue bfk_interval_logdet(const HarmonicOperator& op) {
  const auto [mu, L] = interval_data(op);
  // phi(r) = sinh(mu (r - log R)) / mu solves the Dirichlet problem at log R with
  // phi' = 1; zeta'(0) = -log(2 phi(log R')).
  double log_two_phi;
  const double x = mu * L;
  if (mu == 0.0) {
    log_two_phi = std::log(2.0 * L);
  } else if (x > 1.0) {
    log_two_phi = x + std::log1p(-std::exp(-2.0 * x)) - std::log(mu);
  } else {
    log_two_phi = std::log(2.0 * L) + std::log(std::sinh(x) / x);
  }
  return {-log_two_phi, ZetaKind::zeta_prime_at_0, Provenance::closed_form};
}

ZetaValue eigen_zeta_oracle(const HarmonicOperator& op, int cutoff) {
  const auto [mu, L] = interval_data(op);
  if (cutoff < 1) throw std::invalid_argument("eigen_zeta_oracle: cutoff must be >= 1");
  if (!(mu * L < M_PI * (cutoff + 1))) {
    throw std::domain_error("eigen_zeta_oracle: |mu_p| L outside the convergence domain");
  }
  const double n1 = cutoff + 1.0;
  double value = 0.0;
  for (int k = 1; k <= cutoff; ++k) {
    const double q = k * M_PI / L;
    value -= std::log(mu * mu + q * q);
  }
  value += 2.0 * std::log(L / M_PI) * (0.5 - n1);
  value += 2.0 * (std::lgamma(n1) - 0.5 * std::log(2.0 * M_PI));
  const double a = std::pow(mu * L / M_PI, 2);
  double apow = 1.0;
  for (int j = 1; j < 400; ++j) {
    apow *= a;
    const double term = (j % 2 ? -1.0 : 1.0) * apow * zeta::hurwitz(2.0 * j, n1) / j;
    value += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(value))) break;
  }
  return {value, ZetaKind::zeta_prime_at_0, Provenance::eigen_oracle};
}

ZetaValue harmonic_halfline_zeta_prime0(double mu_p, double R) {
  require(std::isfinite(mu_p) && R > 0.0, "harmonic_halfline_zeta_prime0: invalid arguments");
  if (mu_p == 0.0) return {0.0, ZetaKind::zeta_prime_at_0, Provenance::closed_form};
  const double m = std::abs(mu_p);
  return {m * std::log(R) + 0.5 * std::log(m), ZetaKind::zeta_prime_at_0, Provenance::closed_form};
}

ZetaValue harmonic_halfline_zeta_prime0_numeric(double mu_p, double R, HarmonicBc bc) {
  const HarmonicOperator op{mu_p, R, std::nullopt, bc};
  op.validate();
  asymptote::RegIntegralOptions opts;
  const bool singular_at_zero = bc == HarmonicBc::Dirichlet ? mu_p == 0.0 : mu_p <= 0.0;
  if (singular_at_zero) opts.lower_model = {{0.0, 1}};
  auto f = [&](double z) {
    if (z == 0.0) return 0.0;
    return z * cuspops::renorm_resolvent_trace_harmonic(op, z);
  };
  const double v = 2.0 * asymptote::reg_integral(f, 0.0, {{1.0, 0}, {0.0, 1}}, opts);
  return {v, ZetaKind::zeta_prime_at_0, Provenance::resolvent_pipeline};
}

double neumann_dirichlet_diff(double mu_p) {
  require(std::isfinite(mu_p), "neumann_dirichlet_diff: mu_p must be finite");
  if (mu_p == 0.0) return 0.0;
  const double v = std::log(2.0 * std::abs(mu_p));
  return mu_p > 0.0 ? -v : v;
}

double neumann_dirichlet_diff_numeric(double mu_p) {
  require(std::isfinite(mu_p), "neumann_dirichlet_diff: mu_p must be finite");
  asymptote::RegIntegralOptions opts;
  if (mu_p <= 0.0) opts.lower_model = {{0.0, 1}};
  // 2 z (Tr_N - Tr_D) = z / (k (k + mu_p))
  auto f = [&](double z) {
    if (z == 0.0) return mu_p > 0.0 ? 0.0 : std::nan("");
    const double k = std::hypot(mu_p, z);
    const double kp = mu_p >= 0.0 ? k + mu_p : z * z / (k - mu_p);
    return z / (k * kp);
  };
  return asymptote::reg_integral(f, 0.0, {{0.0, 1}}, opts);
}

double comparison_limit(const crosssection::CrossSection& cs, int p) {
  return -crosssection::zeta_ccl_at_zero(cs, p) * std::log(2.0);
}

}  // namespace cusptorsion::detzeta
