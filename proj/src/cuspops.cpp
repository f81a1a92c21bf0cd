#include "cusptorsion/cuspops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cusptorsion/quadrature.hpp"
#include "cusptorsion/specfun.hpp"

namespace cusptorsion::cuspops {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// log|rho| and sign of rho, where G_t = x^{-1}(I K - rho K^2).
struct BoundaryRatio {
  double log_abs = 0.0;
  double sign = 1.0;
};

BoundaryRatio boundary_ratio(const CuspOperator& op, double t) {
  const auto b = specfun::bessel_log_auto(t, op.mu * op.R);
  BoundaryRatio r;
  r.log_abs = b.log_i - b.log_k;
  if (op.bc.kind == BcKind::Dirichlet) return r;
  const double a = neumann_shift(op.bc, op.R);
  const double num = op.mu * b.dlog_i + a;
  const double den = op.mu * b.dlog_k + a;
  if (std::abs(b.dlog_k + a / op.mu) <= 1e-12) {
    throw std::domain_error("green_diag: nontrivial kernel");
  }
  if (num == 0.0) {
    r.sign = 0.0;
    return r;
  }
  r.log_abs += std::log(std::abs(num)) - std::log(std::abs(den));
  r.sign = (num > 0.0) == (den > 0.0) ? 1.0 : -1.0;
  return r;
}

double green_from_ratio(const CuspOperator& op, const BoundaryRatio& rho, double t, double x) {
  const auto b = specfun::bessel_log_auto(t, op.mu * x);
  const double log_ik = b.log_i + b.log_k;
  if (rho.sign == 0.0) return std::exp(log_ik) / x;
  const double log_term = rho.log_abs + b.log_k - b.log_i;
  double bracket;
  if (rho.sign > 0.0) {
    // x >= R keeps the bracket nonnegative; rounding must not flip its sign
    bracket = std::max(0.0, -std::expm1(log_term));
  } else {
    bracket = 1.0 + std::exp(log_term);
  }
  return std::exp(log_ik) * bracket / x;
}

}  // namespace

double BoundaryCondition::alpha_absolute(double R) const {
  if (kind == BcKind::Dirichlet) throw std::logic_error("Dirichlet condition has no alpha");
  return convention == AlphaConvention::absolute ? alpha : alpha / R;
}

double BoundaryCondition::alpha_scaled(double R) const {
  if (kind == BcKind::Dirichlet) throw std::logic_error("Dirichlet condition has no alpha");
  return convention == AlphaConvention::scaled ? alpha : alpha * R;
}

BoundaryCondition BoundaryCondition::converted(AlphaConvention target, double R) const {
  if (kind == BcKind::Dirichlet) return *this;
  const double a = target == AlphaConvention::absolute ? alpha_absolute(R) : alpha_scaled(R);
  return neumann(a, target);
}

double neumann_shift(const BoundaryCondition& bc, double R) {
  return bc.alpha_absolute(R) - 0.5 / R;
}

void CuspOperator::validate() const {
  require(finite_positive(mu), "cusp operator: mu must be > 0");
  require(std::isfinite(shift) && shift >= 0.0, "cusp operator: shift must be >= 0");
  require(finite_positive(R), "cusp operator: R must be > 0");
  if (bc.kind == BcKind::GeneralizedNeumann) require(std::isfinite(bc.alpha), "cusp operator: alpha must be finite");
}

void IntervalOperator::validate() const {
  require(finite_positive(mu), "interval operator: mu must be > 0");
  require(std::isfinite(shift) && shift >= 0.0, "interval operator: shift must be >= 0");
  require(finite_positive(R), "interval operator: R must be > 0");
  require(std::isfinite(R_prime) && R_prime > R, "interval operator: R' must exceed R");
}

void HarmonicOperator::validate() const {
  require(std::isfinite(mu_p), "harmonic operator: mu_p must be finite");
  require(finite_positive(R), "harmonic operator: R must be > 0");
  if (R_prime) require(std::isfinite(*R_prime) && *R_prime > R, "harmonic operator: R' must exceed R");
}

SubcomplexPair from_coclosed_eigenform(int n, int p, double eta, double R) {
  if (n < 2 || n % 2 != 0) throw InvalidDegree("dimension n must be even and >= 2");
  if (p < 0 || p > n) throw InvalidDegree("degree p must lie in 0..n, got " + std::to_string(p));
  require(finite_positive(eta), "eigenvalue eta must be > 0");
  require(finite_positive(R), "R must be > 0");
  const double mu = std::sqrt(eta);
  const double half = n / 2.0;
  SubcomplexPair pair;
  pair.delta0 = CuspOperator{mu, std::abs(half - p), R, BoundaryCondition::dirichlet()};
  const double alpha = -((n - 3) / 2.0 - p);
  pair.delta1 = CuspOperator{mu, std::abs(half - p - 1), R,
                             BoundaryCondition::neumann(alpha, AlphaConvention::scaled)};
  return pair;
}

int twin_degree(int n, int p) {
  if (n < 2 || n % 2 != 0) throw InvalidDegree("dimension n must be even and >= 2");
  if (p < 0 || p > n - 1) throw InvalidDegree("twin needs 0 <= p <= n-1");
  return n - p - 1;
}

double green_diag(const CuspOperator& op, double t, double x) {
  op.validate();
  require(std::isfinite(t) && t >= 0.0, "green_diag: order must be >= 0");
  require(std::isfinite(x) && x >= op.R, "green_diag: x must be >= R");
  return green_from_ratio(op, boundary_ratio(op, t), t, x);
}

double green_diag(const CuspOperator& op, double x) { return green_diag(op, op.shift, x); }

double resolvent_trace(const CuspOperator& op, double t) {
  op.validate();
  require(std::isfinite(t) && t >= 0.0, "resolvent_trace: order must be >= 0");
  const auto rho = boundary_ratio(op, t);
  const double mr = op.mu * op.R;
  const double mx = std::max({mr + 20.0, 40.0 * (t + 1.0), 30.0});
  const double X = mx / op.mu;
  quad::QuadOptions qo;
  qo.abs_tol = 1e-13;
  qo.rel_tol = 1e-13;
  auto integrand = [&](double u) {
    const double x = std::exp(u);
    return x * green_from_ratio(op, rho, t, x);
  };
  // The boundary term lives in a layer of width about R / (t + mu R) next to
  // x = R; breakpoints at geometrically growing distances resolve it.
  const double width = 1.0 / (t + mr + 1.0);
  double body = 0.0;
  double lo = std::log(op.R);
  for (double step = width; lo < std::log(X); step *= 4.0) {
    const double hi = std::min(std::log(X), std::log(op.R) + std::log1p(step));
    body += quad::integrate(integrand, lo, hi, qo);
    lo = hi;
  }
  const double m = 4.0 * t * t;
  const double tail = (1.0 / (2.0 * op.mu)) *
                      (1.0 / X - (m - 1.0) / (24.0 * std::pow(op.mu, 2) * std::pow(X, 3)) +
                       3.0 * (m - 1.0) * (m - 9.0) / (640.0 * std::pow(op.mu, 4) * std::pow(X, 5)));
  return body + tail;
}

double resolvent_trace(const CuspOperator& op) { return resolvent_trace(op, op.shift); }

double renorm_resolvent_trace_harmonic(const HarmonicOperator& op, double z) {
  op.validate();
  require(std::isfinite(z) && z >= 0.0, "renormalized trace: z must be >= 0");
  const double k = std::sqrt(op.mu_p * op.mu_p + z * z);
  if (k == 0.0) throw std::domain_error("renormalized trace: pole at k = 0");
  const double lead = -std::log(op.R) / (2.0 * k);
  if (op.bc == HarmonicBc::Dirichlet) return lead - 1.0 / (4.0 * k * k);
  // k + mu_p cancels for negative mu_p; use (k + mu_p)(k - mu_p) = z^2 there
  const double kp = op.mu_p >= 0.0 ? k + op.mu_p : z * z / (k - op.mu_p);
  if (kp == 0.0) throw std::domain_error("renormalized trace: pole at k = -mu_p");
  return lead + (k - op.mu_p) / (kp * 4.0 * k * k);
}

bool kernel_check(const CuspOperator& op, double t) {
  op.validate();
  if (op.bc.kind == BcKind::Dirichlet) return false;
  const auto b = specfun::bessel_log_auto(t, op.mu * op.R);
  return std::abs(b.dlog_k + neumann_shift(op.bc, op.R) / op.mu) <= 1e-12;
}

bool kernel_check(const CuspOperator& op) { return kernel_check(op, op.shift); }

}  // namespace cusptorsion::cuspops
