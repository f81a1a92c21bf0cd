#pragma once

#include <optional>
#include <stdexcept>

namespace cusptorsion::cuspops {

enum class BcKind { Dirichlet, GeneralizedNeumann };

/// absolute: f'(R) + alpha f(R) = 0;  scaled: f'(R) + alpha f(R) / R = 0.
enum class AlphaConvention { absolute, scaled };

struct BoundaryCondition {
  BcKind kind = BcKind::Dirichlet;
  double alpha = 0.0;
  AlphaConvention convention = AlphaConvention::absolute;

  static BoundaryCondition dirichlet() { return {}; }
  static BoundaryCondition neumann(double alpha, AlphaConvention conv) {
    return {BcKind::GeneralizedNeumann, alpha, conv};
  }

  double alpha_absolute(double R) const;
  double alpha_scaled(double R) const;
  /// Same condition restated in the other convention at boundary point R.
  BoundaryCondition converted(AlphaConvention target, double R) const;
};

/// -(x d/dx)^2 - (x d/dx) + x^2 mu^2 + shift^2 - 1/4 on (R, infinity).
struct CuspOperator {
  double mu = 1.0;
  double shift = 0.0;
  double R = 1.0;
  BoundaryCondition bc;

  void validate() const;
};

/// The same differential expression on (R, R_prime).
struct IntervalOperator {
  double mu = 1.0;
  double shift = 0.0;
  double R = 1.0;
  double R_prime = 2.0;
  BoundaryCondition bc;
  BoundaryCondition bc_prime;

  void validate() const;
};

enum class HarmonicBc { Dirichlet, Neumann };

/// -(x d/dx)^2 - (x d/dx) + mu_p^2 - 1/4 on (R, infinity), or on (R, R_prime)
/// with Dirichlet conditions at both ends when R_prime is set.
struct HarmonicOperator {
  double mu_p = 0.0;
  double R = 1.0;
  std::optional<double> R_prime;
  HarmonicBc bc = HarmonicBc::Dirichlet;

  void validate() const;
};

struct SubcomplexPair {
  CuspOperator delta0;
  CuspOperator delta1;
};

class InvalidDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scalar operators of the non-harmonic subcomplex spanned by a coclosed
/// p-form eigenform with eigenvalue eta, relative boundary conditions at R.
SubcomplexPair from_coclosed_eigenform(int n, int p, double eta, double R);

/// Degree n - p - 1 of the partner eigenform d psi / sqrt(eta).
int twin_degree(int n, int p);

/// Diagonal of the resolvent kernel of the order-t operator, Dirichlet or
/// generalized Neumann according to op.bc:
///   G_t(x) = x^{-1} (I_t K_t(mu x) - rho K_t(mu x)^2),
/// with rho fixed by the boundary condition at mu R.
double green_diag(const CuspOperator& op, double t, double x);
double green_diag(const CuspOperator& op, double x);

/// Integral of green_diag over (R, infinity): quadrature in log x up to a
/// point X, then the three-term large-argument tail.
double resolvent_trace(const CuspOperator& op, double t);
double resolvent_trace(const CuspOperator& op);

/// Renormalized trace of (Delta_H + z^2)^{-1} on the half line.
double renorm_resolvent_trace_harmonic(const HarmonicOperator& op, double z);

/// True when the generalized Neumann realization of the order-t operator has
/// a kernel: K_t'(mu R) / K_t(mu R) = -(alpha - 1/(2R)) / mu up to 1e-12.
bool kernel_check(const CuspOperator& op, double t);
bool kernel_check(const CuspOperator& op);

/// Shift alpha_abs - 1/(2R) that appears once the x^{-1/2} factor of the
/// solutions is absorbed.
double neumann_shift(const BoundaryCondition& bc, double R);

}  // namespace cusptorsion::cuspops
