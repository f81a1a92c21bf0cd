#pragma once

#include <stdexcept>
#include <vector>

namespace cusptorsion::specfun {

/// Modified Bessel functions I_nu, K_nu and their x-derivatives at one point.
struct BesselQuad {
  double i_val = 0.0;
  double k_val = 0.0;
  double i_prime = 0.0;
  double k_prime = 0.0;
};

/// Log-scaled form of BesselQuad: log I, log K, I'/I and K'/K.
///
/// Every ratio the determinant formulas need (I/K at the boundary, K(x)/I(x)
/// in the Green function) is formed from these without leaving log space.
struct BesselLog {
  double log_i = 0.0;
  double log_k = 0.0;
  double dlog_i = 0.0;
  double dlog_k = 0.0;
};

/// Raised when a plain (not log-scaled) value does not fit in a double.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

BesselLog bessel_ik_log(double nu, double x);

/// Plain values; throws OverflowError instead of returning inf or 0.
BesselQuad bessel_ik(double nu, double x);

BesselQuad to_quad(const BesselLog& b);

/// x (I' K - I K'), which is identically 1.
double wronskian_product(const BesselLog& b, double x);

struct OlverVariables {
  double s = 0.0;
  double nu_s = 0.0;  // sqrt(1+s^2) + log(s / (1 + sqrt(1+s^2)))
  double p_s = 0.0;   // 1 / sqrt(1+s^2)
};

OlverVariables olver_variables(double s);

/// Coefficients in increasing powers of p.
using Polynomial = std::vector<double>;

double evaluate(const Polynomial& poly, double p);

struct OlverPolyTable {
  std::vector<Polynomial> u_polys;
  std::vector<Polynomial> v_polys;
};

inline constexpr int kOlverMaxOrder = 12;

OlverPolyTable olver_table(int k_max);

/// Uniform large-order expansion of I_nu(nu s), K_nu(nu s) and derivatives,
/// truncated after k_max correction terms. Requires nu >= 10.
BesselLog uniform_ik_log(double nu, double s, int k_max);
BesselQuad uniform_ik(double nu, double s, int k_max);

/// Dispatching evaluator used by the operator code: the uniform expansion at
/// full depth for large orders, bessel_ik_log otherwise.
BesselLog bessel_log_auto(double nu, double x);

inline constexpr double kAutoUniformThreshold = 30.0;

}  // namespace cusptorsion::specfun
