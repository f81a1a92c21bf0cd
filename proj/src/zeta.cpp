#include "cusptorsion/zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace cusptorsion::zeta {

namespace {

constexpr int kCutoff = 50;
// B_{2j} / (2j)!, j = 1..8
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

}  // namespace

namespace {

// Euler-Maclaurin sum without the pole term x^{1-s}/(s-1), x = a + cutoff.
double hurwitz_regular_part(double s, double a) {
  double sum = 0.0;
  for (int k = 0; k < kCutoff; ++k) sum += std::pow(a + k, -s);
  const double x = a + kCutoff;
  sum += 0.5 * std::pow(x, -s);
  // rising factorial s (s+1) ... (s+2j-2) times x^{-s-2j+1}
  double rising = s;
  double power = std::pow(x, -s - 1.0);
  for (int j = 1; j <= 8; ++j) {
    sum += kBernoulliOverFactorial[j - 1] * rising * power;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    power /= x * x;
  }
  return sum;
}

}  // namespace

double hurwitz(double s, double a) {
  if (!(a > 0.0)) throw std::domain_error("hurwitz: a must be > 0");
  if (s == 1.0) throw std::domain_error("hurwitz: pole at s = 1");
  const double x = a + kCutoff;
  return hurwitz_regular_part(s, a) + std::pow(x, 1.0 - s) / (s - 1.0);
}

double riemann(double s) { return hurwitz(s, 1.0); }

double dirichlet_beta(double s) {
  // the pole terms of the two Hurwitz values cancel; combine them first
  const double xa = 0.25 + kCutoff, xb = 0.75 + kCutoff;
  const double ell = std::log(xa / xb);
  const double pole_diff =
      s == 1.0 ? -ell : std::pow(xb, 1.0 - s) * std::expm1((1.0 - s) * ell) / (s - 1.0);
  return std::pow(4.0, -s) * (hurwitz_regular_part(s, 0.25) - hurwitz_regular_part(s, 0.75) + pole_diff);
}

double epstein_square(double s) { return 4.0 * riemann(s) * dirichlet_beta(s); }

double epstein_square_prime0() {
  // zeta(0) = -1/2, zeta'(0) = -log(2 pi)/2, beta(0) = 1/2,
  // beta'(0) = log(Gamma(1/4)^2 / (2 pi sqrt 2)).
  const double beta_prime = 2.0 * std::lgamma(0.25) - std::log(2.0 * M_PI * std::sqrt(2.0));
  return 4.0 * (-0.5 * std::log(2.0 * M_PI) * 0.5 + (-0.5) * beta_prime);
}

}  // namespace cusptorsion::zeta
