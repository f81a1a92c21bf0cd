#pragma once

namespace cusptorsion::zeta {

/// Hurwitz zeta sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin (cutoff 50, eight
/// Bernoulli corrections). Valid for real s != 1 and a > 0.
double hurwitz(double s, double a);

/// Riemann zeta; s = 0 gives -1/2.
double riemann(double s);

/// Dirichlet beta sum_{k>=0} (-1)^k (2k+1)^{-s}.
double dirichlet_beta(double s);

/// Epstein zeta of the square lattice, sum over (j,k) != 0 of (j^2+k^2)^{-s},
/// through the factorization 4 zeta(s) beta(s).
double epstein_square(double s);

/// Derivative of epstein_square at s = 0.
double epstein_square_prime0();

}  // namespace cusptorsion::zeta
