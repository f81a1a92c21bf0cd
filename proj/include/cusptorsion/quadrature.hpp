#pragma once

#include <functional>
#include <stdexcept>

namespace cusptorsion::quad {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_depth = 48;
  /// Upper bound on the number of accepted-or-split panels before giving up.
  long max_panels = 1L << 18;
};

/// Adaptive composite Gauss-Legendre (20 points per panel) on [a, b].
///
/// A panel is accepted when its single-panel value and the sum over its two
/// halves agree to within the panel's share of the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

}  // namespace cusptorsion::quad
