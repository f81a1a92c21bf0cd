#include "cusptorsion/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace cusptorsion::quad {

namespace {

constexpr int kPoints = 20;

struct Rule {
  std::array<double, kPoints> nodes{};
  std::array<double, kPoints> weights{};
};

Rule make_rule() {
  Rule r;
  const int m = (kPoints + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (kPoints + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < kPoints; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = kPoints * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-16) break;
    }
    r.nodes[i] = -z;
    r.nodes[kPoints - 1 - i] = z;
    r.weights[i] = r.weights[kPoints - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const Rule& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kPoints; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return sum * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double tol, int depth, const QuadOptions& opts, long& panels) {
  if (++panels > opts.max_panels) {
    throw QuadratureError("quadrature exceeded its panel budget on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid);
  const double right = panel(f, mid, b);
  const double refined = left + right;
  const double bound = std::max(tol, opts.rel_tol * std::fabs(refined));
  if (std::fabs(refined - whole) <= bound) return refined;
  if (depth >= opts.max_depth) {
    throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  return adapt(f, a, mid, left, 0.5 * tol, depth + 1, opts, panels) +
         adapt(f, mid, b, right, 0.5 * tol, depth + 1, opts, panels);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("integrate: endpoints must be finite");
  }
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, opts);
  const double whole = panel(f, a, b);
  long panels = 0;
  const double value = adapt(f, a, b, whole, opts.abs_tol, 0, opts, panels);
  if (!std::isfinite(value)) throw QuadratureError("quadrature produced a non-finite value");
  return value;
}

}  // namespace cusptorsion::quad
