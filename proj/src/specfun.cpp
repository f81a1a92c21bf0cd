#include "cusptorsion/specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace cusptorsion::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 200000;

// Taylor coefficients of 1/Gamma(z) = sum_{k>=1} c_k z^k.
constexpr double kRecipGamma[] = {
    1.0,
    0.5772156649015328606,
    -0.6558780715202538811,
    -0.0420026350340952355,
    0.1665386113822914895,
    -0.0421977345555443367,
    -0.0096219715278769736,
    0.0072189432466630995,
    -0.0011651675918590651,
    -0.0002152416741149510,
    0.0001280502823881162,
    -0.0000201348547807882,
    -0.0000012504934821427,
    0.0000011330272319817,
    -0.0000002056338416978,
    0.0000000061160951045,
    0.0000000050020076445,
    -0.0000000011812745705,
    0.0000000001043426712,
    0.0000000000077822634,
    -0.0000000000036968056,
    0.0000000000005100370,
    -0.0000000000000205833,
    -0.0000000000000053481,
    0.0000000000000012268,
    -0.0000000000000001181,
};
constexpr int kRecipGammaCount = sizeof(kRecipGamma) / sizeof(kRecipGamma[0]);

void check_domain(double nu, double x) {
  if (!std::isfinite(nu) || !std::isfinite(x)) {
    throw std::domain_error("bessel: non-finite argument");
  }
  if (nu < 0.0) throw std::domain_error("bessel: order must be >= 0");
  if (x <= 0.0) throw std::domain_error("bessel: argument must be > 0");
}

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
// for |mu| <= 1/2, taken from the even/odd parts of the 1/Gamma series.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl,
                  double& gammi) {
  // g(z) = 1/Gamma(1+z) = sum_{k>=1} c_k z^{k-1}
  double even = 0.0;  // sum over odd k of c_k mu^{k-1}
  double odd = 0.0;   // sum over even k of c_k mu^{k-2}
  const double mu2 = mu * mu;
  for (int k = kRecipGammaCount; k >= 1; --k) {
    if (k % 2 == 1) {
      even = even * mu2 + kRecipGamma[k - 1];
    } else {
      odd = odd * mu2 + kRecipGamma[k - 1];
    }
  }
  gam1 = -odd;
  gam2 = even;
  gampl = even + mu * odd;
  gammi = even - mu * odd;
}

// log K_mu(x) and K_{mu+1}(x)/K_mu(x) for |mu| <= 1/2.
void k_fractional(double mu, double x, double& log_k, double& ratio) {
  if (x <= 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    const double mu2 = mu * mu;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw std::runtime_error("bessel: K series did not converge");
    log_k = std::log(sum);
    ratio = sum1 * (2.0 / x) / sum;
    return;
  }
  // Steed's continued fraction for x > 2, scaled by exp(-x).
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  if (i > kMaxIter) throw std::runtime_error("bessel: K continued fraction did not converge");
  h = a1 * h;
  log_k = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(s);
  ratio = (mu + x + 0.5 - h) / x;
}

// I'/I from the continued fraction for I_{nu+1}/I_nu.
double cf1_dlog_i(double nu, double x) {
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  constexpr double fpmin = 1e-300;
  double h = nu * xi;
  if (h < fpmin) h = fpmin;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    const double del = c * d;
    h = del * h;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  if (i > kMaxIter) throw std::runtime_error("bessel: I continued fraction did not converge");
  return h;
}

void i_series(double nu, double x, double& log_i, double& dlog_i) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double dsum = nu;
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    dsum += (2.0 * k + nu) * term;
    if (term < kEps * 1e-2 * sum && k > 0.5 * x) break;
  }
  log_i = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + std::log(sum);
  dlog_i = dsum / (x * sum);
}

}  // namespace

BesselLog bessel_ik_log(double nu, double x) {
  check_domain(nu, x);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;

  double log_k = 0.0;
  double r = 0.0;
  k_fractional(mu, x, log_k, r);
  for (int i = 1; i <= nl; ++i) {
    const double m = mu + i - 1;
    log_k += std::log(r);
    r = 2.0 * (m + 1.0) / x + 1.0 / r;
  }

  BesselLog out;
  out.log_k = log_k;
  out.dlog_k = nu / x - r;
  if (x <= std::max(10.0, 0.5 * nu)) {
    i_series(nu, x, out.log_i, out.dlog_i);
  } else {
    out.dlog_i = cf1_dlog_i(nu, x);
    out.log_i = -std::log(x) - log_k - std::log(out.dlog_i - out.dlog_k);
  }
  return out;
}

BesselQuad to_quad(const BesselLog& b) {
  BesselQuad q;
  q.i_val = std::exp(b.log_i);
  q.k_val = std::exp(b.log_k);
  q.i_prime = b.dlog_i * q.i_val;
  q.k_prime = b.dlog_k * q.k_val;
  return q;
}

BesselQuad bessel_ik(double nu, double x) {
  const BesselLog b = bessel_ik_log(nu, x);
  const double hi = std::log(DBL_MAX) - 1.0;
  const double lo = std::log(DBL_MIN) + 1.0;
  if (b.log_i > hi || b.log_k > hi || b.log_i < lo || b.log_k < lo) {
    throw OverflowError("bessel: value not representable at nu=" + std::to_string(nu) +
                        ", x=" + std::to_string(x) + "; use bessel_ik_log");
  }
  return to_quad(b);
}

double wronskian_product(const BesselLog& b, double x) {
  return x * std::exp(b.log_i + b.log_k) * (b.dlog_i - b.dlog_k);
}

OlverVariables olver_variables(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("olver: s must be > 0");
  OlverVariables v;
  v.s = s;
  const double root = std::hypot(1.0, s);
  v.p_s = 1.0 / root;
  v.nu_s = root + std::log(s / (1.0 + root));
  return v;
}

double evaluate(const Polynomial& poly, double p) {
  double acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * p + *it;
  return acc;
}

namespace {

Polynomial derivative(const Polynomial& a) {
  Polynomial d(a.size() > 1 ? a.size() - 1 : 1, 0.0);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = static_cast<double>(i) * a[i];
  return d;
}

// a * (coefficient * p^shift)
void add_shifted(Polynomial& out, const Polynomial& a, double coefficient, std::size_t shift) {
  if (out.size() < a.size() + shift) out.resize(a.size() + shift, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + shift] += coefficient * a[i];
}

OlverPolyTable build_table() {
  OlverPolyTable t;
  t.u_polys.push_back({1.0});
  t.v_polys.push_back({1.0});
  for (int k = 0; k < kOlverMaxOrder; ++k) {
    const Polynomial& u = t.u_polys.back();
    const Polynomial du = derivative(u);
    Polynomial next;
    // 1/2 p^2 (1 - p^2) U'
    add_shifted(next, du, 0.5, 2);
    add_shifted(next, du, -0.5, 4);
    // 1/8 int_0^p (1 - 5 t^2) U(t) dt
    Polynomial integrand;
    add_shifted(integrand, u, 1.0, 0);
    add_shifted(integrand, u, -5.0, 2);
    Polynomial integral(integrand.size() + 1, 0.0);
    for (std::size_t i = 0; i < integrand.size(); ++i) {
      integral[i + 1] = integrand[i] / static_cast<double>(i + 1);
    }
    add_shifted(next, integral, 0.125, 0);

    Polynomial v = next;
    add_shifted(v, u, -0.5, 1);
    add_shifted(v, u, 0.5, 3);
    add_shifted(v, du, -1.0, 2);
    add_shifted(v, du, 1.0, 4);

    const std::size_t degree = 3 * static_cast<std::size_t>(k + 1);
    next.resize(degree + 1, 0.0);
    v.resize(degree + 1, 0.0);
    t.u_polys.push_back(std::move(next));
    t.v_polys.push_back(std::move(v));
  }
  return t;
}

const OlverPolyTable& full_table() {
  static const OlverPolyTable table = build_table();
  return table;
}

}  // namespace

OlverPolyTable olver_table(int k_max) {
  if (k_max < 0 || k_max > kOlverMaxOrder) {
    throw std::out_of_range("olver_table: k_max must be in [0, 12]");
  }
  const OlverPolyTable& full = full_table();
  OlverPolyTable t;
  t.u_polys.assign(full.u_polys.begin(), full.u_polys.begin() + k_max + 1);
  t.v_polys.assign(full.v_polys.begin(), full.v_polys.begin() + k_max + 1);
  return t;
}

BesselLog uniform_ik_log(double nu, double s, int k_max) {
  if (!std::isfinite(nu) || nu < 10.0) {
    throw std::domain_error("uniform_ik: order must be >= 10");
  }
  if (k_max < 0 || k_max > kOlverMaxOrder) {
    throw std::out_of_range("uniform_ik: k_max must be in [0, 12]");
  }
  const OlverVariables v = olver_variables(s);
  const OlverPolyTable& table = full_table();
  double su_plus = 0.0, su_minus = 0.0, sv_plus = 0.0, sv_minus = 0.0;
  double power = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double uk = evaluate(table.u_polys[k], v.p_s) * power;
    const double vk = evaluate(table.v_polys[k], v.p_s) * power;
    su_plus += uk;
    sv_plus += vk;
    su_minus += sign * uk;
    sv_minus += sign * vk;
    power /= nu;
  }
  const double quarter = -0.5 * std::log(v.p_s);  // log (1+s^2)^{1/4}
  BesselLog out;
  out.log_i = nu * v.nu_s - 0.5 * std::log(2.0 * kPi * nu) - quarter + std::log(su_plus);
  out.log_k = 0.5 * std::log(kPi / (2.0 * nu)) - nu * v.nu_s - quarter + std::log(su_minus);
  const double scale = 1.0 / (v.p_s * s);  // sqrt(1+s^2)/s
  out.dlog_i = scale * sv_plus / su_plus;
  out.dlog_k = -scale * sv_minus / su_minus;
  return out;
}

BesselQuad uniform_ik(double nu, double s, int k_max) {
  const BesselLog b = uniform_ik_log(nu, s, k_max);
  const double hi = std::log(DBL_MAX) - 1.0;
  const double lo = std::log(DBL_MIN) + 1.0;
  if (b.log_i > hi || b.log_k > hi || b.log_i < lo || b.log_k < lo) {
    throw OverflowError("uniform_ik: value not representable; use uniform_ik_log");
  }
  return to_quad(b);
}

BesselLog bessel_log_auto(double nu, double x) {
  check_domain(nu, x);
  if (nu >= kAutoUniformThreshold) return uniform_ik_log(nu, x / nu, kOlverMaxOrder);
  return bessel_ik_log(nu, x);
}

}  // namespace cusptorsion::specfun
