#include "cusptorsion/anomaly.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cusptorsion::anomaly {

namespace {

void check_n(int n) {
  if (n < 1 || n > 15) throw std::invalid_argument("graded algebra: n must lie in 1..15");
}

std::uint64_t combined(int n, Monomial m) {
  return static_cast<std::uint64_t>(m.first) | (static_cast<std::uint64_t>(m.second) << n);
}

std::uint32_t full_mask(int n) { return (1u << n) - 1u; }

}  // namespace

GradedElement::GradedElement(int n) : n_(n) { check_n(n); }

GradedElement GradedElement::one(int n) { return monomial(n, 0, 0, 1.0); }

GradedElement GradedElement::generator(int n, int index, bool hatted) {
  check_n(n);
  if (index < 1 || index > n) throw std::invalid_argument("graded algebra: generator index out of range");
  const std::uint32_t bit = 1u << (index - 1);
  return hatted ? monomial(n, 0, bit) : monomial(n, bit, 0);
}

GradedElement GradedElement::monomial(int n, std::uint32_t unhatted, std::uint32_t hatted, double coeff) {
  GradedElement e(n);
  e.add(unhatted, hatted, coeff);
  return e;
}

double GradedElement::coefficient(std::uint32_t unhatted, std::uint32_t hatted) const {
  auto it = terms_.find({unhatted, hatted});
  return it == terms_.end() ? 0.0 : it->second;
}

void GradedElement::add(std::uint32_t unhatted, std::uint32_t hatted, double coeff) {
  if ((unhatted | hatted) & ~full_mask(n_)) throw std::invalid_argument("graded algebra: generator out of range");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace({unhatted, hatted}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

GradedElement GradedElement::operator+(const GradedElement& other) const {
  if (other.n_ != n_) throw std::invalid_argument("graded algebra: dimension mismatch");
  GradedElement out = *this;
  for (const auto& [m, c] : other.terms_) out.add(m.first, m.second, c);
  return out;
}

GradedElement GradedElement::operator*(double factor) const {
  GradedElement out(n_);
  for (const auto& [m, c] : terms_) out.add(m.first, m.second, c * factor);
  return out;
}

int monomial_product_sign(int n, Monomial a, Monomial b) {
  const std::uint64_t x = combined(n, a);
  const std::uint64_t y = combined(n, b);
  if (x & y) return 0;
  // each generator of b passes the generators of a with a larger position
  int swaps = 0;
  for (std::uint64_t rest = y; rest; rest &= rest - 1) {
    const int pos = std::countr_zero(rest);
    swaps += std::popcount(x >> (pos + 1));
  }
  return swaps % 2 ? -1 : 1;
}

GradedElement graded_mul(const GradedElement& a, const GradedElement& b) {
  if (a.n() != b.n()) throw std::invalid_argument("graded algebra: dimension mismatch");
  const int n = a.n();
  GradedElement out(n);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = monomial_product_sign(n, ma, mb);
      if (s != 0) out.add(ma.first | mb.first, ma.second | mb.second, s * ca * cb);
    }
  }
  return out;
}

GradedElement sdot(int n, double fprime0) {
  if (n < 2) throw std::invalid_argument("sdot: n must be >= 2");
  GradedElement s(n);
  for (int k = 0; k < n; ++k) s.add(1u << k, 1u << k, 0.25 * fprime0);
  return s;
}

std::map<std::uint32_t, double> berezin(const GradedElement& a, double kappa) {
  std::map<std::uint32_t, double> out;
  const std::uint32_t top = full_mask(a.n());
  for (const auto& [m, c] : a.terms()) {
    if (m.second == top) out[m.first] += kappa * c;
  }
  return out;
}

GradedElement rdot_element(int n, const CurvatureArray& r) {
  const auto un = static_cast<std::size_t>(n);
  auto bad = [] { throw std::invalid_argument("rdot: expected an n x n x n x n array"); };
  if (r.size() != un) bad();
  for (const auto& x : r) {
    if (x.size() != un) bad();
    for (const auto& y : x) {
      if (y.size() != un) bad();
      for (const auto& z : y) {
        if (z.size() != un) bad();
      }
    }
  }
  GradedElement out(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
          const double v = r[a][b][k][j];
          if (std::abs(v + r[b][a][k][j]) > 1e-12 || std::abs(v + r[a][b][j][k]) > 1e-12) {
            throw std::invalid_argument("rdot: coefficient array is not antisymmetric");
          }
          if (v == 0.0 || a == b || k == j) continue;
          const auto prod = graded_mul(
              graded_mul(GradedElement::generator(n, a + 1, false), GradedElement::generator(n, b + 1, false)),
              graded_mul(GradedElement::generator(n, k + 1, true), GradedElement::generator(n, j + 1, true)));
          out = out + prod * (0.25 * v);
        }
      }
    }
  }
  return out;
}

std::vector<GradedElement> sdot_series_terms(int n, double fprime0) {
  const GradedElement s = sdot(n, fprime0);
  const GradedElement minus_s2 = graded_mul(s, s) * -1.0;
  std::vector<GradedElement> terms;
  GradedElement power = GradedElement::one(n);
  double factorial = 1.0;
  // (-Sdot^2)^k has degree 2k in each factor, so k <= n/2.
  for (int k = 1; 2 * k <= n; ++k) {
    power = graded_mul(power, minus_s2);
    factorial *= k;
    terms.push_back(power * (1.0 / (4.0 * k * factorial)));
  }
  return terms;
}

double b_secondary_class(const AnomalyInput& input) {
  const int n = input.n;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("anomaly: n must be even and >= 2");
  if (!std::isfinite(input.fprime0) || !std::isfinite(input.volume)) {
    throw std::invalid_argument("anomaly: inputs must be finite");
  }
  GradedElement series(n);
  for (const auto& t : sdot_series_terms(n, input.fprime0)) series = series + t;
  GradedElement weight = GradedElement::one(n);
  if (input.rdot) {
    // exp(-Rdot/2); Rdot is even and nilpotent
    const GradedElement x = rdot_element(n, *input.rdot) * -0.5;
    GradedElement power = GradedElement::one(n);
    for (int j = 1; j <= n; ++j) {
      power = graded_mul(power, x) * (1.0 / j);
      if (power.is_zero()) break;
      weight = weight + power;
    }
  }
  const auto form = berezin(graded_mul(weight, series), input.kappa);
  auto it = form.find(full_mask(n));
  const double top = it == form.end() ? 0.0 : it->second;
  return top * input.volume;
}

double flat_coefficient(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("anomaly: n must be even and >= 2");
  const int k = n / 2;
  double value = std::tgamma(n + 1.0) / (4.0 * k * std::tgamma(k + 1.0)) * std::pow(0.25, n);
  if (k % 2) value = -value;
  if ((n * (n - 1) / 2) % 2) value = -value;
  return value;
}

double cusp_fprime(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("cusp_fprime: R must be > 0");
  return -2.0 / R;
}

}  // namespace cusptorsion::anomaly
