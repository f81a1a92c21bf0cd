#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace cusptorsion::anomaly {

/// Monomial e_U ^ hat-e_H with U, H bitmasks over generators 1..n (bit i-1).
/// Within a monomial the generators appear in the canonical order: unhatted
/// 1..n, then hatted 1..n.
using Monomial = std::pair<std::uint32_t, std::uint32_t>;

/// Element of the graded tensor product of two exterior algebras on n
/// generators each; all generators are odd and mutually anticommute.
class GradedElement {
 public:
  explicit GradedElement(int n);

  static GradedElement one(int n);
  static GradedElement generator(int n, int index, bool hatted);  // index in 1..n
  static GradedElement monomial(int n, std::uint32_t unhatted, std::uint32_t hatted, double coeff = 1.0);

  int n() const { return n_; }
  const std::map<Monomial, double>& terms() const { return terms_; }
  double coefficient(std::uint32_t unhatted, std::uint32_t hatted) const;
  bool is_zero() const { return terms_.empty(); }

  void add(std::uint32_t unhatted, std::uint32_t hatted, double coeff);
  GradedElement operator+(const GradedElement& other) const;
  GradedElement operator*(double factor) const;

 private:
  int n_;
  std::map<Monomial, double> terms_;
};

/// Sign (+1, -1) of the product of two canonical monomials, 0 if they share a generator.
int monomial_product_sign(int n, Monomial a, Monomial b);

GradedElement graded_mul(const GradedElement& a, const GradedElement& b);

/// 1/4 fprime0 sum_k e_k hat-e_k.
GradedElement sdot(int n, double fprime0);

/// Coefficient of the full hatted monomial for every unhatted monomial, times kappa.
std::map<std::uint32_t, double> berezin(const GradedElement& a, double kappa = 1.0);

/// Constant-coefficient curvature data: r[a][b][k][j], antisymmetric in (a, b)
/// and in (k, j), encoding Rdot = 1/4 sum r_{abkj} e_a e_b hat-e_k hat-e_j.
using CurvatureArray = std::vector<std::vector<std::vector<std::vector<double>>>>;

struct AnomalyInput {
  int n = 2;
  double fprime0 = 0.0;
  std::optional<CurvatureArray> rdot;
  double volume = 1.0;
  int rank_e = 1;
  double kappa = 1.0;
};

GradedElement rdot_element(int n, const CurvatureArray& r);

/// sum_{k>=1} (-Sdot^2)^k / (4 k k!), truncated where the degree exceeds n.
std::vector<GradedElement> sdot_series_terms(int n, double fprime0);

/// Integrated secondary class: top unhatted coefficient of
/// berezin(exp(-Rdot/2) sum_k (-Sdot^2)^k/(4 k k!)) times the volume.
double b_secondary_class(const AnomalyInput& input);

/// Flat-case coefficient C_n with b_secondary_class = C_n fprime0^n volume (kappa = 1).
double flat_coefficient(int n);

/// Normal derivative of the conformal factor of the rescaled cusp metric.
double cusp_fprime(double R);

}  // namespace cusptorsion::anomaly
