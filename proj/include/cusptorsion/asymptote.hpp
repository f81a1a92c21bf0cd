#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cusptorsion::asymptote {

enum class Direction { to_zero, to_infinity };

/// One term coeff * Z^gamma * log^log_power Z.
struct Term {
  double gamma = 0.0;
  int log_power = 0;
  double coeff = 0.0;
};

/// Shape of a term without its coefficient; used to describe fit models.
struct ModelTerm {
  double gamma = 0.0;
  int log_power = 0;
};

class UnresolvedExpansion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite polyhomogeneous expansion, kept sorted from most to least dominant.
class AsymptoticSeries {
 public:
  explicit AsymptoticSeries(Direction direction = Direction::to_infinity,
                            double remainder_order = std::numeric_limits<double>::quiet_NaN());

  /// Adds coeff to the (gamma, log_power) slot; a slot that reaches zero is removed.
  void add_term(double gamma, int log_power, double coeff);

  const std::vector<Term>& terms() const { return terms_; }
  Direction direction() const { return direction_; }
  double remainder_order() const { return remainder_order_; }
  void set_remainder_order(double r) { remainder_order_ = r; }

  /// Coefficient of the (gamma, log_power) slot, 0 when absent.
  double coefficient(double gamma, int log_power) const;

  /// Sum of the stored terms at Z.
  double evaluate(double z) const;

 private:
  bool dominates(const Term& a, const Term& b) const;

  Direction direction_;
  double remainder_order_;
  std::vector<Term> terms_;
};

/// Constant term (gamma = 0, no log), 0 when absent.
double lim_extract(const AsymptoticSeries& series);

AsymptoticSeries series_add(const AsymptoticSeries& a, const AsymptoticSeries& b);
AsymptoticSeries series_scale(const AsymptoticSeries& a, double factor);

struct TailFit {
  AsymptoticSeries series;
  double rms_residual = 0.0;
  double max_residual = 0.0;
  double relative_residual = 0.0;  // ||r|| / max(||f||, 1)
};

/// Least-squares fit of samples (Z, f(Z)) by the model terms plus a constant.
TailFit fit_tail(const std::vector<std::pair<double, double>>& samples,
                 const std::vector<ModelTerm>& model,
                 Direction direction = Direction::to_infinity);

struct RegIntegralOptions {
  /// Expansion of the partial integral near the lower endpoint; when non-empty
  /// the lower end is regularized as well.
  std::vector<ModelTerm> lower_model;
  /// Partial integrals are sampled at cut_count geometrically spaced cuts.
  double z_first = 50.0;
  double z_last = 3200.0;
  int cut_count = 31;
  double eps_min = 1e-6;
  double eps_max = 1e-2;
  int eps_count = 25;
  /// Powers Z^{-j} (resp. eps^{j}) added automatically to absorb the remainder.
  int decay_terms = 4;
  double abs_tol = 1e-10;
  double max_relative_residual = 1e-6;
};

struct RegIntegralResult {
  double value = 0.0;
  double upper_residual = 0.0;
  double lower_residual = 0.0;
};

/// Regularized integral of f over (lower, infinity): the constant term of the
/// partial integral up to Z, fitted against the caller's growth model.
RegIntegralResult reg_integral_detailed(const std::function<double(double)>& f, double lower,
                                        const std::vector<ModelTerm>& upper_model,
                                        const RegIntegralOptions& opts = {});

double reg_integral(const std::function<double(double)>& f, double lower,
                    const std::vector<ModelTerm>& upper_model,
                    const RegIntegralOptions& opts = {});

}  // namespace cusptorsion::asymptote
