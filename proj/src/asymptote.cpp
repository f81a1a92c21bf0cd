#include "cusptorsion/asymptote.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "cusptorsion/quadrature.hpp"

namespace cusptorsion::asymptote {

AsymptoticSeries::AsymptoticSeries(Direction direction, double remainder_order)
    : direction_(direction), remainder_order_(remainder_order) {}

bool AsymptoticSeries::dominates(const Term& a, const Term& b) const {
  if (a.gamma != b.gamma) {
    return direction_ == Direction::to_infinity ? a.gamma > b.gamma : a.gamma < b.gamma;
  }
  return a.log_power > b.log_power;
}

void AsymptoticSeries::add_term(double gamma, int log_power, double coeff) {
  if (!std::isfinite(gamma) || !std::isfinite(coeff)) {
    throw std::invalid_argument("add_term: non-finite term");
  }
  if (log_power < 0) throw std::invalid_argument("add_term: log power must be >= 0");
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->gamma == gamma && it->log_power == log_power) {
      it->coeff += coeff;
      if (it->coeff == 0.0) terms_.erase(it);
      return;
    }
  }
  if (coeff == 0.0) return;
  Term t{gamma, log_power, coeff};
  auto pos = std::find_if(terms_.begin(), terms_.end(),
                          [&](const Term& other) { return dominates(t, other); });
  terms_.insert(pos, t);
}

double AsymptoticSeries::coefficient(double gamma, int log_power) const {
  for (const Term& t : terms_) {
    if (t.gamma == gamma && t.log_power == log_power) return t.coeff;
  }
  return 0.0;
}

double AsymptoticSeries::evaluate(double z) const {
  double sum = 0.0;
  const double lz = std::log(z);
  for (const Term& t : terms_) sum += t.coeff * std::pow(z, t.gamma) * std::pow(lz, t.log_power);
  return sum;
}

double lim_extract(const AsymptoticSeries& series) { return series.coefficient(0.0, 0); }

AsymptoticSeries series_add(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  if (a.direction() != b.direction()) {
    throw std::invalid_argument("series_add: direction mismatch");
  }
  double rem = a.remainder_order();
  if (std::isnan(rem)) {
    rem = b.remainder_order();
  } else if (!std::isnan(b.remainder_order())) {
    rem = a.direction() == Direction::to_infinity ? std::max(rem, b.remainder_order())
                                                  : std::min(rem, b.remainder_order());
  }
  AsymptoticSeries out(a.direction(), rem);
  for (const Term& t : a.terms()) out.add_term(t.gamma, t.log_power, t.coeff);
  for (const Term& t : b.terms()) out.add_term(t.gamma, t.log_power, t.coeff);
  return out;
}

AsymptoticSeries series_scale(const AsymptoticSeries& a, double factor) {
  AsymptoticSeries out(a.direction(), a.remainder_order());
  if (factor == 0.0) return out;
  for (const Term& t : a.terms()) out.add_term(t.gamma, t.log_power, factor * t.coeff);
  return out;
}

TailFit fit_tail(const std::vector<std::pair<double, double>>& samples,
                 const std::vector<ModelTerm>& model, Direction direction) {
  std::vector<ModelTerm> columns;
  columns.push_back({0.0, 0});
  for (const ModelTerm& m : model) {
    if (m.log_power < 0) throw std::invalid_argument("fit_tail: log power must be >= 0");
    const bool seen = std::any_of(columns.begin(), columns.end(), [&](const ModelTerm& c) {
      return c.gamma == m.gamma && c.log_power == m.log_power;
    });
    if (!seen) columns.push_back(m);
  }
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto cols = static_cast<Eigen::Index>(columns.size());
  if (samples.size() < 2 * columns.size()) {
    throw std::invalid_argument("fit_tail: need at least twice as many samples as model terms");
  }
  double zmin = samples.front().first, zmax = samples.front().first;
  for (const auto& s : samples) {
    if (!(s.first > 0.0) || !std::isfinite(s.second)) {
      throw std::invalid_argument("fit_tail: samples need Z > 0 and finite values");
    }
    zmin = std::min(zmin, s.first);
    zmax = std::max(zmax, s.first);
  }
  if (zmax < 10.0 * zmin * (1.0 - 1e-12)) {
    throw std::invalid_argument("fit_tail: sample abscissae must span a decade");
  }

  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double z = samples[static_cast<std::size_t>(i)].first;
    const double lz = std::log(z);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const ModelTerm& m = columns[static_cast<std::size_t>(j)];
      a(i, j) = std::pow(z, m.gamma) * std::pow(lz, m.log_power);
    }
    y(i) = samples[static_cast<std::size_t>(i)].second;
  }
  Eigen::VectorXd scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    scale(j) = a.col(j).norm();
    if (scale(j) == 0.0) throw std::runtime_error("fit_tail: rank-deficient design matrix");
    a.col(j) /= scale(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-14 * sv(0)) {
    throw std::runtime_error("fit_tail: rank-deficient design matrix");
  }
  const Eigen::VectorXd scaled = svd.solve(y);
  const Eigen::VectorXd r = a * scaled - y;

  TailFit fit;
  fit.series = AsymptoticSeries(direction);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const ModelTerm& m = columns[static_cast<std::size_t>(j)];
    fit.series.add_term(m.gamma, m.log_power, scaled(j) / scale(j));
  }
  fit.rms_residual = r.norm() / std::sqrt(static_cast<double>(rows));
  fit.max_residual = r.cwiseAbs().maxCoeff();
  fit.relative_residual = r.norm() / std::max(y.norm(), 1.0);
  return fit;
}

namespace {

int max_log_power(const std::vector<ModelTerm>& model) {
  int k = 0;
  for (const ModelTerm& m : model) k = std::max(k, m.log_power);
  return k;
}

// Model plus remainder terms Z^{sign * j}, j = 1..count, carrying the same log
// powers as the model.
std::vector<ModelTerm> with_remainder(const std::vector<ModelTerm>& model, int count,
                                      double sign) {
  std::vector<ModelTerm> out = model;
  const int kmax = max_log_power(model);
  for (int j = 1; j <= count; ++j) {
    for (int k = 0; k <= kmax; ++k) out.push_back({sign * j, k});
  }
  return out;
}

}  // namespace

RegIntegralResult reg_integral_detailed(const std::function<double(double)>& f, double lower,
                                        const std::vector<ModelTerm>& upper_model,
                                        const RegIntegralOptions& opts) {
  if (!(lower >= 0.0) || !std::isfinite(lower)) {
    throw std::domain_error("reg_integral: lower endpoint must be finite and >= 0");
  }
  quad::QuadOptions qo;
  qo.abs_tol = opts.abs_tol;

  RegIntegralResult result;
  const bool regularize_lower = !opts.lower_model.empty();
  const double split = regularize_lower ? lower + 1.0 : lower;

  // Lower piece: integral over (lower + eps, split), computed in u = log(z - lower).
  double lower_value = 0.0;
  if (regularize_lower) {
    auto g = [&](double u) {
      const double e = std::exp(u);
      return f(lower + e) * e;
    };
    std::vector<double> eps(static_cast<std::size_t>(opts.eps_count));
    const double l0 = std::log(opts.eps_min), l1 = std::log(opts.eps_max);
    for (int i = 0; i < opts.eps_count; ++i) {
      eps[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / (opts.eps_count - 1));
    }
    std::vector<std::pair<double, double>> samples(eps.size());
    double acc = 0.0;
    double u_prev = 0.0;  // log(split - lower) = log 1
    for (std::size_t i = eps.size(); i-- > 0;) {
      const double u = std::log(eps[i]);
      acc += quad::integrate(g, u, u_prev, qo);
      u_prev = u;
      samples[i] = {eps[i], acc};
    }
    const auto model = with_remainder(opts.lower_model, opts.decay_terms, 1.0);
    const TailFit fit = fit_tail(samples, model, Direction::to_zero);
    result.lower_residual = fit.relative_residual;
    if (fit.relative_residual > opts.max_relative_residual) {
      throw UnresolvedExpansion("reg_integral: unresolved expansion at the lower endpoint "
                                "(relative residual " +
                                std::to_string(fit.relative_residual) + ")");
    }
    lower_value = lim_extract(fit.series);
  }

  // Upper piece: partial integrals over (split, Z) at the cuts, each segment
  // integrated in log z.
  if (!(opts.z_last > opts.z_first) || opts.cut_count < 2) {
    throw std::invalid_argument("reg_integral: invalid cut range");
  }
  auto h = [&](double u) {
    const double z = std::exp(u);
    return f(z) * z;
  };
  std::vector<std::pair<double, double>> samples;
  samples.reserve(static_cast<std::size_t>(opts.cut_count));
  const double offset = split >= 0.5 * opts.z_first ? split : 0.0;
  double acc = 0.0;
  double prev = split;
  for (int i = 0; i < opts.cut_count; ++i) {
    const double z = offset + opts.z_first * std::pow(opts.z_last / opts.z_first,
                                                      static_cast<double>(i) / (opts.cut_count - 1));
    if (i == 0 && prev <= 0.0) {
      acc += quad::integrate(f, prev, z, qo);
    } else {
      acc += quad::integrate(h, std::log(prev), std::log(z), qo);
    }
    prev = z;
    samples.push_back({z, acc});
  }
  const auto model = with_remainder(upper_model, opts.decay_terms, -1.0);
  const TailFit fit = fit_tail(samples, model, Direction::to_infinity);
  result.upper_residual = fit.relative_residual;
  if (fit.relative_residual > opts.max_relative_residual) {
    throw UnresolvedExpansion("reg_integral: unresolved expansion at infinity (relative residual " +
                              std::to_string(fit.relative_residual) + ")");
  }
  result.value = lower_value + lim_extract(fit.series);
  return result;
}

double reg_integral(const std::function<double(double)>& f, double lower,
                    const std::vector<ModelTerm>& upper_model, const RegIntegralOptions& opts) {
  return reg_integral_detailed(f, lower, upper_model, opts).value;
}

}  // namespace cusptorsion::asymptote
