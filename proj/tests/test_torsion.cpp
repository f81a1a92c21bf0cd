#include <cmath>
#include <random>

#include "cusptorsion/crosssection.hpp"
#include "cusptorsion/detzeta.hpp"
#include "cusptorsion/torsion.hpp"
#include "doctest.h"

using namespace cusptorsion;
using namespace cusptorsion::torsion;
using crosssection::CrossSection;

namespace {

CrossSection with_betti(int n, std::vector<long long> betti, int rank = 1) {
  CrossSection cs;
  cs.n = n;
  cs.betti = std::move(betti);
  cs.rank_e = rank;
  return cs;
}

CrossSection random_witt(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<long long> b(0, 5);
  const int n = 2 * dim(rng);
  std::vector<long long> betti(n + 1, 0);
  for (int p = 0; p < n / 2; ++p) betti[p] = betti[n - p] = b(rng);
  return with_betti(n, betti, 1 + static_cast<int>(b(rng) % 3));
}

}  // namespace

TEST_SUITE("torsion") {
  TEST_CASE("model cusp torsion") {
    const auto s2 = with_betti(2, {1, 0, 1});
    const double A = 0.37;
    const auto r = model_cusp_torsion(s2, 1.0, A);
    CHECK(r.total == doctest::Approx(-A / 2.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(r.breakdown.at("mu_log_R") == 0.0);
    CHECK(r.breakdown.at("quarter_log_mu") == 0.0);
    CHECK(r.breakdown.size() == 4);
    CHECK(std::abs(r.total - r.breakdown_sum()) < 1e-12);

    const auto zero = with_betti(4, {0, 0, 0, 0, 0}, 3);
    CHECK(model_cusp_torsion(zero, 2.5, A).total == doctest::Approx(-1.5 * A));

    const auto cs = with_betti(4, {2, 1, 0, 1, 2});
    const double R1 = 1.3, R2 = 4.1;
    double expected = 0.0;
    for (int p = 0; p <= 4; ++p) {
      expected += (p % 2 ? 1.0 : -1.0) / 2.0 * cs.betti[p] * std::abs(2.0 - p) * std::log(R2 / R1);
    }
    CHECK(model_cusp_torsion(cs, R2, A).total - model_cusp_torsion(cs, R1, A).total ==
          doctest::Approx(expected).epsilon(1e-13));
  }

  TEST_CASE("truncated cusp expansion") {
    const auto witt = with_betti(4, {1, 2, 0, 2, 1});
    CHECK(truncated_cusp_expansion(witt, 1.0, 50.0).breakdown.count("middle_degree_loglog") == 0);
    const auto single = with_betti(2, {1, 0, 0});
    const double Rp = 30.0;
    const auto r = truncated_cusp_expansion(single, 1.0, Rp);
    CHECK(r.total == doctest::Approx(0.5 * (std::log(Rp) - 0.5 * std::log(1.0)) + 0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(r.breakdown.at("neumann_correction") == doctest::Approx(0.5 * std::log(2.0)));
    const auto t2 = with_betti(2, {1, 2, 1});
    CHECK(truncated_cusp_expansion(t2, 1.0, Rp).breakdown.count("middle_degree_loglog") == 1);
    CHECK_THROWS(truncated_cusp_expansion(t2, 2.0, 2.0));
  }

  TEST_CASE("truncated expansion from the interval and half-line determinants") {
    const double R = 1.0, Rp = 1e3;
    for (const auto& cs : {with_betti(2, {1, 0, 1}), with_betti(2, {1, 2, 1}), with_betti(4, {1, 3, 2, 3, 1}),
                           with_betti(6, {1, 0, 4, 1, 4, 0, 1})}) {
      double bfk_sum = 0.0, asymptotic = 0.0, halfline = 0.0, neumann = 0.0;
      for (int p = 0; p <= cs.n; ++p) {
        const double mu = cs.mu(p);
        const double b = static_cast<double>(cs.betti[p]);
        const double sp = p % 2 ? -1.0 : 1.0;
        const cuspops::HarmonicOperator op{mu, R, Rp, cuspops::HarmonicBc::Dirichlet};
        bfk_sum += -sp * b * detzeta::bfk_interval_logdet(op).value;
        halfline += -sp * b * detzeta::harmonic_halfline_zeta_prime0(mu, R).value;
        if (2 * p == cs.n) {
          asymptotic += sp * b * (std::log(2.0) + std::log(std::log(Rp)));
        } else {
          asymptotic += sp * b * (std::abs(mu) * std::log(Rp / R) - std::log(std::abs(mu)));
          neumann += 0.5 * sp * b * std::abs(mu) * std::log(2.0 * std::abs(mu));
        }
      }
      CHECK(std::abs(bfk_sum - asymptotic) < 1e-3);
      const auto r = truncated_cusp_expansion(cs, R, Rp);
      const double interval_part = r.breakdown.at("harmonic_interval") +
                                   (r.breakdown.count("middle_degree_loglog") ? r.breakdown.at("middle_degree_loglog") : 0.0);
      CHECK(std::abs(0.5 * (bfk_sum - halfline) - interval_part) < 1e-3);
      CHECK(r.breakdown.at("neumann_correction") == doctest::Approx(neumann).epsilon(1e-14));
    }
  }

  TEST_CASE("determinant norm ratio") {
    CHECK(det_norm_ratio(2, 1, 1.0, std::exp(1.0)) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-15));
    const double R = 1.4, Rp = 9.0;
    const double special = det_norm_ratio(4, 2, R, Rp);
    for (double e : {1e-6, -1e-6}) {
      CHECK(det_norm_ratio_exponent(e, R, Rp) == doctest::Approx(special).epsilon(1e-5));
    }
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
      const double a = u(rng), b = a + u(rng);
      for (int p = 0; p <= 6; ++p) CHECK(det_norm_ratio(6, p, a, b) > 0.0);
    }
    CHECK_THROWS(det_norm_ratio(2, 0, 2.0, 1.0));
  }

  TEST_CASE("intersection torsion rescaling") {
    const auto s2 = with_betti(2, {1, 0, 1});
    const auto r = intersection_rescale(s2, 1.0);
    CHECK(r.breakdown.at("mu_log_R") == 0.0);
    CHECK(r.total == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-15));
    const auto cs = with_betti(4, {1, 3, 0, 2, 5});
    const auto dual = with_betti(4, {5, 2, 0, 3, 1});
    CHECK(intersection_rescale(cs, 2.7).total == doctest::Approx(intersection_rescale(dual, 2.7).total).epsilon(1e-14));
    CHECK_THROWS_AS(intersection_rescale(with_betti(2, {1, 2, 1}), 1.0), WittViolation);
  }

  TEST_CASE("cone defect") {
    const auto s2 = with_betti(2, {1, 0, 1});
    const double T = 0.81;
    CHECK(cone_defect(s2, T).total == doctest::Approx(-T - std::log(2.0)).epsilon(1e-15));
    CHECK(cone_defect(with_betti(4, {0, 0, 0, 0, 0}), T).total == -T);
    CHECK_THROWS_AS(cone_defect(with_betti(2, {1, 1, 1}), T), WittViolation);
    CHECK_THROWS(cone_defect(s2, T, "hg"));
    const auto cs = with_betti(6, {1, 4, 2, 0, 3, 2, 5});
    const auto dual = with_betti(6, {5, 2, 3, 0, 2, 4, 1});
    CHECK(cone_defect(cs, T).total == doctest::Approx(cone_defect(dual, T).total).epsilon(1e-14));
  }

  TEST_CASE("two routes to the defect") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> radius(0.2, 20.0);
    for (int i = 0; i < 20; ++i) {
      const auto cs = random_witt(rng);
      const double tau = u(rng), R = radius(rng);
      const double direct = cone_defect(cs, tau).total;
      const auto chain = cone_defect_via_anomaly_chain(cs, tau, R, u(rng));
      CHECK(std::abs(chain.total - direct) <= 1e-12);
      CHECK(std::abs(cone_defect_via_anomaly_chain(cs, tau, R, 100.0 * u(rng)).total - direct) <= 1e-12);
    }
  }

  TEST_CASE("gluing and boundary terms") {
    CHECK(glue_assemble(1.0, 2.0, 3.0, 0.0) == 6.0);
    CHECK(glue_assemble(0.0, 0.0, 0.0, 2.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    CHECK(glue_assemble_primed(1.0, 2.0, 3.0) == 6.0);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 20; ++i) {
      const double a = u(rng), b = u(rng), h = u(rng), hn = u(rng), chi = std::round(u(rng));
      CHECK(glue_assemble(a, b, h, chi) == doctest::Approx(glue_assemble(b, a, h, chi)).epsilon(1e-14));
      // the laws differ only by the cohomology torsion and the chi term
      CHECK(glue_assemble(a, b, h, chi) - glue_assemble_primed(a, b, hn) ==
            doctest::Approx(h - hn - chi * 0.5 * std::log(2.0)).epsilon(1e-12));
    }
    CHECK(cm_boundary_term(0.0) == 0.0);
    CHECK(cm_boundary_term(2.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(cm_boundary_term(6.0) == doctest::Approx(3.0 * cm_boundary_term(2.0)).epsilon(1e-15));
  }
}
