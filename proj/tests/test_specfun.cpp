#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>

#include "cusptorsion/specfun.hpp"
#include "doctest.h"

using namespace cusptorsion::specfun;

namespace {

// Plain power series in long double, independent of the library's code path.
long double i_power_series(long double nu, long double x, int terms) {
  long double term = std::pow(x / 2, nu) / std::tgamma(nu + 1);
  long double sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= (x * x / 4) / (k * (k + nu));
    sum += term;
  }
  return sum;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("I_0(1) against a power series") {
    const BesselQuad q = bessel_ik(0.0, 1.0);
    CHECK(q.i_val == doctest::Approx(static_cast<double>(i_power_series(0, 1, 60))).epsilon(1e-14));
    CHECK(q.i_val == doctest::Approx(1.2660658778).epsilon(1e-10));
  }

  TEST_CASE("wronskian at (0.7, 2.3)") {
    const BesselQuad q = bessel_ik(0.7, 2.3);
    CHECK(q.i_prime * q.k_val - q.i_val * q.k_prime == doctest::Approx(1.0 / 2.3).epsilon(1e-12));
  }

  TEST_CASE("small argument K behaviour") {
    const BesselQuad q = bessel_ik(5.0, 0.1);
    const double leading = std::tgamma(5.0) / 2.0 * std::pow(0.05, -5.0);
    CHECK(rel(q.k_val, leading) < 1e-3);
    // The next correction is -(x/2)^2/(nu-1) relative; with it the match is tight.
    CHECK(rel(q.k_val, leading * (1.0 - 0.0025 / 4.0)) < 1e-6);
  }

  TEST_CASE("agreement with boost on a grid") {
    for (double nu : {0.0, 0.25, 0.5, 1.0, 1.7, 3.0, 7.5, 12.0, 20.0, 33.3}) {
      for (double x : {0.01, 0.1, 0.9, 2.0, 2.01, 5.0, 10.0, 10.5, 25.0, 60.0, 300.0}) {
        CAPTURE(nu);
        CAPTURE(x);
        const BesselLog b = bessel_ik_log(nu, x);
        const double li = std::log(boost::math::cyl_bessel_i(nu, x));
        const double lk = std::log(boost::math::cyl_bessel_k(nu, x));
        if (std::isfinite(li)) CHECK(std::fabs(b.log_i - li) < 1e-12 * std::max(1.0, std::fabs(li)));
        if (std::isfinite(lk)) CHECK(std::fabs(b.log_k - lk) < 1e-12 * std::max(1.0, std::fabs(lk)));
        if (x <= 60.0) {
          const double di = boost::math::cyl_bessel_i_prime(nu, x) / boost::math::cyl_bessel_i(nu, x);
          const double dk = boost::math::cyl_bessel_k_prime(nu, x) / boost::math::cyl_bessel_k(nu, x);
          CHECK(rel(b.dlog_i, di) < 1e-11);
          CHECK(rel(b.dlog_k, dk) < 1e-11);
        }
      }
    }
  }

  TEST_CASE("half-integer closed forms") {
    for (double x : {0.05, 0.5, 1.0, 3.0, 9.0, 40.0}) {
      const BesselQuad q = bessel_ik(0.5, x);
      CHECK(rel(q.k_val, std::sqrt(M_PI / (2 * x)) * std::exp(-x)) < 1e-12);
      CHECK(rel(q.i_val, std::sqrt(2 / (M_PI * x)) * std::sinh(x)) < 1e-12);
      const BesselQuad q3 = bessel_ik(1.5, x);
      CHECK(rel(q3.k_val, std::sqrt(M_PI / (2 * x)) * std::exp(-x) * (1 + 1 / x)) < 1e-12);
    }
  }

  TEST_CASE("positivity and monotonicity") {
    for (double nu = 0.0; nu <= 20.0; nu += 2.5) {
      double prev_i = 0.0, prev_k = INFINITY;
      for (double x = 0.1; x <= 40.0; x *= 1.3) {
        const BesselLog b = bessel_ik_log(nu, x);
        CHECK(b.log_i > std::log(0.0) + 1);
        CHECK(b.log_i > prev_i - 1e300);
        CHECK(b.log_k < prev_k);
        CHECK(b.dlog_i > 0.0);
        CHECK(b.dlog_k < 0.0);
        if (x > 0.1) CHECK(b.log_i > prev_i);
        prev_i = b.log_i;
        prev_k = b.log_k;
      }
    }
  }

  TEST_CASE("continuity across regime boundaries") {
    for (double nu : {0.3, 4.0, 24.0}) {
      for (double edge : {2.0, 10.0, 12.0}) {
        const double a = edge * (1 - 1e-9), b = edge * (1 + 1e-9);
        const BesselLog lo = bessel_ik_log(nu, a);
        const BesselLog hi = bessel_ik_log(nu, b);
        CHECK(std::fabs(hi.log_i - lo.log_i - lo.dlog_i * (b - a)) < 1e-12 * std::max(1.0, std::fabs(lo.log_i)));
        CHECK(std::fabs(hi.log_k - lo.log_k - lo.dlog_k * (b - a)) < 1e-12 * std::max(1.0, std::fabs(lo.log_k)));
      }
    }
  }

  TEST_CASE("wronskian grid") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double nu = 20.0 * i / 19.0;
      for (int j = 0; j < 10; ++j) {
        const double x = 0.1 * std::pow(500.0, j / 9.0);
        worst = std::max(worst, std::fabs(wronskian_product(bessel_ik_log(nu, x), x) - 1.0));
      }
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(bessel_ik(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_ik(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_ik(NAN, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_ik(1.0, INFINITY), std::domain_error);
    CHECK_THROWS_AS(bessel_ik(0.0, 800.0), OverflowError);
    CHECK_NOTHROW(bessel_ik_log(0.0, 800.0));
    CHECK_THROWS_AS(olver_table(13), std::out_of_range);
    CHECK_THROWS_AS(uniform_ik(9.0, 1.0, 4), std::domain_error);
  }

  TEST_CASE("olver table structure") {
    const OlverPolyTable t = olver_table(kOlverMaxOrder);
    REQUIRE(t.u_polys.size() == 13);
    CHECK(t.u_polys[0] == Polynomial{1.0});
    CHECK(t.v_polys[0] == Polynomial{1.0});
    CHECK(t.u_polys[1][1] == doctest::Approx(3.0 / 24));
    CHECK(t.u_polys[1][3] == doctest::Approx(-5.0 / 24));
    CHECK(t.v_polys[1][1] == doctest::Approx(-9.0 / 24));
    CHECK(t.v_polys[1][3] == doctest::Approx(7.0 / 24));
    // u_2 = (81 p^2 - 462 p^4 + 385 p^6) / 1152
    CHECK(t.u_polys[2][2] == doctest::Approx(81.0 / 1152));
    CHECK(t.u_polys[2][4] == doctest::Approx(-462.0 / 1152));
    CHECK(t.u_polys[2][6] == doctest::Approx(385.0 / 1152));
    for (int k = 0; k <= kOlverMaxOrder; ++k) {
      for (const auto* polys : {&t.u_polys, &t.v_polys}) {
        const Polynomial& p = (*polys)[static_cast<std::size_t>(k)];
        CHECK(p.size() == static_cast<std::size_t>(3 * k + 1));
        CHECK(p.back() != 0.0);
        for (int e = 0; e <= 3 * k; ++e) {
          const bool allowed = e >= k && (e - k) % 2 == 0;
          if (!allowed) CHECK(p[static_cast<std::size_t>(e)] == 0.0);
          if (allowed && polys == &t.u_polys) CHECK(p[static_cast<std::size_t>(e)] != 0.0);
        }
      }
    }
  }

  TEST_CASE("olver variables") {
    const OlverVariables v = olver_variables(1.0);
    CHECK(v.p_s == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(v.nu_s == doctest::Approx(std::sqrt(2.0) + std::log(1.0 / (1.0 + std::sqrt(2.0)))));
  }

  TEST_CASE("uniform expansion") {
    const BesselQuad u = uniform_ik(50.0, 1.0, 4);
    const BesselQuad d = bessel_ik(50.0, 50.0);
    CHECK(rel(u.i_val, d.i_val) < 1e-8);
    CHECK(rel(u.k_val, d.k_val) < 1e-8);
    CHECK(rel(u.i_prime, d.i_prime) < 1e-8);
    CHECK(rel(u.k_prime, d.k_prime) < 1e-8);

    const double nu = 40.0, s = 0.5;
    const OlverVariables v = olver_variables(s);
    const BesselLog lead = uniform_ik_log(nu, s, 0);
    CHECK(lead.log_i == doctest::Approx(nu * v.nu_s - 0.5 * std::log(2 * M_PI * nu) -
                                        0.25 * std::log(1 + s * s)).epsilon(1e-15));
    CHECK(lead.log_k == doctest::Approx(-nu * v.nu_s + 0.5 * std::log(M_PI / (2 * nu)) -
                                        0.25 * std::log(1 + s * s)).epsilon(1e-15));

    // Relative error of all four values; per point k=4 beats k=1, and the
    // worst case over the grid decreases strictly with each extra term.
    double worst_prev = INFINITY;
    for (int k = 1; k <= 4; ++k) {
      double worst = 0.0;
      for (double nuv : {50.0, 100.0, 200.0}) {
        for (double sv : {0.2, 1.0, 5.0}) {
          const BesselLog e = bessel_ik_log(nuv, nuv * sv);
          auto err = [&](int kk) {
            const BesselLog a = uniform_ik_log(nuv, sv, kk);
            return std::max({std::fabs(std::expm1(a.log_i - e.log_i)),
                             std::fabs(std::expm1(a.log_k - e.log_k)),
                             std::fabs(std::exp(a.log_i - e.log_i) * a.dlog_i / e.dlog_i - 1),
                             std::fabs(std::exp(a.log_k - e.log_k) * a.dlog_k / e.dlog_k - 1)});
          };
          if (k == 4) {
            CHECK(err(4) < err(1));
            CHECK(err(4) < 1e-6);
          }
          worst = std::max(worst, err(k));
        }
      }
      CHECK(worst < worst_prev);
      worst_prev = worst;
    }
  }

  TEST_CASE("auto dispatch agrees with the direct path") {
    for (double nu : {30.0, 45.5, 80.0}) {
      for (double x : {0.5, 20.0, 90.0, 400.0}) {
        const BesselLog a = bessel_log_auto(nu, x);
        const BesselLog b = bessel_ik_log(nu, x);
        CHECK(std::fabs(a.log_i - b.log_i) < 1e-11 * std::max(1.0, std::fabs(b.log_i)));
        CHECK(std::fabs(a.log_k - b.log_k) < 1e-11 * std::max(1.0, std::fabs(b.log_k)));
        CHECK(rel(a.dlog_k, b.dlog_k) < 1e-11);
      }
    }
  }
}
