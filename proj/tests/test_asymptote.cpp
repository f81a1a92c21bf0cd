#include <cmath>

#include "cusptorsion/asymptote.hpp"
#include "cusptorsion/quadrature.hpp"
#include "doctest.h"

using namespace cusptorsion::asymptote;

TEST_SUITE("asymptote") {
  TEST_CASE("lim_extract") {
    AsymptoticSeries a;
    a.add_term(0, 0, 5);
    CHECK(lim_extract(a) == 5);
    AsymptoticSeries b;
    b.add_term(-1, 0, 7);
    b.add_term(1, 0, 1);
    b.add_term(0, 0, 3);
    CHECK(lim_extract(b) == 3);
    REQUIRE(b.terms().size() == 3);
    CHECK(b.terms()[0].gamma == 1);
    CHECK(b.terms()[2].gamma == -1);
    AsymptoticSeries c;
    c.add_term(0, 1, 2);
    CHECK(lim_extract(c) == 0);
  }

  TEST_CASE("ordering toward zero") {
    AsymptoticSeries a(Direction::to_zero);
    a.add_term(1, 0, 1);
    a.add_term(0, 0, 1);
    a.add_term(0, 1, 1);
    a.add_term(-1, 0, 1);
    REQUIRE(a.terms().size() == 4);
    CHECK(a.terms()[0].gamma == -1);
    CHECK(a.terms()[1].log_power == 1);
    CHECK(a.terms()[3].gamma == 1);
  }

  TEST_CASE("series algebra") {
    AsymptoticSeries a;
    a.add_term(1, 1, 2.5);
    a.add_term(0, 0, -1);
    CHECK(series_add(a, series_scale(a, -1)).terms().empty());
    const auto same = series_scale(a, 1);
    REQUIRE(same.terms().size() == a.terms().size());
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
      CHECK(same.terms()[i].coeff == a.terms()[i].coeff);
    }
    AsymptoticSeries b;
    b.add_term(1, 1, 0.5);
    CHECK(series_add(a, b).coefficient(1, 1) == 3.0);
    a.add_term(2, 0, 0.0);
    CHECK(a.terms().size() == 2);
    CHECK_THROWS(series_add(a, AsymptoticSeries(Direction::to_zero)));
    // linearity of the constant term
    AsymptoticSeries c;
    c.add_term(0, 0, 4);
    c.add_term(-2, 0, 1);
    CHECK(lim_extract(series_add(a, series_scale(c, 3))) == doctest::Approx(-1 + 12));
  }

  TEST_CASE("fit_tail") {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 20; ++i) {
      const double z = 10.0 * std::pow(10.0, i / 19.0);
      s.push_back({z, std::log(z) + 3});
    }
    CHECK(lim_extract(fit_tail(s, {{0, 1}}).series) == doctest::Approx(3).epsilon(1e-10));

    std::vector<std::pair<double, double>> t;
    for (int i = 0; i < 20; ++i) {
      const double z = 10.0 + 90.0 * i / 19.0;
      t.push_back({z, z + 2 + 1 / z});
    }
    const TailFit fit = fit_tail(t, {{1, 0}});
    CHECK(std::fabs(lim_extract(fit.series) - 2) < 0.1);
    CHECK(fit.rms_residual > 0);

    std::vector<std::pair<double, double>> k;
    for (int i = 0; i < 8; ++i) k.push_back({1.0 + i * 3.0, 4.25});
    CHECK(lim_extract(fit_tail(k, {}).series) == doctest::Approx(4.25).epsilon(1e-14));

    CHECK_THROWS(fit_tail(k, {{0, 1}, {0, 2}, {1, 0}, {2, 0}}));
    std::vector<std::pair<double, double>> narrow;
    for (int i = 0; i < 10; ++i) narrow.push_back({10.0 + i, 1.0});
    CHECK_THROWS(fit_tail(narrow, {{0, 1}}));
    // duplicated column
    CHECK_THROWS(fit_tail(t, {{1, 0}, {1.0 + 1e-15, 0}}));
  }

  TEST_CASE("regularized integral examples") {
    const double a = reg_integral([](double z) { return z / (1 + z * z); }, 0.0, {{0, 1}});
    CHECK(std::fabs(a) < 1e-8);
    const double b = reg_integral([](double z) { return 1 / ((1 + z) * (1 + z)); }, 0.0, {});
    CHECK(std::fabs(b - 1) < 1e-8);
    const double c = reg_integral([](double z) { return 1 / (1 + z); }, 0.0, {{0, 1}});
    CHECK(std::fabs(c) < 1e-8);
  }

  TEST_CASE("regularized integral of an absolutely integrable function") {
    const double v = reg_integral([](double z) { return std::exp(-z) + 1 / (1 + z * z); }, 0.0, {});
    CHECK(v == doctest::Approx(1 + M_PI / 2).epsilon(1e-9));
  }

  TEST_CASE("cut placement does not matter") {
    auto f = [](double z) { return z / (1 + z * z) + 2 / (3 + z); };
    RegIntegralOptions o1, o2;
    o2.z_first = 80;
    o2.z_last = 6000;
    o2.cut_count = 25;
    const double v1 = reg_integral(f, 0.0, {{0, 1}}, o1);
    const double v2 = reg_integral(f, 0.0, {{0, 1}}, o2);
    CHECK(std::fabs(v1 - v2) < 1e-8);
    CHECK(v1 == doctest::Approx(-2 * std::log(3.0)).epsilon(1e-8));
  }

  TEST_CASE("lower endpoint regularization") {
    // int_eps^Z (1/z) e^{-z} ... use f = 1/(z(1+z)): partial = log(z/(1+z)) | -> -log eps + ...
    auto f = [](double z) { return 1 / (z * (1 + z)); };
    RegIntegralOptions o;
    o.lower_model = {{0, 1}};
    const double v = reg_integral(f, 0.0, {}, o);
    // int_eps^inf = log(1+eps) - log(eps) -> constant term 0
    CHECK(std::fabs(v) < 1e-8);
  }

  TEST_CASE("growth of order Z log Z") {
    // int_0^Z log(1+z) + 1/(1+z) = Z log Z + 2 log Z + 1 - Z + o(1)
    const double v = reg_integral([](double z) { return std::log1p(z) + 1 / (1 + z); }, 0.0,
                                  {{1, 1}, {1, 0}, {0, 1}});
    CHECK(std::fabs(v - 1) < 1e-6);
  }

  TEST_CASE("unresolved expansion") {
    // Z log^2 Z growth is not representable by a log-only model.
    auto f = [](double z) { return std::log(1 + z) * std::log(1 + z); };
    CHECK_THROWS_AS(reg_integral(f, 0.0, {{0, 1}}), UnresolvedExpansion);
  }

  TEST_CASE("quadrature") {
    using cusptorsion::quad::integrate;
    CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI) == doctest::Approx(2).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0, 1) == doctest::Approx(2.0 / 3).epsilon(1e-10));
    CHECK(integrate([](double x) { return x; }, 1, 0) == doctest::Approx(-0.5));
    CHECK_THROWS(integrate([](double) { return NAN; }, 0, 1));
  }
}
