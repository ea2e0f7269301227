#include <cmath>

#include "doctest.h"
#include "lamb/gauss_kronrod.hpp"
#include "lamb/pvquad.hpp"

using namespace lamb;

TEST_CASE("G7K15 panel is exact for low-degree polynomials") {
  auto p = detail::gk15([](double x) { return std::pow(x, 20); }, 0.0, 1.0);
  CHECK(p.value == doctest::Approx(1.0 / 21).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature") {
  auto r = integrate_adaptive([](double x) { return std::exp(-x) * std::sin(5 * x); },
                              0.0, 10.0, 1e-12);
  const double exact = (5 - std::exp(-10.0) * (std::sin(50.0) + 5 * std::cos(50.0))) / 26;
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
  CHECK(r.error < 1e-10);

  auto s = integrate_adaptive([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0,
                              1e-8);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("non-convergence carries the achieved error") {
  try {
    integrate_adaptive([](double x) { return std::sin(1 / x); }, 1e-6, 1.0, 1e-14,
                       0.0, 5);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError &e) {
    CHECK(e.achieved_error() > 0);
  }
}

TEST_CASE("symmetric excision of a constant numerator") {
  auto r = excised_pole_integral([](double) { return 1.0; }, 1.0, 1.0, 1e-12, 0.0);
  CHECK(std::abs(r.value) < 1e-14);
}

TEST_CASE("principal value of nu/(nu^2 - 1) over [0, 2]") {
  auto r = excised_pole_integral([](double nu) { return nu / (nu + 1); }, 1.0, 1.0,
                                 1e-12, 0.0);
  CHECK(r.value == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(0.54930614).epsilon(1e-8));
}

TEST_CASE("oracle reproduces the nu^3 integral") {
  const auto d = inertial_density<double>();
  const auto q = pv_quadrature_detail(d, 1.0, 1e3);
  CHECK(q.renormalized == doctest::Approx(-13.815509557963773).epsilon(1e-10));
  const auto r = density_kernel_integral(d, 1.0, 1e3);
  CHECK(pv_quadrature(d, 1.0, 1e3) ==
        doctest::Approx(r.value + r.dropped_at(1e3)).epsilon(1e-12));
  REQUIRE(q.dropped_powers.size() == 1);
  CHECK(q.dropped_powers[0].power == 2);
  CHECK(q.dropped_powers[0].coeff == -1.0);
}

TEST_CASE("oracle matches exact integration across poles and breakpoints") {
  for (double x : {0.3, 0.5, 1.0, 2.0, 10.0})
    for (double beta : {0.0, 1e-2})
      for (double omega : {1.0, 0.9}) {
        for (const auto &d : circular_densities(x, beta)) {
          const auto exact = density_kernel_integral(d, omega, 1e5);
          const auto q = pv_quadrature_detail(d, omega, 1e5);
          CHECK(q.renormalized ==
                doctest::Approx(exact.value).epsilon(1e-9).scale(1.0));
          CHECK(q.raw == doctest::Approx(exact.value + exact.dropped_at(1e5))
                             .epsilon(1e-9));
        }
      }
}

TEST_CASE("oracle preconditions") {
  const auto d = inertial_density<double>();
  CHECK_THROWS_AS(pv_quadrature(d, 1.0, 1e3, 1e-13), DomainError);
  CHECK_THROWS_AS(pv_quadrature(d, 0.0, 1e3), DomainError);
  CHECK_THROWS_AS(pv_quadrature(d, 1.0, 2.0), ValidityError);
  SpectralDensity<double> empty;
  CHECK(pv_quadrature(empty, 1.0, 1e3) == 0.0);
}
