#include <cmath>
#include <random>

#include "doctest.h"
#include "lamb/pvengine.hpp"
#include "lamb/pvquad.hpp"

using namespace lamb;

TEST_CASE("nu^3 term gives the Bethe logarithm") {
  const auto r = term_kernel_integral<double>({1, 0, 3}, 1.0, 1e3);
  CHECK(r.value == doctest::Approx(-std::log(1e6 - 1)).epsilon(1e-14));
  CHECK(r.value == doctest::Approx(-13.815509557963773).epsilon(1e-12));
  REQUIRE(r.dropped_powers.size() == 1);
  CHECK(r.dropped_powers[0].power == 2);
  CHECK(r.dropped_powers[0].coeff == -1.0);
  CHECK(r.kept_constant == 0.0);
  CHECK(r.kept_log_terms.size() == 2);
  CHECK_FALSE(r.removable_limit);
}

TEST_CASE("zero coefficient term") {
  const auto r = term_kernel_integral<double>({0, 0.7, 5}, 1.0, 1e3);
  CHECK(r.value == 0.0);
  CHECK(r.dropped_powers.empty());
}

TEST_CASE("term_kernel_integral preconditions") {
  CHECK_THROWS_AS(term_kernel_integral<double>({1, 0, 3}, 0.0, 1e3), DomainError);
  CHECK_THROWS_AS(term_kernel_integral<double>({1, 0, 3}, 1.0, 10.0), ValidityError);
  CHECK_THROWS_AS(term_kernel_integral<double>({1, 50, 3}, 1.0, 400.0), ValidityError);
  CHECK_NOTHROW(term_kernel_integral<double>({1, 50, 3}, 1.0, 501.0));
}

TEST_CASE("dropped ledger holds only positive powers") {
  for (double x : {0.5, 1.0, 10.0})
    for (const auto &d : circular_densities(x, 0.01)) {
      const auto r = density_kernel_integral(d, 1.0, 1e5);
      CHECK(std::isfinite(r.value));
      for (const auto &p : r.dropped_powers) CHECK(p.power >= 1);
    }
}

TEST_CASE("pole on a lower support edge is a removable limit") {
  // x = 1: the (nu - 1)^3 piece starts exactly at the pole nu = 1.
  const SpectralTerm<double> t{0.5, -1.0, 3};
  const auto r = term_kernel_integral(t, 1.0, 1e4);
  CHECK(r.removable_limit);
  CHECK(r.kept_log_terms.size() == 1);
  const double near = term_kernel_integral<double>({0.5, -1.0 + 1e-8, 3}, 1.0, 1e4).value;
  CHECK(near == doctest::Approx(r.value).epsilon(1e-7));
  const double below = term_kernel_integral<double>({0.5, -1.0 - 1e-8, 3}, 1.0, 1e4).value;
  CHECK(below == doctest::Approx(r.value).epsilon(1e-7));
}

TEST_CASE("kernel is odd in omega") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> c(-2, 2), s(-3, 3), w(0.2, 2);
  std::uniform_int_distribution<int> n(3, 5);
  for (int i = 0; i < 200; ++i) {
    const SpectralTerm<double> t{c(rng), s(rng), n(rng)};
    const double om = w(rng);
    const auto a = term_kernel_integral(t, om, 1e4);
    const auto b = term_kernel_integral(t, -om, 1e4);
    CHECK(b.value == doctest::Approx(-a.value).epsilon(1e-12));
    CHECK(b.dropped_at(1e4) == doctest::Approx(-a.dropped_at(1e4)).epsilon(1e-12));
  }
}

TEST_CASE("kept plus dropped reproduces the antiderivative") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> c(-2, 2), s(-4, 4), w(0.1, 2);
  std::uniform_int_distribution<int> n(3, 5);
  for (int i = 0; i < 500; ++i) {
    const SpectralTerm<double> t{c(rng), s(rng), n(rng)};
    const double om = w(rng), lambda = 1e2 * (1 + i % 7);
    const auto r = term_kernel_integral(t, om, lambda);
    const double raw = term_kernel_raw(t, om, lambda);
    CHECK(r.value + r.dropped_at(lambda) ==
          doctest::Approx(raw).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("long double agrees with double") {
  for (double x : {0.1, 1.0, 10.0}) {
    const auto dd = build_density<double>(Polarization::rho, x, 0.01);
    const auto dl = build_density<long double>(Polarization::rho, x, 0.01L);
    const double a = channel_shift(dd, 1.0, 1e6);
    const long double b = channel_shift(dl, 1.0L, 1e6L);
    CHECK(a == doctest::Approx(double(b)).epsilon(1e-10));
  }
}

TEST_CASE("shift_from_density examples") {
  const auto w = DipoleWeights<double>::isotropic();
  const auto rest = inertial_densities<double>();
  const double inertial = shift_from_density(rest, w, 1.0, 5.11e5);
  CHECK(inertial == doctest::Approx(-39.432).epsilon(2.6e-5));
  CHECK(inertial == doctest::Approx(-1.5 * std::log(5.11e5 * 5.11e5 - 1)).epsilon(1e-14));

  const DipoleWeights<double> w2{0.3, 2.0, 0.7};
  CHECK(shift_from_density(circular_densities(0.0, 0.0), w2, 1.0, 5.11e5) ==
        doctest::Approx(shift_from_density(rest, w2, 1.0, 5.11e5)).epsilon(1e-15));

  // Exact integration of the x = 10 densities, transverse weights.
  const double moving =
      shift_from_density(circular_densities(10.0, 0.0), DipoleWeights<double>{1, 1, 0},
                         1.0, 5.11e5);
  CHECK(moving == doctest::Approx(-6822.9412800321952).epsilon(1e-12));
  const auto q = quadrature_shift(circular_densities(10.0, 0.0),
                                  DipoleWeights<double>{1, 1, 0}, 1.0, 5.11e5);
  CHECK(q.value == doctest::Approx(moving).epsilon(1e-10));
}

TEST_CASE("negative weights are rejected") {
  CHECK_THROWS_AS(shift_from_density(inertial_densities<double>(),
                                     DipoleWeights<double>{-1, 1, 1}, 1.0, 1e4),
                  DomainError);
}

TEST_CASE("lab pole frequency") {
  CHECK(kernel_omega(PoleFrequency::proper, 0.05) == 1.0);
  CHECK(kernel_omega(PoleFrequency::lab, 0.6) == doctest::Approx(0.8));
}
