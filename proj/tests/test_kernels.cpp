#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hermite_riesz/kernels.hpp"

using namespace hermite_riesz;

TEST_CASE("Mehler kernel reference values", "[kernels]") {
  // d = 1, x = y = 0, t = 1: prefactor only, (2 pi)^{-1/2} pi^{-1/2} / sqrt(sinh 2).
  const double expect =
      1.0 / (std::sqrt(2.0 * kPi) * std::sqrt(kPi) * std::sqrt(std::sinh(2.0)));
  CHECK(mehler_kernel(1.0, {0.0}, {0.0}) == Catch::Approx(expect).epsilon(1e-14));

  // Symmetry and positivity.
  const std::vector<double> x = {0.7, -0.2}, y = {-1.1, 0.5};
  CHECK(mehler_kernel(0.6, x, y) == Catch::Approx(mehler_kernel(0.6, y, x)).epsilon(1e-14));
  CHECK(mehler_kernel(0.6, x, y) > 0.0);

  // Exponent-form agreement at an off-diagonal point.
  CHECK(mehler_kernel(0.3, {0.9}, {-0.4}) ==
        Catch::Approx(mehler_kernel_two_form(0.3, {0.9}, {-0.4})).epsilon(1e-13));

  CHECK_THROWS_AS(mehler_kernel(0.0, {0.0}, {0.0}), std::domain_error);
  CHECK_THROWS_AS(mehler_kernel(1.0, {0.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("deep-tail evaluation stays finite", "[kernels]") {
  // Large |x - y| and large t both underflow gracefully through the log path.
  CHECK(mehler_kernel(25.0, {10.0}, {-10.0}) >= 0.0);
  CHECK(std::isfinite(mehler_kernel(25.0, {10.0}, {-10.0})));
  CHECK(std::isfinite(mehler_kernel(1e-8, {0.3}, {0.31})));
}

TEST_CASE("mass of e^{-tL} against the closed form", "[kernels]") {
  // int K_t(x, y) dy = pi^{-1/2} (cosh 2t)^{-d/2} e^{-|x|^2 tanh(2t)/2}.
  CHECK(mehler_mass(0.8, {0.0}) ==
        Catch::Approx(1.0 / (kSqrtPi * std::sqrt(std::cosh(1.6)))).epsilon(1e-14));

  const double t = 0.5;
  const std::vector<double> x = {1.2};
  const QuadratureGrid g = panel_grid(13.0, 16, 12);
  double q = 0.0;
  for (std::size_t j = 0; j < g.nodes.size(); ++j)
    q += g.weights[j] * mehler_kernel(t, x, {g.nodes[j]});
  CHECK(q == Catch::Approx(mehler_mass(t, x)).epsilon(1e-9));
}

TEST_CASE("heat_apply on an eigenfunction", "[kernels]") {
  const SpectralFn f = SpectralFn::basis({0});
  const double t = 0.5;
  CHECK(heat_apply(t, f, {0.7}) ==
        Catch::Approx(std::exp(-t) * hermite_function(0, 0.7)).margin(1e-8));
  CHECK(heat_apply(t, f, {0.0}) > 0.0);
  CHECK_THROWS_AS(heat_apply(-1.0, f, {0.0}), std::domain_error);
}

TEST_CASE("special integrals", "[kernels]") {
  CHECK(sech_power_integral(1) == Catch::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(sech_power_integral(2) == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(sech_power_integral(3) == Catch::Approx(kPi / 4.0).epsilon(1e-14));

  // d = 1: int |x| e^{-k x^2} dx = 1/k; d = 2: pi^{3/2}/(2 k^{3/2}).
  CHECK(gaussian_first_moment(1, 2.0) == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(gaussian_first_moment(2, 1.0) ==
        Catch::Approx(std::pow(kPi, 1.5) / 2.0).epsilon(1e-14));

  CHECK(prop1_exact_chain(1) == Catch::Approx(1.0).margin(1e-13));
  CHECK(prop1_exact_chain(7) == Catch::Approx(1.0).margin(1e-13));

  CHECK_THROWS_AS(sech_power_integral(0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_first_moment(1, -1.0), std::invalid_argument);
}

TEST_CASE("tau fixed point", "[kernels]") {
  const double tau = tau_root();
  CHECK(std::abs(std::tanh(2.0 * tau) - tau) < 1e-12);
  CHECK(tau == Catch::Approx(0.957504024077268740676501530502).margin(1e-12));
}

TEST_CASE("first-moment bound of Proposition 6 at spot values", "[kernels]") {
  const KernelConfig cfg;
  const double v0 = prop1_numeric({0.0}, cfg);
  const double v1 = prop1_numeric({1.0}, cfg);
  CHECK(v0 > 0.0);
  CHECK(v0 <= 1.0 + 1e-6);
  CHECK(v1 <= 1.0 + 1e-6);
  CHECK_THROWS_AS(prop1_numeric({}, cfg), std::invalid_argument);
}

TEST_CASE("row-mass bound of Proposition 7 at spot values", "[kernels]") {
  const KernelConfig cfg;
  const double bound = 1.0 / kSqrtPi + std::sqrt(2.0);
  for (double xv : {0.5, 5.0}) {
    const double v = prop2_numeric({xv}, cfg);
    CHECK(v > 0.0);
    CHECK(v <= bound + 1e-6);
  }
}

TEST_CASE("S-kernel structure", "[kernels]") {
  const KernelConfig cfg;
  CHECK(s_kernel({0.0}, {1.0}, cfg) == 0.0);  // |x| prefactor kills the origin row
  CHECK(s_kernel({1.3}, {0.4}, cfg) > 0.0);
  CHECK_THROWS_AS(s_kernel({1.0}, {1.0}, cfg), std::domain_error);
  CHECK_THROWS_AS(s_kernel({1.0}, {1.0, 0.0}, cfg), std::invalid_argument);

  // Row mass is the Proposition 7 quantity by definition.
  CHECK(s_kernel_row_mass({2.0}, cfg) == Catch::Approx(prop2_numeric({2.0}, cfg)));

  // Column mass at y = 1 splits as row + first moment (both at y).
  const double col = s_kernel_column_mass(1.0, cfg);
  const double row = s_kernel_row_mass({1.0}, cfg);
  const double p1 = prop1_numeric({1.0}, cfg);
  CHECK(col <= row + p1 + 1e-6);
  CHECK(col <= 3.0 + 1e-6);
}

TEST_CASE("resolvent kernel mass", "[kernels]") {
  const KernelConfig cfg;
  for (double a : {0.5, 2.0}) {
    const double m = resolvent_kernel_mass(a, {0.0}, cfg);
    CHECK(m > 0.0);
    CHECK(m <= 1.0 / (2.0 * a) + 1e-8);
  }
  CHECK_THROWS_AS(resolvent_kernel_mass(0.0, {0.0}, cfg), std::invalid_argument);
}

TEST_CASE("resolvent kernel route vs spectral factor", "[kernels]") {
  const KernelConfig cfg;
  const SpectralFn f = SpectralFn::basis({1});
  // (L + 2)^{-1} h_1 = h_1 / 5 in d = 1.
  const double via_kernel = resolvent_kernel_apply(1.0, f, {0.6}, cfg);
  CHECK(via_kernel ==
        Catch::Approx(hermite_function(1, 0.6) / 5.0).margin(1e-6));
}
