#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hermite_riesz/spectral.hpp"

using namespace hermite_riesz;

TEST_CASE("coefficient container basics", "[spectral]") {
  SpectralFn f(2);
  CHECK(f.degree() == 0);  // zero function reports degree 0
  f.set({1, 2}, 0.5);
  f.set({0, 0}, -2.0);
  CHECK(f.at({1, 2}) == 0.5);
  CHECK(f.at({4, 4}) == 0.0);
  CHECK(f.degree() == 3);

  f.set({1, 2}, 1e-15);
  f.prune(1e-12);
  CHECK(f.at({1, 2}) == 0.0);
  CHECK(f.degree() == 0);

  const SpectralFn h = SpectralFn::basis({3, 1});
  CHECK(h.at({3, 1}) == 1.0);
  CHECK(h.dim == 2);
}

TEST_CASE("inner product is the coefficient pairing", "[spectral]") {
  const SpectralFn a = SpectralFn::basis({2});
  const SpectralFn b = SpectralFn::basis({5});
  CHECK(inner(a, a) == 1.0);
  CHECK(inner(a, b) == 0.0);

  SpectralFn f(1);
  f.set({0}, 3.0);
  f.set({4}, -4.0);
  CHECK(l2_norm(f) == Catch::Approx(5.0).margin(1e-14));          // Parseval
  CHECK(l2_norm(2.0 * f) == Catch::Approx(10.0).margin(1e-14));
  CHECK(inner(f + a, a) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("ladder coefficients", "[spectral]") {
  const SpectralFn f = SpectralFn::basis({3, 1});
  CHECK(delta(1, f).at({2, 1}) == Catch::Approx(std::sqrt(6.0)).margin(1e-14));
  CHECK(delta_star(1, f).at({4, 1}) == Catch::Approx(std::sqrt(8.0)).margin(1e-14));
  CHECK(delta(2, f).at({3, 0}) == Catch::Approx(std::sqrt(2.0)).margin(1e-14));
  CHECK(l2_norm(delta(1, SpectralFn::basis({0, 0}))) == 0.0);
  CHECK_THROWS_AS(delta(3, f), std::out_of_range);
  CHECK_THROWS_AS(delta_star(0, f), std::out_of_range);
}

TEST_CASE("partial_x matches the analytic derivative", "[spectral]") {
  // (delta - delta^*)/2 acting on h_2 gives exactly the ladder form of h_2'.
  const SpectralFn d2 = partial_x(1, SpectralFn::basis({2}));
  for (double x : {-1.4, 0.2, 2.1}) {
    CHECK(synthesize_at(d2, {x}) ==
          Catch::Approx(hermite_function_deriv(2, x)).margin(1e-13));
  }

  // Multi-dimensional finite-difference cross-check.
  SpectralFn f(2);
  f.set({1, 0}, 0.7);
  f.set({2, 3}, -1.1);
  const SpectralFn df = partial_x(2, f);
  const double h = 1e-5;
  const std::vector<double> x = {0.3, -0.8};
  const double fd = (synthesize_at(f, {x[0], x[1] + h}) -
                     synthesize_at(f, {x[0], x[1] - h})) /
                    (2.0 * h);
  CHECK(synthesize_at(df, x) == Catch::Approx(fd).margin(1e-8));
}

TEST_CASE("eigenvalue helpers", "[spectral]") {
  CHECK(eigenvalue_lambda(3, 2) == 8.0);
  CHECK(eigenvalue_lambda_prime(3, 2) == 12.0);
  CHECK(eigenvalue_lambda(0, 1) == 1.0);

  const SpectralFn f = SpectralFn::basis({2, 1});
  CHECK(apply_multiplier(multiplier_lambda(), f).at({2, 1}) == 8.0);
  CHECK(apply_multiplier(multiplier_identity(), f).at({2, 1}) == 1.0);
  CHECK(apply_multiplier(multiplier_inv_sqrt_lambda(), f).at({2, 1}) ==
        Catch::Approx(1.0 / std::sqrt(8.0)).margin(1e-15));
}

TEST_CASE("Riesz operators on eigenfunctions", "[spectral]") {
  // R_1 h_(1,0) = delta_1 L^{-1/2} h_(1,0) = sqrt(2)/sqrt(4) h_(0,0).
  const SpectralFn r = riesz(1, SpectralFn::basis({1, 0}));
  CHECK(r.at({0, 0}) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-14));

  // R'_1 h_(0,0) = delta_1^* L'^{-1/2} h_(0,0) = sqrt(2)/sqrt(6) h_(1,0).
  const SpectralFn rp = riesz_prime(1, SpectralFn::basis({0, 0}));
  CHECK(rp.at({1, 0}) == Catch::Approx(std::sqrt(1.0 / 3.0)).margin(1e-14));

  // R~ and R* differ only in the resolvent shift.
  const SpectralFn f = SpectralFn::basis({2});
  CHECK(riesz_tilde(1, f).at({3}) ==
        Catch::Approx(std::sqrt(6.0 / 5.0)).margin(1e-14));
  CHECK(riesz_star(1, f).at({3}) ==
        Catch::Approx(std::sqrt(6.0 / 7.0)).margin(1e-14));
}

TEST_CASE("semigroups: law, boundary value, and generators", "[spectral]") {
  SpectralFn f(1);
  f.set({0}, 1.0);
  f.set({3}, -0.4);

  CHECK(l2_norm(semigroup_P(0.0, f) - f) == Catch::Approx(0.0).margin(1e-15));
  CHECK(l2_norm(semigroup_P(0.3, semigroup_P(0.9, f)) - semigroup_P(1.2, f)) ==
        Catch::Approx(0.0).margin(1e-14));
  CHECK(l2_norm(semigroup_Q(0.5, semigroup_Q(0.5, f)) - semigroup_Q(1.0, f)) ==
        Catch::Approx(0.0).margin(1e-14));

  // Q_t on h_0 (d = 1): multiplier e^{-t sqrt(3 - 2)} = e^{-t}.
  CHECK(semigroup_Q(2.0, SpectralFn::basis({0})).at({0}) ==
        Catch::Approx(std::exp(-2.0)).margin(1e-15));

  const double h = 1e-6, t = 0.7;
  const SpectralFn fd = (1.0 / (2.0 * h)) * (semigroup_P(t + h, f) - semigroup_P(t - h, f));
  CHECK(l2_norm(fd - semigroup_P_dt(t, f)) == Catch::Approx(0.0).margin(1e-8));
  const SpectralFn fdq = (1.0 / (2.0 * h)) * (semigroup_Q(t + h, f) - semigroup_Q(t - h, f));
  CHECK(l2_norm(fdq - semigroup_Q_dt(t, f)) == Catch::Approx(0.0).margin(1e-8));

  CHECK_THROWS_AS(semigroup_P(-0.1, f), std::invalid_argument);
  CHECK_THROWS_AS(semigroup_Q_dt(-1.0, f), std::invalid_argument);
}

TEST_CASE("Lemma 3 pieces agree on the ground pair", "[spectral]") {
  // d = 1, f = h_0, g = h_1: lambda'_0 = 3, lambda'_1 - 2 = 3, so the closed
  // form collapses to sqrt(2)/sqrt(3), which is also <R'_1 h_0, h_1>.
  const SpectralFn f = SpectralFn::basis({0});
  const SpectralFn g = SpectralFn::basis({1});
  const double expect = std::sqrt(2.0 / 3.0);
  CHECK(lemma3_lhs(1, f, g) == Catch::Approx(expect).margin(1e-14));
  CHECK(lemma3_closed_form(1, f, g) == Catch::Approx(expect).margin(1e-14));
  CHECK(lemma3_rhs(1, f, g, lemma3_time_grid(1)) ==
        Catch::Approx(expect).margin(1e-9));
}

TEST_CASE("U_a multiplier and its series", "[spectral]") {
  const SpectralFn e0 = SpectralFn::basis({0});
  CHECK(u_multiplier(1.0, e0).at({0}) ==
        Catch::Approx(std::sqrt(1.0 / 3.0)).margin(1e-15));

  const std::vector<double> c = sqrt_series_coeffs(4);
  CHECK(c[0] == 0.5);
  CHECK(c[1] == 0.125);
  CHECK(c[2] == 0.0625);
  CHECK(c[3] == Catch::Approx(5.0 / 128.0).margin(1e-17));

  // At lambda = 1, a = 1 the series variable is x = 2/3; N = 100 terms are
  // far more than enough for 5e-3.
  CHECK(u_via_series(1.0, 100, e0).at({0}) ==
        Catch::Approx(std::sqrt(1.0 / 3.0)).margin(5e-3));
  CHECK_THROWS_AS(u_via_series(-1.0, 10, e0), std::invalid_argument);
}

TEST_CASE("synthesis matches direct Hermite sums", "[spectral]") {
  SpectralFn f(2);
  f.set({0, 0}, 1.5);
  f.set({2, 1}, -0.25);
  const std::vector<double> x = {0.4, -1.1};
  const double direct = 1.5 * hermite_multi({0, 0}, x) - 0.25 * hermite_multi({2, 1}, x);
  CHECK(synthesize_at(f, x) == Catch::Approx(direct).margin(1e-14));

  const std::vector<std::vector<double>> pts = {{0.0, 0.0}, {1.0, 2.0}};
  const std::vector<double> vals = synthesize(f, pts);
  REQUIRE(vals.size() == 2);
  CHECK(vals[1] == Catch::Approx(synthesize_at(f, pts[1])).margin(1e-14));
}

TEST_CASE("multi_indices_up_to counts", "[spectral]") {
  CHECK(multi_indices_up_to(1, 6).size() == 7);
  CHECK(multi_indices_up_to(2, 6).size() == 28);   // C(8,2)
  CHECK(multi_indices_up_to(3, 6).size() == 84);   // C(9,3)
  for (const auto& n : multi_indices_up_to(2, 3)) CHECK(order_of(n) <= 3);
}

TEST_CASE("weight_r", "[spectral]") {
  CHECK(weight_r({1.0, 2.0}) == Catch::Approx(9.0).margin(1e-14));  // 5 + 2*2
  CHECK(weight_r({0.0}) == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("star norm", "[spectral]") {
  // u = P_t h_0 in d = 1 at (x, t) = (0, 0): r(0)|u|^2 + |u_t|^2 + |u_x|^2
  // = 2/sqrt(pi) + 3/sqrt(pi) + 0, so |u|_* = sqrt(5/sqrt(pi)).
  const SpectralFn f = SpectralFn::basis({0});
  CHECK(star_norm(f, Flow::P, {0.0}, 0.0) ==
        Catch::Approx(1.6795677770601522929).margin(1e-13));

  // With flow Q the time derivative carries sqrt(lambda' - 2) = 1 instead.
  CHECK(star_norm(f, Flow::Q, {0.0}, 0.0) ==
        Catch::Approx(std::sqrt(3.0 / kSqrtPi)).margin(1e-13));

  // Vector version sums component squares.
  const SpectralVecFn g(std::vector<SpectralFn>{f, f});
  CHECK(star_norm(g, Flow::P, {0.0}, 0.5) ==
        Catch::Approx(std::sqrt(2.0) * star_norm(f, Flow::P, {0.0}, 0.5))
            .margin(1e-13));

  CHECK_THROWS_AS(star_norm(f, Flow::P, {0.0, 0.0}, 0.1), std::invalid_argument);
}

TEST_CASE("dimension mismatches throw", "[spectral]") {
  const SpectralFn a(1), b(2);
  CHECK_THROWS_AS(inner(a, b), std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(lemma3_lhs(1, a, b), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_at(a, {0.0, 0.0}), std::invalid_argument);
}
