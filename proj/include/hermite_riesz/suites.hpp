#pragma once

// The named verification suites behind the CLI. Each function runs one
// family of exact-identity or one-sided-bound checks and returns Reports in
// canonical order; run_all concatenates every suite.
//
// Conventions: identity checks report the maximal deviation against bound 0
// with a pinned absolute allowance; bound checks report the computed value
// against the asserted constant. All randomness is drawn from streams keyed
// by (cfg.seed, fixed tag), so identical configs give identical Reports.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hermite_riesz/basis.hpp"
#include "hermite_riesz/bellman.hpp"
#include "hermite_riesz/kernels.hpp"
#include "hermite_riesz/normlab.hpp"
#include "hermite_riesz/report.hpp"
#include "hermite_riesz/spectral.hpp"

namespace hermite_riesz {

/// Shared parameters of a verification run.
struct RunConfig {
  std::vector<int> dims = {1, 2, 3};
  std::vector<double> exponents = {1.25, 1.5, 2.0, 3.0, 4.0, 8.0};
  int degree = 6;
  int samples = 50;
  std::uint64_t seed = 42;
  double rel_tol = 1e-8;
};

inline NormSweepConfig sweep_config(const RunConfig& cfg) {
  NormSweepConfig s;
  s.dims = cfg.dims;
  s.exponents = cfg.exponents;
  s.degree = cfg.degree;
  s.samples = cfg.samples;
  s.seed = cfg.seed;
  return s;
}

namespace detail {

/// [0,1) uniforms from the fully specified mt19937_64 stream (byte-stable
/// across platforms, unlike std::uniform_real_distribution).
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : eng_(seed) {}
  double operator()() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double range(double a, double b) { return a + (b - a) * (*this)(); }

 private:
  std::mt19937_64 eng_;
};

inline SpectralFn random_spectral(int dim, int degree, NormalSampler& rng) {
  SpectralFn f(dim);
  for (const auto& n : multi_indices_up_to(dim, degree)) f.coef[n] = rng();
  return f;
}

inline SpectralVecFn random_spectral_vec(int dim, int degree, NormalSampler& rng) {
  std::vector<SpectralFn> comp;
  for (int i = 0; i < dim; ++i) comp.push_back(random_spectral(dim, degree, rng));
  return SpectralVecFn(std::move(comp));
}

template <typename T>
inline std::string joined(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt_param(v[i]);
  }
  return s;
}

inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  return g;
}

inline bool has_dim(const RunConfig& cfg, int d) {
  return std::find(cfg.dims.begin(), cfg.dims.end(), d) != cfg.dims.end();
}

inline std::vector<double> axis_point(int d, double value) {
  std::vector<double> x(static_cast<std::size_t>(d), 0.0);
  x[0] = value;
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// algebra: the coefficient-space identities of the ladder calculus.
// ---------------------------------------------------------------------------

inline std::vector<Report> suite_algebra(const RunConfig& cfg) {
  std::vector<Report> out;
  const double tol = 1e-12;
  for (int d : cfg.dims) {
    const int N = cfg.degree;
    const std::vector<MultiIndex> idx = multi_indices_up_to(d, N);

    double dev_ladder = 0.0, dev_comm = 0.0, dev_fact = 0.0, dev_eig = 0.0;
    double dev_pair = 0.0, dev_rp = 0.0;
    for (const auto& n : idx) {
      const SpectralFn f = SpectralFn::basis(n);
      int order = 0;
      for (int v : n) order += v;

      const SpectralFn Lf = apply_multiplier(multiplier_lambda(), f);
      const SpectralFn Lpf = apply_multiplier(multiplier_lambda_prime(), f);
      dev_eig = std::max(dev_eig, std::abs(Lf.at(n) - (2.0 * order + d)));
      dev_eig = std::max(dev_eig, std::abs(Lpf.at(n) - (2.0 * order + 3.0 * d)));
      dev_eig = std::max(dev_eig, l2_norm(Lpf - (Lf + 2.0 * static_cast<double>(d) * f)));

      SpectralFn sum_dagd(d), sum_ddag(d);
      for (int i = 1; i <= d; ++i) {
        const std::size_t ax = static_cast<std::size_t>(i) - 1;
        const int ni = n[ax];

        SpectralFn expect_dn(d);
        if (ni > 0) {
          MultiIndex m = n;
          --m[ax];
          expect_dn = std::sqrt(2.0 * ni) * SpectralFn::basis(m);
        }
        dev_ladder = std::max(dev_ladder, l2_norm(delta(i, f) - expect_dn));
        MultiIndex mu = n;
        ++mu[ax];
        dev_ladder = std::max(
            dev_ladder,
            l2_norm(delta_star(i, f) - std::sqrt(2.0 * (ni + 1)) * SpectralFn::basis(mu)));

        dev_comm = std::max(
            dev_comm,
            l2_norm(delta_star(i, delta(i, f)) - delta(i, delta_star(i, f)) + 2.0 * f));

        sum_dagd = sum_dagd + delta_star(i, delta(i, f));
        sum_ddag = sum_ddag + delta(i, delta_star(i, f));

        // adjoint pair value: <R_i h_n, h_{n-e_i}> = <h_n, R*_i h_{n-e_i}>
        //                   = sqrt(2 n_i / (2|n| + d)).
        if (ni > 0) {
          MultiIndex k = n;
          --k[ax];
          const double target = std::sqrt(2.0 * ni / (2.0 * order + d));
          const double v1 = inner(riesz(i, f), SpectralFn::basis(k));
          const double v2 = inner(f, riesz_star(i, SpectralFn::basis(k)));
          dev_pair = std::max(dev_pair, std::abs(v1 - target));
          dev_pair = std::max(dev_pair, std::abs(v2 - target));
        }
      }
      const double dd = static_cast<double>(d);
      dev_fact = std::max(dev_fact, l2_norm((sum_dagd + dd * f) - Lf));
      dev_fact = std::max(dev_fact, l2_norm((sum_ddag - dd * f) - Lf));

      if (d == 1)
        dev_rp = std::max(dev_rp, l2_norm(riesz_prime(1, f) - riesz_star(1, f)));
    }

    // <delta_i f, g> = <f, delta_i^* g> on random sparse pairs.
    double dev_adj = 0.0;
    const int npairs = 5;
    NormalSampler rng(detail::cell_seed(cfg.seed, 1001 + static_cast<std::uint64_t>(d)));
    for (int k = 0; k < npairs; ++k) {
      const SpectralFn f = detail::random_spectral(d, N, rng);
      const SpectralFn g = detail::random_spectral(d, N, rng);
      for (int i = 1; i <= d; ++i)
        dev_adj = std::max(dev_adj,
                           std::abs(inner(delta(i, f), g) - inner(f, delta_star(i, g))));
    }

    const std::vector<std::pair<std::string, std::string>> base = {
        {"d", fmt_param(d)}, {"degree", fmt_param(N)}};
    out.push_back(make_report("algebra/ladder-action", base, dev_ladder, 0.0, tol));
    out.push_back(make_report("algebra/commutator", base, dev_comm, 0.0, tol));
    out.push_back(make_report("algebra/factorization", base, dev_fact, 0.0, tol));
    out.push_back(make_report("algebra/eigenvalue", base, dev_eig, 0.0, tol));
    out.push_back(make_report("algebra/adjoint-pair", base, dev_pair, 0.0, tol));
    out.push_back(make_report(
        "algebra/ladder-adjoint",
        {{"d", fmt_param(d)}, {"degree", fmt_param(N)}, {"pairs", fmt_param(npairs)}},
        dev_adj, 0.0, tol));
    if (d == 1)
      out.push_back(make_report("algebra/riesz-prime-matches-star-d1",
                                {{"degree", fmt_param(N)}}, dev_rp, 0.0, tol));
  }
  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// lemma3: the time-integral representation of <R'_i f, g>.
// ---------------------------------------------------------------------------

inline std::vector<Report> suite_lemma3(const RunConfig& cfg) {
  std::vector<Report> out;
  for (int d : cfg.dims) {
    const QuadratureGrid tg = lemma3_time_grid(d);
    double dev_quad = 0.0, dev_closed = 0.0, dev_exact = 0.0;
    int pairs = 0;
    auto check = [&](int i, const SpectralFn& f, const SpectralFn& g) {
      const double lhs = lemma3_lhs(i, f, g);
      const double rhs = lemma3_rhs(i, f, g, tg);
      const double cf = lemma3_closed_form(i, f, g);
      const double scale = std::max(1.0, std::abs(lhs));
      dev_quad = std::max(dev_quad, std::abs(lhs - rhs) / scale);
      dev_closed = std::max(dev_closed, std::abs(cf - rhs) / scale);
      dev_exact = std::max(dev_exact, std::abs(lhs - cf) / scale);
      ++pairs;
    };

    // Ladder pairs g = h_{n+e_i}, where the pairing is nonzero.
    const std::vector<MultiIndex> base = multi_indices_up_to(d, std::min(cfg.degree, 4));
    for (std::size_t j = 0; j < base.size() && j < 8; ++j) {
      MultiIndex k = base[j];
      ++k[0];
      check(1, SpectralFn::basis(base[j]), SpectralFn::basis(k));
    }
    if (d > 1)
      for (std::size_t j = 0; j < base.size() && j < 4; ++j) {
        MultiIndex k = base[j];
        ++k[static_cast<std::size_t>(d) - 1];
        check(d, SpectralFn::basis(base[j]), SpectralFn::basis(k));
      }

    // Orthogonal pairs: both sides vanish.
    const MultiIndex zero(static_cast<std::size_t>(d), 0);
    check(1, SpectralFn::basis(zero), SpectralFn::basis(zero));
    MultiIndex two = zero;
    two[0] = 2;
    check(1, SpectralFn::basis(zero), SpectralFn::basis(two));

    // Random sparse combinations.
    NormalSampler rng(detail::cell_seed(cfg.seed, 1101 + static_cast<std::uint64_t>(d)));
    for (int k = 0; k < 3; ++k) {
      const SpectralFn f = detail::random_spectral(d, 3, rng);
      const SpectralFn g = detail::random_spectral(d, 3, rng);
      check(1, f, g);
    }

    const std::vector<std::pair<std::string, std::string>> params = {
        {"d", fmt_param(d)}, {"pairs", fmt_param(pairs)}};
    out.push_back(
        make_report("lemma3/quadrature-vs-spectral", params, dev_quad, 0.0, 1e-8));
    out.push_back(
        make_report("lemma3/closed-form-vs-quadrature", params, dev_closed, 0.0, 1e-8));
    out.push_back(
        make_report("lemma3/spectral-vs-closed-form", params, dev_exact, 0.0, 1e-12));
  }
  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// kernels: Mehler-kernel identities, the special integrals, Propositions 6,
// 7 and 10, and the S-kernel masses.
// ---------------------------------------------------------------------------

inline std::vector<Report> suite_kernels(const RunConfig& cfg) {
  std::vector<Report> out;
  KernelConfig kc;
  kc.rel_tol = cfg.rel_tol;

  {  // Legendre duplication chain, identically 1.
    double dev = 0.0;
    for (int d = 1; d <= 50; ++d)
      dev = std::max(dev, std::abs(prop1_exact_chain(d) - 1.0));
    out.push_back(
        make_report("kernels/chain-identity", {{"d_max", "50"}}, dev, 0.0, 1e-12));
  }

  {  // sech-power integral against direct quadrature.
    double dev = 0.0;
    for (int d = 1; d <= 10; ++d) {
      const double T = 40.0 / d + 5.0;
      const QuadratureGrid g = panel_grid_interval(0.0, T, 24, 12);
      double q = 0.0;
      for (std::size_t j = 0; j < g.nodes.size(); ++j)
        q += g.weights[j] * std::pow(1.0 / std::cosh(g.nodes[j]), d);
      dev = std::max(dev, std::abs(q - sech_power_integral(d)));
    }
    out.push_back(
        make_report("kernels/sech-integral", {{"d_max", "10"}}, dev, 0.0, 1e-10));
  }

  // Gaussian first moment against origin-graded tensor quadrature.
  for (int d : cfg.dims) {
    if (d > 3) continue;
    double dev = 0.0;
    for (double k : {0.5, 1.0, 2.0}) {
      const double X = std::sqrt(42.0 / k);
      const QuadratureGrid g1 = graded_panel_grid(X, 8, 12, d <= 2 ? 5 : 3);
      const std::size_t M = g1.nodes.size();
      // Hoist the innermost axis; odometer over the outer d-1 axes.
      std::size_t outer = 1;
      for (int ax = 0; ax + 1 < d; ++ax) outer *= M;
      double q = 0.0;
      for (std::size_t flat = 0; flat < outer; ++flat) {
        std::size_t rem = flat;
        double s2 = 0.0, w = 1.0;
        for (int ax = 0; ax + 1 < d; ++ax) {
          const std::size_t j = rem % M;
          rem /= M;
          s2 += g1.nodes[j] * g1.nodes[j];
          w *= g1.weights[j];
        }
        double inner_sum = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
          const double r2 = s2 + g1.nodes[j] * g1.nodes[j];
          inner_sum += g1.weights[j] * std::sqrt(r2) * std::exp(-k * r2);
        }
        q += w * inner_sum;
      }
      const double exact = gaussian_first_moment(d, k);
      dev = std::max(dev, std::abs(q - exact) / std::max(1.0, exact));
    }
    out.push_back(make_report("kernels/gaussian-moment",
                              {{"d", fmt_param(d)}, {"ks", "0.5,1,2"}}, dev, 0.0, 1e-9));
  }

  // Heat semigroup: kernel route vs spectral action.
  for (int d : cfg.dims) {
    if (d > 2) continue;
    const std::vector<std::vector<double>> pts =
        d == 1 ? std::vector<std::vector<double>>{{0.3}, {-1.1}}
               : std::vector<std::vector<double>>{{0.3, -0.7}, {1.1, 0.4}};
    double dev = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
      for (const auto& n : multi_indices_up_to(d, std::min(cfg.degree, 5))) {
        int order = 0;
        for (int v : n) order += v;
        const double lam = 2.0 * order + d;
        const SpectralFn f = SpectralFn::basis(n);
        for (const auto& x : pts)
          dev = std::max(dev, std::abs(heat_apply(t, f, x) -
                                       std::exp(-t * lam) * hermite_multi(n, x)));
      }
    }
    // One random combination per dimension.
    NormalSampler rng(detail::cell_seed(cfg.seed, 1601 + static_cast<std::uint64_t>(d)));
    const SpectralFn f = detail::random_spectral(d, 3, rng);
    const Multiplier heat{[](int k, int dd) {
                            return std::exp(-0.5 * eigenvalue_lambda(k, dd));
                          },
                          "e^{-tL}, t=1/2"};
    dev = std::max(dev, std::abs(heat_apply(0.5, f, pts[0]) -
                                 synthesize_at(apply_multiplier(heat, f), pts[0])));
    out.push_back(make_report("kernels/heat-vs-spectral",
                              {{"d", fmt_param(d)}, {"ts", "0.1,0.5,1,2"}}, dev, 0.0,
                              1e-8));
  }

  // Mehler kernel: two-form identity and the closed-form row mass.
  for (int d : cfg.dims) {
    if (d > 3) continue;
    detail::UniformSampler uni(
        detail::cell_seed(cfg.seed, 1701 + static_cast<std::uint64_t>(d)));
    double dev = 0.0;
    for (int it = 0; it < 50; ++it) {
      const double t = uni.range(0.05, 3.0);
      std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
      for (int ax = 0; ax < d; ++ax) {
        x[static_cast<std::size_t>(ax)] = uni.range(-3.0, 3.0);
        y[static_cast<std::size_t>(ax)] = uni.range(-3.0, 3.0);
      }
      const double k1 = mehler_kernel(t, x, y);
      const double k2 = mehler_kernel_two_form(t, x, y);
      dev = std::max(dev, std::abs(k1 - k2) / std::max(k1, 1e-300));
    }
    out.push_back(make_report("kernels/two-form-identity", {{"d", fmt_param(d)}}, dev,
                              0.0, 1e-12));
  }
  for (int d : cfg.dims) {
    if (d > 2) continue;
    double dev = 0.0;
    for (double t : {0.25, 1.0}) {
      for (double xv : {0.0, 1.5}) {
        const std::vector<double> x = detail::axis_point(d, xv);
        const double L = 12.0 + xv;
        const QuadratureGrid g1 = panel_grid(L, 16, 12);
        const TensorGrid grid = tensor_grid(d, g1);
        std::vector<std::size_t> idx;
        std::vector<double> y(static_cast<std::size_t>(d));
        double q = 0.0;
        for (std::size_t flat = 0; flat < grid.size(); ++flat) {
          grid.decode(flat, idx);
          grid.point(idx, y);
          q += grid.weight(idx) * mehler_kernel(t, x, y);
        }
        const double exact = mehler_mass(t, x);
        dev = std::max(dev, std::abs(q - exact) / exact);
      }
    }
    out.push_back(make_report("kernels/mehler-mass", {{"d", fmt_param(d)}}, dev, 0.0,
                              1e-8));
  }

  // Proposition 6: first-moment mass of the S-kernel row, <= 1.
  for (int d : cfg.dims) {
    if (d > 3) continue;
    double worst = 0.0;
    for (double yv : {0.0, 0.5, 1.0, 3.0, 5.0})
      worst = std::max(worst, prop1_numeric(detail::axis_point(d, yv), kc));
    out.push_back(make_report("kernels/prop1-bound",
                              {{"d", fmt_param(d)}, {"ys", "0,0.5,1,3,5"}}, worst, 1.0,
                              1e-6));
    KernelConfig fine = kc;
    fine.panels = 2 * kc.panels;
    const double v0 = prop1_numeric(detail::axis_point(d, 1.0), kc);
    const double v1 = prop1_numeric(detail::axis_point(d, 1.0), fine);
    out.push_back(make_report("kernels/prop1-self-convergence",
                              {{"d", fmt_param(d)}, {"y", "1"}},
                              std::abs(v0 - v1) / std::max(1.0, std::abs(v1)), 0.0,
                              cfg.rel_tol));
  }

  {  // Proposition 7: the tanh fixed point.
    const double tau = tau_root();
    const double res = std::abs(std::tanh(2.0 * tau) - tau);
    const double range_dev = std::max({0.0, 0.95 - tau, tau - 0.96});
    out.push_back(make_report("kernels/tau-root", {{"tau", fmt_full(tau)}},
                              std::max(res, range_dev), 0.0, 1e-12));
  }

  // Proposition 7: S-kernel row mass, <= 1/sqrt(pi) + sqrt(2).
  const double row_bound = 1.0 / kSqrtPi + std::sqrt(2.0);
  for (int d : cfg.dims) {
    if (d > 3) continue;
    double worst = 0.0;
    for (double xv : {0.1, 1.0, 5.0, 20.0})
      worst = std::max(worst, prop2_numeric(detail::axis_point(d, xv), kc));
    out.push_back(make_report("kernels/prop2-bound",
                              {{"d", fmt_param(d)}, {"xs", "0.1,1,5,20"}}, worst,
                              row_bound, 1e-6));
    KernelConfig fine = kc;
    fine.panels = 2 * kc.panels;
    const double v0 = prop2_numeric(detail::axis_point(d, 5.0), kc);
    const double v1 = prop2_numeric(detail::axis_point(d, 5.0), fine);
    out.push_back(make_report("kernels/prop2-self-convergence",
                              {{"d", fmt_param(d)}, {"x", "5"}},
                              std::abs(v0 - v1) / std::max(1.0, std::abs(v1)), 0.0,
                              cfg.rel_tol));
  }

  // Proposition 10: resolvent kernel mass <= 1/(2a).
  for (double a : {0.5, 1.0, 5.0}) {
    double worst = 0.0;
    for (int d : cfg.dims) {
      if (d > 3) continue;
      for (double xv : {0.0, 1.2})
        worst = std::max(worst, resolvent_kernel_mass(a, detail::axis_point(d, xv), kc));
    }
    out.push_back(make_report("kernels/resolvent-mass",
                              {{"a", fmt_param(a)}, {"dims", detail::joined(cfg.dims)}},
                              worst, 1.0 / (2.0 * a), 1e-8));
  }
  if (detail::has_dim(cfg, 1)) {
    // Kernel route for (L+2)^{-1} against the spectral factor, d = 1.
    SpectralFn f(1);
    f.set({0}, 1.0);
    f.set({2}, 0.5);
    const std::vector<double> x = {0.7};
    const double via_kernel = resolvent_kernel_apply(1.0, f, x, kc);
    SpectralFn g(1);
    for (const auto& [n, c] : f.coef)
      g.coef[n] = c / (eigenvalue_lambda(order_of(n), 1) + 2.0);
    const double via_spectral = synthesize_at(g, x);
    out.push_back(make_report("kernels/resolvent-vs-spectral",
                              {{"a", "1"}, {"d", "1"}},
                              std::abs(via_kernel - via_spectral) /
                                  std::max(1.0, std::abs(via_spectral)),
                              0.0, 1e-6));
  }

  // Off-diagonal S-kernel values converge under panel doubling.
  for (int d : cfg.dims) {
    if (d > 2) continue;
    const std::vector<double> x = d == 1 ? std::vector<double>{1.3}
                                         : std::vector<double>{1.3, -0.2};
    const std::vector<double> y = d == 1 ? std::vector<double>{0.4}
                                         : std::vector<double>{0.4, 0.8};
    KernelConfig fine = kc;
    fine.panels = 2 * kc.panels;
    const double v0 = s_kernel(x, y, kc);
    const double v1 = s_kernel(x, y, fine);
    out.push_back(make_report("kernels/s-kernel-self-convergence",
                              {{"d", fmt_param(d)}},
                              std::abs(v0 - v1) / std::max(1.0, std::abs(v1)), 0.0,
                              cfg.rel_tol));
  }

  if (detail::has_dim(cfg, 1)) {
    // Column mass of the S-kernel: the row + first-moment split, and the
    // resulting <= 3 bound (row bound + Proposition 6), d = 1.
    double worst_split = -1e300, worst_col = 0.0;
    for (double yv : {0.0, 0.5, 1.0, 3.0}) {
      const double col = s_kernel_column_mass(yv, kc);
      worst_col = std::max(worst_col, col);
      if (yv > 0.0) {
        const double row = s_kernel_row_mass({yv}, kc);
        const double p1 = prop1_numeric({yv}, kc);
        worst_split = std::max(worst_split, col - row - p1);
      }
    }
    out.push_back(make_report("kernels/s-column-row-split",
                              {{"d", "1"}, {"ys", "0.5,1,3"}}, worst_split, 0.0, 1e-6));
    out.push_back(make_report("kernels/s-column-mass",
                              {{"d", "1"}, {"ys", "0,0.5,1,3"}}, worst_col, 3.0, 1e-6));
  }

  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// bellman: Theorem 5 items 1-3 at kappa = 0 and kappa > 0, inequality (34)
// with its case analysis, and the mollification checks.
// ---------------------------------------------------------------------------

inline std::vector<Report> suite_bellman(const RunConfig& cfg) {
  std::vector<Report> out;
  const std::vector<double> ps = {2.0, 2.5, 3.0, 4.0, 8.0};
  const std::vector<double> grid = detail::log_grid(1e-3, 1e3, 25);
  const QuadratureGrid conv = panel_grid_interval(-1.0, 1.0, 1, 32);

  for (double p : ps) {
    const BellmanParams par = bellman_params(p);
    const double cp = par.q + par.gamma * (2.0 - par.q);

    double dev_seam = 0.0;
    for (double s : grid) {
      const double t = std::pow(s, p - 1.0);  // t^q = s^p
      const double sp = std::pow(s, p), tq = std::pow(t, par.q);
      const double b1 = sp + tq + par.gamma * s * s * std::pow(t, 2.0 - par.q);
      const double b2 =
          sp + tq + par.gamma * (2.0 / p * sp + (2.0 / par.q - 1.0) * tq);
      dev_seam = std::max(dev_seam, std::abs(b1 - b2) / std::max(1.0, std::abs(b1)));
    }

    double max_ratio = 0.0, min_ratio = 1e300, max_grad = 0.0, min_grad = 1e300;
    for (double s : grid)
      for (double t : grid) {
        const double base = std::pow(s, p) + std::pow(t, par.q);
        const double ratio = beta_eval(s, t, par) / base;
        max_ratio = std::max(max_ratio, ratio);
        min_ratio = std::min(min_ratio, ratio);
        const double gnorm = beta_grad_t(s, t, par) / std::pow(t, par.q - 1.0);
        max_grad = std::max(max_grad, gnorm / cp);
        min_grad = std::min(min_grad, gnorm);
      }

    const std::vector<std::pair<std::string, std::string>> pp = {{"p", fmt_param(p)}};
    out.push_back(make_report("bellman/seam-continuity", pp, dev_seam, 0.0, 1e-12));
    out.push_back(
        make_report("bellman/growth-upper", pp, max_ratio, 1.0 + par.gamma, 1e-12));
    out.push_back(make_report("bellman/growth-lower", pp, 1.0 - min_ratio, 0.0, 1e-12));
    out.push_back(make_report("bellman/grad-upper", pp, max_grad, 1.0, 1e-12));
    out.push_back(make_report("bellman/grad-nonneg", pp, -min_grad, 0.0, 0.0));
  }

  {  // Gradient formula vs central differences, away from the seam.
    const std::vector<std::array<double, 3>> pts = {{0.5, 1.7, 3.0},
                                                    {2.0, 0.3, 2.0},
                                                    {0.0, 1.0, 2.5},
                                                    {1.4, 0.9, 8.0},
                                                    {0.2, 2.5, 4.0}};
    double dev = 0.0;
    for (const auto& [s, t, p] : pts) {
      const BellmanParams par = bellman_params(p);
      const double h = 1e-5 * std::max(1.0, t);
      const double fd =
          (beta_eval(s, t + h, par) - beta_eval(s, t - h, par)) / (2.0 * h);
      const double ex = beta_grad_t(s, t, par);
      dev = std::max(dev, std::abs(fd - ex) / std::max(1.0, std::abs(ex)));
    }
    out.push_back(make_report("bellman/grad-fd", {{"points", "5"}}, dev, 0.0, 1e-7));
  }

  {  // Hessian lower bound of the mollified function (AM-GM form of item 3).
    double worst = -1e300;
    int samples = 0;
    std::uint64_t cell = 0;
    for (double p : {2.0, 3.0}) {
      const BellmanParams par = bellman_params(p);
      for (double kappa : {0.05, 0.1}) {
        detail::UniformSampler uni(detail::cell_seed(cfg.seed, 1201 + cell));
        NormalSampler nrm(detail::cell_seed(cfg.seed, 1251 + cell));
        ++cell;
        for (int it = 0; it < 250; ++it) {
          double z0, z1;
          for (;;) {
            z0 = uni.range(-2.0, 2.0);
            z1 = uni.range(-2.0, 2.0);
            const double sp = std::pow(std::abs(z0), p);
            const double tq = std::pow(std::abs(z1), par.q);
            if (std::abs(sp - tq) >= 0.05 * (sp + tq)) break;  // stay off the seam
          }
          const std::vector<double> z = {z0, z1};
          const std::vector<double> om = {nrm(), nrm()};
          const double H = hessian_form(z, om, 1, kappa, par, conv);
          worst = std::max(worst,
                           par.gamma * std::abs(om[0]) * std::abs(om[1]) - H);
          ++samples;
        }
      }
    }
    out.push_back(make_report("bellman/hessian-lower-bound",
                              {{"kappas", "0.05,0.1"},
                               {"ps", "2,3"},
                               {"samples", fmt_param(samples)}},
                              worst, 0.0, 1e-5));
  }

  {  // Quadratic-form symmetry and the omega = 0 degenerate case.
    const BellmanParams par = bellman_params(3.0);
    const std::vector<double> z = {1.2, 0.4};
    const std::vector<double> om = {0.6, -1.1}, mo = {-0.6, 1.1};
    const double dev =
        std::max(std::abs(hessian_form(z, om, 1, 0.1, par, conv) -
                          hessian_form(z, mo, 1, 0.1, par, conv)),
                 std::abs(hessian_form(z, {0.0, 0.0}, 1, 0.1, par, conv)));
    out.push_back(make_report("bellman/hessian-symmetry", {{"p", "3"}}, dev, 0.0, 1e-6));
  }

  {  // Inequality (34) and the Case-1 sufficient expression on the grid.
    const std::vector<int> ds = {2, 3, 4, 8};
    const std::vector<double> qs = {1.1, 1.5, 2.0};
    const std::vector<double> xs = {0.0, 1.0, 10.0};
    std::vector<double> st = detail::log_grid(1e-3, 1e3, 19);
    st.insert(st.begin(), 0.0);
    double min34 = 1e300, min_c1 = 1e300;
    long points = 0;
    for (int d : ds)
      for (double q : qs) {
        const BellmanParams par = bellman_params(q / (q - 1.0));
        for (double xn : xs)
          for (double s : st)
            for (double t : st) {
              min34 = std::min(min34, ineq34_check(xn, s, t, d, par).margin);
              min_c1 = std::min(min_c1, case1_sufficient_value(d, s, t, par));
              ++points;
            }
      }
    const std::vector<std::pair<std::string, std::string>> params = {
        {"ds", "2,3,4,8"}, {"qs", "1.1,1.5,2"}, {"points", fmt_param(static_cast<int>(points))}};
    out.push_back(make_report("bellman/ineq34-margin", params, -min34, 0.0, 1e-12));
    out.push_back(make_report("bellman/case1-sufficient", params, -min_c1, 0.0, 1e-12));
  }

  {  // Case-2 polynomial: sign and the factored/expanded identity.
    double dev = 0.0;
    for (int d = 2; d <= 10; ++d)
      for (int j = 1; j <= 20; ++j) {
        const double q = 1.0 + 0.05 * j;
        const CasePolynomialResult r = case_polynomial_check(d, q);
        dev = std::max(dev, r.identity_err + (r.holds ? 0.0 : 1.0));
      }
    out.push_back(make_report("bellman/case2-polynomial",
                              {{"ds", "2..10"}, {"qs", "1.05..2"}}, dev, 0.0, 1e-12));
  }

  {  // Mollified B: nonnegativity, the item-1 upper bound, kappa -> 0.
    double worst_upper = 0.0, min_b = 1e300;
    for (double p : {2.0, 3.0}) {
      const BellmanParams par = bellman_params(p);
      const double kappa = 0.1;
      for (double z0 : {0.3, 1.0, 1.5})
        for (double z1 : {0.5, 1.0, 2.0}) {
          const double bk = mollified_B({z0, z1}, 1, kappa, par, conv);
          min_b = std::min(min_b, bk);
          const double cap = (1.0 + par.gamma) * (std::pow(z0 + kappa, p) +
                                                  std::pow(z1 + kappa, par.q));
          worst_upper = std::max(worst_upper, 2.0 * bk / cap);
        }
    }
    out.push_back(make_report("bellman/mollified-upper",
                              {{"kappa", "0.1"}, {"ps", "2,3"}}, worst_upper, 1.0,
                              1e-9));
    out.push_back(make_report("bellman/mollified-nonneg",
                              {{"kappa", "0.1"}, {"ps", "2,3"}}, -min_b, 0.0, 0.0));

    const BellmanParams par2 = bellman_params(2.0);
    const double dev_small = std::abs(mollified_B({1.0, 1.0}, 1, 0.01, par2, conv) -
                                      bellman_B({1.0}, {1.0}, par2));
    out.push_back(make_report("bellman/mollify-convergence",
                              {{"kappa", "0.01"}, {"z", "(1,1)"}, {"p", "2"}},
                              dev_small, 0.0, 1e-3));
  }

  {  // Biradiality: exact for B, within quadrature error for B_kappa (m1 = 2).
    const BellmanParams par = bellman_params(3.0);
    const std::vector<double> zeta = {0.8, 0.5}, eta = {0.9};
    const double b0 = bellman_B(zeta, eta, par);
    const double bk0 = mollified_B({zeta[0], zeta[1], eta[0]}, 2, 0.1, par, conv);
    double dev_exact = 0.0, dev_moll = 0.0;
    for (double th : {0.7, 2.1}) {
      const double c = std::cos(th), s = std::sin(th);
      const std::vector<double> zr = {c * zeta[0] - s * zeta[1],
                                      s * zeta[0] + c * zeta[1]};
      dev_exact = std::max(dev_exact, std::abs(bellman_B(zr, eta, par) - b0));
      dev_moll = std::max(
          dev_moll,
          std::abs(mollified_B({zr[0], zr[1], eta[0]}, 2, 0.1, par, conv) - bk0));
    }
    out.push_back(make_report("bellman/rotation-invariance",
                              {{"m1", "2"}, {"m2", "1"}, {"p", "3"}}, dev_exact, 0.0,
                              1e-12));
    out.push_back(make_report("bellman/rotation-invariance-mollified",
                              {{"m1", "2"}, {"m2", "1"}, {"p", "3"}, {"kappa", "0.1"}},
                              dev_moll, 0.0, 1e-5));
  }

  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// norm sweep: empirical operator-norm ratios against the paper constants,
// the U_a series, and the pointwise factorizations of section 4.
// ---------------------------------------------------------------------------

inline std::vector<Report> suite_norm_sweep(const RunConfig& cfg,
                                            const std::vector<OperatorKind>& ops) {
  std::vector<Report> out;
  const NormSweepConfig scfg = sweep_config(cfg);
  auto wants = [&ops](OperatorKind k) {
    return std::find(ops.begin(), ops.end(), k) != ops.end();
  };

  std::vector<double> ps_s = cfg.exponents;  // p = 1 is proved for S and U_a only
  if (std::find(ps_s.begin(), ps_s.end(), 1.0) == ps_s.end()) ps_s.push_back(1.0);
  std::sort(ps_s.begin(), ps_s.end());
  std::vector<double> ps_r;
  for (double p : cfg.exponents)
    if (p > 1.0) ps_r.push_back(p);

  for (int d : cfg.dims) {
    const std::vector<std::pair<std::string, std::string>> dim_params = {
        {"d", fmt_param(d)}, {"samples", fmt_param(cfg.samples)}};

    if (wants(OperatorKind::S)) {
      const auto r = empirical_norm_sweep(OperatorKind::S, d, ps_s, scfg);
      for (std::size_t i = 0; i < ps_s.size(); ++i) {
        auto params = dim_params;
        params.emplace_back("p", fmt_param(ps_s[i]));
        out.push_back(make_report("norm/S-bound", params, r[i], 3.0, 0.0));
      }
    }

    if (wants(OperatorKind::U_a)) for (double a : {0.5, 1.0, 5.0}) {
      const auto r = empirical_norm_sweep(OperatorKind::U_a, d, ps_s, scfg, a);
      for (std::size_t i = 0; i < ps_s.size(); ++i) {
        auto params = dim_params;
        params.emplace_back("a", fmt_param(a));
        params.emplace_back("p", fmt_param(ps_s[i]));
        out.push_back(make_report("norm/U-bound", params, r[i], 2.0, 0.0));
        if (ps_s[i] == 2.0) {
          // In L^2 the ratio cannot exceed the largest multiplier value.
          const double lam = 2.0 * cfg.degree + d;
          out.push_back(make_report("norm/U-l2",
                                    {{"d", fmt_param(d)}, {"a", fmt_param(a)}}, r[i],
                                    std::sqrt(lam / (lam + 2.0 * a)), 1e-9));
        }
      }
    }

    const struct {
      OperatorKind op;
      const char* claim;
      double c;
    } vec_ops[] = {{OperatorKind::R_prime, "norm/R-prime-bound", 36.0},
                   {OperatorKind::R_tilde, "norm/R-tilde-bound", 42.0},
                   {OperatorKind::R_star, "norm/R-star-bound", 84.0},
                   // 84(p*-1) for R via duality with R*: ||R||_p = ||R*||_q, p* = q*.
                   {OperatorKind::R, "norm/R-via-adjoint-bound", 84.0}};
    for (const auto& spec : vec_ops) {
      if (!wants(spec.op)) continue;
      const auto r = empirical_norm_sweep(spec.op, d, ps_r, scfg);
      for (std::size_t i = 0; i < ps_r.size(); ++i) {
        auto params = dim_params;
        params.emplace_back("p", fmt_param(ps_r[i]));
        out.push_back(
            make_report(spec.claim, params, r[i], spec.c * (p_star(ps_r[i]) - 1.0), 0.0));
      }
    }

    if (wants(OperatorKind::R_star)) {  // R* = R~ U_1 in coefficient space.
      double dev = 0.0;
      auto check = [&](const SpectralFn& f) {
        for (int i = 1; i <= d; ++i)
          dev = std::max(
              dev, l2_norm(riesz_star(i, f) - riesz_tilde(i, u_multiplier(1.0, f))));
      };
      for (const auto& n : multi_indices_up_to(d, std::min(cfg.degree, 6)))
        check(SpectralFn::basis(n));
      NormalSampler rng(detail::cell_seed(cfg.seed, 1301 + static_cast<std::uint64_t>(d)));
      for (int k = 0; k < 2; ++k) check(detail::random_spectral(d, cfg.degree, rng));
      out.push_back(make_report("norm/r-star-factorization",
                                {{"d", fmt_param(d)}, {"degree", fmt_param(cfg.degree)}},
                                dev, 0.0, 1e-12));
    }

    if (wants(OperatorKind::R_tilde)) {  // Pointwise triangle decomposition of R~.
      NormalSampler rng(detail::cell_seed(cfg.seed, 1351 + static_cast<std::uint64_t>(d)));
      const SpectralFn f = detail::random_spectral(d, std::min(cfg.degree, 4), rng);
      detail::UniformSampler uni(
          detail::cell_seed(cfg.seed, 1361 + static_cast<std::uint64_t>(d)));
      std::vector<std::vector<double>> pts(20);
      for (auto& x : pts) {
        x.resize(static_cast<std::size_t>(d));
        for (int ax = 0; ax < d; ++ax)
          x[static_cast<std::size_t>(ax)] = uni.range(-3.0, 3.0);
      }
      const TriangleResult tri = triangle_decomposition_check(f, pts);
      const std::vector<std::pair<std::string, std::string>> params = {
          {"d", fmt_param(d)}, {"points", "20"}};
      out.push_back(
          make_report("norm/triangle-identity", params, tri.max_identity_dev, 0.0, 1e-10));
      out.push_back(make_report("norm/triangle-bound", params,
                                tri.max_triangle_violation, 0.0, 1e-10));
      out.push_back(make_report("norm/r2-modulus", params, tri.max_r2_dev, 0.0, 1e-10));
    }
  }

  if (wants(OperatorKind::U_a)) {
    // sqrt(1-x) series: partial sums increase to 1, deficit ~ n^{-1/2}.
    const int N = 1000000;
    const std::vector<double> c = sqrt_series_coeffs(N);
    double sum = 0.0;
    std::vector<double> deficits;
    int next = 1000;
    for (int n = 0; n < N; ++n) {
      sum += c[static_cast<std::size_t>(n)];
      if (n + 1 == next) {
        deficits.push_back(1.0 - sum);
        next *= 10;
      }
    }
    double mono = -1e300;
    for (std::size_t j = 0; j + 1 < deficits.size(); ++j)
      mono = std::max(mono, deficits[j + 1] - deficits[j]);
    out.push_back(make_report("norm/sqrt-series-deficit", {{"N", "1000000"}},
                              deficits.back(), 2e-3, 0.0));
    out.push_back(
        make_report("norm/sqrt-series-below-one", {{"N", "1000000"}}, sum - 1.0, 0.0, 0.0));
    out.push_back(make_report("norm/sqrt-series-monotone",
                              {{"checkpoints", "1e3,1e4,1e5,1e6"}}, mono, 0.0, 0.0));
  }

  if (wants(OperatorKind::U_a)) {  // Truncated-series route to U_a.
    SpectralFn e0(1);
    e0.set({0}, 1.0);
    const double exact = u_multiplier(1.0, e0).at({0});
    const double approx = u_via_series(1.0, 100, e0).at({0});
    out.push_back(make_report("norm/u-series-scalar",
                              {{"a", "1"}, {"N", "100"}, {"lambda", "1"}},
                              std::abs(exact - approx), 0.0, 5e-3));
    double dev = 0.0;
    for (int d : cfg.dims) {
      NormalSampler rng(detail::cell_seed(cfg.seed, 1451 + static_cast<std::uint64_t>(d)));
      const SpectralFn f = detail::random_spectral(d, cfg.degree, rng);
      dev = std::max(dev, l2_norm(u_multiplier(1.0, f) - u_via_series(1.0, 100, f)) /
                              l2_norm(f));
    }
    out.push_back(make_report("norm/u-series-approx",
                              {{"a", "1"}, {"N", "100"}, {"dims", detail::joined(cfg.dims)}},
                              dev, 0.0, 5e-3));
  }

  sort_reports(out);
  return out;
}

inline std::vector<Report> suite_norm_sweep(const RunConfig& cfg) {
  return suite_norm_sweep(cfg, {OperatorKind::S, OperatorKind::R, OperatorKind::R_prime,
                                OperatorKind::R_tilde, OperatorKind::R_star,
                                OperatorKind::U_a});
}

// ---------------------------------------------------------------------------
// bilinear: the Theorem 4 embedding at desk scale and the pairing chain.
// ---------------------------------------------------------------------------

inline std::vector<Report> suite_bilinear(const RunConfig& cfg) {
  std::vector<Report> out;

  if (detail::has_dim(cfg, 2)) {
    const int d = 2;
    const int deg = std::min(cfg.degree, 4);
    const TensorGrid gx = sweep_tensor_grid(d, deg + 1);
    const QuadratureGrid gt = bilinear_time_grid(d);
    NormalSampler rng(detail::cell_seed(cfg.seed, 1401));
    const int npairs = 10;
    std::vector<SpectralFn> fs;
    std::vector<SpectralVecFn> gs;
    for (int k = 0; k < npairs; ++k) {
      fs.push_back(detail::random_spectral(d, deg, rng));
      gs.push_back(detail::random_spectral_vec(d, deg, rng));
    }
    std::vector<double> lhs(static_cast<std::size_t>(npairs));
    for (int k = 0; k < npairs; ++k)
      lhs[static_cast<std::size_t>(k)] =
          bilinear_embedding_lhs(fs[static_cast<std::size_t>(k)],
                                 gs[static_cast<std::size_t>(k)], gx, gt);

    for (double p : {2.0, 4.0}) {
      const double q = p / (p - 1.0);
      double worst = 0.0;
      for (int k = 0; k < npairs; ++k) {
        const double den = 6.0 * (p_star(p) - 1.0) *
                           lp_norm(fs[static_cast<std::size_t>(k)], p, gx) *
                           lp_norm(gs[static_cast<std::size_t>(k)], q, gx);
        worst = std::max(worst, lhs[static_cast<std::size_t>(k)] / den);
      }
      out.push_back(make_report(
          "bilinear/embedding-bound",
          {{"d", fmt_param(d)}, {"p", fmt_param(p)}, {"pairs", fmt_param(npairs)}},
          worst, 1.0, 0.0));
    }

    {  // Refine both grids and compare on the first pair.
      const TensorGrid gx2 = sweep_tensor_grid(d, deg + 1, 144);
      const QuadratureGrid gt2 = bilinear_time_grid(d, 40, 8);
      const double ref = bilinear_embedding_lhs(fs[0], gs[0], gx2, gt2);
      out.push_back(make_report("bilinear/self-convergence", {{"d", fmt_param(d)}},
                                std::abs(lhs[0] - ref) / std::max(1.0, std::abs(ref)),
                                0.0, 1e-4));
    }

    for (int k = 0; k < 3; ++k)
      for (double p : {2.0, 4.0})
        out.push_back(theorem2_chain_check(fs[static_cast<std::size_t>(k)],
                                           gs[static_cast<std::size_t>(k)], p, gx, gt,
                                           cfg.rel_tol));

    {  // <R'_1 h_(0,0), h_(1,0)> = sqrt(1/3): lambda'_(0,0) = 6, ladder sqrt(2).
      const SpectralFn f0 = SpectralFn::basis({0, 0});
      const SpectralVecFn g0(
          std::vector<SpectralFn>{SpectralFn::basis({1, 0}), SpectralFn(2)});
      double v = 0.0;
      for (int i = 1; i <= d; ++i)
        v += inner(riesz_prime(i, f0), g0.comp[static_cast<std::size_t>(i) - 1]);
      out.push_back(make_report("bilinear/th2-example", {{"d", "2"}},
                                std::abs(v - std::sqrt(1.0 / 3.0)), 0.0, 1e-12));
    }
  }

  if (detail::has_dim(cfg, 3)) {
    const int d = 3;
    const int deg = std::min(cfg.degree, 2);
    const TensorGrid gx = sweep_tensor_grid(d, deg + 1, 32);
    const QuadratureGrid gt = bilinear_time_grid(d);
    NormalSampler rng(detail::cell_seed(cfg.seed, 1404));
    const double p = 2.0;
    double worst = 0.0;
    const int npairs = 3;
    for (int k = 0; k < npairs; ++k) {
      const SpectralFn f = detail::random_spectral(d, deg, rng);
      const SpectralVecFn g = detail::random_spectral_vec(d, deg, rng);
      const double v = bilinear_embedding_lhs(f, g, gx, gt);
      const double den = 6.0 * (p_star(p) - 1.0) * lp_norm(f, p, gx) *
                         lp_norm(g, p / (p - 1.0), gx);
      worst = std::max(worst, v / den);
    }
    out.push_back(make_report(
        "bilinear/embedding-bound",
        {{"d", fmt_param(d)}, {"p", fmt_param(p)}, {"pairs", fmt_param(npairs)}}, worst,
        1.0, 0.0));
  }

  sort_reports(out);
  return out;
}

inline std::vector<Report> run_all(const RunConfig& cfg) {
  std::vector<Report> out;
  auto append = [&](std::vector<Report> v) {
    out.insert(out.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  };
  append(suite_algebra(cfg));
  append(suite_lemma3(cfg));
  append(suite_kernels(cfg));
  append(suite_bellman(cfg));
  append(suite_norm_sweep(cfg));
  append(suite_bilinear(cfg));
  sort_reports(out);
  return out;
}

}  // namespace hermite_riesz
