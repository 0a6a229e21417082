// Acceptance harness: one line per criterion, nonzero exit if any fails.
//
// Each criterion re-states its tolerance locally so a change in the library
// defaults cannot silently weaken a gate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hermite_riesz/hermite_riesz.hpp"

using namespace hermite_riesz;

namespace {

int g_failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void run_criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++g_failures;
  std::printf("[%2d/12] %s  %s (%s; %.1f s)\n", id, o.pass ? "PASS" : "FAIL", name,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double worst_overshoot(const std::vector<Report>& rs) {
  double w = -1e300;
  for (const auto& r : rs) w = std::max(w, r.computed - (r.bound + r.err));
  return w;
}

int param_int(const std::vector<Report>& rs, const std::string& claim,
              const std::string& key) {
  int total = 0;
  for (const auto& r : rs) {
    if (r.claim != claim) continue;
    for (const auto& [k, v] : r.params)
      if (k == key) total += std::stoi(v);
  }
  return total;
}

bool within_budget(double t0_secs, double budget) { return t0_secs < budget; }

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("acceptance: exact identities, explicit constants, reproducibility\n");

  // 1. Ladder/commutator/factorization/eigenvalue/adjointness algebra,
  //    d <= 4, |n| <= 6, tolerance 1e-12, under 10 s.
  run_criterion(1, "algebra identities (d<=4, |n|<=6, 1e-12)", [] {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.dims = {1, 2, 3, 4};
    cfg.degree = 6;
    const std::vector<Report> rs = suite_algebra(cfg);
    const double secs = elapsed_since(t0);
    Outcome o;
    o.pass = all_pass(rs) && within_budget(secs, 10.0);
    o.detail = "worst overshoot " + fmt(worst_overshoot(rs));
    return o;
  });

  // 2. Lemma 3 quadrature vs spectral vs closed form, >= 20 pairs, d <= 3,
  //    1e-8, under 30 s.
  run_criterion(2, "Lemma 3 representation (>=20 pairs, 1e-8)", [] {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;  // dims {1,2,3}
    const std::vector<Report> rs = suite_lemma3(cfg);
    const double secs = elapsed_since(t0);
    const int pairs = param_int(rs, "lemma3/quadrature-vs-spectral", "pairs");
    Outcome o;
    o.pass = all_pass(rs) && pairs >= 20 && within_budget(secs, 30.0);
    o.detail = std::to_string(pairs) + " pairs, worst overshoot " +
               fmt(worst_overshoot(rs));
    return o;
  });

  // 3. heat_apply vs spectral action, |n| <= 5, d <= 2, t in {0.1,0.5,1,2},
  //    error < 1e-8.
  run_criterion(3, "heat kernel route vs spectral route (1e-8)", [] {
    double dev = 0.0;
    for (int d : {1, 2}) {
      const std::vector<std::vector<double>> pts =
          d == 1 ? std::vector<std::vector<double>>{{0.3}, {-1.1}}
                 : std::vector<std::vector<double>>{{0.3, -0.7}, {1.1, 0.4}};
      for (double t : {0.1, 0.5, 1.0, 2.0})
        for (const auto& n : multi_indices_up_to(d, 5)) {
          const double lam = eigenvalue_lambda(order_of(n), d);
          const SpectralFn f = SpectralFn::basis(n);
          for (const auto& x : pts)
            dev = std::max(dev, std::abs(heat_apply(t, f, x) -
                                         std::exp(-t * lam) * hermite_multi(n, x)));
        }
    }
    return Outcome{dev < 1e-8, "max dev " + fmt(dev)};
  });

  // 4. Exact special integrals: chain identity (1e-12, d <= 50), sech power
  //    vs quadrature (1e-10, d <= 10), Gaussian first moment vs quadrature
  //    (1e-9, d <= 3).
  run_criterion(4, "special integrals (chain, sech, first moment)", [] {
    double dev_chain = 0.0;
    for (int d = 1; d <= 50; ++d)
      dev_chain = std::max(dev_chain, std::abs(prop1_exact_chain(d) - 1.0));

    double dev_sech = 0.0;
    for (int d = 1; d <= 10; ++d) {
      const QuadratureGrid g = panel_grid_interval(0.0, 40.0 / d + 5.0, 24, 12);
      double q = 0.0;
      for (std::size_t j = 0; j < g.nodes.size(); ++j)
        q += g.weights[j] * std::pow(1.0 / std::cosh(g.nodes[j]), d);
      dev_sech = std::max(dev_sech, std::abs(q - sech_power_integral(d)));
    }

    double dev_mom = 0.0;
    for (int d = 1; d <= 3; ++d)
      for (double k : {0.5, 1.0, 2.0}) {
        const QuadratureGrid g1 =
            graded_panel_grid(std::sqrt(42.0 / k), 8, 12, d <= 2 ? 5 : 3);
        const std::size_t M = g1.nodes.size();
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
        dev_mom = std::max(dev_mom, std::abs(q - exact) / std::max(1.0, exact));
      }

    const bool pass = dev_chain < 1e-12 && dev_sech < 1e-10 && dev_mom < 1e-9;
    return Outcome{pass, "chain " + fmt(dev_chain) + ", sech " + fmt(dev_sech) +
                             ", moment " + fmt(dev_mom)};
  });

  // 5. First-moment bound: prop1_numeric <= 1 + 1e-6 for d in {1,2,3} on
  //    five |y| values including 0 and 5.
  run_criterion(5, "Proposition 6 bound (<= 1 + 1e-6)", [] {
    double worst = 0.0;
    KernelConfig kc;
    for (int d : {1, 2, 3}) {
      std::vector<double> y(static_cast<std::size_t>(d), 0.0);
      for (double yv : {0.0, 0.5, 1.0, 3.0, 5.0}) {
        y[0] = yv;
        worst = std::max(worst, prop1_numeric(y, kc));
      }
    }
    return Outcome{worst <= 1.0 + 1e-6, "max mass " + fmt(worst)};
  });

  // 6. tau root in [0.95, 0.96] with residual < 1e-12; row-mass bound
  //    prop2_numeric <= 1/sqrt(pi) + sqrt(2) + 1e-6.
  run_criterion(6, "Proposition 7 bound and tau root", [] {
    const double tau = tau_root();
    const bool tau_ok =
        tau >= 0.95 && tau <= 0.96 && std::abs(std::tanh(2.0 * tau) - tau) < 1e-12;
    double worst = 0.0;
    KernelConfig kc;
    for (int d : {1, 2, 3}) {
      std::vector<double> x(static_cast<std::size_t>(d), 0.0);
      for (double xv : {0.1, 1.0, 5.0, 20.0}) {
        x[0] = xv;
        worst = std::max(worst, prop2_numeric(x, kc));
      }
    }
    const double bound = 1.0 / kSqrtPi + std::sqrt(2.0);
    return Outcome{tau_ok && worst <= bound + 1e-6,
                   "tau " + fmt(tau) + ", max mass " + fmt(worst) + " vs " + fmt(bound)};
  });

  // 7. Empirical ||Sf||_p / ||f||_p <= 3 (d <= 3, p in {1,1.5,2,4,8}, 50
  //    random f per cell); kernel route of S within 1e-6 of the spectral one.
  run_criterion(7, "operator S: empirical bound 3 and kernel route", [] {
    NormSweepConfig scfg;  // 50 samples, seed 42
    const std::vector<double> ps = {1.0, 1.5, 2.0, 4.0, 8.0};
    double worst = 0.0;
    for (int d : {1, 2, 3})
      for (double r : empirical_norm_sweep(OperatorKind::S, d, ps, scfg))
        worst = std::max(worst, r);

    // Kernel route at x = 0.9, d = 1: y-panels graded into the log
    // singularity at y = x.
    SpectralFn f(1);
    f.set({0}, 1.0);
    f.set({1}, -0.3);
    f.set({4}, 0.2);
    const double xv = 0.9;
    const double L = default_box_halfwidth(4, 1);
    std::vector<double> edges;
    for (double e = -L; e < xv - 1.0; e += 1.0) edges.push_back(e);
    for (int k = 0; k <= 10; ++k) edges.push_back(xv - std::pow(4.0, -k));
    edges.push_back(xv);
    for (int k = 10; k >= 0; --k) edges.push_back(xv + std::pow(4.0, -k));
    for (double e = xv + 2.0; e < L; e += 1.0) edges.push_back(e);
    edges.push_back(L);
    const QuadratureGrid yg = panel_grid_edges(edges, 12);
    const KernelConfig kc;
    double q = 0.0;
    for (std::size_t j = 0; j < yg.nodes.size(); ++j)
      q += yg.weights[j] * s_kernel({xv}, {yg.nodes[j]}, kc) *
           synthesize_at(f, {yg.nodes[j]});
    const double route_dev = std::abs(q - apply_S(f, {{xv}})[0]);

    return Outcome{worst <= 3.0 && route_dev < 1e-6,
                   "max ratio " + fmt(worst) + ", route dev " + fmt(route_dev)};
  });

  // 8. Resolvent family: kernel mass <= 1/(2a) + 1e-8; series partial sums
  //    monotone with deficit < 2e-3 at n = 1e6; u_via_series within 5e-3 at
  //    N = 100 (a = 1, lambda = 1); empirical ||U_a||_p <= 2.
  run_criterion(8, "resolvent family U_a", [] {
    KernelConfig kc;
    double mass_over = -1e300;
    for (double a : {0.5, 1.0, 5.0})
      for (int d : {1, 2, 3}) {
        std::vector<double> x(static_cast<std::size_t>(d), 0.0);
        for (double xv : {0.0, 1.2}) {
          x[0] = xv;
          mass_over = std::max(
              mass_over, resolvent_kernel_mass(a, x, kc) - (1.0 / (2.0 * a) + 1e-8));
        }
      }

    const int N = 1000000;
    const std::vector<double> c = sqrt_series_coeffs(N);
    double sum = 0.0;
    bool monotone = true;
    double prev_deficit = 1.0;
    int next = 1000;
    for (int n = 0; n < N; ++n) {
      sum += c[static_cast<std::size_t>(n)];
      if (n + 1 == next) {
        const double deficit = 1.0 - sum;
        if (deficit > prev_deficit) monotone = false;
        prev_deficit = deficit;
        next *= 10;
      }
    }
    const double deficit = 1.0 - sum;
    const bool series_ok = monotone && deficit > 0.0 && deficit < 2e-3;

    SpectralFn e0(1);
    e0.set({0}, 1.0);
    const double series_dev =
        std::abs(u_via_series(1.0, 100, e0).at({0}) - std::sqrt(1.0 / 3.0));

    NormSweepConfig scfg;
    const std::vector<double> ps = {1.0, 1.5, 2.0, 4.0, 8.0};
    double worst = 0.0;
    for (double a : {0.5, 1.0, 5.0})
      for (int d : {1, 2, 3})
        for (double r : empirical_norm_sweep(OperatorKind::U_a, d, ps, scfg, a))
          worst = std::max(worst, r);

    const bool pass =
        mass_over <= 0.0 && series_ok && series_dev < 5e-3 && worst <= 2.0;
    return Outcome{pass, "mass overshoot " + fmt(mass_over) + ", deficit " +
                             fmt(deficit) + ", series dev " + fmt(series_dev) +
                             ", max ratio " + fmt(worst)};
  });

  // 9. Bellman suite: seam 1e-12, growth/gradient with explicit constants,
  //    Hessian >= gamma |w1||w2| - 1e-5 on >= 1e3 samples, (34) margin
  //    >= -1e-12 on >= 1e4 grid points (d in {2,3,4,8}), Case-2 polynomial
  //    identity 1e-12, under 2 min.
  run_criterion(9, "Bellman function suite", [] {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    const std::vector<Report> rs = suite_bellman(cfg);
    const double secs = elapsed_since(t0);
    const int samples = param_int(rs, "bellman/hessian-lower-bound", "samples");
    const int points = param_int(rs, "bellman/ineq34-margin", "points");
    Outcome o;
    o.pass = all_pass(rs) && samples >= 1000 && points >= 10000 &&
             within_budget(secs, 120.0);
    o.detail = std::to_string(samples) + " Hessian samples, " +
               std::to_string(points) + " grid points, worst overshoot " +
               fmt(worst_overshoot(rs));
    return o;
  });

  // 10. Bilinear embedding: lhs <= 6(p*-1)||f||_p ||g||_q for d = 2,
  //     p in {2,4}, >= 10 random pairs; quadrature self-convergence < 1e-4.
  run_criterion(10, "bilinear embedding (d=2, 6(p*-1))", [] {
    RunConfig cfg;
    cfg.dims = {2};
    const std::vector<Report> rs = suite_bilinear(cfg);
    const int pairs = param_int(rs, "bilinear/embedding-bound", "pairs");
    Outcome o;
    o.pass = all_pass(rs) && pairs >= 20;  // 10 pairs in each of p = 2, 4
    o.detail = "worst overshoot " + fmt(worst_overshoot(rs));
    return o;
  });

  // 11. Vector Riesz transforms: empirical ratios below 36/42/84 (p*-1) for
  //     R', R~, R*; factorization R* = R~ U_1 exact; pointwise triangle
  //     decomposition within 1e-10.
  run_criterion(11, "Riesz transform constants and factorizations", [] {
    NormSweepConfig scfg;
    const std::vector<double> ps = {1.25, 1.5, 2.0, 3.0, 4.0, 8.0};
    double worst_rel = 0.0;  // ratio / bound, should stay <= 1
    const struct {
      OperatorKind op;
      double c;
    } specs[] = {{OperatorKind::R_prime, 36.0},
                 {OperatorKind::R_tilde, 42.0},
                 {OperatorKind::R_star, 84.0}};
    for (const auto& s : specs)
      for (int d : {1, 2, 3}) {
        const auto r = empirical_norm_sweep(s.op, d, ps, scfg);
        for (std::size_t i = 0; i < ps.size(); ++i)
          worst_rel = std::max(worst_rel, r[i] / (s.c * (p_star(ps[i]) - 1.0)));
      }

    double fact_dev = 0.0;
    for (int d : {1, 2, 3})
      for (const auto& n : multi_indices_up_to(d, 6)) {
        const SpectralFn f = SpectralFn::basis(n);
        for (int i = 1; i <= d; ++i)
          fact_dev = std::max(fact_dev, l2_norm(riesz_star(i, f) -
                                                riesz_tilde(i, u_multiplier(1.0, f))));
      }

    double tri_dev = 0.0;
    for (int d : {1, 2, 3}) {
      NormalSampler rng(detail::cell_seed(99, static_cast<std::uint64_t>(d)));
      SpectralFn f(d);
      for (const auto& n : multi_indices_up_to(d, 4)) f.coef[n] = rng();
      std::vector<std::vector<double>> pts;
      for (int j = 0; j < 10; ++j) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int ax = 0; ax < d; ++ax)
          x[static_cast<std::size_t>(ax)] = -2.5 + 0.5 * (j + ax);
        pts.push_back(x);
      }
      const TriangleResult tri = triangle_decomposition_check(f, pts);
      tri_dev = std::max({tri_dev, tri.max_identity_dev, tri.max_triangle_violation,
                          tri.max_r2_dev});
    }

    const bool pass = worst_rel <= 1.0 && fact_dev < 1e-12 && tri_dev < 1e-10;
    return Outcome{pass, "worst ratio/bound " + fmt(worst_rel) + ", factorization " +
                             fmt(fact_dev) + ", triangle " + fmt(tri_dev)};
  });

  // 12. Reproducibility: two runs of the full suite with the same config and
  //     seed serialize byte-identically; one full run stays under 10 min.
  run_criterion(12, "determinism and full-suite budget", [] {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    const std::vector<Report> r1 = run_all(cfg);
    const double secs_one = elapsed_since(t0);
    const std::vector<Report> r2 = run_all(cfg);
    const std::string s1 = serialize_reports(r1, ReportFormat::json);
    const std::string s2 = serialize_reports(r2, ReportFormat::json);
    Outcome o;
    o.pass = (s1 == s2) && all_pass(r1) && within_budget(secs_one, 600.0);
    o.detail = std::string(s1 == s2 ? "byte-identical" : "MISMATCH") + ", " +
               std::to_string(r1.size()) + " reports, first run " + fmt(secs_one) + " s";
    return o;
  });

  if (g_failures == 0) {
    std::printf("acceptance: 12/12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
