#pragma once

// Mehler kernel of the oscillator heat semigroup, the kernel of
// S = |x| L^{-1/2}, the resolvent kernel, the Gaussian/sech special
// integrals, and the quadrature verifiers for the kernel-mass bounds.
//
// All t-integrals with a t^{-1/2} factor run through the substitution
// t = u^2; kernel evaluations go through logarithms so large-t tails never
// overflow (sinh(2t)^{d/2} leaves double range near t ~ 355 already at d=2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hermite_riesz/basis.hpp"
#include "hermite_riesz/spectral.hpp"

namespace hermite_riesz {

/// Knobs for the kernel-side quadratures. t_cut = 0 picks the truncation
/// from the integrand's decay rate; panels/order set the baseline composite
/// rule (self-convergence checks rerun with panels doubled).
struct KernelConfig {
  int dim = 1;
  double t_cut = 0.0;
  double rel_tol = 1e-8;
  bool singularity_substitution = true;
  int panels = 24;
  int order = 12;
};

namespace detail {

inline double log_sinh(double s) {
  if (s <= 0) throw std::domain_error("log_sinh: s <= 0");
  if (s > 20.0) return s - std::log(2.0) + std::log1p(-std::exp(-2.0 * s));
  return std::log(std::sinh(s));
}

inline double log_cosh(double s) {
  if (s > 20.0) return s - std::log(2.0) + std::log1p(std::exp(-2.0 * s));
  return std::log(std::cosh(s));
}

inline double log_mehler_const(int d) {
  // C_d = (2 pi)^{-d/2} pi^{-1/2}
  return -0.5 * d * std::log(2.0 * kPi) - 0.5 * std::log(kPi);
}

inline double sq_dist(const std::vector<double>& x, const std::vector<double>& y, double sign) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double v = x[k] + sign * y[k];
    s += v * v;
  }
  return s;
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

}  // namespace detail

/// K_t(x,y) = C_d (sinh 2t)^{-d/2} exp(-|x-y|^2/(4 tanh t) - tanh(t)|x+y|^2/4)
/// with C_d = (2 pi)^{-d/2} pi^{-1/2}. The kernel of e^{-tL} is sqrt(pi) K_t.
inline double mehler_kernel(double t, const std::vector<double>& x,
                            const std::vector<double>& y) {
  if (!(t > 0)) throw std::domain_error("mehler_kernel: t must be positive");
  if (x.size() != y.size()) throw std::invalid_argument("mehler_kernel: dimension mismatch");
  const int d = static_cast<int>(x.size());
  const double th = std::tanh(t);
  const double logK = detail::log_mehler_const(d) - 0.5 * d * detail::log_sinh(2.0 * t) -
                      detail::sq_dist(x, y, -1.0) / (4.0 * th) -
                      th * detail::sq_dist(x, y, +1.0) / 4.0;
  return std::exp(logK);
}

/// Same kernel through the equivalent two-form exponent
/// -(|x|^2+|y|^2)/2 coth(2t) + <x,y>/sinh(2t).
inline double mehler_kernel_two_form(double t, const std::vector<double>& x,
                                     const std::vector<double>& y) {
  if (!(t > 0)) throw std::domain_error("mehler_kernel_two_form: t must be positive");
  if (x.size() != y.size())
    throw std::invalid_argument("mehler_kernel_two_form: dimension mismatch");
  const int d = static_cast<int>(x.size());
  const double ls = detail::log_sinh(2.0 * t);
  const double coth = 1.0 / std::tanh(2.0 * t);
  const double logK = detail::log_mehler_const(d) - 0.5 * d * ls -
                      0.5 * (detail::dot(x, x) + detail::dot(y, y)) * coth +
                      detail::dot(x, y) * std::exp(-ls);
  return std::exp(logK);
}

/// e^{-tL} f(x) by quadrature of the kernel integral sqrt(pi) int K_t(x,y) f(y) dy.
inline double heat_apply(double t, const SpectralFn& f, const std::vector<double>& x,
                         int panels = 16, int order = 12) {
  if (!(t > 0)) throw std::domain_error("heat_apply: t must be positive");
  if (static_cast<int>(x.size()) != f.dim)
    throw std::invalid_argument("heat_apply: point dimension mismatch");
  const int d = f.dim;
  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::abs(v));
  const double L = default_box_halfwidth(f.degree(), d) + xmax;
  const QuadratureGrid g1 = panel_grid(L, panels, order);
  const TensorGrid grid = tensor_grid(d, g1);

  // Per-axis basis tables over the shared 1-d nodes.
  const int deg = f.degree();
  std::vector<std::vector<double>> table(g1.nodes.size());
  for (std::size_t j = 0; j < g1.nodes.size(); ++j)
    table[j] = hermite_function_table(deg, g1.nodes[j]);

  std::vector<std::size_t> idx;
  std::vector<double> y(static_cast<std::size_t>(d));
  double acc = 0.0;
  const std::size_t total = grid.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    grid.decode(flat, idx);
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      y[static_cast<std::size_t>(k)] = g1.nodes[idx[static_cast<std::size_t>(k)]];
      w *= g1.weights[idx[static_cast<std::size_t>(k)]];
    }
    double fv = 0.0;
    for (const auto& [n, c] : f.coef) {
      double prod = c;
      for (int k = 0; k < d; ++k)
        prod *= table[idx[static_cast<std::size_t>(k)]]
                     [static_cast<std::size_t>(n[static_cast<std::size_t>(k)])];
      fv += prod;
    }
    acc += w * mehler_kernel(t, x, y) * fv;
  }
  return kSqrtPi * acc;
}

/// Kernel of S off the diagonal: K(x,y) = |x| int_0^inf t^{-1/2} K_t(x,y) dt,
/// computed as |x| 2 int_0^U K_{u^2}(x,y) du. Diverges at x = y.
inline double s_kernel(const std::vector<double>& x, const std::vector<double>& y,
                       const KernelConfig& cfg) {
  if (x.size() != y.size()) throw std::invalid_argument("s_kernel: dimension mismatch");
  if (x == y) throw std::domain_error("s_kernel: diagonal singularity (x == y)");
  const int d = static_cast<int>(x.size());
  const double xn = std::sqrt(detail::dot(x, x));
  if (xn == 0.0) return 0.0;
  const double U = cfg.t_cut > 0 ? std::sqrt(cfg.t_cut) : std::sqrt(40.0 / d) + 1.0;
  const QuadratureGrid ug = panel_grid_interval(0.0, U, cfg.panels, cfg.order);
  double acc = 0.0;
  for (std::size_t j = 0; j < ug.nodes.size(); ++j) {
    const double u = ug.nodes[j];
    acc += ug.weights[j] * 2.0 * mehler_kernel(u * u, x, y);
  }
  return xn * acc;
}

/// I(k) = int |x| e^{-k|x|^2} dx = Gamma((d+1)/2)/Gamma(d/2) * pi^{d/2} / k^{(d+1)/2}.
inline double gaussian_first_moment(int d, double k) {
  if (d < 1) throw std::invalid_argument("gaussian_first_moment: d < 1");
  if (!(k > 0)) throw std::invalid_argument("gaussian_first_moment: k must be positive");
  return std::exp(std::lgamma(0.5 * (d + 1)) - std::lgamma(0.5 * d) +
                  0.5 * d * std::log(kPi) - 0.5 * (d + 1) * std::log(k));
}

/// int_0^inf sech(t)^d dt = 2^{d-2} Gamma(d/2)^2 / Gamma(d).
inline double sech_power_integral(int d) {
  if (d < 1) throw std::invalid_argument("sech_power_integral: d < 1");
  return std::exp((d - 2.0) * std::log(2.0) + 2.0 * std::lgamma(0.5 * d) -
                  std::lgamma(static_cast<double>(d)));
}

/// The Legendre-duplication chain 2^{d-1} Gamma((d+1)/2) Gamma(d/2) /
/// (sqrt(pi) Gamma(d)); identically 1 for every d >= 1.
inline double prop1_exact_chain(int d) {
  if (d < 1) throw std::invalid_argument("prop1_exact_chain: d < 1");
  return std::exp((d - 1.0) * std::log(2.0) + std::lgamma(0.5 * (d + 1)) +
                  std::lgamma(0.5 * d) - 0.5 * std::log(kPi) -
                  std::lgamma(static_cast<double>(d)));
}

namespace detail {

// Angular factor int_{S^{d-1}} e^{-alpha <y^, omega>} d(omega) as a function
// of alpha, reduced by axial symmetry to a 1-d rule in mu = cos(angle):
// d=1 two-point sum, d=2 Gauss-Chebyshev (weight (1-mu^2)^{-1/2}, |S^0| = 2),
// d=3 Gauss-Legendre (flat weight, |S^1| = 2 pi).
struct AngularRule {
  std::vector<double> mu;
  std::vector<double> w;

  explicit AngularRule(int d, int points = 32) {
    if (d == 1) {
      mu = {1.0, -1.0};
      w = {1.0, 1.0};
    } else if (d == 2) {
      for (int j = 1; j <= points; ++j) {
        mu.push_back(std::cos((2.0 * j - 1.0) * kPi / (2.0 * points)));
        w.push_back(2.0 * kPi / points);
      }
    } else if (d == 3) {
      std::vector<double> n, ww;
      gauss_legendre(points, n, ww);
      for (int j = 0; j < points; ++j) {
        mu.push_back(n[static_cast<std::size_t>(j)]);
        w.push_back(2.0 * kPi * ww[static_cast<std::size_t>(j)]);
      }
    } else {
      throw std::invalid_argument("AngularRule: d must be 1..3");
    }
  }

  double eval_exp(double alpha) const {
    double s = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) s += w[j] * std::exp(-alpha * mu[j]);
    return s;
  }
};

}  // namespace detail

/// int |y-z| int_0^inf t^{-1/2} K_t(z,y) dt dz, the first-moment mass of the
/// S-kernel row about y; bounded by 1 uniformly in y and d.
///
/// The z integral is reduced exactly before quadrature: substituting
/// z = y + sqrt(4 tanh t) w normalizes the collapsing Gaussian, and the w
/// integral splits into radius sigma = |w| and an axially symmetric angular
/// factor, so the cone kink of |y-z| never meets a tensor rule.
inline double prop1_numeric(const std::vector<double>& y, const KernelConfig& cfg) {
  const int d = static_cast<int>(y.size());
  if (d < 1 || d > 3) throw std::invalid_argument("prop1_numeric: d must be 1..3");
  const double yn = std::sqrt(detail::dot(y, y));
  const double U = cfg.t_cut > 0 ? std::sqrt(cfg.t_cut) : std::sqrt(40.0 / d) + 1.0;
  const QuadratureGrid ug = panel_grid_interval(0.0, U, cfg.panels, cfg.order);
  const QuadratureGrid sg = panel_grid_interval(0.0, 8.0, 8, 12);
  const detail::AngularRule ang(d);

  double total = 0.0;
  for (std::size_t ju = 0; ju < ug.nodes.size(); ++ju) {
    const double u = ug.nodes[ju];
    const double t = u * u;
    const double th = std::tanh(t);
    const double logpre = detail::log_mehler_const(d) -
                          0.5 * d * detail::log_sinh(2.0 * t) +
                          0.5 * (d + 1) * std::log(4.0 * th) - th * yn * yn;
    const double c = std::sqrt(4.0 * th) * th * yn;
    double radial = 0.0;
    for (std::size_t js = 0; js < sg.nodes.size(); ++js) {
      const double sig = sg.nodes[js];
      radial += sg.weights[js] * std::pow(sig, d) *
                std::exp(-(1.0 + th * th) * sig * sig) * ang.eval_exp(c * sig);
    }
    total += ug.weights[ju] * 2.0 * std::exp(logpre) * radial;
  }
  return total;
}

/// Row mass of the Mehler kernel:
/// int K_t(x,y) dy = pi^{-1/2} (cosh 2t)^{-d/2} e^{-|x|^2 tanh(2t)/2}.
inline double mehler_mass(double t, const std::vector<double>& x) {
  if (!(t > 0)) throw std::domain_error("mehler_mass: t must be positive");
  const int d = static_cast<int>(x.size());
  return std::exp(-0.5 * std::log(kPi) - 0.5 * d * detail::log_cosh(2.0 * t) -
                  0.5 * detail::dot(x, x) * std::tanh(2.0 * t));
}

/// The unique positive solution of t = tanh(2t) (equivalently 2 coth 2t = 2/t),
/// by bisection on [0.5, 1.5] to about 1e-14.
inline double tau_root() {
  double lo = 0.5, hi = 1.5;
  auto g = [](double t) { return std::tanh(2.0 * t) - t; };
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// |x| int_0^inf t^{-1/2} mehler_mass(t, x) dt, the row mass of the S-kernel;
/// bounded by 1/sqrt(pi) + sqrt(2) uniformly in x and d.
inline double prop2_numeric(const std::vector<double>& x, const KernelConfig& cfg) {
  const int d = static_cast<int>(x.size());
  if (d < 1 || d > 3) throw std::invalid_argument("prop2_numeric: d must be 1..3");
  const double xn = std::sqrt(detail::dot(x, x));
  if (xn == 0.0) return 0.0;
  const double U = cfg.t_cut > 0 ? std::sqrt(cfg.t_cut) : std::sqrt(40.0 / d) + 1.0;
  // For large |x| the integrand lives at u ~ 1/|x|; grade the panels there.
  std::vector<double> edges;
  const double ustar = std::min(6.0 / xn, 0.5 * U);
  edges = {0.0, ustar, U};
  std::vector<double> full;
  const int per = std::max(8, cfg.panels / 2);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e)
    for (int p = 0; p <= per; ++p)
      if (p > 0 || e == 0)
        full.push_back(edges[e] + (edges[e + 1] - edges[e]) * p / per);
  const QuadratureGrid ug = panel_grid_edges(full, cfg.order);
  double acc = 0.0;
  for (std::size_t j = 0; j < ug.nodes.size(); ++j) {
    const double u = ug.nodes[j];
    acc += ug.weights[j] * 2.0 * mehler_mass(u * u, x);
  }
  return xn * acc;
}

/// Row mass of the resolvent kernel K~(x,y) = int_0^inf e^{-2at} sqrt(pi)
/// K_t(x,y) dt; bounded by int e^{-2at} dt = 1/(2a).
inline double resolvent_kernel_mass(double a, const std::vector<double>& x,
                                    const KernelConfig& cfg) {
  if (!(a > 0)) throw std::invalid_argument("resolvent_kernel_mass: a must be positive");
  const int d = static_cast<int>(x.size());
  const double T = cfg.t_cut > 0 ? cfg.t_cut : 40.0 / (2.0 * a + d) + 1.0;
  const QuadratureGrid tg = panel_grid_interval(0.0, T, cfg.panels, cfg.order);
  double acc = 0.0;
  for (std::size_t j = 0; j < tg.nodes.size(); ++j) {
    const double t = tg.nodes[j];
    acc += tg.weights[j] * std::exp(-2.0 * a * t) * kSqrtPi * mehler_mass(t, x);
  }
  return acc;
}

/// (L + 2a)^{-1} f(x) by the kernel route: double quadrature of
/// int_0^inf e^{-2at} [e^{-tL} f](x) dt. Spectral oracle: factor (lambda+2a)^{-1}.
inline double resolvent_kernel_apply(double a, const SpectralFn& f,
                                     const std::vector<double>& x, const KernelConfig& cfg) {
  if (!(a > 0)) throw std::invalid_argument("resolvent_kernel_apply: a must be positive");
  const int d = f.dim;
  const double lam_min = static_cast<double>(d);  // decay e^{-(2a+lambda_0)t}
  const double T = cfg.t_cut > 0 ? cfg.t_cut : 40.0 / (2.0 * a + lam_min) + 1.0;
  const QuadratureGrid tg = panel_grid_interval(0.0, T, cfg.panels, cfg.order);
  double acc = 0.0;
  for (std::size_t j = 0; j < tg.nodes.size(); ++j) {
    const double t = tg.nodes[j];
    // The kernel width shrinks like sqrt(t), so the spatial grid inside
    // heat_apply has to refine accordingly near t = 0.
    const int py = std::max(16, std::min(400, static_cast<int>(30.0 / std::sqrt(t))));
    acc += tg.weights[j] * std::exp(-2.0 * a * t) * heat_apply(t, f, x, py, cfg.order);
  }
  return acc;
}

/// Row mass of the S-kernel at y (alias of prop2_numeric: int K(y,z) dz).
inline double s_kernel_row_mass(const std::vector<double>& y, const KernelConfig& cfg) {
  return prop2_numeric(y, cfg);
}

/// Column mass int K(z,y) dz of the S-kernel for d = 1. Uses the same
/// z = y + sqrt(4 tanh t) w substitution as prop1_numeric; the kink of |z| at
/// w = -y/sqrt(4 tanh t) is made a panel edge whenever it lands in range.
inline double s_kernel_column_mass(double y, const KernelConfig& cfg) {
  const double U = cfg.t_cut > 0 ? std::sqrt(cfg.t_cut) : std::sqrt(40.0) + 1.0;
  const QuadratureGrid ug = panel_grid_interval(0.0, U, cfg.panels, cfg.order);
  const double W = 8.0;
  double total = 0.0;
  for (std::size_t ju = 0; ju < ug.nodes.size(); ++ju) {
    const double u = ug.nodes[ju];
    const double t = u * u;
    const double th = std::tanh(t);
    const double s = std::sqrt(4.0 * th);
    const double pre =
        std::exp(detail::log_mehler_const(1) - 0.5 * detail::log_sinh(2.0 * t)) * s;
    const double w0 = -y / s;
    std::vector<double> edges = {-W, W};
    if (w0 > -W && w0 < W) edges = {-W, w0, W};
    double inner = 0.0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const QuadratureGrid wg =
          panel_grid_interval(edges[e], edges[e + 1], 10, cfg.order);
      for (std::size_t j = 0; j < wg.nodes.size(); ++j) {
        const double w = wg.nodes[j];
        const double z = y + s * w;
        const double arg = 2.0 * y + s * w;
        inner += wg.weights[j] * std::abs(z) * std::exp(-w * w - th * arg * arg / 4.0);
      }
    }
    total += ug.weights[ju] * 2.0 * pre * inner;
  }
  return total;
}

}  // namespace hermite_riesz
