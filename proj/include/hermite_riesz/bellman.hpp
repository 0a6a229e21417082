#pragma once

// The Nazarov-Treil Bellman function beta/B, its t-derivative, a numerically
// mollified B_kappa, the finite-difference Hessian form, and the two-case
// pointwise inequality behind the bilinear embedding.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hermite_riesz/basis.hpp"

namespace hermite_riesz {

/// (p, q, gamma) with q = p/(p-1) and gamma = q(q-1)/8. Only p >= 2 is
/// exposed; for p < 2 callers swap p and q.
struct BellmanParams {
  double p = 2.0;
  double q = 2.0;
  double gamma = 0.25;
};

inline BellmanParams bellman_params(double p) {
  if (!(p >= 2.0))
    throw std::invalid_argument("bellman_params: requires p >= 2 (swap p and q below 2)");
  BellmanParams par;
  par.p = p;
  par.q = p / (p - 1.0);
  par.gamma = par.q * (par.q - 1.0) / 8.0;
  return par;
}

/// Biradial coordinates: s = |zeta| (zeta in R^{m1}), t = |eta| (eta in R^{m2}).
struct BiradialPoint {
  double s = 0.0;
  double t = 0.0;
  int m1 = 1;
  int m2 = 1;
};

/// beta(s,t) = s^p + t^q + gamma * { s^2 t^{2-q}       if s^p <= t^q
///                                 { (2/p)s^p + (2/q - 1)t^q  otherwise.
/// Both branches agree on the seam s^p = t^q.
inline double beta_eval(double s, double t, const BellmanParams& par) {
  if (s < 0 || t < 0) throw std::domain_error("beta_eval: negative input");
  const double sp = std::pow(s, par.p);
  const double tq = std::pow(t, par.q);
  if (sp <= tq) return sp + tq + par.gamma * s * s * std::pow(t, 2.0 - par.q);
  return sp + tq + par.gamma * (2.0 / par.p * sp + (2.0 / par.q - 1.0) * tq);
}

/// d(beta)/dt: q t^{q-1} + gamma (2-q) * { s^2 t^{1-q}  if s^p <= t^q
///                                       { t^{q-1}      otherwise.
inline double beta_grad_t(double s, double t, const BellmanParams& par) {
  if (s < 0 || t < 0) throw std::domain_error("beta_grad_t: negative input");
  if (t == 0.0) {
    if (par.q < 2.0) throw std::domain_error("beta_grad_t: singular at t = 0 for q < 2");
    return 0.0;
  }
  const double sp = std::pow(s, par.p);
  const double tq = std::pow(t, par.q);
  const double head = par.q * std::pow(t, par.q - 1.0);
  if (sp <= tq)
    return head + par.gamma * (2.0 - par.q) * s * s * std::pow(t, 1.0 - par.q);
  return head + par.gamma * (2.0 - par.q) * std::pow(t, par.q - 1.0);
}

inline double euclidean_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// B(zeta, eta) = beta(|zeta|, |eta|) / 2.
inline double bellman_B(const std::vector<double>& zeta, const std::vector<double>& eta,
                        const BellmanParams& par) {
  return 0.5 * beta_eval(euclidean_norm(zeta), euclidean_norm(eta), par);
}

/// Normalizing constant c of the bump psi(x) = c e^{-1/(1-|x|^2)} on B(0,1),
/// from the polar form int = S_{m-1} int_0^1 r^{m-1} e^{-1/(1-r^2)} dr with a
/// dense 1-d rule (error < 1e-14); the tensor convolution rule is far too
/// coarse near |x| = 1 to serve as the normalizer.
inline double mollifier_norm_const(int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("mollifier_norm_const: m must be 1..3");
  static const std::array<double, 3> cache = [] {
    std::array<double, 3> vals{};
    const QuadratureGrid r = panel_grid_interval(0.0, 1.0, 16, 24);
    const std::array<double, 3> sphere = {2.0, 2.0 * kPi, 4.0 * kPi};
    for (int mm = 1; mm <= 3; ++mm) {
      double integral = 0.0;
      for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        const double rr = r.nodes[j];
        integral += r.weights[j] * std::pow(rr, mm - 1) *
                    std::exp(-1.0 / (1.0 - rr * rr));
      }
      vals[static_cast<std::size_t>(mm) - 1] =
          1.0 / (sphere[static_cast<std::size_t>(mm) - 1] * integral);
    }
    return vals;
  }();
  return cache[static_cast<std::size_t>(m) - 1];
}

/// The normalized bump itself (0 outside the open unit ball).
inline double mollifier_psi(const std::vector<double>& w) {
  const int m = static_cast<int>(w.size());
  double r2 = 0.0;
  for (double v : w) r2 += v * v;
  if (r2 >= 1.0) return 0.0;
  return mollifier_norm_const(m) * std::exp(-1.0 / (1.0 - r2));
}

/// B_kappa(z) = (B * psi_kappa)(z) = int_{|w|<1} B(z - kappa w) psi(w) dw by
/// tensor quadrature with `conv1d` per axis on [-1,1]. The first m1
/// coordinates of z are the zeta block. Supports m1 + m2 <= 3.
inline double mollified_B(const std::vector<double>& z, int m1, double kappa,
                          const BellmanParams& par, const QuadratureGrid& conv1d) {
  const int m = static_cast<int>(z.size());
  const int m2 = m - m1;
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("mollified_B: need m1, m2 >= 1");
  if (m > 3) throw std::invalid_argument("mollified_B: unsupported dimension (m1 + m2 > 3)");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("mollified_B: kappa must be in (0,1)");
  const double c = mollifier_norm_const(m);
  const std::size_t M = conv1d.nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  std::vector<double> zeta(static_cast<std::size_t>(m1));
  std::vector<double> eta(static_cast<std::size_t>(m2));
  double acc = 0.0;
  std::size_t total = 1;
  for (int k = 0; k < m; ++k) total *= M;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wq = 1.0, r2 = 0.0;
    for (int k = m - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = rem % M;
      rem /= M;
    }
    for (int k = 0; k < m; ++k) {
      const double wk = conv1d.nodes[idx[static_cast<std::size_t>(k)]];
      wq *= conv1d.weights[idx[static_cast<std::size_t>(k)]];
      r2 += wk * wk;
    }
    if (r2 >= 1.0) continue;
    for (int k = 0; k < m1; ++k)
      zeta[static_cast<std::size_t>(k)] =
          z[static_cast<std::size_t>(k)] - kappa * conv1d.nodes[idx[static_cast<std::size_t>(k)]];
    for (int k = 0; k < m2; ++k)
      eta[static_cast<std::size_t>(k)] =
          z[static_cast<std::size_t>(m1 + k)] -
          kappa * conv1d.nodes[idx[static_cast<std::size_t>(m1 + k)]];
    acc += wq * c * std::exp(-1.0 / (1.0 - r2)) * bellman_B(zeta, eta, par);
  }
  return acc;
}

/// <Hess(B_kappa)(z) omega, omega> by the central second difference along
/// omega with step h = 1e-4 max(1, |z|).
inline double hessian_form(const std::vector<double>& z, const std::vector<double>& omega,
                           int m1, double kappa, const BellmanParams& par,
                           const QuadratureGrid& conv1d) {
  if (omega.size() != z.size())
    throw std::invalid_argument("hessian_form: direction dimension mismatch");
  double on = euclidean_norm(omega);
  if (on == 0.0) return 0.0;
  const double h = 1e-4 * std::max(1.0, euclidean_norm(z));
  std::vector<double> zp = z, zm = z;
  for (std::size_t k = 0; k < z.size(); ++k) {
    zp[k] += h * omega[k];
    zm[k] -= h * omega[k];
  }
  const double fp = mollified_B(zp, m1, kappa, par, conv1d);
  const double f0 = mollified_B(z, m1, kappa, par, conv1d);
  const double fm = mollified_B(zm, m1, kappa, par, conv1d);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

struct Ineq34Result {
  double margin = 0.0;
  bool nonneg = false;
};

/// Left side of the pointwise inequality
///   (|x|^2 + 2d) beta(|zeta|, |eta|) - 2 t d(beta)/dt >= 0   (d >= 2),
/// with the branch of beta picked by comparing |zeta|^p against |eta|^q.
inline Ineq34Result ineq34_check(double x_norm, double zeta_norm, double eta_norm, int d,
                                 const BellmanParams& par) {
  if (d < 2) throw std::domain_error("ineq34_check: requires d >= 2");
  if (x_norm < 0 || zeta_norm < 0 || eta_norm < 0)
    throw std::domain_error("ineq34_check: negative input");
  const double r = x_norm * x_norm + 2.0 * d;
  const double sp = std::pow(zeta_norm, par.p);
  const double tq = std::pow(eta_norm, par.q);
  double beta, t_dbeta;
  if (sp <= tq) {
    const double cross = zeta_norm * zeta_norm * std::pow(eta_norm, 2.0 - par.q);
    beta = sp + tq + par.gamma * cross;
    t_dbeta = par.q * tq + par.gamma * (2.0 - par.q) * cross;
  } else {
    beta = sp + tq + par.gamma * (2.0 / par.p * sp + (2.0 / par.q - 1.0) * tq);
    t_dbeta = par.q * tq + par.gamma * (2.0 - par.q) * tq;
  }
  Ineq34Result out;
  out.margin = r * beta - 2.0 * t_dbeta;
  out.nonneg = out.margin >= 0.0;
  return out;
}

struct CasePolynomialResult {
  bool holds = false;
  double identity_err = 0.0;
};

/// The Case-2 polynomial: checks (d - q)(q^2 - 3q - 6) <= 0 and its expanded
/// equivalent q^3 + q^2(-d-3) + q(3d-6) + 6d >= 0, and that the two forms
/// agree identically at the given point.
inline CasePolynomialResult case_polynomial_check(int d, double q) {
  if (d < 2) throw std::domain_error("case_polynomial_check: requires d >= 2");
  if (!(q > 1.0 && q <= 2.0))
    throw std::domain_error("case_polynomial_check: requires q in (1, 2]");
  const double factored = (d - q) * (q * q - 3.0 * q - 6.0);
  const double expanded = q * q * q + q * q * (-d - 3.0) + q * (3.0 * d - 6.0) + 6.0 * d;
  CasePolynomialResult out;
  out.identity_err = std::abs(expanded - (-factored));
  out.holds = factored <= 0.0 && expanded >= 0.0;
  return out;
}

/// The Case-1 sufficient expression d s^p + (d - q) t^q + gamma (d - 2 + q)
/// s^2 t^{2-q}; nonnegative for d >= 2.
inline double case1_sufficient_value(int d, double s, double t, const BellmanParams& par) {
  if (d < 2) throw std::domain_error("case1_sufficient_value: requires d >= 2");
  if (s < 0 || t < 0) throw std::domain_error("case1_sufficient_value: negative input");
  return d * std::pow(s, par.p) + (d - par.q) * std::pow(t, par.q) +
         par.gamma * (d - 2.0 + par.q) * s * s * std::pow(t, 2.0 - par.q);
}

}  // namespace hermite_riesz
