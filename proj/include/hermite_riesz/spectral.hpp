#pragma once

// Coefficient-space algebra on D = lin{h_n}: ladder operators, the
// oscillator L and its shift L' = L + 2d, heat-type semigroups P_t/Q_t, the
// Riesz-type transforms, the multiplier U_a, the time-integral identity for
// <R'_i f, g>, basis synthesis and the starred norm.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hermite_riesz/basis.hpp"

namespace hermite_riesz {

/// Finitely supported expansion f = sum c_n h_n, keyed by multi-index.
struct SpectralFn {
  int dim = 1;
  std::map<MultiIndex, double> coef;

  SpectralFn() = default;
  explicit SpectralFn(int d) : dim(d) {
    if (d < 1) throw std::invalid_argument("SpectralFn: dim < 1");
  }

  /// The basis element h_n.
  static SpectralFn basis(const MultiIndex& n) {
    if (n.empty()) throw std::invalid_argument("SpectralFn::basis: empty index");
    SpectralFn f(static_cast<int>(n.size()));
    (void)order_of(n);  // validates nonnegativity
    f.coef[n] = 1.0;
    return f;
  }

  void set(const MultiIndex& n, double c) {
    if (static_cast<int>(n.size()) != dim)
      throw std::invalid_argument("SpectralFn::set: index dimension mismatch");
    coef[n] = c;
  }

  double at(const MultiIndex& n) const {
    auto it = coef.find(n);
    return it == coef.end() ? 0.0 : it->second;
  }

  /// Largest |n| in the support (0 for the zero function).
  int degree() const {
    int deg = 0;
    for (const auto& [n, c] : coef)
      if (c != 0.0) deg = std::max(deg, order_of(n));
    return deg;
  }

  /// Drop coefficients with |c| <= eps.
  void prune(double eps = 0.0) {
    for (auto it = coef.begin(); it != coef.end();)
      it = std::abs(it->second) <= eps ? coef.erase(it) : std::next(it);
  }
};

/// d-tuple of scalar expansions of equal dimension, e.g. g = (g_1,...,g_d).
struct SpectralVecFn {
  std::vector<SpectralFn> comp;

  SpectralVecFn() = default;
  explicit SpectralVecFn(std::vector<SpectralFn> c) : comp(std::move(c)) {
    for (const auto& f : comp)
      if (f.dim != comp.front().dim)
        throw std::invalid_argument("SpectralVecFn: mixed dimensions");
  }

  int dim() const { return comp.empty() ? 0 : comp.front().dim; }
};

/// Diagonal spectral multiplier: rule(|n|, d) scales the coefficient of h_n.
struct Multiplier {
  std::function<double(int, int)> rule;
  std::string label;
};

inline SpectralFn operator+(const SpectralFn& a, const SpectralFn& b) {
  if (a.dim != b.dim) throw std::invalid_argument("SpectralFn +: dimension mismatch");
  SpectralFn out = a;
  for (const auto& [n, c] : b.coef) out.coef[n] += c;
  return out;
}

inline SpectralFn operator-(const SpectralFn& a, const SpectralFn& b) {
  if (a.dim != b.dim) throw std::invalid_argument("SpectralFn -: dimension mismatch");
  SpectralFn out = a;
  for (const auto& [n, c] : b.coef) out.coef[n] -= c;
  return out;
}

inline SpectralFn operator*(double s, const SpectralFn& f) {
  SpectralFn out = f;
  for (auto& [n, c] : out.coef) c *= s;
  return out;
}

/// <f, g> in coefficient arithmetic (Parseval over the orthonormal basis).
inline double inner(const SpectralFn& a, const SpectralFn& b) {
  if (a.dim != b.dim) throw std::invalid_argument("inner: dimension mismatch");
  const auto& small = a.coef.size() <= b.coef.size() ? a : b;
  const auto& large = a.coef.size() <= b.coef.size() ? b : a;
  double s = 0.0;
  for (const auto& [n, c] : small.coef) s += c * large.at(n);
  return s;
}

inline double l2_norm(const SpectralFn& f) { return std::sqrt(inner(f, f)); }

/// Eigenvalue of L on h_n: lambda_n = 2|n| + d.
inline double eigenvalue_lambda(int order, int dim) { return 2.0 * order + dim; }

/// Eigenvalue of L' = L + 2d: lambda'_n = 2|n| + 3d.
inline double eigenvalue_lambda_prime(int order, int dim) { return 2.0 * order + 3.0 * dim; }

/// c_n |-> rule(|n|, d) * c_n.
inline SpectralFn apply_multiplier(const Multiplier& m, const SpectralFn& f) {
  SpectralFn out(f.dim);
  for (const auto& [n, c] : f.coef) out.coef[n] = m.rule(order_of(n), f.dim) * c;
  return out;
}

inline Multiplier multiplier_lambda() {
  return {[](int k, int d) { return eigenvalue_lambda(k, d); }, "lambda"};
}

inline Multiplier multiplier_lambda_prime() {
  return {[](int k, int d) { return eigenvalue_lambda_prime(k, d); }, "lambda_prime"};
}

inline Multiplier multiplier_inv_sqrt_lambda() {
  return {[](int k, int d) { return 1.0 / std::sqrt(eigenvalue_lambda(k, d)); },
          "lambda^{-1/2}"};
}

inline Multiplier multiplier_identity() {
  return {[](int, int) { return 1.0; }, "identity"};
}

namespace detail {

inline void check_axis(int i, int dim) {
  if (i < 1 || i > dim) throw std::out_of_range("axis index out of range");
}

}  // namespace detail

/// Annihilation: delta_i h_n = sqrt(2 n_i) h_{n - e_i} (0 when n_i = 0).
/// Axis i is 1-based.
inline SpectralFn delta(int i, const SpectralFn& f) {
  detail::check_axis(i, f.dim);
  SpectralFn out(f.dim);
  for (const auto& [n, c] : f.coef) {
    const int ni = n[static_cast<std::size_t>(i) - 1];
    if (ni == 0) continue;
    MultiIndex m = n;
    --m[static_cast<std::size_t>(i) - 1];
    out.coef[m] += std::sqrt(2.0 * ni) * c;
  }
  return out;
}

/// Creation: delta_i^* h_n = sqrt(2(n_i + 1)) h_{n + e_i}. Axis i is 1-based.
inline SpectralFn delta_star(int i, const SpectralFn& f) {
  detail::check_axis(i, f.dim);
  SpectralFn out(f.dim);
  for (const auto& [n, c] : f.coef) {
    const int ni = n[static_cast<std::size_t>(i) - 1];
    MultiIndex m = n;
    ++m[static_cast<std::size_t>(i) - 1];
    out.coef[m] += std::sqrt(2.0 * (ni + 1)) * c;
  }
  return out;
}

/// partial_{x_i} = (delta_i - delta_i^*) / 2 on coefficients.
inline SpectralFn partial_x(int i, const SpectralFn& f) {
  return 0.5 * (delta(i, f) - delta_star(i, f));
}

/// P_t f = sum e^{-t sqrt(lambda'_n)} c_n h_n.
inline SpectralFn semigroup_P(double t, const SpectralFn& f) {
  if (t < 0) throw std::invalid_argument("semigroup_P: t < 0");
  return apply_multiplier(
      {[t](int k, int d) { return std::exp(-t * std::sqrt(eigenvalue_lambda_prime(k, d))); },
       "P_t"},
      f);
}

/// Q_t f = sum e^{-t sqrt(lambda'_n - 2)} c_n h_n (lambda' - 2 = 2|n| + 3d - 2 > 0).
inline SpectralFn semigroup_Q(double t, const SpectralFn& f) {
  if (t < 0) throw std::invalid_argument("semigroup_Q: t < 0");
  return apply_multiplier(
      {[t](int k, int d) {
         return std::exp(-t * std::sqrt(eigenvalue_lambda_prime(k, d) - 2.0));
       },
       "Q_t"},
      f);
}

/// d/dt of P_t f, taken spectrally: factor -sqrt(lambda') e^{-t sqrt(lambda')}.
inline SpectralFn semigroup_P_dt(double t, const SpectralFn& f) {
  if (t < 0) throw std::invalid_argument("semigroup_P_dt: t < 0");
  return apply_multiplier(
      {[t](int k, int d) {
         const double s = std::sqrt(eigenvalue_lambda_prime(k, d));
         return -s * std::exp(-t * s);
       },
       "dP_t/dt"},
      f);
}

/// d/dt of Q_t f, taken spectrally.
inline SpectralFn semigroup_Q_dt(double t, const SpectralFn& f) {
  if (t < 0) throw std::invalid_argument("semigroup_Q_dt: t < 0");
  return apply_multiplier(
      {[t](int k, int d) {
         const double s = std::sqrt(eigenvalue_lambda_prime(k, d) - 2.0);
         return -s * std::exp(-t * s);
       },
       "dQ_t/dt"},
      f);
}

/// R'_i = delta_i^* L'^{-1/2}.
inline SpectralFn riesz_prime(int i, const SpectralFn& f) {
  return delta_star(
      i, apply_multiplier({[](int k, int d) {
                             return 1.0 / std::sqrt(eigenvalue_lambda_prime(k, d));
                           },
                           "L'^{-1/2}"},
                          f));
}

/// R~_i = delta_i^* L^{-1/2}.
inline SpectralFn riesz_tilde(int i, const SpectralFn& f) {
  return delta_star(i, apply_multiplier(multiplier_inv_sqrt_lambda(), f));
}

/// R_i = delta_i L^{-1/2}.
inline SpectralFn riesz(int i, const SpectralFn& f) {
  return delta(i, apply_multiplier(multiplier_inv_sqrt_lambda(), f));
}

/// R*_i = delta_i^* (L + 2)^{-1/2}; the adjoint of R_i on D.
inline SpectralFn riesz_star(int i, const SpectralFn& f) {
  return delta_star(
      i, apply_multiplier({[](int k, int d) {
                             return 1.0 / std::sqrt(eigenvalue_lambda(k, d) + 2.0);
                           },
                           "(L+2)^{-1/2}"},
                          f));
}

/// U_a = (L (L + 2a)^{-1})^{1/2}: diagonal factor sqrt(lambda/(lambda+2a)) in (0,1).
inline SpectralFn u_multiplier(double a, const SpectralFn& f) {
  if (!(a > 0)) throw std::invalid_argument("u_multiplier: a must be positive");
  return apply_multiplier({[a](int k, int d) {
                             const double lam = eigenvalue_lambda(k, d);
                             return std::sqrt(lam / (lam + 2.0 * a));
                           },
                           "U_a"},
                          f);
}

/// Coefficients c_1..c_N of sqrt(1 - x) = 1 - sum c_n x^n, i.e.
/// c_n = (2n)! / ((n!)^2 (2n-1) 4^n), by the ratio c_{n+1}/c_n = (2n-1)/(2n+2).
/// All positive, decreasing, sum to 1.
inline std::vector<double> sqrt_series_coeffs(int N) {
  if (N < 1) throw std::invalid_argument("sqrt_series_coeffs: N < 1");
  std::vector<double> c(static_cast<std::size_t>(N));
  c[0] = 0.5;
  for (int n = 1; n < N; ++n)
    c[static_cast<std::size_t>(n)] =
        c[static_cast<std::size_t>(n) - 1] * (2.0 * n - 1.0) / (2.0 * n + 2.0);
  return c;
}

/// U_a through the truncated series (I - A)^{1/2} = I - sum_{n<=N} c_n A^n
/// with A = 2a (L + 2a)^{-1}. N = 0 returns f unchanged.
inline SpectralFn u_via_series(double a, int N, const SpectralFn& f) {
  if (!(a > 0)) throw std::invalid_argument("u_via_series: a must be positive");
  if (N < 0) throw std::invalid_argument("u_via_series: N < 0");
  if (N == 0) return f;
  const std::vector<double> c = sqrt_series_coeffs(N);
  return apply_multiplier({[a, &c](int k, int d) {
                             const double A =
                                 2.0 * a / (eigenvalue_lambda(k, d) + 2.0 * a);
                             double s = 0.0, An = 1.0;
                             for (double cn : c) {
                               An *= A;
                               s += cn * An;
                             }
                             return 1.0 - s;
                           },
                           "U_a series"},
                          f);
}

/// <R'_i f, g> by exact coefficient arithmetic.
inline double lemma3_lhs(int i, const SpectralFn& f, const SpectralFn& g) {
  return inner(riesz_prime(i, f), g);
}

/// Time grid for the integral representation: Gauss panels in s on [0, S]
/// mapped through t = s^2 (nodes t_j = s_j^2, weights 2 s_j w_j), with S set
/// so the slowest mode e^{-S^2 sqrt(3d-2)} is below 1e-16.
inline QuadratureGrid lemma3_time_grid(int dim, int panels = 16, int order = 16) {
  if (dim < 1) throw std::invalid_argument("lemma3_time_grid: dim < 1");
  const double S = std::sqrt(38.0 / std::sqrt(3.0 * dim - 2.0)) + 0.5;
  QuadratureGrid s = panel_grid_interval(0.0, S, panels, order);
  QuadratureGrid t = s;
  for (std::size_t j = 0; j < s.nodes.size(); ++j) {
    t.nodes[j] = s.nodes[j] * s.nodes[j];
    t.weights[j] = 2.0 * s.nodes[j] * s.weights[j];
  }
  t.lo = 0.0;
  t.hi = S * S;
  return t;
}

/// -4 integral_0^inf <delta_i^* P_t f, d/dt Q_t g> t dt by quadrature over the
/// supplied t grid. Equals lemma3_lhs on D.
inline double lemma3_rhs(int i, const SpectralFn& f, const SpectralFn& g,
                         const QuadratureGrid& t_quadrature) {
  if (f.dim != g.dim) throw std::invalid_argument("lemma3_rhs: dimension mismatch");
  detail::check_axis(i, f.dim);
  double acc = 0.0;
  for (std::size_t j = 0; j < t_quadrature.nodes.size(); ++j) {
    const double t = t_quadrature.nodes[j];
    const double w = t_quadrature.weights[j];
    acc += w * t * inner(delta_star(i, semigroup_P(t, f)), semigroup_Q_dt(t, g));
  }
  return -4.0 * acc;
}

/// The closed form of the same pairing: summing the exact time integral per
/// basis pair gives 4 sqrt(lambda'_k - 2) / (sqrt(lambda'_n) + sqrt(lambda'_k - 2))^2
/// times the ladder coefficient, supported on k = n + e_i.
inline double lemma3_closed_form(int i, const SpectralFn& f, const SpectralFn& g) {
  if (f.dim != g.dim)
    throw std::invalid_argument("lemma3_closed_form: dimension mismatch");
  detail::check_axis(i, f.dim);
  double acc = 0.0;
  for (const auto& [n, cf] : f.coef) {
    MultiIndex k = n;
    ++k[static_cast<std::size_t>(i) - 1];
    const double cg = g.at(k);
    if (cg == 0.0) continue;
    const double a = std::sqrt(eigenvalue_lambda_prime(order_of(n), f.dim));
    const double b = std::sqrt(eigenvalue_lambda_prime(order_of(k), f.dim) - 2.0);
    const double ladder = std::sqrt(2.0 * (n[static_cast<std::size_t>(i) - 1] + 1));
    acc += cf * cg * 4.0 * b * ladder / ((a + b) * (a + b));
  }
  return acc;
}

/// Pointwise values sum c_n h_n(x) at the given points.
inline std::vector<double> synthesize(const SpectralFn& f,
                                      const std::vector<std::vector<double>>& points) {
  const int deg = f.degree();
  std::vector<double> out(points.size(), 0.0);
  std::vector<std::vector<double>> tables(static_cast<std::size_t>(f.dim));
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto& x = points[p];
    if (static_cast<int>(x.size()) != f.dim)
      throw std::invalid_argument("synthesize: point dimension mismatch");
    for (int ax = 0; ax < f.dim; ++ax)
      tables[static_cast<std::size_t>(ax)] =
          hermite_function_table(deg, x[static_cast<std::size_t>(ax)]);
    double v = 0.0;
    for (const auto& [n, c] : f.coef) {
      double prod = c;
      for (int ax = 0; ax < f.dim; ++ax)
        prod *= tables[static_cast<std::size_t>(ax)]
                      [static_cast<std::size_t>(n[static_cast<std::size_t>(ax)])];
      v += prod;
    }
    out[p] = v;
  }
  return out;
}

inline double synthesize_at(const SpectralFn& f, const std::vector<double>& x) {
  return synthesize(f, {x})[0];
}

/// Which semigroup a space-time field flows under.
enum class Flow { P, Q };

/// r(x) = |x|^2 + 2d.
inline double weight_r(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s + 2.0 * static_cast<double>(x.size());
}

namespace detail {

// Squared starred norm of the flow of one scalar expansion at (x, t); the
// time derivative and the space gradient are applied spectrally.
inline double star_norm_sq_scalar(const SpectralFn& f, Flow flow,
                                  const std::vector<double>& x, double t) {
  if (static_cast<int>(x.size()) != f.dim)
    throw std::invalid_argument("star_norm: point dimension mismatch");
  const SpectralFn id = flow == Flow::P ? semigroup_P(t, f) : semigroup_Q(t, f);
  const SpectralFn dt = flow == Flow::P ? semigroup_P_dt(t, f) : semigroup_Q_dt(t, f);
  const double v = synthesize_at(id, x);
  const double vt = synthesize_at(dt, x);
  double acc = weight_r(x) * v * v + vt * vt;
  for (int i = 1; i <= f.dim; ++i) {
    const double vx = synthesize_at(partial_x(i, id), x);
    acc += vx * vx;
  }
  return acc;
}

}  // namespace detail

/// |u(x,t)|_* = sqrt(r(x)|u|^2 + |du/dt|^2 + sum_i |du/dx_i|^2) for u = P_t f
/// or Q_t g.
inline double star_norm(const SpectralFn& f, Flow flow, const std::vector<double>& x,
                        double t) {
  return std::sqrt(detail::star_norm_sq_scalar(f, flow, x, t));
}

/// Vector version: the squares of all components are summed under the root.
inline double star_norm(const SpectralVecFn& g, Flow flow, const std::vector<double>& x,
                        double t) {
  double acc = 0.0;
  for (const auto& f : g.comp) acc += detail::star_norm_sq_scalar(f, flow, x, t);
  return std::sqrt(acc);
}

/// All multi-indices with |n| <= N in dimension d, lexicographic order.
inline std::vector<MultiIndex> multi_indices_up_to(int dim, int N) {
  if (dim < 1 || N < 0) throw std::invalid_argument("multi_indices_up_to: bad arguments");
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(dim), 0);
  std::function<void(int, int)> rec = [&](int axis, int budget) {
    if (axis == dim) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      cur[static_cast<std::size_t>(axis)] = v;
      rec(axis + 1, budget - v);
    }
    cur[static_cast<std::size_t>(axis)] = 0;
  };
  rec(0, N);
  return out;
}

}  // namespace hermite_riesz
