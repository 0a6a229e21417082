#pragma once

// Hermite functions and quadrature grids.
//
// Provides the orthonormal oscillator eigenbasis h_n (stable up to n ~ 1e4,
// |x| <= 50 via a running log-scale offset), Gauss-Hermite and composite
// Gauss-Legendre rules built from the Golub-Welsch eigenproblem, and tensor
// grids used by the L^p and kernel integrators.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace hermite_riesz {

/// Point n in N^d indexing a tensor Hermite basis function h_n.
using MultiIndex = std::vector<int>;

/// |n| = sum of the entries.
inline int order_of(const MultiIndex& n) {
  int s = 0;
  for (int v : n) {
    if (v < 0) throw std::invalid_argument("MultiIndex entries must be >= 0");
    s += v;
  }
  return s;
}

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtPi = 1.7724538509055160272981674833411451828;
inline constexpr double kInvQuarticRootPi = 0.75112554446494248285870300477623;  // pi^{-1/4}

namespace detail {

inline constexpr double kRenormHi = 1e280;
inline constexpr double kRenormLo = 1e-280;

// Materialize u * exp(sigma) without overflowing the intermediate exp.
inline double scaled_value(double u, double sigma) {
  if (sigma == 0.0) return u;
  if (sigma > -700.0 && sigma < 700.0) return u * std::exp(sigma);
  const double half = std::exp(0.5 * sigma);
  return (u * half) * half;
}

}  // namespace detail

/// Physicists' Hermite polynomial H_n(x) by the raw three-term recurrence
/// H_n = 2x H_{n-1} - 2(n-1) H_{n-2}, H_0 = 1, H_1 = 2x. Overflows for large
/// n*|x|; the normalized evaluation below is the stable path.
inline double hermite_polynomial(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_polynomial: n < 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * (k - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Values h_0(x) .. h_nmax(x) in one pass of the normalized recurrence
/// h_k = x sqrt(2/k) h_{k-1} - sqrt((k-1)/k) h_{k-2}, seeded by
/// h_0 = pi^{-1/4} e^{-x^2/2}.
///
/// The recurrence runs on scaled variables u_k with h_k = u_k * e^{sigma};
/// sigma starts at -x^2/2 and absorbs a factor 1e280 whenever |u| threatens
/// the double range. Entries are materialized with the offset in force at
/// their own step, so later rescaling never touches earlier output.
inline std::vector<double> hermite_function_table(int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("hermite_function_table: nmax < 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  double sigma = -0.5 * x * x;
  double u_prev = 0.0;
  double u = kInvQuarticRootPi;
  out[0] = detail::scaled_value(u, sigma);
  for (int k = 1; k <= nmax; ++k) {
    const double next =
        x * std::sqrt(2.0 / k) * u - std::sqrt((k - 1.0) / k) * u_prev;
    u_prev = u;
    u = next;
    if (std::abs(u) > detail::kRenormHi) {
      u *= detail::kRenormLo;
      u_prev *= detail::kRenormLo;
      sigma += std::log(detail::kRenormHi);
    }
    out[static_cast<std::size_t>(k)] = detail::scaled_value(u, sigma);
  }
  return out;
}

/// Normalized Hermite function h_n(x) (orthonormal in L^2(R)).
inline double hermite_function(int n, double x) {
  return hermite_function_table(n, x)[static_cast<std::size_t>(n)];
}

/// h_n'(x) from the ladder identity h_n' = (sqrt(2n) h_{n-1} - sqrt(2n+2) h_{n+1})/2.
inline double hermite_function_deriv(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_function_deriv: n < 0");
  const std::vector<double> h = hermite_function_table(n + 1, x);
  const double lower = n > 0 ? std::sqrt(2.0 * n) * h[static_cast<std::size_t>(n) - 1] : 0.0;
  return 0.5 * (lower - std::sqrt(2.0 * (n + 1)) * h[static_cast<std::size_t>(n) + 1]);
}

/// Tensor-product Hermite function h_n(x) = h_{n_1}(x_1) ... h_{n_d}(x_d).
inline double hermite_multi(const MultiIndex& n, const std::vector<double>& x) {
  if (n.size() != x.size())
    throw std::invalid_argument("hermite_multi: dimension mismatch");
  double prod = 1.0;
  for (std::size_t i = 0; i < n.size(); ++i) prod *= hermite_function(n[i], x[i]);
  return prod;
}

enum class GridKind { gauss_hermite, panel_legendre };

/// 1-d node/weight table. Gauss-Hermite rules integrate against e^{-x^2} on
/// the line; panel rules are composite Gauss-Legendre on [lo, hi].
struct QuadratureGrid {
  GridKind kind = GridKind::panel_legendre;
  int order = 0;  // Per-panel Gauss order (or total order for gauss_hermite).
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = 0.0;
  double hi = 0.0;

  std::size_t size() const { return nodes.size(); }
};

namespace detail {

// Nodes/weights of an n-point Gauss rule from the symmetric tridiagonal
// Jacobi matrix with the given off-diagonal, scaled by the weight's zeroth
// moment mu0 (Golub-Welsch).
inline void golub_welsch(const std::vector<double>& offdiag, double mu0,
                         std::vector<double>& nodes, std::vector<double>& weights) {
  const int n = static_cast<int>(offdiag.size()) + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    jacobi(k, k + 1) = offdiag[static_cast<std::size_t>(k)];
    jacobi(k + 1, k) = offdiag[static_cast<std::size_t>(k)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: eigenvalue solve failed to converge");
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    weights[static_cast<std::size_t>(k)] = mu0 * v0 * v0;
  }
}

// n-point Gauss-Legendre rule on [-1, 1].
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  if (n == 1) {
    nodes = {0.0};
    weights = {2.0};
    return;
  }
  std::vector<double> off(static_cast<std::size_t>(n) - 1);
  for (int k = 1; k < n; ++k)
    off[static_cast<std::size_t>(k) - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  golub_welsch(off, 2.0, nodes, weights);
}

}  // namespace detail

/// Gauss-Hermite rule: integrates p(x) e^{-x^2} exactly for deg p <= 2*order-1.
inline QuadratureGrid gauss_hermite_grid(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite_grid: order < 1");
  QuadratureGrid g;
  g.kind = GridKind::gauss_hermite;
  g.order = order;
  if (order == 1) {
    g.nodes = {0.0};
    g.weights = {kSqrtPi};
    return g;
  }
  std::vector<double> off(static_cast<std::size_t>(order) - 1);
  for (int k = 1; k < order; ++k)
    off[static_cast<std::size_t>(k) - 1] = std::sqrt(0.5 * k);
  detail::golub_welsch(off, kSqrtPi, g.nodes, g.weights);
  return g;
}

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels.
inline QuadratureGrid panel_grid_interval(double a, double b, int panels, int order) {
  if (!(b > a)) throw std::invalid_argument("panel_grid_interval: empty interval");
  if (panels < 1 || order < 1)
    throw std::invalid_argument("panel_grid_interval: panels and order must be >= 1");
  std::vector<double> leg_nodes, leg_weights;
  detail::gauss_legendre(order, leg_nodes, leg_weights);
  QuadratureGrid g;
  g.kind = GridKind::panel_legendre;
  g.order = order;
  g.lo = a;
  g.hi = b;
  g.nodes.reserve(static_cast<std::size_t>(panels) * leg_nodes.size());
  g.weights.reserve(static_cast<std::size_t>(panels) * leg_nodes.size());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t j = 0; j < leg_nodes.size(); ++j) {
      g.nodes.push_back(mid + 0.5 * h * leg_nodes[j]);
      g.weights.push_back(0.5 * h * leg_weights[j]);
    }
  }
  return g;
}

/// Composite Gauss-Legendre rule on the symmetric box [-X, X].
inline QuadratureGrid panel_grid(double X, int panels, int order) {
  if (!(X > 0)) throw std::invalid_argument("panel_grid: X must be positive");
  return panel_grid_interval(-X, X, panels, order);
}

/// Composite rule from an explicit increasing edge list (panel boundaries).
inline QuadratureGrid panel_grid_edges(const std::vector<double>& edges, int order) {
  if (edges.size() < 2) throw std::invalid_argument("panel_grid_edges: need >= 2 edges");
  std::vector<double> leg_nodes, leg_weights;
  detail::gauss_legendre(order, leg_nodes, leg_weights);
  QuadratureGrid g;
  g.kind = GridKind::panel_legendre;
  g.order = order;
  g.lo = edges.front();
  g.hi = edges.back();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    if (!(b > a)) throw std::invalid_argument("panel_grid_edges: edges not increasing");
    for (std::size_t j = 0; j < leg_nodes.size(); ++j) {
      g.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * leg_nodes[j]);
      g.weights.push_back(0.5 * (b - a) * leg_weights[j]);
    }
  }
  return g;
}

/// Symmetric rule on [-X, X] whose innermost panels are geometrically refined
/// toward 0 (factor 4, `levels` extra panels per side). Restores spectral
/// accuracy for integrands with a cone kink at the origin, e.g. |x| f(x).
inline QuadratureGrid graded_panel_grid(double X, int base_panels, int order, int levels) {
  if (!(X > 0)) throw std::invalid_argument("graded_panel_grid: X must be positive");
  std::vector<double> pos;
  pos.push_back(0.0);
  const double first = X / base_panels;
  for (int j = levels; j >= 1; --j) pos.push_back(first / std::pow(4.0, j));
  for (int p = 1; p <= base_panels; ++p) pos.push_back(p * first);
  std::vector<double> edges;
  for (std::size_t i = pos.size(); i-- > 1;) edges.push_back(-pos[i]);
  for (double v : pos) edges.push_back(v);
  return panel_grid_edges(edges, order);
}

/// Default half-width for L^p boxes: functions of Hermite degree <= N decay
/// like a Gaussian beyond the turning point sqrt(2(2N+d)); the +6 margin puts
/// the tail below 1e-16.
inline double default_box_halfwidth(int degree, int dim) {
  return std::sqrt(2.0 * (2.0 * degree + dim)) + 6.0;
}

/// Tensor product of one 1-d rule with itself across `dim` axes. Points are
/// enumerated by a flat row-major index and decoded on the fly; nothing of
/// size size()^dim is materialized.
struct TensorGrid {
  int dim = 1;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t axis_size() const { return nodes.size(); }

  std::size_t size() const {
    std::size_t s = 1;
    for (int k = 0; k < dim; ++k) s *= nodes.size();
    return s;
  }

  // Decode flat index to per-axis node indices (row-major, axis 0 slowest).
  void decode(std::size_t flat, std::vector<std::size_t>& idx) const {
    idx.resize(static_cast<std::size_t>(dim));
    for (int k = dim - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = flat % nodes.size();
      flat /= nodes.size();
    }
  }

  void point(const std::vector<std::size_t>& idx, std::vector<double>& x) const {
    x.resize(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) x[static_cast<std::size_t>(k)] = nodes[idx[static_cast<std::size_t>(k)]];
  }

  double weight(const std::vector<std::size_t>& idx) const {
    double w = 1.0;
    for (int k = 0; k < dim; ++k) w *= weights[idx[static_cast<std::size_t>(k)]];
    return w;
  }
};

inline TensorGrid tensor_grid(int dim, const QuadratureGrid& g1) {
  if (dim < 1) throw std::invalid_argument("tensor_grid: dim < 1");
  TensorGrid g;
  g.dim = dim;
  g.nodes = g1.nodes;
  g.weights = g1.weights;
  return g;
}

}  // namespace hermite_riesz
