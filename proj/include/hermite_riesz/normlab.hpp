#pragma once

// L^p norms of synthesized expansions, empirical operator-norm sweeps, and
// the bilinear-embedding integral.
//
// Heavy evaluation is batched: basis values over a tensor grid form a tile
// of the synthesis matrix B (at most 32k points per tile, ~50 MB transient),
// and all sample columns are pushed through one Eigen product per tile.
// Tiles may run on worker threads (HERMITE_RIESZ_THREADS caps the pool);
// per-tile partial sums are reduced in tile order so results are
// byte-identical for every thread count.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hermite_riesz/basis.hpp"
#include "hermite_riesz/report.hpp"
#include "hermite_riesz/spectral.hpp"

namespace hermite_riesz {

/// Parameters of an operator-norm sweep.
struct NormSweepConfig {
  std::vector<int> dims = {1, 2, 3};
  std::vector<double> exponents = {1.25, 1.5, 2.0, 3.0, 4.0, 8.0};
  int degree = 6;
  int points_per_axis = 0;  // 0 = per-dimension default
  int samples = 50;
  std::uint64_t seed = 42;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Distinct deterministic stream per (seed, tag) cell.
inline std::uint64_t cell_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(splitmix64(base) ^ splitmix64(tag));
}

inline int thread_count() {
  if (const char* env = std::getenv("HERMITE_RIESZ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Run fn(i) for i in [0, n); worker results must go to per-index slots.
template <class F>
inline void parallel_for(std::size_t n, F&& fn) {
  const int workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Reproducible standard normals: Box-Muller over mt19937_64. Avoids
/// std::normal_distribution, whose output sequence is not pinned by the
/// standard, so reports stay byte-identical across library vendors.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}

  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * kPi * u2;
    spare_ = r * std::sin(th);
    have_ = true;
    return r * std::cos(th);
  }

 private:
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 eng_;
  bool have_ = false;
  double spare_ = 0.0;
};

/// Tensor box grid used by the sweeps; sized so degree-`degree_out`
/// expansions are resolved to well below the one-sided-check tolerances.
inline TensorGrid sweep_tensor_grid(int d, int degree_out, int points_per_axis = 0) {
  const double X = default_box_halfwidth(degree_out, d);
  int panels = 8, order = 8;
  if (points_per_axis > 0) {
    order = 8;
    panels = std::max(1, points_per_axis / order);
  } else if (d == 1) {
    panels = 32;
  } else if (d == 2) {
    panels = 12;
  }
  return tensor_grid(d, panel_grid(X, panels, order));
}

/// Tile-blocked synthesis of many coefficient columns over a tensor grid.
class TileSynthesizer {
 public:
  static constexpr std::size_t kTilePoints = 32768;

  TileSynthesizer(TensorGrid grid, std::vector<MultiIndex> support)
      : grid_(std::move(grid)), support_(std::move(support)) {
    int deg = 0;
    for (const auto& n : support_) deg = std::max(deg, order_of(n));
    table_.resize(grid_.nodes.size());
    for (std::size_t j = 0; j < grid_.nodes.size(); ++j)
      table_[j] = hermite_function_table(deg, grid_.nodes[j]);
  }

  const std::vector<MultiIndex>& support() const { return support_; }
  std::size_t points() const { return grid_.size(); }
  std::size_t tiles() const { return (points() + kTilePoints - 1) / kTilePoints; }

  /// Fill basis values B (rows = tile points, cols = support), the tensor
  /// weights, and |x| per point, for tile index `tile`. Returns row count.
  std::size_t fill_tile(std::size_t tile, Eigen::MatrixXd& B, Eigen::VectorXd& w,
                        Eigen::VectorXd& xnorm) const {
    const std::size_t lo = tile * kTilePoints;
    const std::size_t hi = std::min(points(), lo + kTilePoints);
    if (lo >= hi) return 0;
    const std::size_t rows = hi - lo;
    const std::size_t cols = support_.size();
    const int d = grid_.dim;
    B.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    w.resize(static_cast<Eigen::Index>(rows));
    xnorm.resize(static_cast<Eigen::Index>(rows));
    std::vector<std::size_t> idx;
    grid_.decode(lo, idx);
    for (std::size_t r = 0; r < rows; ++r) {
      double wp = 1.0, x2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const std::size_t jk = idx[static_cast<std::size_t>(k)];
        wp *= grid_.weights[jk];
        x2 += grid_.nodes[jk] * grid_.nodes[jk];
      }
      w(static_cast<Eigen::Index>(r)) = wp;
      xnorm(static_cast<Eigen::Index>(r)) = std::sqrt(x2);
      for (std::size_t c = 0; c < cols; ++c) {
        double prod = 1.0;
        for (int k = 0; k < d; ++k)
          prod *= table_[idx[static_cast<std::size_t>(k)]]
                        [static_cast<std::size_t>(support_[c][static_cast<std::size_t>(k)])];
        B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = prod;
      }
      // Row-major odometer step.
      for (int k = d - 1; k >= 0; --k) {
        if (++idx[static_cast<std::size_t>(k)] < grid_.nodes.size()) break;
        idx[static_cast<std::size_t>(k)] = 0;
      }
    }
    return rows;
  }

  const TensorGrid& grid() const { return grid_; }

 private:
  TensorGrid grid_;
  std::vector<MultiIndex> support_;
  std::vector<std::vector<double>> table_;  // table_[node][n] = h_n(node)
};

namespace detail {

inline double pow_fast(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  if (p == 3.0) return v * v * v;
  if (p == 4.0) {
    const double s = v * v;
    return s * s;
  }
  if (p == 8.0) {
    double s = v * v;
    s *= s;
    return s * s;
  }
  return std::pow(v, p);
}

// For each sample and exponent, sum w * value^p over the grid, where value is
// the pointwise Euclidean length of the sample's ncomp columns, optionally
// multiplied by |x|. Column layout: sample s owns columns [s*ncomp, (s+1)*ncomp).
inline std::vector<double> accumulate_lp_powers(const TileSynthesizer& synth,
                                                const Eigen::MatrixXd& C, int ncomp,
                                                const std::vector<double>& ps,
                                                bool abs_x_weight) {
  const std::size_t nsamp = static_cast<std::size_t>(C.cols()) / static_cast<std::size_t>(ncomp);
  const std::size_t np = ps.size();
  const std::size_t ntiles = synth.tiles();
  std::vector<std::vector<double>> partial(ntiles,
                                           std::vector<double>(nsamp * np, 0.0));
  parallel_for(ntiles, [&](std::size_t tile) {
    Eigen::MatrixXd B;
    Eigen::VectorXd w, xn;
    const std::size_t rows = synth.fill_tile(tile, B, w, xn);
    if (rows == 0) return;
    Eigen::MatrixXd V;
    V.noalias() = B * C;
    auto& acc = partial[tile];
    for (std::size_t r = 0; r < rows; ++r) {
      const double wr = w(static_cast<Eigen::Index>(r));
      const double xr = xn(static_cast<Eigen::Index>(r));
      for (std::size_t s = 0; s < nsamp; ++s) {
        double val;
        if (ncomp == 1) {
          val = std::abs(V(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)));
        } else {
          double sq = 0.0;
          for (int j = 0; j < ncomp; ++j) {
            const double v = V(static_cast<Eigen::Index>(r),
                               static_cast<Eigen::Index>(s * static_cast<std::size_t>(ncomp) +
                                                         static_cast<std::size_t>(j)));
            sq += v * v;
          }
          val = std::sqrt(sq);
        }
        if (abs_x_weight) val *= xr;
        for (std::size_t ip = 0; ip < np; ++ip)
          acc[s * np + ip] += wr * pow_fast(val, ps[ip]);
      }
    }
  });
  std::vector<double> out(nsamp * np, 0.0);
  for (const auto& part : partial)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += part[k];
  return out;
}

inline std::vector<MultiIndex> support_union(const std::vector<const SpectralFn*>& fns) {
  std::set<MultiIndex> keys;
  for (const SpectralFn* f : fns)
    for (const auto& [n, c] : f->coef) keys.insert(n);
  return {keys.begin(), keys.end()};
}

}  // namespace detail

/// ||f||_p over the tensor box (panel quadrature of |f|^p, then p-th root).
inline double lp_norm(const SpectralFn& f, double p, const TensorGrid& grid) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
  if (f.coef.empty()) return 0.0;
  TileSynthesizer synth(grid, detail::support_union({&f}));
  Eigen::MatrixXd C(static_cast<Eigen::Index>(synth.support().size()), 1);
  for (std::size_t r = 0; r < synth.support().size(); ++r)
    C(static_cast<Eigen::Index>(r), 0) = f.at(synth.support()[r]);
  const auto acc = detail::accumulate_lp_powers(synth, C, 1, {p}, false);
  return std::pow(acc[0], 1.0 / p);
}

/// Vector L^p norm: the Euclidean length of the component tuple is taken
/// pointwise before the p-th power.
inline double lp_norm(const SpectralVecFn& g, double p, const TensorGrid& grid) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
  if (g.comp.empty()) return 0.0;
  if (grid.dim != g.dim()) throw std::invalid_argument("lp_norm: grid dimension mismatch");
  std::vector<const SpectralFn*> ptrs;
  for (const auto& f : g.comp) ptrs.push_back(&f);
  const std::vector<MultiIndex> support = detail::support_union(ptrs);
  if (support.empty()) return 0.0;
  TileSynthesizer synth(grid, support);
  const int ncomp = static_cast<int>(g.comp.size());
  Eigen::MatrixXd C(static_cast<Eigen::Index>(support.size()),
                    static_cast<Eigen::Index>(ncomp));
  for (std::size_t r = 0; r < support.size(); ++r)
    for (int j = 0; j < ncomp; ++j)
      C(static_cast<Eigen::Index>(r), j) = g.comp[static_cast<std::size_t>(j)].at(support[r]);
  const auto acc = detail::accumulate_lp_powers(synth, C, ncomp, {p}, false);
  return std::pow(acc[0], 1.0 / p);
}

/// S f (x) = |x| (L^{-1/2} f)(x) at the given points.
inline std::vector<double> apply_S(const SpectralFn& f,
                                   const std::vector<std::vector<double>>& points) {
  std::vector<double> vals = synthesize(apply_multiplier(multiplier_inv_sqrt_lambda(), f), points);
  for (std::size_t p = 0; p < points.size(); ++p) {
    double x2 = 0.0;
    for (double v : points[p]) x2 += v * v;
    vals[p] *= std::sqrt(x2);
  }
  return vals;
}

enum class OperatorKind { S, R, R_prime, R_tilde, R_star, U_a };

inline std::string operator_name(OperatorKind op) {
  switch (op) {
    case OperatorKind::S: return "S";
    case OperatorKind::R: return "R";
    case OperatorKind::R_prime: return "R_prime";
    case OperatorKind::R_tilde: return "R_tilde";
    case OperatorKind::R_star: return "R_star";
    case OperatorKind::U_a: return "U_a";
  }
  return "?";
}

namespace detail {

struct AppliedOperator {
  std::vector<MultiIndex> support;
  Eigen::MatrixXd C;  // support.size() x (samples * ncomp)
  int ncomp = 1;
  bool abs_x_weight = false;
};

// Apply `op` in coefficient space to every sample column of C_in.
inline AppliedOperator apply_operator(OperatorKind op, int d,
                                      const std::vector<MultiIndex>& supp_in,
                                      const Eigen::MatrixXd& C_in, int degree_in,
                                      double a) {
  AppliedOperator out;
  const std::size_t nsamp = static_cast<std::size_t>(C_in.cols());
  if (op == OperatorKind::S || op == OperatorKind::U_a) {
    out.support = supp_in;
    out.ncomp = 1;
    out.abs_x_weight = op == OperatorKind::S;
    out.C = C_in;
    for (std::size_t r = 0; r < supp_in.size(); ++r) {
      const double lam = eigenvalue_lambda(order_of(supp_in[r]), d);
      const double fac = op == OperatorKind::S ? 1.0 / std::sqrt(lam)
                                               : std::sqrt(lam / (lam + 2.0 * a));
      out.C.row(static_cast<Eigen::Index>(r)) *= fac;
    }
    return out;
  }
  // Ladder-valued vector operators.
  out.support = multi_indices_up_to(d, degree_in + 1);
  out.ncomp = d;
  std::map<MultiIndex, std::size_t> row_of;
  for (std::size_t r = 0; r < out.support.size(); ++r) row_of[out.support[r]] = r;
  out.C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.support.size()),
                                static_cast<Eigen::Index>(nsamp * static_cast<std::size_t>(d)));
  const bool down = op == OperatorKind::R;
  for (std::size_t r = 0; r < supp_in.size(); ++r) {
    const MultiIndex& n = supp_in[r];
    const double lam = eigenvalue_lambda(order_of(n), d);
    double mult = 0.0;
    switch (op) {
      case OperatorKind::R: mult = 1.0 / std::sqrt(lam); break;
      case OperatorKind::R_tilde: mult = 1.0 / std::sqrt(lam); break;
      case OperatorKind::R_star: mult = 1.0 / std::sqrt(lam + 2.0); break;
      case OperatorKind::R_prime:
        mult = 1.0 / std::sqrt(eigenvalue_lambda_prime(order_of(n), d));
        break;
      default: break;
    }
    for (int i = 0; i < d; ++i) {
      const int ni = n[static_cast<std::size_t>(i)];
      MultiIndex m = n;
      double ladder;
      if (down) {
        if (ni == 0) continue;
        --m[static_cast<std::size_t>(i)];
        ladder = std::sqrt(2.0 * ni);
      } else {
        ++m[static_cast<std::size_t>(i)];
        ladder = std::sqrt(2.0 * (ni + 1));
      }
      const std::size_t rout = row_of.at(m);
      for (std::size_t s = 0; s < nsamp; ++s)
        out.C(static_cast<Eigen::Index>(rout),
              static_cast<Eigen::Index>(s * static_cast<std::size_t>(d) +
                                        static_cast<std::size_t>(i))) +=
            mult * ladder * C_in(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
    }
  }
  return out;
}

}  // namespace detail

/// Max of ||op f||_p / ||f||_p over `cfg.samples` random f (i.i.d. standard
/// normal coefficients on |n| <= degree), for every p in `ps` at once.
/// Empirical lower bounds on the operator norm; the certified direction is
/// only that they stay below the asserted constants.
inline std::vector<double> empirical_norm_sweep(OperatorKind op, int d,
                                                const std::vector<double>& ps,
                                                const NormSweepConfig& cfg,
                                                double a = 1.0) {
  if (d < 1) throw std::invalid_argument("empirical_norm_sweep: d < 1");
  for (double p : ps)
    if (!(p >= 1.0)) throw std::invalid_argument("empirical_norm_sweep: p < 1");
  const std::vector<MultiIndex> supp_in = multi_indices_up_to(d, cfg.degree);
  const std::size_t nsamp = static_cast<std::size_t>(cfg.samples);
  Eigen::MatrixXd C_in(static_cast<Eigen::Index>(supp_in.size()),
                       static_cast<Eigen::Index>(nsamp));
  NormalSampler rng(detail::cell_seed(
      cfg.seed, static_cast<std::uint64_t>(static_cast<int>(op) * 64 + d)));
  for (std::size_t s = 0; s < nsamp; ++s)
    for (std::size_t r = 0; r < supp_in.size(); ++r)
      C_in(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = rng();

  const TensorGrid grid = sweep_tensor_grid(d, cfg.degree + 1, cfg.points_per_axis);
  TileSynthesizer synth_in(grid, supp_in);
  const auto den = detail::accumulate_lp_powers(synth_in, C_in, 1, ps, false);

  const detail::AppliedOperator ap =
      detail::apply_operator(op, d, supp_in, C_in, cfg.degree, a);
  TileSynthesizer synth_out(grid, ap.support);
  const auto num =
      detail::accumulate_lp_powers(synth_out, ap.C, ap.ncomp, ps, ap.abs_x_weight);

  std::vector<double> max_ratio(ps.size(), 0.0);
  for (std::size_t s = 0; s < nsamp; ++s)
    for (std::size_t ip = 0; ip < ps.size(); ++ip) {
      const double fp = std::pow(den[s * ps.size() + ip], 1.0 / ps[ip]);
      const double op_p = std::pow(num[s * ps.size() + ip], 1.0 / ps[ip]);
      if (fp > 0.0) max_ratio[ip] = std::max(max_ratio[ip], op_p / fp);
    }
  return max_ratio;
}

inline double empirical_norm(OperatorKind op, int d, double p, const NormSweepConfig& cfg,
                             double a = 1.0) {
  return empirical_norm_sweep(op, d, {p}, cfg, a)[0];
}

/// Time grid for the bilinear integral: plain Gauss panels on [0, T] with T
/// past the slowest decay e^{-2 sqrt(3d-2) t}.
inline QuadratureGrid bilinear_time_grid(int d, int panels = 20, int order = 8) {
  const double T = 12.0 / std::sqrt(3.0 * d - 2.0) + 2.0;
  return panel_grid_interval(0.0, T, panels, order);
}

/// int_0^inf int |P_t f(x)|_* |Q_t g(x)|_* dx t dt by tensor quadrature.
/// All fields (flow, time derivative, gradient) are applied spectrally; the
/// synthesis matrix per tile is shared across the whole time grid.
inline double bilinear_embedding_lhs(const SpectralFn& f, const SpectralVecFn& g,
                                     const TensorGrid& grid_x,
                                     const QuadratureGrid& grid_t) {
  const int d = f.dim;
  if (g.dim() != d) throw std::invalid_argument("bilinear_embedding_lhs: dimension mismatch");
  int deg = f.degree();
  for (const auto& comp : g.comp) deg = std::max(deg, comp.degree());
  const std::vector<MultiIndex> support = multi_indices_up_to(d, deg + 1);
  std::map<MultiIndex, std::size_t> row_of;
  for (std::size_t r = 0; r < support.size(); ++r) row_of[support[r]] = r;

  // Column layout per scalar field block: id, d/dt, then d spatial partials.
  const int block = 2 + d;
  const int nblocks = 1 + d;  // f then the d components of g
  const std::size_t nt = grid_t.nodes.size();
  std::vector<Eigen::MatrixXd> C_t(nt);
  for (std::size_t jt = 0; jt < nt; ++jt) {
    const double t = grid_t.nodes[jt];
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(support.size()),
        static_cast<Eigen::Index>(block * nblocks));
    auto scatter = [&](const SpectralFn& fn, int col) {
      for (const auto& [n, c] : fn.coef) {
        auto it = row_of.find(n);
        if (it != row_of.end())
          C(static_cast<Eigen::Index>(it->second), col) += c;
      }
    };
    auto fill_block = [&](const SpectralFn& base, Flow flow, int col0) {
      const SpectralFn id = flow == Flow::P ? semigroup_P(t, base) : semigroup_Q(t, base);
      const SpectralFn dt =
          flow == Flow::P ? semigroup_P_dt(t, base) : semigroup_Q_dt(t, base);
      scatter(id, col0);
      scatter(dt, col0 + 1);
      for (int i = 1; i <= d; ++i) scatter(partial_x(i, id), col0 + 1 + i);
    };
    fill_block(f, Flow::P, 0);
    for (int j = 0; j < d; ++j)
      fill_block(g.comp[static_cast<std::size_t>(j)], Flow::Q, block * (1 + j));
    C_t[jt] = std::move(C);
  }

  TileSynthesizer synth(grid_x, support);
  const std::size_t ntiles = synth.tiles();
  std::vector<std::vector<double>> partial(ntiles, std::vector<double>(nt, 0.0));
  detail::parallel_for(ntiles, [&](std::size_t tile) {
    Eigen::MatrixXd B;
    Eigen::VectorXd w, xn;
    const std::size_t rows = synth.fill_tile(tile, B, w, xn);
    if (rows == 0) return;
    Eigen::MatrixXd V;
    for (std::size_t jt = 0; jt < nt; ++jt) {
      V.noalias() = B * C_t[jt];
      double acc = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        const double rw = xn(static_cast<Eigen::Index>(r)) * xn(static_cast<Eigen::Index>(r)) +
                          2.0 * d;
        auto star_sq = [&](int col0) {
          const double v = V(static_cast<Eigen::Index>(r), col0);
          const double vt = V(static_cast<Eigen::Index>(r), col0 + 1);
          double s = rw * v * v + vt * vt;
          for (int i = 0; i < d; ++i) {
            const double vx = V(static_cast<Eigen::Index>(r), col0 + 2 + i);
            s += vx * vx;
          }
          return s;
        };
        const double A = star_sq(0);
        double Bq = 0.0;
        for (int j = 0; j < d; ++j) Bq += star_sq(block * (1 + j));
        acc += w(static_cast<Eigen::Index>(r)) * std::sqrt(A * Bq);
      }
      partial[tile][jt] = acc;
    }
  });
  double total = 0.0;
  for (std::size_t jt = 0; jt < nt; ++jt) {
    double space = 0.0;
    for (std::size_t tile = 0; tile < ntiles; ++tile) space += partial[tile][jt];
    total += grid_t.weights[jt] * grid_t.nodes[jt] * space;
  }
  return total;
}

inline double p_star(double p) { return std::max(p, p / (p - 1.0)); }

/// Both links of the pairing chain: the exact |sum_i <R'_i f, g_i>| is
/// checked against its time-integral majorant
/// 4 int sum_i |<delta_i^* P_t f, d/dt Q_t g_i>| t dt and against
/// 36 (p*-1) ||f||_p ||g||_q. The report's bound is the smaller majorant.
inline Report theorem2_chain_check(const SpectralFn& f, const SpectralVecFn& g, double p,
                                   const TensorGrid& grid_x, const QuadratureGrid& grid_t,
                                   double tol = 1e-8) {
  const int d = f.dim;
  if (g.dim() != d) throw std::invalid_argument("theorem2_chain_check: dimension mismatch");
  double lhs = 0.0;
  for (int i = 1; i <= d; ++i)
    lhs += inner(riesz_prime(i, f), g.comp[static_cast<std::size_t>(i) - 1]);
  lhs = std::abs(lhs);
  double rhs_time = 0.0;
  for (std::size_t j = 0; j < grid_t.nodes.size(); ++j) {
    const double t = grid_t.nodes[j];
    double s = 0.0;
    for (int i = 1; i <= d; ++i)
      s += std::abs(inner(delta_star(i, semigroup_P(t, f)),
                          semigroup_Q_dt(t, g.comp[static_cast<std::size_t>(i) - 1])));
    rhs_time += grid_t.weights[j] * t * s;
  }
  rhs_time *= 4.0;
  const double q = p / (p - 1.0);
  const double rhs_norm = 36.0 * (p_star(p) - 1.0) * lp_norm(f, p, grid_x) *
                          lp_norm(g, q, grid_x);
  return make_report("normlab/th2-chain",
                     {{"d", fmt_param(d)},
                      {"p", fmt_param(p)},
                      {"rhs_time", fmt_param(rhs_time)},
                      {"rhs_norm", fmt_param(rhs_norm)}},
                     lhs, std::min(rhs_time, rhs_norm), tol);
}

struct TriangleResult {
  double max_identity_dev = 0.0;     // |R~_i f - (R^1_i f + R^2_i f)| pointwise
  double max_triangle_violation = 0.0;  // positive part of |R~f| - |R^1 f| - |R^2 f|
  double max_r2_dev = 0.0;           // | |R^2 f(x)| - 2|x||L^{-1/2}f(x)| |
};

/// Pointwise decomposition R~_i = -delta_i L^{-1/2} + 2 x_i L^{-1/2}:
/// the identity, the triangle bound it implies, and the exact modulus of the
/// multiplication part.
inline TriangleResult triangle_decomposition_check(
    const SpectralFn& f, const std::vector<std::vector<double>>& pts) {
  const int d = f.dim;
  const SpectralFn mf = apply_multiplier(multiplier_inv_sqrt_lambda(), f);
  const std::vector<double> mvals = synthesize(mf, pts);
  TriangleResult out;
  std::vector<std::vector<double>> tilde(static_cast<std::size_t>(d)),
      r1(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    tilde[static_cast<std::size_t>(i) - 1] = synthesize(riesz_tilde(i, f), pts);
    r1[static_cast<std::size_t>(i) - 1] = synthesize(-1.0 * delta(i, mf), pts);
  }
  for (std::size_t pI = 0; pI < pts.size(); ++pI) {
    double x2 = 0.0;
    for (double v : pts[pI]) x2 += v * v;
    const double xn = std::sqrt(x2);
    double t2 = 0.0, a2 = 0.0, b2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double ti = tilde[static_cast<std::size_t>(i)][pI];
      const double ai = r1[static_cast<std::size_t>(i)][pI];
      const double bi = 2.0 * pts[pI][static_cast<std::size_t>(i)] * mvals[pI];
      out.max_identity_dev = std::max(out.max_identity_dev, std::abs(ti - (ai + bi)));
      t2 += ti * ti;
      a2 += ai * ai;
      b2 += bi * bi;
    }
    out.max_triangle_violation = std::max(
        out.max_triangle_violation, std::sqrt(t2) - std::sqrt(a2) - std::sqrt(b2));
    out.max_r2_dev = std::max(out.max_r2_dev,
                              std::abs(std::sqrt(b2) - 2.0 * xn * std::abs(mvals[pI])));
  }
  return out;
}

}  // namespace hermite_riesz
