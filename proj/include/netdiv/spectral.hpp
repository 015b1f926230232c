#pragma once

// Sparse symmetric eigen-kernels over graph snapshots: the spectral norm of
// the adjacency matrix, extremal eigenvalues of the degree-normalized
// adjacency Z = D^{-1/2} A D^{-1/2}, and the algebraic connectivity
// lambda_2[L]. Below dense_fallback_threshold everything routes through the
// dense tridiagonalize+QL solver; above it, power iteration handles the
// Perron pair and Lanczos with full reorthogonalization the extremal sets.
// Start vectors derive from the seed, so identical inputs give identical
// iteration paths.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netdiv/dense.hpp"
#include "netdiv/errors.hpp"
#include "netdiv/graph.hpp"
#include "netdiv/prng.hpp"

namespace netdiv {

struct SpectralOptions {
  double rel_tolerance = 1e-9;
  std::uint32_t max_iterations = 10000;
  std::uint32_t r = 50;                      // extremal eigenvalue count
  std::uint64_t seed = 1;
  std::uint32_t dense_fallback_threshold = 512;
  std::uint32_t max_lanczos_dim = 0;         // 0 = auto
  // Accept the fixed-budget Krylov estimate instead of throwing when the
  // requested residual is unreachable (top-r sets deep in a quasi-continuous
  // bulk); achieved residuals are reported either way.
  bool allow_unconverged = false;

  void validate() const {
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0))
      throw config_error("rel_tolerance must be in (0, 1)");
    if (r < 1) throw config_error("r must be >= 1");
  }
};

struct EigenResult {
  std::vector<double> values;                 // sorted by descending |value|
  std::vector<std::vector<double>> vectors;   // empty unless requested
  std::vector<double> residuals;              // ||Mx - vx|| / ||M|| per pair
};

namespace spectral_detail {

// The operators share a snapshot-backed matvec.
enum class OpKind { Adjacency, NormalizedAdjacency, ShiftedLaplacian, Laplacian };

struct SnapshotOp {
  const GraphSnapshot* g;
  OpKind kind;
  double shift = 0.0;                 // diagonal shift (Adjacency) or c (ShiftedLaplacian)
  std::vector<double> inv_sqrt_deg;   // NormalizedAdjacency only

  std::uint32_t dim() const { return g->n; }

  // Upper bound on ||M||_2, used to scale residual tolerances.
  double norm_bound() const {
    switch (kind) {
      case OpKind::Adjacency:
        return static_cast<double>(g->max_degree()) + shift;
      case OpKind::NormalizedAdjacency:
        return 1.0;
      case OpKind::ShiftedLaplacian:
        return shift;  // c >= ||cI - L||
      case OpKind::Laplacian:
        return 2.0 * static_cast<double>(g->max_degree());
    }
    return 1.0;
  }

  void apply(const double* x, double* y) const {
    const GraphSnapshot& s = *g;
    switch (kind) {
      case OpKind::Adjacency:
        for (NodeId u = 0; u < s.n; ++u) {
          double acc = shift * x[u];
          const std::size_t b = s.offsets[u], e = s.offsets[u + 1];
          for (std::size_t j = b; j < e; ++j)
            acc += static_cast<double>(s.multiplicity[j]) * x[s.neighbors[j]];
          y[u] = acc;
        }
        break;
      case OpKind::NormalizedAdjacency:
        for (NodeId u = 0; u < s.n; ++u) {
          double acc = 0.0;
          const std::size_t b = s.offsets[u], e = s.offsets[u + 1];
          for (std::size_t j = b; j < e; ++j) {
            const NodeId v = s.neighbors[j];
            acc += static_cast<double>(s.multiplicity[j]) * inv_sqrt_deg[v] * x[v];
          }
          y[u] = acc * inv_sqrt_deg[u];
        }
        break;
      case OpKind::ShiftedLaplacian:
        for (NodeId u = 0; u < s.n; ++u) {
          double acc = (shift - static_cast<double>(s.degree[u])) * x[u];
          const std::size_t b = s.offsets[u], e = s.offsets[u + 1];
          for (std::size_t j = b; j < e; ++j)
            acc += static_cast<double>(s.multiplicity[j]) * x[s.neighbors[j]];
          y[u] = acc;
        }
        break;
      case OpKind::Laplacian:
        for (NodeId u = 0; u < s.n; ++u) {
          double acc = static_cast<double>(s.degree[u]) * x[u];
          const std::size_t b = s.offsets[u], e = s.offsets[u + 1];
          for (std::size_t j = b; j < e; ++j)
            acc -= static_cast<double>(s.multiplicity[j]) * x[s.neighbors[j]];
          y[u] = acc;
        }
        break;
    }
  }

  Matrix materialize() const {
    const GraphSnapshot& s = *g;
    Matrix m(s.n);
    for (NodeId u = 0; u < s.n; ++u) {
      const std::size_t b = s.offsets[u], e = s.offsets[u + 1];
      for (std::size_t j = b; j < e; ++j) {
        const NodeId v = s.neighbors[j];
        const double w = static_cast<double>(s.multiplicity[j]);
        switch (kind) {
          case OpKind::Adjacency:
            m(u, v) = w;
            break;
          case OpKind::NormalizedAdjacency:
            m(u, v) = w * inv_sqrt_deg[u] * inv_sqrt_deg[v];
            break;
          case OpKind::ShiftedLaplacian:
            m(u, v) = w;
            break;
          case OpKind::Laplacian:
            m(u, v) = -w;
            break;
        }
      }
      if (kind == OpKind::Adjacency) m(u, u) += shift;
      if (kind == OpKind::ShiftedLaplacian) m(u, u) = shift - static_cast<double>(s.degree[u]);
      if (kind == OpKind::Laplacian) m(u, u) = static_cast<double>(s.degree[u]);
    }
    return m;
  }
};

// Descending |value|, positive first among magnitude ties.
inline bool abs_desc(double x, double y) {
  const double ax = std::fabs(x), ay = std::fabs(y);
  if (ax != ay) return ax > ay;
  return x > y;
}

// Index order by |value| descending; windows of near-equal magnitude are
// normalized to value-descending so +1/-1 style pairs order deterministically
// despite rounding noise.
inline std::vector<std::size_t> order_by_abs_desc(const std::vector<double>& vals) {
  std::vector<std::size_t> order(vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return abs_desc(vals[x], vals[y]); });
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    double lo = std::fabs(vals[order[i]]);
    while (j < order.size()) {
      const double aj = std::fabs(vals[order[j]]);
      if (aj < lo - 1e-12 * std::max(1.0, lo)) break;
      lo = std::min(lo, aj);
      ++j;
    }
    std::sort(order.begin() + i, order.begin() + j,
              [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
    i = j;
  }
  return order;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void axpy(double c, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scale(std::span<double> x, double c) {
  for (double& v : x) v *= c;
}

inline void project_out(std::span<double> w, const std::vector<std::vector<double>>& basis) {
  for (const auto& q : basis) axpy(-dot(q, w), q, w);
}

inline std::vector<double> seeded_positive_vector(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = 0.1 + rng.next_double();
  scale(x, 1.0 / norm2(x));
  return x;
}

struct PowerResult {
  double value = 0.0;       // eigenvalue of A
  std::vector<double> vec;
  double residual = 0.0;    // ||A x - value x||
  bool converged = false;
  std::uint32_t iterations = 0;
};

// Power iteration for the Perron pair of A, run on the shifted operator
// A + sigma I from a positive start so iterates stay nonnegative. The shift
// tracks the current eigenvalue estimate: sigma ~ lambda_1 keeps the most
// negative eigenvalue from oscillating while leaving the convergence ratio
// near (lambda_1 + lambda_2) / (2 lambda_1), far better on hub-dominated
// graphs than a max-degree shift.
inline PowerResult power_iteration_perron(const GraphSnapshot& g, std::uint64_t seed,
                                          std::uint32_t max_iterations, double rel_tolerance) {
  const std::uint32_t n = g.n;
  std::vector<double> x = seeded_positive_vector(n, seed);
  std::vector<double> y(n);
  SnapshotOp op{&g, OpKind::Adjacency, 1.0, {}};

  PowerResult best;
  for (std::uint32_t it = 0; it < max_iterations; ++it) {
    op.apply(x.data(), y.data());
    const double lambda = dot(x, y) - op.shift;  // Rayleigh estimate of A
    double res = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double d = y[i] - (lambda + op.shift) * x[i];
      res += d * d;
    }
    res = std::sqrt(res);
    if (it == 0 || res < best.residual) {
      best.value = lambda;
      best.vec = x;
      best.residual = res;
      best.iterations = it + 1;
    }
    if (res <= rel_tolerance * std::max(lambda, 1.0)) {
      best.converged = true;
      return best;
    }
    const double ny = norm2(y);
    if (ny < 1e-300) {
      x = seeded_positive_vector(n, seed + 0x9E37 + it);
      continue;
    }
    x.swap(y);
    scale(x, 1.0 / ny);
    op.shift = std::max(1.0, lambda);
  }
  return best;
}

struct LanczosOptions {
  std::uint32_t wanted = 1;          // extremal count, by |theta|
  double abs_tol = 1e-9;             // residual bound target
  double rel_tol_top = 0.0;          // alternative bound: fraction of |theta_1|
  std::uint32_t max_dim = 0;         // 0 = auto
  std::uint64_t seed = 1;
  bool want_vectors = false;
};

struct RitzPair {
  double value;
  double residual;
  std::vector<double> vector;  // empty unless requested
};

// Lanczos with full reorthogonalization (two MGS passes per step) against
// both the Krylov basis and the supplied deflation vectors. Returns the
// `wanted` Ritz pairs of largest |value| once their residual bounds drop
// below the tolerance, or the best available set at max_dim.
template <typename Op>
inline std::vector<RitzPair> lanczos_extremal(const Op& op, const LanczosOptions& lopt,
                                              const std::vector<std::vector<double>>& deflation,
                                              bool* converged_out = nullptr) {
  const std::uint32_t n = op.dim();
  const std::uint32_t free_dim =
      n > static_cast<std::uint32_t>(deflation.size())
          ? n - static_cast<std::uint32_t>(deflation.size())
          : 0;
  const std::uint32_t wanted = std::min(lopt.wanted, free_dim);
  if (converged_out) *converged_out = true;
  if (wanted == 0) return {};

  std::uint32_t max_dim =
      lopt.max_dim ? lopt.max_dim : std::min<std::uint32_t>(std::max(3 * wanted + 30, 150u), 400u);
  max_dim = std::min(max_dim, free_dim);

  std::vector<std::vector<double>> basis;
  basis.reserve(max_dim + 1);
  std::vector<double> alpha, beta;  // after step j: alpha has j entries, beta j-1

  // Full reorthogonalization with a conditional second pass: repeat only
  // when the first pass removed a large fraction of the norm.
  auto reorthogonalize = [&](std::vector<double>& w) {
    const double before = norm2(w);
    project_out(w, deflation);
    project_out(w, basis);
    if (norm2(w) < 0.7071 * before) {
      project_out(w, deflation);
      project_out(w, basis);
    }
  };

  std::vector<double> v = seeded_positive_vector(n, lopt.seed);
  reorthogonalize(v);
  {
    const double nv = norm2(v);
    if (nv < 1e-300) return {};
    scale(v, 1.0 / nv);
  }
  basis.push_back(std::move(v));

  std::vector<double> w(n);
  const double breakdown = 1e-13 * std::max(op.norm_bound(), 1.0);

  std::vector<double> theta;       // wanted Ritz values of current T
  std::vector<double> bound;       // residual bounds |beta_j * s_last|
  Matrix tvec;                     // eigenvectors of T
  std::vector<std::size_t> pick;   // column indices of the wanted pairs

  // Ritz analysis of the leading j-by-j tridiagonal block; blast is the
  // trailing beta, which bounds each pair's residual by |blast * s_last|.
  auto analyze = [&](std::uint32_t j, double blast) -> bool {
    SymEigen te = eigen_tridiag({alpha.begin(), alpha.begin() + j},
                                {beta.begin(), beta.begin() + (j > 0 ? j - 1 : 0)});
    std::vector<std::size_t> order(j);
    for (std::size_t i = 0; i < j; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return abs_desc(te.values[x], te.values[y]);
    });
    const std::uint32_t take = std::min<std::uint32_t>(wanted, j);
    theta.assign(take, 0.0);
    bound.assign(take, 0.0);
    pick.assign(take, 0);
    bool ok = j >= wanted;
    const double top = take > 0 ? std::fabs(te.values[order[0]]) : 0.0;
    const double tol = std::max(lopt.abs_tol, lopt.rel_tol_top * top);
    for (std::uint32_t i = 0; i < take; ++i) {
      const std::size_t idx = order[i];
      theta[i] = te.values[idx];
      pick[i] = idx;
      bound[i] = std::fabs(blast * te.vectors(j - 1, idx));
      if (bound[i] > tol) ok = false;
    }
    tvec = std::move(te.vectors);
    return ok;
  };

  bool converged = false;
  std::uint32_t j = 0;
  for (;;) {
    op.apply(basis[j].data(), w.data());
    const double a = dot(basis[j], w);
    alpha.push_back(a);
    axpy(-a, basis[j], w);
    if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);
    reorthogonalize(w);
    const double b = norm2(w);
    ++j;  // T_j now defined; b is its trailing beta

    const bool at_cap = j >= max_dim;
    const bool check_now = at_cap || b <= breakdown || (j >= wanted && j % 10 == 0);
    if (check_now) converged = analyze(j, b);
    if (converged || at_cap) break;

    if (b <= breakdown) {
      // Invariant subspace exhausted; continue in a fresh direction.
      std::vector<double> fresh = seeded_positive_vector(n, lopt.seed + 0xB5 + j);
      reorthogonalize(fresh);
      const double nf = norm2(fresh);
      if (nf < 1e-12) break;
      scale(fresh, 1.0 / nf);
      beta.push_back(0.0);
      basis.push_back(std::move(fresh));
    } else {
      beta.push_back(b);
      std::vector<double> next = w;
      scale(next, 1.0 / b);
      basis.push_back(std::move(next));
    }
  }
  const std::uint32_t jdim = static_cast<std::uint32_t>(alpha.size());
  if (theta.empty()) converged = analyze(jdim, 0.0);
  if (converged_out) *converged_out = converged;

  // Without vectors the Lanczos bound is the reported residual (it equals
  // the true residual in exact arithmetic); with vectors, assemble them and
  // measure the residual directly.
  std::vector<RitzPair> out(theta.size());
  std::vector<double> rv(n), mp(n);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out[i].value = theta[i];
    out[i].residual = bound[i];
    if (!lopt.want_vectors) continue;
    std::fill(rv.begin(), rv.end(), 0.0);
    for (std::uint32_t k = 0; k < jdim && k < basis.size(); ++k)
      axpy(tvec(k, pick[i]), basis[k], rv);
    const double nn = norm2(rv);
    if (nn > 1e-300) scale(rv, 1.0 / nn);
    op.apply(rv.data(), mp.data());
    double res = 0.0;
    for (std::uint32_t t = 0; t < n; ++t) {
      const double d = mp[t] - theta[i] * rv[t];
      res += d * d;
    }
    out[i].residual = std::sqrt(res);
    out[i].vector = rv;
  }
  std::vector<double> vals(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) vals[i] = out[i].value;
  std::vector<RitzPair> sorted;
  sorted.reserve(out.size());
  for (std::size_t i : order_by_abs_desc(vals)) sorted.push_back(std::move(out[i]));
  return sorted;
}

// Per-component indicator eigenvectors of Z: D^{1/2} 1_C always has
// eigenvalue +1, and for bipartite components the signed variant has -1.
inline void known_extremal_z_vectors(const GraphSnapshot& g,
                                     std::vector<std::vector<double>>& vecs,
                                     std::vector<double>& vals) {
  std::vector<std::uint32_t> comp;
  const std::uint32_t ncomp = component_ids(g, comp);

  // 2-coloring per component; colors stay valid only if bipartite.
  std::vector<std::int8_t> color(g.n, -1);
  std::vector<bool> comp_bipartite(ncomp, true);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.row(u)) {
        if (color[v] == -1) {
          color[v] = static_cast<std::int8_t>(1 - color[u]);
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          comp_bipartite[comp[u]] = false;
        }
      }
    }
  }

  for (std::uint32_t c = 0; c < ncomp; ++c) {
    std::vector<double> plus(g.n, 0.0);
    double nn = 0.0;
    for (NodeId u = 0; u < g.n; ++u) {
      if (comp[u] != c) continue;
      plus[u] = std::sqrt(static_cast<double>(g.degree[u]));
      nn += plus[u] * plus[u];
    }
    if (nn <= 0.0) continue;  // isolated vertex: excluded by callers
    scale(plus, 1.0 / std::sqrt(nn));
    vecs.push_back(plus);
    vals.push_back(1.0);
    if (comp_bipartite[c]) {
      std::vector<double> minus(g.n, 0.0);
      for (NodeId u = 0; u < g.n; ++u) {
        if (comp[u] != c) continue;
        minus[u] = (color[u] == 0 ? 1.0 : -1.0) * std::sqrt(static_cast<double>(g.degree[u]));
      }
      scale(minus, 1.0 / std::sqrt(nn));
      vecs.push_back(std::move(minus));
      vals.push_back(-1.0);
    }
  }
}

// Keep the top `r` by |value|, extending through ties at the cut.
inline void cut_with_ties(EigenResult& res, std::uint32_t r) {
  if (res.values.size() <= r) return;
  const double cut = std::fabs(res.values[r - 1]);
  std::size_t keep = r;
  const double tie_eps = 1e-9 * std::max(1.0, std::fabs(res.values[0]));
  while (keep < res.values.size() && std::fabs(res.values[keep]) >= cut - tie_eps) ++keep;
  res.values.resize(keep);
  if (!res.vectors.empty()) res.vectors.resize(keep);
  res.residuals.resize(keep);
}

inline std::vector<double> inv_sqrt_degrees(const GraphSnapshot& g) {
  std::vector<double> inv(g.n);
  for (NodeId u = 0; u < g.n; ++u) {
    if (g.degree[u] == 0)
      throw std::domain_error("normalized adjacency undefined with isolated vertices");
    inv[u] = 1.0 / std::sqrt(static_cast<double>(g.degree[u]));
  }
  return inv;
}

}  // namespace spectral_detail

// Spectral norm of A with its dominant eigenvector (Perron pair). The
// iterative path runs power iteration on A + sigma*I from a positive start,
// which keeps the iterates (and hence the returned vector) nonnegative.
inline std::pair<double, std::vector<double>> spectral_norm(const GraphSnapshot& g,
                                                            const SpectralOptions& opts = {}) {
  opts.validate();
  if (g.m == 0) throw empty_input_error("spectral_norm: graph has no edges");
  using namespace spectral_detail;

  if (g.n <= opts.dense_fallback_threshold) {
    SnapshotOp op{&g, OpKind::Adjacency, 0.0, {}};
    SymEigen eig = eigen_sym(op.materialize());
    const double lam = eig.values.back();  // Perron root: >= |lambda_min|
    std::vector<double> vec(g.n);
    std::size_t peak = 0;
    for (NodeId u = 0; u < g.n; ++u) {
      vec[u] = eig.vectors(u, g.n - 1);
      if (std::fabs(vec[u]) > std::fabs(vec[peak])) peak = u;
    }
    if (vec[peak] < 0.0) scale(vec, -1.0);
    return {lam, std::move(vec)};
  }

  PowerResult pr =
      power_iteration_perron(g, mix_seed(opts.seed, 0xA1), opts.max_iterations, opts.rel_tolerance);
  if (!pr.converged)
    throw convergence_error("spectral_norm: power iteration did not converge", pr.value,
                            pr.residual);
  return {pr.value, std::move(pr.vec)};
}

// Top-r eigenvalues of Z = D^{-1/2} A D^{-1/2} by |value| (equivalently the
// normalized-Laplacian eigenvalues farthest from 1). The +1 eigenpair of
// every connected component, and the -1 pair of every bipartite component,
// are handled analytically; Lanczos covers the rest.
inline EigenResult normalized_adjacency_top_eigs(const GraphSnapshot& g, std::uint32_t r,
                                                 const SpectralOptions& opts = {},
                                                 bool want_vectors = false) {
  opts.validate();
  using namespace spectral_detail;
  std::vector<double> inv = inv_sqrt_degrees(g);

  EigenResult res;
  if (g.n <= opts.dense_fallback_threshold) {
    SnapshotOp op{&g, OpKind::NormalizedAdjacency, 0.0, inv};
    SymEigen eig = eigen_sym(op.materialize());
    const auto order = order_by_abs_desc(eig.values);
    std::vector<double> x(g.n), y(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      const std::size_t idx = order[i];
      res.values.push_back(eig.values[idx]);
      for (NodeId u = 0; u < g.n; ++u) x[u] = eig.vectors(u, idx);
      op.apply(x.data(), y.data());
      double rr = 0.0;
      for (NodeId u = 0; u < g.n; ++u) {
        const double d = y[u] - eig.values[idx] * x[u];
        rr += d * d;
      }
      res.residuals.push_back(std::sqrt(rr));
      if (want_vectors) res.vectors.push_back(x);
    }
    cut_with_ties(res, r);
    return res;
  }

  std::vector<std::vector<double>> known_vecs;
  std::vector<double> known_vals;
  known_extremal_z_vectors(g, known_vecs, known_vals);

  SnapshotOp op{&g, OpKind::NormalizedAdjacency, 0.0, std::move(inv)};
  LanczosOptions lopt;
  lopt.wanted = r > known_vals.size() ? r - static_cast<std::uint32_t>(known_vals.size()) : 0;
  lopt.abs_tol = opts.rel_tolerance;  // ||Z|| = 1
  lopt.seed = mix_seed(opts.seed, 0x2ED);
  lopt.want_vectors = want_vectors;
  lopt.max_dim = opts.max_lanczos_dim;

  std::vector<RitzPair> ritz;
  if (lopt.wanted > 0) {
    bool converged = false;
    ritz = lanczos_extremal(op, lopt, known_vecs, &converged);
    if (!converged && !opts.allow_unconverged)
      throw convergence_error("normalized_adjacency_top_eigs: Lanczos did not converge",
                              ritz.empty() ? 0.0 : ritz[0].value,
                              ritz.empty() ? 0.0 : ritz[0].residual);
  }

  for (std::size_t i = 0; i < known_vals.size(); ++i) {
    res.values.push_back(known_vals[i]);
    res.residuals.push_back(0.0);
    if (want_vectors) res.vectors.push_back(known_vecs[i]);
  }
  for (auto& rp : ritz) {
    res.values.push_back(rp.value);
    res.residuals.push_back(rp.residual);
    if (want_vectors) res.vectors.push_back(std::move(rp.vector));
  }
  // Re-sort merged lists by |value| descending.
  EigenResult sorted;
  for (std::size_t i : spectral_detail::order_by_abs_desc(res.values)) {
    sorted.values.push_back(res.values[i]);
    sorted.residuals.push_back(res.residuals[i]);
    if (want_vectors) sorted.vectors.push_back(std::move(res.vectors[i]));
  }
  cut_with_ties(sorted, r);
  return sorted;
}

// Top-r adjacency eigenvalues by |value|; used for the eigenvalue power law.
inline EigenResult adjacency_top_abs_eigs(const GraphSnapshot& g, std::uint32_t r,
                                          const SpectralOptions& opts = {}) {
  opts.validate();
  if (g.m == 0) throw empty_input_error("adjacency_top_abs_eigs: graph has no edges");
  using namespace spectral_detail;

  EigenResult res;
  if (g.n <= opts.dense_fallback_threshold) {
    SnapshotOp op{&g, OpKind::Adjacency, 0.0, {}};
    SymEigen eig = eigen_sym(op.materialize());
    const auto order = order_by_abs_desc(eig.values);
    std::vector<double> x(g.n), y(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      const std::size_t idx = order[i];
      res.values.push_back(eig.values[idx]);
      for (NodeId u = 0; u < g.n; ++u) x[u] = eig.vectors(u, idx);
      op.apply(x.data(), y.data());
      double rr = 0.0;
      for (NodeId u = 0; u < g.n; ++u) {
        const double d = y[u] - eig.values[idx] * x[u];
        rr += d * d;
      }
      res.residuals.push_back(std::sqrt(rr));
    }
    cut_with_ties(res, r);
    return res;
  }

  SnapshotOp op{&g, OpKind::Adjacency, 0.0, {}};
  LanczosOptions lopt;
  lopt.wanted = r;
  lopt.abs_tol = opts.rel_tolerance * op.norm_bound();
  lopt.seed = mix_seed(opts.seed, 0xADA);
  lopt.max_dim = opts.max_lanczos_dim;
  bool converged = false;
  std::vector<RitzPair> ritz = lanczos_extremal(op, lopt, {}, &converged);
  if (!converged && !opts.allow_unconverged)
    throw convergence_error("adjacency_top_abs_eigs: Lanczos did not converge",
                            ritz.empty() ? 0.0 : ritz[0].value,
                            ritz.empty() ? 0.0 : ritz[0].residual);
  for (auto& rp : ritz) {
    res.values.push_back(rp.value);
    res.residuals.push_back(rp.residual);
  }
  cut_with_ties(res, r);
  return res;
}

namespace spectral_detail {

// Applies the Laplacian pseudo-inverse on the complement of the all-ones
// vector via Jacobi-preconditioned CG.
struct LaplacianSolveOp {
  const GraphSnapshot* g;
  double cg_rel_tol = 1e-10;
  std::uint32_t cg_max_iter = 20000;
  mutable std::vector<double> r, z, p, q;
  mutable std::uint32_t worst_cg_iters = 0;

  std::uint32_t dim() const { return g->n; }

  void project_ones(double* x) const {
    const std::uint32_t n = g->n;
    double mean = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) mean += x[i];
    mean /= static_cast<double>(n);
    for (std::uint32_t i = 0; i < n; ++i) x[i] -= mean;
  }

  void apply(const double* b, double* x) const {
    const std::uint32_t n = g->n;
    SnapshotOp lap{g, OpKind::Laplacian, 0.0, {}};
    r.assign(b, b + n);
    project_ones(r.data());
    std::fill(x, x + n, 0.0);
    z.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) z[i] = r[i] / static_cast<double>(g->degree[i]);
    p = z;
    q.resize(n);
    double rz = dot(r, z);
    const double b_norm = norm2(r);
    if (b_norm == 0.0) return;
    for (std::uint32_t it = 0; it < cg_max_iter; ++it) {
      lap.apply(p.data(), q.data());
      const double alpha = rz / dot(p, q);
      for (std::uint32_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      if (norm2(r) <= cg_rel_tol * b_norm) {
        worst_cg_iters = std::max(worst_cg_iters, it + 1);
        break;
      }
      project_ones(r.data());
      for (std::uint32_t i = 0; i < n; ++i) z[i] = r[i] / static_cast<double>(g->degree[i]);
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::uint32_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    project_ones(x);
  }

  double norm_bound() const { return 1.0; }  // unknown; tolerances handled by the caller
};

}  // namespace spectral_detail

// Algebraic connectivity lambda_2 of L = D - A for a connected snapshot.
// Iterative path: shift-invert Lanczos on the Laplacian pseudo-inverse
// (Jacobi-PCG inner solves restricted to the ones-complement), which handles
// the clustered low end of the spectrum that defeats direct iteration.
inline double algebraic_connectivity(const GraphSnapshot& g, const SpectralOptions& opts = {},
                                     bool* disconnected_warning = nullptr) {
  opts.validate();
  if (g.n == 0) throw empty_input_error("algebraic_connectivity: empty graph");
  if (disconnected_warning) *disconnected_warning = false;
  if (g.n == 1) return 0.0;
  using namespace spectral_detail;

  const double c = 2.0 * static_cast<double>(g.max_degree()) + 1.0;
  double lambda2;
  if (g.n <= opts.dense_fallback_threshold) {
    SnapshotOp lap{&g, OpKind::Laplacian, 0.0, {}};
    SymEigen eig = eigen_sym(lap.materialize());
    lambda2 = eig.values[1];
  } else {
    for (NodeId u = 0; u < g.n; ++u) {
      if (g.degree[u] == 0) {
        if (disconnected_warning) *disconnected_warning = true;
        return 0.0;
      }
    }
    LaplacianSolveOp inv{&g};
    std::vector<std::vector<double>> ones(1, std::vector<double>(g.n, 1.0 / std::sqrt(g.n)));
    LanczosOptions lopt;
    lopt.wanted = 1;
    lopt.abs_tol = 0.0;
    lopt.rel_tol_top = std::min(opts.rel_tolerance, 1e-8);
    lopt.seed = mix_seed(opts.seed, 0xF1ED);
    lopt.want_vectors = true;

    // Tight Fiedler clusters occasionally need a deeper Krylov space; verify
    // against the Laplacian residual and escalate before giving up.
    double res = 0.0;
    lambda2 = 0.0;
    bool accepted = false;
    for (std::uint32_t dim : {96u, 192u}) {
      lopt.max_dim = std::min<std::uint32_t>(g.n - 1, dim);
      bool converged = false;
      std::vector<RitzPair> ritz = lanczos_extremal(inv, lopt, ones, &converged);
      if (ritz.empty()) return 0.0;
      const RitzPair& top = ritz.front();
      if (top.value <= 0.0) {
        // pseudo-inverse looked singular: treat as a disconnection signal
        if (disconnected_warning) *disconnected_warning = true;
        return 0.0;
      }
      lambda2 = 1.0 / top.value;

      SnapshotOp lap{&g, OpKind::Laplacian, 0.0, {}};
      std::vector<double> lx(g.n);
      lap.apply(top.vector.data(), lx.data());
      res = 0.0;
      for (NodeId u = 0; u < g.n; ++u) {
        const double d = lx[u] - lambda2 * top.vector[u];
        res += d * d;
      }
      res = std::sqrt(res);
      if (res <= opts.rel_tolerance * c) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw convergence_error("algebraic_connectivity: shift-invert Lanczos did not converge",
                              lambda2, res);
  }

  if (lambda2 < opts.rel_tolerance * c) {
    if (disconnected_warning) *disconnected_warning = true;
    return 0.0;
  }
  return lambda2;
}

}  // namespace netdiv
