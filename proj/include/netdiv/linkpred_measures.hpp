#pragma once

// Link-prediction-derived measures: global clustering coefficient on the
// simple projection, fractional rank ||A||_F^2 / lambda_1^2, the eigenvalue
// power-law exponent, and the rank-one estimate for lambda_1 after an edge
// insertion.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "netdiv/graph.hpp"
#include "netdiv/spectral.hpp"

namespace netdiv {

struct TriangleCensus {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;  // sum over u of C(simple_degree(u), 2)
};

// Counts on the simple projection; neighbor rows are already unique.
inline TriangleCensus triangle_census(const GraphSnapshot& g) {
  TriangleCensus c;
  for (NodeId u = 0; u < g.n; ++u) {
    const std::uint64_t d = g.simple_degree(u);
    c.wedges += d * (d - 1) / 2;
  }
  std::uint64_t closed = 0;  // (edge, common neighbor) incidences = 3 * triangles
  for (NodeId u = 0; u < g.n; ++u) {
    const auto ru = g.row(u);
    for (NodeId v : ru) {
      if (v <= u) continue;
      const auto rv = g.row(v);
      std::size_t i = 0, j = 0;
      while (i < ru.size() && j < rv.size()) {
        if (ru[i] < rv[j])
          ++i;
        else if (ru[i] > rv[j])
          ++j;
        else {
          ++closed;
          ++i;
          ++j;
        }
      }
    }
  }
  c.triangles = closed / 3;
  return c;
}

// Global transitivity 3T / wedges; zero without wedges, skipped (nullopt)
// for bipartite snapshots where it is identically zero.
inline std::optional<double> clustering_coefficient(const GraphSnapshot& g) {
  if (g.bipartite) return std::nullopt;
  TriangleCensus c = triangle_census(g);
  if (c.wedges == 0) return 0.0;
  return 3.0 * static_cast<double>(c.triangles) / static_cast<double>(c.wedges);
}

// ||A||_F^2 with multiplicities: each unordered pair contributes 2*mult^2.
inline double frobenius_norm_squared(const GraphSnapshot& g) {
  double acc = 0.0;
  for (std::uint32_t m : g.multiplicity) acc += static_cast<double>(m) * static_cast<double>(m);
  return acc;  // rows store both directions, so this already doubles u<v
}

// rank_F = ||A||_F^2 / lambda_1^2 = sum_k (lambda_k / lambda_1)^2.
inline double fractional_rank(const GraphSnapshot& g, const SpectralOptions& opts = {}) {
  if (g.m == 0) throw empty_input_error("fractional_rank: graph has no edges");
  const auto [lambda1, vec] = spectral_norm(g, opts);
  (void)vec;
  return frobenius_norm_squared(g) / (lambda1 * lambda1);
}

// alpha = 1 + r' / sum(ln |lambda_k| / lambda_min) over the top-r absolute
// adjacency eigenvalues, after dropping near-zero values. Degenerate sets
// (fewer than two retained, or all equal) return nullopt.
inline std::optional<double> eigenvalue_power_law_exponent(const GraphSnapshot& g, std::uint32_t r,
                                                           const SpectralOptions& opts = {}) {
  if (r < 2) throw config_error("eigenvalue power law needs r >= 2");
  EigenResult eig = adjacency_top_abs_eigs(g, std::min<std::uint32_t>(r, g.n), opts);
  if (eig.values.empty()) return std::nullopt;
  const double lambda1 = std::fabs(eig.values.front());
  std::vector<double> retained;
  for (double v : eig.values) {
    if (std::fabs(v) > 1e-9 * lambda1) retained.push_back(std::fabs(v));
  }
  if (retained.size() < 2) return std::nullopt;
  const double lam_min = retained.back();  // values are sorted by |.| descending
  double acc = 0.0;
  for (double v : retained) acc += std::log(v / lam_min);
  // All-equal sets diverge; rounding noise in repeated eigenvalues must not
  // fabricate an astronomical finite exponent.
  if (acc <= 1e-9 * static_cast<double>(retained.size())) return std::nullopt;
  return 1.0 + static_cast<double>(retained.size()) / acc;
}

// First-order estimate of lambda_1 after inserting edge {u, v}:
// lambda_1 + 2 * u1[u] * u1[v], with (lambda_1, u1) a converged Perron pair.
inline double estimate_lambda1_after_edge(double lambda1, const std::vector<double>& u1, NodeId u,
                                          NodeId v) {
  return lambda1 + 2.0 * u1[u] * u1[v];
}

// Rank-shrink predicate: the first-order rank_F decreases when
// u1[u] * u1[v] > lambda_1 / (2|E|).
inline bool rank_shrink_predicted(double lambda1, const std::vector<double>& u1, NodeId u, NodeId v,
                                  std::uint64_t m) {
  return u1[u] * u1[v] > lambda1 / (2.0 * static_cast<double>(m));
}

}  // namespace netdiv
