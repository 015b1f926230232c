#pragma once

// Test-only oracles. Each one recomputes a quantity by a route independent
// of the library implementation it checks: Eigen for dense spectra,
// Floyd-Warshall for distances, explicit walk enumeration for the
// random-walk sum, augmenting-path/flow/enumeration for matchings, the
// Mahonian distribution for Mann-Kendall, and exact big-integer rationals
// for the binomial tail.

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "netdiv/graph.hpp"
#include "netdiv/prng.hpp"

namespace oracle {

using netdiv::GraphSnapshot;
using netdiv::NodeId;
using netdiv::Rng;

// Edge-list-backed test graph so edges can be added and rebuilt freely.
struct TestGraph {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  GraphSnapshot snap(bool bipartite = false) const {
    return netdiv::detail::build_from_pairs(
        n, edges.size(),
        [&](std::size_t i) {
          return std::pair<NodeId, NodeId>{edges[i].first, edges[i].second};
        },
        bipartite);
  }
};

inline TestGraph path_graph(std::uint32_t n) {
  TestGraph g{n, {}};
  for (std::uint32_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

inline TestGraph cycle_graph(std::uint32_t n) {
  TestGraph g = path_graph(n);
  g.edges.push_back({n - 1, 0});
  return g;
}

inline TestGraph complete_graph(std::uint32_t n) {
  TestGraph g{n, {}};
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  }
  return g;
}

// Star with center 0 and k leaves.
inline TestGraph star_graph(std::uint32_t k) {
  TestGraph g{k + 1, {}};
  for (std::uint32_t i = 1; i <= k; ++i) g.edges.push_back({0, i});
  return g;
}

// Connected random multigraph: random recursive tree plus extra edges, a
// fraction of which duplicate existing edges to exercise multiplicities.
inline TestGraph random_connected_multigraph(Rng& rng, std::uint32_t n, std::uint32_t extra_edges,
                                             double parallel_fraction = 0.0) {
  TestGraph g{n, {}};
  for (std::uint32_t v = 1; v < n; ++v)
    g.edges.push_back({static_cast<std::uint32_t>(rng.below(v)), v});
  for (std::uint32_t e = 0; e < extra_edges; ++e) {
    if (!g.edges.empty() && rng.next_double() < parallel_fraction) {
      g.edges.push_back(g.edges[static_cast<std::size_t>(rng.below(g.edges.size()))]);
      continue;
    }
    const auto u = static_cast<std::uint32_t>(rng.below(n));
    auto v = static_cast<std::uint32_t>(rng.below(n - 1));
    if (v >= u) ++v;
    g.edges.push_back({u, v});
  }
  return g;
}

// Random simple G(n, p), connectivity not guaranteed.
inline TestGraph random_simple_graph(Rng& rng, std::uint32_t n, double p) {
  TestGraph g{n, {}};
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (rng.next_double() < p) g.edges.push_back({i, j});
    }
  }
  return g;
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> non_edges(const GraphSnapshot& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (NodeId u = 0; u < g.n; ++u) {
    for (NodeId v = u + 1; v < g.n; ++v) {
      if (g.edge_multiplicity(u, v) == 0) out.push_back({u, v});
    }
  }
  return out;
}

// ---- dense spectra via Eigen --------------------------------------------

inline Eigen::MatrixXd adjacency_dense(const GraphSnapshot& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (NodeId u = 0; u < g.n; ++u) {
    const auto row = g.row(u);
    const auto mult = g.row_mult(u);
    for (std::size_t j = 0; j < row.size(); ++j) a(u, row[j]) = mult[j];
  }
  return a;
}

// Same canonical order the library promises: |value| descending, with
// near-tied magnitudes normalized to value-descending.
inline void sort_abs_desc(std::vector<double>& v) {
  std::sort(v.begin(), v.end(), [](double a, double b) {
    const double aa = std::fabs(a), ab = std::fabs(b);
    if (aa != ab) return aa > ab;
    return a > b;
  });
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i + 1;
    double lo = std::fabs(v[i]);
    while (j < v.size()) {
      const double aj = std::fabs(v[j]);
      if (aj < lo - 1e-12 * std::max(1.0, lo)) break;
      lo = std::min(lo, aj);
      ++j;
    }
    std::sort(v.begin() + i, v.begin() + j, [](double a, double b) { return a > b; });
    i = j;
  }
}

inline std::vector<double> adjacency_spectrum(const GraphSnapshot& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_dense(g), Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + g.n);
  sort_abs_desc(v);
  return v;
}

inline std::pair<double, Eigen::VectorXd> perron_pair(const GraphSnapshot& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_dense(g));
  const Eigen::Index last = g.n - 1;
  Eigen::VectorXd vec = es.eigenvectors().col(last);
  Eigen::Index peak;
  vec.cwiseAbs().maxCoeff(&peak);
  if (vec(peak) < 0) vec = -vec;
  return {es.eigenvalues()(last), vec};
}

inline std::vector<double> normalized_adjacency_spectrum(const GraphSnapshot& g) {
  Eigen::MatrixXd a = adjacency_dense(g);
  Eigen::VectorXd dinv(g.n);
  for (NodeId u = 0; u < g.n; ++u) dinv(u) = 1.0 / std::sqrt(static_cast<double>(g.degree[u]));
  Eigen::MatrixXd z = dinv.asDiagonal() * a * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(z, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + g.n);
  sort_abs_desc(v);
  return v;
}

inline double algebraic_connectivity_dense(const GraphSnapshot& g) {
  Eigen::MatrixXd lap = -adjacency_dense(g);
  for (NodeId u = 0; u < g.n; ++u) lap(u, u) += static_cast<double>(g.degree[u]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(1);
}

// ---- Lorenz-curve Gini ----------------------------------------------------

inline double lorenz_gini(std::vector<std::uint64_t> degrees) {
  std::sort(degrees.begin(), degrees.end());
  const std::size_t n = degrees.size();
  double total = 0.0;
  for (auto d : degrees) total += static_cast<double>(d);
  double auc = 0.0, cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = cum / total;
    cum += static_cast<double>(degrees[i]);
    auc += (prev + cum / total) / (2.0 * static_cast<double>(n));
  }
  return 1.0 - 2.0 * auc;
}

// ---- distances via Floyd-Warshall ----------------------------------------

inline std::vector<std::vector<std::uint32_t>> all_pairs_distances(const GraphSnapshot& g) {
  constexpr std::uint32_t INF = UINT32_MAX / 4;
  std::vector<std::vector<std::uint32_t>> d(g.n, std::vector<std::uint32_t>(g.n, INF));
  for (NodeId u = 0; u < g.n; ++u) {
    d[u][u] = 0;
    for (NodeId v : g.row(u)) d[u][v] = 1;
  }
  for (NodeId k = 0; k < g.n; ++k) {
    for (NodeId i = 0; i < g.n; ++i) {
      for (NodeId j = 0; j < g.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

// Exhaustive effective diameter from the sorted pooled distance multiset.
inline double effective_diameter_exhaustive(const GraphSnapshot& g, double percentile,
                                            bool interpolate) {
  auto d = all_pairs_distances(g);
  std::vector<std::uint32_t> pool;
  for (NodeId u = 0; u < g.n; ++u) {
    for (NodeId v = 0; v < g.n; ++v) {
      if (u != v) pool.push_back(d[u][v]);
    }
  }
  std::sort(pool.begin(), pool.end());
  const double total = static_cast<double>(pool.size());
  if (!interpolate) {
    const auto idx = static_cast<std::size_t>(std::ceil(percentile * total)) - 1;
    return static_cast<double>(pool[std::min(idx, pool.size() - 1)]);
  }
  const std::uint32_t kmax = pool.back();
  double prev_frac = 0.0;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    const auto cum = static_cast<double>(
        std::upper_bound(pool.begin(), pool.end(), k) - pool.begin());
    const double frac = cum / total;
    if (frac >= percentile)
      return static_cast<double>(k - 1) + (percentile - prev_frac) / (frac - prev_frac);
    prev_frac = frac;
  }
  return static_cast<double>(kmax);
}

// ---- closed-walk enumeration for theta ------------------------------------

// Sum over all closed walks of the given length of prod 1/d(u_i), counting
// parallel edges as distinct steps.
inline double theta_closed_walks(const GraphSnapshot& g, std::uint32_t length) {
  double total = 0.0;
  std::vector<NodeId> walk;
  auto recurse = [&](auto&& self, NodeId start, NodeId at, std::uint32_t left,
                     double weight) -> void {
    if (left == 0) {
      if (at == start) total += weight;
      return;
    }
    const auto row = g.row(at);
    const auto mult = g.row_mult(at);
    for (std::size_t j = 0; j < row.size(); ++j) {
      self(self, start, row[j], left - 1,
           weight * static_cast<double>(mult[j]) / static_cast<double>(g.degree[at]));
    }
  };
  for (NodeId u = 0; u < g.n; ++u) {
    if (g.degree[u] > 0) recurse(recurse, u, u, length, 1.0);
  }
  return total;
}

// ---- matchings on the bipartite double cover ------------------------------

// Kuhn's augmenting-path algorithm.
inline std::uint64_t double_cover_matching_kuhn(const GraphSnapshot& g) {
  constexpr NodeId NIL = UINT32_MAX;
  std::vector<NodeId> match_r(g.n, NIL);
  std::vector<bool> used(g.n);
  auto try_augment = [&](auto&& self, NodeId u) -> bool {
    for (NodeId v : g.row(u)) {
      if (used[v]) continue;
      used[v] = true;
      if (match_r[v] == NIL || self(self, match_r[v])) {
        match_r[v] = u;
        return true;
      }
    }
    return false;
  };
  std::uint64_t size = 0;
  for (NodeId u = 0; u < g.n; ++u) {
    std::fill(used.begin(), used.end(), false);
    if (try_augment(try_augment, u)) ++size;
  }
  return size;
}

// Unit-capacity max flow (BFS augmentation) on source->left->right->sink.
inline std::uint64_t double_cover_matching_maxflow(const GraphSnapshot& g) {
  const std::uint32_t n = g.n;
  const std::uint32_t source = 2 * n, sink = 2 * n + 1, vertices = 2 * n + 2;
  struct Arc {
    std::uint32_t to;
    std::int32_t cap;
    std::size_t rev;
  };
  std::vector<std::vector<Arc>> arcs(vertices);
  auto add_arc = [&](std::uint32_t a, std::uint32_t b) {
    arcs[a].push_back({b, 1, arcs[b].size()});
    arcs[b].push_back({a, 0, arcs[a].size() - 1});
  };
  for (NodeId u = 0; u < n; ++u) {
    add_arc(source, u);
    add_arc(n + u, sink);
    for (NodeId v : g.row(u)) add_arc(u, n + v);
  }
  std::uint64_t flow = 0;
  for (;;) {
    std::vector<std::pair<std::uint32_t, std::size_t>> parent(vertices, {UINT32_MAX, 0});
    std::vector<std::uint32_t> queue{source};
    parent[source] = {source, 0};
    for (std::size_t head = 0; head < queue.size() && parent[sink].first == UINT32_MAX; ++head) {
      const std::uint32_t u = queue[head];
      for (std::size_t i = 0; i < arcs[u].size(); ++i) {
        const Arc& a = arcs[u][i];
        if (a.cap > 0 && parent[a.to].first == UINT32_MAX) {
          parent[a.to] = {u, i};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[sink].first == UINT32_MAX) break;
    for (std::uint32_t v = sink; v != source;) {
      auto [pu, pi] = parent[v];
      arcs[pu][pi].cap -= 1;
      arcs[arcs[pu][pi].to][arcs[pu][pi].rev].cap += 1;
      v = pu;
    }
    ++flow;
  }
  return flow;
}

// True exhaustive enumeration over all matchings; only for tiny graphs.
inline std::uint64_t double_cover_matching_exhaustive(const GraphSnapshot& g) {
  std::vector<bool> right_used(g.n, false);
  auto recurse = [&](auto&& self, NodeId u) -> std::uint64_t {
    if (u == g.n) return 0;
    std::uint64_t best = self(self, u + 1);  // leave u unmatched
    for (NodeId v : g.row(u)) {
      if (right_used[v]) continue;
      right_used[v] = true;
      best = std::max(best, 1 + self(self, u + 1));
      right_used[v] = false;
    }
    return best;
  };
  return recurse(recurse, 0);
}

// ---- Mann-Kendall exact permutation distribution --------------------------

inline std::vector<double> mahonian_counts(std::uint32_t n) {
  std::vector<double> c{1.0};
  for (std::uint32_t k = 2; k <= n; ++k) {
    std::vector<double> next(c.size() + k - 1, 0.0);
    double window = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (i < c.size()) window += c[i];
      if (i >= k && i - k < c.size()) window -= c[i - k];
      next[i] = window;
    }
    c = std::move(next);
  }
  return c;
}

// P(S' >= s) (upper) or P(S' <= s) (lower) under the null for n distinct values.
inline double mk_exact_p(long long s, std::uint32_t n, bool upper) {
  const auto counts = mahonian_counts(n);
  const long long max_s = static_cast<long long>(n) * (n - 1) / 2;
  double total = 0.0, acc = 0.0;
  for (std::size_t inv = 0; inv < counts.size(); ++inv) {
    total += counts[inv];
    const long long sv = max_s - 2 * static_cast<long long>(inv);
    if ((upper && sv >= s) || (!upper && sv <= s)) acc += counts[inv];
  }
  return acc / total;
}

// ---- Binomial upper tail as an exact rational -----------------------------

// P(X >= k) for X ~ Binomial(n, num/den), evaluated in exact integer
// arithmetic and converted through a 50-digit float.
inline double binomial_upper_tail_exact(std::uint32_t k, std::uint32_t n, std::uint32_t num = 1,
                                        std::uint32_t den = 20) {
  namespace mp = boost::multiprecision;
  mp::cpp_int total = 0;
  for (std::uint32_t x = k; x <= n; ++x) {
    mp::cpp_int choose = 1;
    for (std::uint32_t i = 0; i < x; ++i) {
      choose *= (n - i);
      choose /= (i + 1);
    }
    mp::cpp_int term = choose;
    for (std::uint32_t i = 0; i < x; ++i) term *= num;
    for (std::uint32_t i = 0; i < n - x; ++i) term *= (den - num);
    total += term;
  }
  mp::cpp_int denom = 1;
  for (std::uint32_t i = 0; i < n; ++i) denom *= den;
  const mp::cpp_bin_float_50 value = mp::cpp_bin_float_50(total) / mp::cpp_bin_float_50(denom);
  return value.convert_to<double>();
}

}  // namespace oracle
