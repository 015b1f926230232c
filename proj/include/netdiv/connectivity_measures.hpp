#pragma once

// The four connectivity measures: 90-percentile effective diameter via
// sampled BFS, random-walk return probability from the normalized-adjacency
// spectrum, relative controllability via maximum matching on the bipartite
// double cover, and algebraic connectivity on the largest component.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "netdiv/errors.hpp"
#include "netdiv/graph.hpp"
#include "netdiv/prng.hpp"
#include "netdiv/spectral.hpp"

namespace netdiv {

struct DiameterOptions {
  double percentile = 0.9;
  std::uint32_t sample_size = 500;
  std::uint64_t seed = 1;
  bool interpolate = true;

  void validate() const {
    if (!(percentile > 0.0 && percentile < 1.0)) throw config_error("percentile must be in (0,1)");
    if (sample_size < 1) throw config_error("sample_size must be >= 1");
  }
};

namespace conn_detail {

// Sources sampled uniformly without replacement (partial Fisher-Yates).
inline std::vector<NodeId> sample_sources(std::uint32_t n, std::uint32_t count, std::uint64_t seed) {
  std::vector<NodeId> ids(n);
  for (NodeId u = 0; u < n; ++u) ids[u] = u;
  if (count >= n) return ids;
  Rng rng(seed);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng.below(n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  return ids;
}

}  // namespace conn_detail

// Effective diameter at the configured percentile over ordered
// (source, target) hop counts pooled from the sampled sources. With
// interpolation the cumulative distribution is treated as piecewise linear
// between integer hop counts; without it, the smallest covering hop count
// is returned. Parallel edges do not affect distances.
inline double effective_diameter(const GraphSnapshot& g, const DiameterOptions& opts = {}) {
  opts.validate();
  if (g.n < 2) return 0.0;

  const auto sources = conn_detail::sample_sources(g.n, opts.sample_size, opts.seed);
  std::vector<std::uint64_t> hist;  // hist[d] = ordered pairs at distance d
  std::vector<std::uint32_t> dist(g.n);
  std::vector<NodeId> queue(g.n);

  for (NodeId s : sources) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    dist[s] = 0;
    queue[0] = s;
    std::size_t head = 0, tail = 1;
    while (head < tail) {
      const NodeId u = queue[head++];
      const std::uint32_t du = dist[u];
      for (NodeId v : g.row(u)) {
        if (dist[v] != UINT32_MAX) continue;
        dist[v] = du + 1;
        queue[tail++] = v;
      }
    }
    if (tail != g.n) throw std::domain_error("effective_diameter: graph is not connected");
    for (NodeId v = 0; v < g.n; ++v) {
      if (v == s) continue;
      if (dist[v] >= hist.size()) hist.resize(dist[v] + 1, 0);
      ++hist[dist[v]];
    }
  }

  std::uint64_t total = 0;
  for (std::uint64_t c : hist) total += c;
  const double need = opts.percentile * static_cast<double>(total);

  std::uint64_t cum = 0;
  for (std::size_t k = 1; k < hist.size(); ++k) {
    const std::uint64_t prev = cum;
    cum += hist[k];
    if (static_cast<double>(cum) >= need) {
      if (!opts.interpolate) return static_cast<double>(k);
      const double f_prev = static_cast<double>(prev) / static_cast<double>(total);
      const double f_k = static_cast<double>(cum) / static_cast<double>(total);
      return static_cast<double>(k - 1) + (opts.percentile - f_prev) / (f_k - f_prev);
    }
  }
  return hist.empty() ? 0.0 : static_cast<double>(hist.size() - 1);
}

// theta_r(n) = sum of mu^n over the r largest-|mu| eigenvalues of Z. With
// r >= |V| this is the exact inverse-degree-weighted closed-walk sum.
inline double rw_return_probability(const GraphSnapshot& g, std::uint32_t n_steps, std::uint32_t r,
                                    const SpectralOptions& opts = {}) {
  if (n_steps < 2 || n_steps % 2 != 0) throw config_error("n_steps must be even and >= 2");
  EigenResult eig = normalized_adjacency_top_eigs(g, std::min<std::uint32_t>(r, g.n), opts);
  double theta = 0.0;
  for (double mu : eig.values) theta += std::pow(mu, static_cast<int>(n_steps));
  return theta;
}

struct ControllabilityResult {
  std::uint64_t driver_count = 0;   // C = max(n - matching, 1)
  std::uint64_t matching_size = 0;  // maximum matching in the double cover
  double relative = 0.0;            // C / n
};

namespace conn_detail {

// Hopcroft-Karp on the bipartite double cover: out-copy u+ on the left,
// in-copy v- on the right, one arc per distinct undirected neighbor pair
// (parallel edges cannot enlarge a matching).
inline std::uint64_t double_cover_matching(const GraphSnapshot& g) {
  constexpr NodeId NIL = UINT32_MAX;
  const std::uint32_t n = g.n;
  std::vector<NodeId> match_l(n, NIL), match_r(n, NIL);
  std::vector<std::uint32_t> layer(n);
  std::vector<NodeId> queue(n);

  std::uint64_t matching = 0;
  for (;;) {
    // BFS layering from free left vertices.
    std::size_t head = 0, tail = 0;
    for (NodeId u = 0; u < n; ++u) {
      if (match_l[u] == NIL) {
        layer[u] = 0;
        queue[tail++] = u;
      } else {
        layer[u] = UINT32_MAX;
      }
    }
    bool found_free = false;
    while (head < tail) {
      const NodeId u = queue[head++];
      for (NodeId v : g.row(u)) {
        const NodeId w = match_r[v];
        if (w == NIL) {
          found_free = true;
        } else if (layer[w] == UINT32_MAX) {
          layer[w] = layer[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    if (!found_free) break;

    // Layered DFS augmentation.
    auto augment = [&](auto&& self, NodeId u) -> bool {
      for (NodeId v : g.row(u)) {
        const NodeId w = match_r[v];
        if (w == NIL || (layer[w] == layer[u] + 1 && self(self, w))) {
          match_l[u] = v;
          match_r[v] = u;
          return true;
        }
      }
      layer[u] = UINT32_MAX;
      return false;
    };
    for (NodeId u = 0; u < n; ++u) {
      if (match_l[u] == NIL && augment(augment, u)) ++matching;
    }
  }
  return matching;
}

}  // namespace conn_detail

// Driver-node count via the directed 2-matching reduction; C is floored at
// one so the relative value stays in (0, 1] even with a perfect matching.
inline ControllabilityResult relative_controllability(const GraphSnapshot& g) {
  if (g.n == 0) throw empty_input_error("relative_controllability: empty graph");
  ControllabilityResult res;
  res.matching_size = conn_detail::double_cover_matching(g);
  res.driver_count = g.n > res.matching_size ? g.n - res.matching_size : 1;
  res.relative = static_cast<double>(res.driver_count) / static_cast<double>(g.n);
  return res;
}

// Algebraic connectivity of the largest connected component.
inline double algebraic_connectivity_measure(const GraphSnapshot& g,
                                             const SpectralOptions& opts = {}) {
  if (g.m == 0) throw empty_input_error("algebraic_connectivity_measure: no edges");
  SubgraphResult lcc = largest_connected_component(g);
  return algebraic_connectivity(lcc.graph, opts);
}

}  // namespace netdiv
