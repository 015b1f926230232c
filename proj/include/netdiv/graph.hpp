#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "netdiv/errors.hpp"

namespace netdiv {

using NodeId = std::uint32_t;

struct TemporalEdge {
  NodeId u;
  NodeId v;
  std::int64_t time;
  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// Timestamped multigraph history. Edges are sorted non-decreasing by time,
// file order preserved among ties. Node ids are compacted to dense indices
// in order of first appearance, so the vertex set of any edge prefix is
// itself a dense prefix 0..k-1; raw_ids maps back to the source file ids.
struct TemporalEdgeList {
  std::vector<TemporalEdge> edges;
  std::vector<std::int64_t> raw_ids;
  std::vector<std::uint8_t> side;  // bipartite only: partition (0/1) per node
  bool bipartite = false;
  std::uint64_t self_loops_dropped = 0;

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(raw_ids.size()); }
  std::size_t edge_count() const { return edges.size(); }
  friend bool operator==(const TemporalEdgeList&, const TemporalEdgeList&) = default;
};

// Immutable undirected multigraph at one timepoint. Neighbor rows are
// unique and ascending with a parallel-edge multiplicity per entry;
// degree counts parallel edges, so sum(degree) == 2m always.
struct GraphSnapshot {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::vector<std::size_t> offsets;         // n+1
  std::vector<NodeId> neighbors;
  std::vector<std::uint32_t> multiplicity;
  std::vector<std::uint64_t> degree;
  bool bipartite = false;

  std::span<const NodeId> row(NodeId u) const {
    return {neighbors.data() + offsets[u], neighbors.data() + offsets[u + 1]};
  }
  std::span<const std::uint32_t> row_mult(NodeId u) const {
    return {multiplicity.data() + offsets[u], multiplicity.data() + offsets[u + 1]};
  }
  // Number of distinct neighbors (simple-projection degree).
  std::uint32_t simple_degree(NodeId u) const {
    return static_cast<std::uint32_t>(offsets[u + 1] - offsets[u]);
  }
  std::uint32_t edge_multiplicity(NodeId u, NodeId v) const {
    auto r = row(u);
    auto it = std::lower_bound(r.begin(), r.end(), v);
    if (it == r.end() || *it != v) return 0;
    return multiplicity[offsets[u] + static_cast<std::size_t>(it - r.begin())];
  }
  std::uint64_t max_degree() const {
    std::uint64_t d = 0;
    for (std::uint64_t x : degree) d = std::max(d, x);
    return d;
  }
};

namespace detail {

// Builds the CSR snapshot from an arbitrary (u,v) pair range over n vertices.
template <typename PairAt>
GraphSnapshot build_from_pairs(std::uint32_t n, std::size_t count, PairAt at, bool bipartite) {
  GraphSnapshot g;
  g.n = n;
  g.m = count;
  g.bipartite = bipartite;
  g.degree.assign(n, 0);

  std::vector<std::size_t> slot(n + 1, 0);
  for (std::size_t i = 0; i < count; ++i) {
    auto [u, v] = at(i);
    ++slot[u + 1];
    ++slot[v + 1];
  }
  std::partial_sum(slot.begin(), slot.end(), slot.begin());

  std::vector<NodeId> flat(2 * count);
  {
    std::vector<std::size_t> cursor(slot.begin(), slot.end() - 1);
    for (std::size_t i = 0; i < count; ++i) {
      auto [u, v] = at(i);
      flat[cursor[u]++] = v;
      flat[cursor[v]++] = u;
    }
  }

  g.offsets.assign(n + 1, 0);
  g.neighbors.reserve(2 * count);
  g.multiplicity.reserve(2 * count);
  for (std::uint32_t u = 0; u < n; ++u) {
    auto first = flat.begin() + static_cast<std::ptrdiff_t>(slot[u]);
    auto last = flat.begin() + static_cast<std::ptrdiff_t>(slot[u + 1]);
    std::sort(first, last);
    g.degree[u] = static_cast<std::uint64_t>(last - first);
    for (auto it = first; it != last;) {
      auto run = std::find_if(it, last, [&](NodeId x) { return x != *it; });
      g.neighbors.push_back(*it);
      g.multiplicity.push_back(static_cast<std::uint32_t>(run - it));
      it = run;
    }
    g.offsets[u + 1] = g.neighbors.size();
  }

  std::uint64_t degree_sum = std::accumulate(g.degree.begin(), g.degree.end(), std::uint64_t{0});
  if (degree_sum != 2 * g.m) throw std::logic_error("handshake identity violated");
  return g;
}

}  // namespace detail

// Snapshot of the first edge_count edges (timestamp-stable prefix).
inline GraphSnapshot build_snapshot(const TemporalEdgeList& elist, std::size_t edge_count) {
  if (edge_count == 0 || edge_count > elist.edges.size())
    throw std::out_of_range("edge_count outside [1, |edges|]");
  NodeId max_id = 0;
  for (std::size_t i = 0; i < edge_count; ++i) {
    max_id = std::max(max_id, std::max(elist.edges[i].u, elist.edges[i].v));
  }
  return detail::build_from_pairs(
      max_id + 1, edge_count,
      [&](std::size_t i) { return std::pair<NodeId, NodeId>{elist.edges[i].u, elist.edges[i].v}; },
      elist.bipartite);
}

// Component label per vertex, labels assigned in order of the smallest
// contained vertex id. Returns the number of components.
inline std::uint32_t component_ids(const GraphSnapshot& g, std::vector<std::uint32_t>& comp) {
  comp.assign(g.n, UINT32_MAX);
  std::uint32_t count = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.n; ++s) {
    if (comp[s] != UINT32_MAX) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.row(u)) {
        if (comp[v] == UINT32_MAX) {
          comp[v] = count;
          stack.push_back(v);
        }
      }
    }
    ++count;
  }
  return count;
}

inline bool is_connected(const GraphSnapshot& g) {
  if (g.n <= 1) return true;
  std::vector<std::uint32_t> comp;
  return component_ids(g, comp) == 1;
}

struct SubgraphResult {
  GraphSnapshot graph;
  std::vector<NodeId> to_parent;  // new id -> id in the parent snapshot
};

// Subgraph induced by `keep` (any order, duplicates ignored). Vertices are
// relabeled 0..|keep|-1 in ascending parent-id order; multiplicities kept.
inline SubgraphResult induced_subgraph(const GraphSnapshot& g, std::vector<NodeId> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (NodeId u : keep) {
    if (u >= g.n) throw std::domain_error("induced_subgraph: unknown vertex id");
  }

  const auto nk = static_cast<std::uint32_t>(keep.size());
  std::vector<NodeId> new_id(g.n, UINT32_MAX);
  for (std::uint32_t i = 0; i < nk; ++i) new_id[keep[i]] = i;

  GraphSnapshot s;
  s.n = nk;
  s.bipartite = g.bipartite;
  s.offsets.assign(nk + 1, 0);
  s.degree.assign(nk, 0);
  std::uint64_t degree_sum = 0;
  for (std::uint32_t i = 0; i < nk; ++i) {
    NodeId u = keep[i];
    auto r = g.row(u);
    auto mu = g.row_mult(u);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (new_id[r[j]] == UINT32_MAX) continue;
      s.neighbors.push_back(new_id[r[j]]);  // ascending: keep is sorted
      s.multiplicity.push_back(mu[j]);
      s.degree[i] += mu[j];
    }
    degree_sum += s.degree[i];
    s.offsets[i + 1] = s.neighbors.size();
  }
  s.m = degree_sum / 2;
  return {std::move(s), std::move(keep)};
}

// Largest connected component; ties broken towards the component containing
// the smallest vertex id. The mapping relates new ids to ids of g.
inline SubgraphResult largest_connected_component(const GraphSnapshot& g) {
  if (g.m == 0) throw empty_input_error("largest_connected_component: graph has no edges");
  std::vector<std::uint32_t> comp;
  const std::uint32_t ncomp = component_ids(g, comp);
  std::vector<std::uint32_t> size(ncomp, 0);
  for (std::uint32_t c : comp) ++size[c];
  // Labels are assigned by ascending smallest member, so the first maximal
  // label wins the tie-break.
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < ncomp; ++c) {
    if (size[c] > size[best]) best = c;
  }
  std::vector<NodeId> members;
  members.reserve(size[best]);
  for (NodeId u = 0; u < g.n; ++u) {
    if (comp[u] == best) members.push_back(u);
  }
  return induced_subgraph(g, std::move(members));
}

inline double average_degree(const GraphSnapshot& g) {
  if (g.n == 0) throw empty_input_error("average_degree: empty graph");
  return 2.0 * static_cast<double>(g.m) / static_cast<double>(g.n);
}

}  // namespace netdiv
