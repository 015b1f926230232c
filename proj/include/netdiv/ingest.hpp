#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netdiv/errors.hpp"
#include "netdiv/graph.hpp"

namespace netdiv {

struct DatasetDescriptor {
  std::string name;
  std::string path;
  bool bipartite = false;
  std::string notes;
};

enum class Scenario { Full, Connected };

inline const char* scenario_name(Scenario s) { return s == Scenario::Full ? "full" : "connected"; }

struct ScenarioConfig {
  std::uint32_t timepoints = 100;
  std::uint32_t t1 = 75;              // Connected only
  bool exclude_anchor = false;        // drop t = t1 from the Connected series

  void validate() const {
    if (timepoints < 2 || timepoints > 10000) throw config_error("timepoints must be in [2, 10000]");
  }
  // t1 constraints only bind the Connected scenario.
  void validate_connected() const {
    validate();
    if (t1 < 1 || t1 >= timepoints) throw config_error("t1 must satisfy 1 <= t1 < timepoints");
  }
};

struct ParseOptions {
  bool bipartite = false;
  bool assume_order = false;  // use file order as virtual time when the column is absent
};

namespace detail {

inline bool parse_int64(std::string_view tok, std::int64_t& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

inline bool parse_double_token(std::string_view tok) {
  char* end = nullptr;
  std::string buf(tok);
  std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && !buf.empty();
}

}  // namespace detail

struct RawTemporalEdge {
  std::int64_t u, v, t;
};

// Stable time sort plus id compaction in order of first appearance, shared
// by the parser and the synthetic generators. For bipartite inputs the two
// columns are distinct id spaces.
inline TemporalEdgeList compact_edge_list(std::vector<RawTemporalEdge> raw, bool bipartite,
                                          std::uint64_t self_loops_dropped = 0) {
  if (raw.empty()) throw empty_input_error("edge list contains no usable edges");
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawTemporalEdge& a, const RawTemporalEdge& b) { return a.t < b.t; });

  TemporalEdgeList out;
  out.bipartite = bipartite;
  out.self_loops_dropped = self_loops_dropped;
  out.edges.reserve(raw.size());
  std::map<std::pair<int, std::int64_t>, NodeId> compact;
  auto intern = [&](int side, std::int64_t id) {
    auto [it, inserted] =
        compact.try_emplace({bipartite ? side : 0, id}, static_cast<NodeId>(out.raw_ids.size()));
    if (inserted) {
      out.raw_ids.push_back(id);
      if (bipartite) out.side.push_back(static_cast<std::uint8_t>(side));
    }
    return it->second;
  };
  for (const RawTemporalEdge& e : raw) {
    out.edges.push_back({intern(0, e.u), intern(1, e.v), e.t});
  }
  return out;
}

// KONECT-style edge list: `u v [weight [timestamp]]`, whitespace separated,
// `%` comment lines. The weight column is parsed and discarded. Self-loops
// are dropped and counted. Edges come out sorted stably by timestamp and
// node ids compacted in order of first appearance in that order.
inline TemporalEdgeList parse_edge_stream(std::istream& in, const ParseOptions& opts = {}) {
  std::vector<RawTemporalEdge> raw;
  std::uint64_t self_loops = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    // Tokenize on spaces/tabs; tolerate trailing '\r'.
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < sv.size()) {
      while (i < sv.size() && (sv[i] == ' ' || sv[i] == '\t' || sv[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < sv.size() && sv[j] != ' ' && sv[j] != '\t' && sv[j] != '\r') ++j;
      if (j > i) toks.push_back(sv.substr(i, j - i));
      i = j;
    }
    if (toks.empty()) continue;
    if (toks[0][0] == '%') continue;
    if (toks.size() < 2 || toks.size() > 4) throw parse_error(lineno, "expected 2-4 columns");

    std::int64_t u, v;
    if (!detail::parse_int64(toks[0], u) || !detail::parse_int64(toks[1], v))
      throw parse_error(lineno, "non-numeric node id");
    if (u < 0 || v < 0) throw parse_error(lineno, "negative node id");

    std::int64_t t;
    if (toks.size() == 4) {
      if (!detail::parse_double_token(toks[2])) throw parse_error(lineno, "non-numeric weight");
      if (!detail::parse_int64(toks[3], t)) throw parse_error(lineno, "non-numeric timestamp");
    } else if (toks.size() == 3) {
      // Third column is a timestamp only under --assume-order conventions?
      // KONECT always orders columns `weight timestamp`, so a lone third
      // column is a weight; the timestamp is missing.
      if (!detail::parse_double_token(toks[2])) throw parse_error(lineno, "non-numeric weight");
      if (!opts.assume_order) throw parse_error(lineno, "missing timestamp");
      t = static_cast<std::int64_t>(raw.size() + self_loops + 1);
    } else {
      if (!opts.assume_order) throw parse_error(lineno, "missing timestamp");
      t = static_cast<std::int64_t>(raw.size() + self_loops + 1);
    }

    if (!opts.bipartite && u == v) {
      ++self_loops;
      continue;
    }
    raw.push_back({u, v, t});
  }
  return compact_edge_list(std::move(raw), opts.bipartite, self_loops);
}

inline TemporalEdgeList parse_edge_file(const std::string& path, const ParseOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open edge file: " + path);
  return parse_edge_stream(in, opts);
}

// Canonical TSV emission; parse_edge_stream(write_edge_stream(e)) == e.
inline void write_edge_stream(std::ostream& out, const TemporalEdgeList& elist) {
  for (const TemporalEdge& e : elist.edges) {
    out << elist.raw_ids[e.u] << '\t' << elist.raw_ids[e.v] << "\t1\t" << e.time << '\n';
  }
}

// Prefix edge counts for the T timepoints: floor(total * t / T), t = 1..T.
inline std::vector<std::size_t> make_timepoints(std::size_t total_edges, std::uint32_t T) {
  if (T < 1) throw config_error("timepoint count must be >= 1");
  if (total_edges < T) throw config_error("fewer edges than timepoints");
  std::vector<std::size_t> counts(T);
  for (std::uint32_t t = 1; t <= T; ++t) {
    counts[t - 1] = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(total_edges) * t) / T);
  }
  return counts;
}

// Full scenario: whole growing network at every timepoint.
inline std::vector<GraphSnapshot> build_full_series(const TemporalEdgeList& elist,
                                                    const ScenarioConfig& config) {
  config.validate();
  auto counts = make_timepoints(elist.edge_count(), config.timepoints);
  std::vector<GraphSnapshot> out;
  out.reserve(counts.size());
  for (std::size_t k : counts) out.push_back(build_snapshot(elist, k));
  return out;
}

struct ConnectedSeries {
  std::vector<NodeId> v1;                // LCC vertex set at t1, ids of the full snapshot
  std::uint32_t first_timepoint = 0;     // t of series[0]
  std::vector<GraphSnapshot> series;
};

// Connected scenario: fix the LCC vertex set at t1, then follow the induced
// subgraphs on it. Includes the anchor point t1 unless excluded.
inline ConnectedSeries build_connected_series(const TemporalEdgeList& elist,
                                              const ScenarioConfig& config) {
  config.validate_connected();
  auto counts = make_timepoints(elist.edge_count(), config.timepoints);
  GraphSnapshot at_t1 = build_snapshot(elist, counts[config.t1 - 1]);
  if (at_t1.m == 0) throw empty_input_error("no edges at t1");
  SubgraphResult lcc = largest_connected_component(at_t1);

  ConnectedSeries out;
  out.v1 = lcc.to_parent;  // prefix compaction: valid ids in all later snapshots
  out.first_timepoint = config.exclude_anchor ? config.t1 + 1 : config.t1;
  for (std::uint32_t t = out.first_timepoint; t <= config.timepoints; ++t) {
    GraphSnapshot snap = build_snapshot(elist, counts[t - 1]);
    out.series.push_back(induced_subgraph(snap, out.v1).graph);
  }
  return out;
}

// Manifest: one dataset per line, `name<TAB>path<TAB>{unipartite|bipartite}`.
inline std::vector<DatasetDescriptor> parse_manifest(std::istream& in) {
  std::vector<DatasetDescriptor> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%' || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() < 3) throw parse_error(lineno, "manifest needs name<TAB>path<TAB>kind");
    DatasetDescriptor d;
    d.name = cols[0];
    d.path = cols[1];
    if (cols[2] == "bipartite")
      d.bipartite = true;
    else if (cols[2] == "unipartite")
      d.bipartite = false;
    else
      throw parse_error(lineno, "kind must be unipartite or bipartite");
    if (cols.size() > 3) d.notes = cols[3];
    if (d.name.empty()) throw parse_error(lineno, "empty dataset name");
    for (const auto& prev : out) {
      if (prev.name == d.name) throw parse_error(lineno, "duplicate dataset name: " + d.name);
    }
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<DatasetDescriptor> parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open manifest: " + path);
  return parse_manifest(in);
}

}  // namespace netdiv
