#pragma once

// Orchestration: runs every enabled measure over every dataset, scenario and
// timepoint, applies the trend tests, and emits the report bundle
// (series.csv, trends.csv, summary.json, plot-data/, run_metadata.json).
// The whole run is a pure function of the input files and the config: task
// seeds derive from (seed, dataset, scenario, timepoint), workers write into
// preassigned slots, and floats are printed in shortest round-trip form, so
// reruns are byte-identical.

#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "netdiv/connectivity_measures.hpp"
#include "netdiv/degree_measures.hpp"
#include "netdiv/errors.hpp"
#include "netdiv/graph.hpp"
#include "netdiv/ingest.hpp"
#include "netdiv/linkpred_measures.hpp"
#include "netdiv/prng.hpp"
#include "netdiv/spectral.hpp"
#include "netdiv/trend.hpp"

namespace netdiv {

enum class MeasureStatus { Ok, Undefined, Skipped, Error };

inline const char* status_name(MeasureStatus s) {
  switch (s) {
    case MeasureStatus::Ok: return "ok";
    case MeasureStatus::Undefined: return "undefined";
    case MeasureStatus::Skipped: return "skipped";
    case MeasureStatus::Error: return "error";
  }
  return "error";
}

enum class ThetaScope { Lcc, NonIsolated };

struct RunConfig {
  std::string manifest_path;
  std::vector<DatasetDescriptor> datasets;
  bool run_full = true;
  bool run_connected = true;
  ScenarioConfig scenario;
  double sig_level = 0.05;
  bool two_sided = false;
  std::vector<std::string> measures;  // empty = every catalog measure
  SpectralOptions spectral;
  DiameterOptions diameter;
  std::uint32_t rw_steps = 4;
  ThetaScope theta_scope = ThetaScope::Lcc;
  bool assume_order = false;  // accept edge files without a timestamp column
  std::string out_dir;
  std::uint32_t jobs = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 1;

  std::vector<std::string> resolved_measures() const {
    std::vector<std::string> out;
    if (measures.empty()) {
      for (const auto& spec : measure_catalog()) out.push_back(spec.id);
      return out;
    }
    for (const auto& id : measures) {
      if (!find_measure(id)) throw config_error("unknown measure: " + id);
      out.push_back(id);
    }
    if (out.empty()) throw config_error("empty measure set");
    return out;
  }
};

struct CellResult {
  double value = 0.0;
  MeasureStatus status = MeasureStatus::Undefined;
};

struct TimepointRow {
  std::uint32_t t = 0;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::vector<CellResult> cells;  // one per enabled measure
};

struct DatasetSeries {
  std::string dataset;
  bool bipartite = false;
  Scenario scenario = Scenario::Full;
  std::vector<TimepointRow> rows;
};

struct DatasetInfo {
  std::string name;
  std::string path;
  bool bipartite = false;
  std::size_t edges = 0;
  std::uint32_t nodes = 0;
  std::uint64_t self_loops_dropped = 0;
  std::string error;  // non-empty when the dataset failed to load or split
};

struct AnalysisResult {
  std::vector<std::string> measures;
  std::vector<DatasetSeries> series;
  std::vector<SeriesTrend> trends;
  std::vector<AggregateResult> aggregates;
  std::vector<DatasetInfo> datasets;
};

namespace pipeline_detail {

// Shortest exact decimal representation; reparsing yields the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

inline std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_');
  }
  return out;
}

struct SnapshotMeasures {
  const RunConfig* config;
  const std::vector<std::string>* measures;
  Scenario scenario;
  std::uint64_t task_seed;

  std::vector<CellResult> compute(const GraphSnapshot& g) const {
    std::optional<DegreeStats> stats;
    std::optional<SubgraphResult> lcc;
    auto degree_ref = [&]() -> const DegreeStats& {
      if (!stats) stats = degree_stats(g);
      return *stats;
    };
    auto lcc_ref = [&]() -> const GraphSnapshot& {
      if (scenario == Scenario::Connected) return g;  // connected by construction
      if (!lcc) lcc = largest_connected_component(g);
      return lcc->graph;
    };

    SpectralOptions sopt = config->spectral;
    sopt.seed = task_seed;

    std::vector<CellResult> out(measures->size());
    for (std::size_t i = 0; i < measures->size(); ++i) {
      const std::string& id = (*measures)[i];
      CellResult& cell = out[i];
      try {
        std::optional<double> value;
        if (id == "avg_degree") {
          value = average_degree(g);
        } else if (id == "gini") {
          value = gini_coefficient(degree_ref());
        } else if (id == "jain") {
          value = jain_index(degree_ref());
        } else if (id == "power_law") {
          value = power_law_exponent(degree_ref());
        } else if (id == "rel_entropy") {
          value = relative_entropy(degree_ref());
        } else if (id == "eff_diameter") {
          DiameterOptions dopt = config->diameter;
          dopt.seed = mix_seed(task_seed, 0xD1A);
          value = effective_diameter(lcc_ref(), dopt);
        } else if (id == "rw_return") {
          // At scale the top-r of Z sits in a quasi-continuous bulk where
          // per-pair convergence is unattainable; theta only needs the sum
          // of fourth powers, so the fixed-budget estimate is accepted.
          SpectralOptions topt = sopt;
          topt.allow_unconverged = true;
          topt.max_lanczos_dim = std::max(3 * topt.r, 150u);
          if (scenario == Scenario::Connected) {
            value = rw_return_probability(g, config->rw_steps, topt.r, topt);
          } else if (config->theta_scope == ThetaScope::Lcc) {
            value = rw_return_probability(lcc_ref(), config->rw_steps, topt.r, topt);
          } else {
            std::vector<NodeId> keep;
            for (NodeId u = 0; u < g.n; ++u) {
              if (g.degree[u] > 0) keep.push_back(u);
            }
            SubgraphResult sub = induced_subgraph(g, std::move(keep));
            value = rw_return_probability(sub.graph, config->rw_steps, topt.r, topt);
          }
        } else if (id == "controllability") {
          value = relative_controllability(g).relative;
        } else if (id == "alg_connectivity") {
          value = algebraic_connectivity(lcc_ref(), sopt);
        } else if (id == "clustering") {
          if (g.bipartite) {
            cell.status = MeasureStatus::Skipped;
            continue;
          }
          value = clustering_coefficient(g);
        } else if (id == "frac_rank") {
          value = fractional_rank(g, sopt);
        } else if (id == "eig_power_law") {
          SpectralOptions topt = sopt;
          topt.allow_unconverged = true;
          topt.max_lanczos_dim = std::max(3 * topt.r, 150u);
          value = eigenvalue_power_law_exponent(g, std::max<std::uint32_t>(topt.r, 2), topt);
        } else {
          throw config_error("unknown measure: " + id);
        }
        if (value) {
          cell.value = *value;
          cell.status = MeasureStatus::Ok;
        } else {
          cell.status = MeasureStatus::Undefined;
        }
      } catch (const std::exception&) {
        cell.status = MeasureStatus::Error;
      }
    }
    return out;
  }
};

}  // namespace pipeline_detail

// Computes every enabled measure for every dataset, scenario and timepoint,
// then the per-series trends and the cross-dataset verdicts. Dataset
// failures are recorded and isolated.
inline AnalysisResult run_analyze(const RunConfig& config) {
  if (config.run_connected)
    config.scenario.validate_connected();
  else
    config.scenario.validate();
  config.spectral.validate();
  config.diameter.validate();
  if (config.sig_level <= 0.0 || config.sig_level >= 1.0)
    throw config_error("sig_level must be in (0,1)");
  if (!config.run_full && !config.run_connected) throw config_error("no scenario selected");

  AnalysisResult result;
  result.measures = config.resolved_measures();
  for (const DatasetDescriptor& ds : config.datasets) {
    if (ds.name.find(',') != std::string::npos)
      throw config_error("dataset name must not contain commas: " + ds.name);
  }

  struct Task {
    std::size_t series_index;
    std::size_t row_index;
    const TemporalEdgeList* elist;
    std::size_t edge_count;              // Full: prefix size
    const std::vector<NodeId>* keep;     // Connected: fixed vertex set
  };

  std::vector<TemporalEdgeList> lists(config.datasets.size());
  std::vector<std::vector<NodeId>> keeps(config.datasets.size());
  std::vector<Task> tasks;

  for (std::size_t d = 0; d < config.datasets.size(); ++d) {
    const DatasetDescriptor& ds = config.datasets[d];
    DatasetInfo info;
    info.name = ds.name;
    info.path = ds.path;
    info.bipartite = ds.bipartite;
    try {
      ParseOptions popt;
      popt.bipartite = ds.bipartite;
      popt.assume_order = config.assume_order;
      lists[d] = parse_edge_file(ds.path, popt);
      info.edges = lists[d].edge_count();
      info.nodes = lists[d].node_count();
      info.self_loops_dropped = lists[d].self_loops_dropped;

      auto counts = make_timepoints(lists[d].edge_count(), config.scenario.timepoints);
      if (config.run_full) {
        DatasetSeries s;
        s.dataset = ds.name;
        s.bipartite = ds.bipartite;
        s.scenario = Scenario::Full;
        s.rows.resize(counts.size());
        for (std::uint32_t t = 1; t <= counts.size(); ++t) s.rows[t - 1].t = t;
        result.series.push_back(std::move(s));
        for (std::size_t i = 0; i < counts.size(); ++i)
          tasks.push_back({result.series.size() - 1, i, &lists[d], counts[i], nullptr});
      }
      if (config.run_connected) {
        GraphSnapshot at_t1 = build_snapshot(lists[d], counts[config.scenario.t1 - 1]);
        if (at_t1.m == 0) throw empty_input_error("no edges at t1");
        keeps[d] = largest_connected_component(at_t1).to_parent;

        DatasetSeries s;
        s.dataset = ds.name;
        s.bipartite = ds.bipartite;
        s.scenario = Scenario::Connected;
        const std::uint32_t first =
            config.scenario.exclude_anchor ? config.scenario.t1 + 1 : config.scenario.t1;
        s.rows.resize(config.scenario.timepoints - first + 1);
        for (std::size_t i = 0; i < s.rows.size(); ++i)
          s.rows[i].t = first + static_cast<std::uint32_t>(i);
        result.series.push_back(std::move(s));
        for (std::size_t i = 0; i < result.series.back().rows.size(); ++i) {
          const std::uint32_t t = result.series.back().rows[i].t;
          tasks.push_back({result.series.size() - 1, i, &lists[d], counts[t - 1], &keeps[d]});
        }
      }
    } catch (const std::exception& e) {
      info.error = e.what();
      // Drop any series already registered for this dataset.
      while (!result.series.empty() && result.series.back().dataset == ds.name) {
        const std::size_t drop = result.series.size() - 1;
        std::erase_if(tasks, [&](const Task& t) { return t.series_index == drop; });
        result.series.pop_back();
      }
    }
    result.datasets.push_back(std::move(info));
  }

  const std::uint32_t jobs = config.jobs ? config.jobs
                                         : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next_task{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next_task.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task& task = tasks[idx];
      DatasetSeries& series = result.series[task.series_index];
      TimepointRow& row = series.rows[task.row_index];
      GraphSnapshot snap = build_snapshot(*task.elist, task.edge_count);
      if (task.keep) snap = induced_subgraph(snap, *task.keep).graph;
      row.nodes = snap.n;
      row.edges = snap.m;
      pipeline_detail::SnapshotMeasures ctx{
          &config, &result.measures, series.scenario,
          mix_seed(config.seed, hash_name(series.dataset),
                   series.scenario == Scenario::Full ? 0u : 1u, row.t)};
      row.cells = ctx.compute(snap);
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Per-series trends, then the cross-dataset verdict table.
  for (const DatasetSeries& s : result.series) {
    for (std::size_t mi = 0; mi < result.measures.size(); ++mi) {
      std::vector<std::optional<double>> values;
      values.reserve(s.rows.size());
      bool skipped = true;
      for (const TimepointRow& row : s.rows) {
        if (row.cells[mi].status == MeasureStatus::Ok) {
          values.emplace_back(row.cells[mi].value);
          skipped = false;
        } else {
          values.emplace_back(std::nullopt);
          if (row.cells[mi].status != MeasureStatus::Skipped) skipped = false;
        }
      }
      if (skipped) continue;  // e.g. clustering on a bipartite dataset
      SeriesTrend st;
      st.key = {s.dataset, s.scenario, result.measures[mi], s.bipartite};
      st.trend = mann_kendall(values, config.sig_level, config.two_sided);
      result.trends.push_back(std::move(st));
    }
  }
  result.aggregates = verdict_table(result.trends, config.sig_level);
  return result;
}

namespace pipeline_detail {

inline void write_series_csv(std::ostream& out, const AnalysisResult& r) {
  out << "dataset,scenario,measure,timepoint,node_count,edge_count,value,status\n";
  for (const DatasetSeries& s : r.series) {
    for (std::size_t mi = 0; mi < r.measures.size(); ++mi) {
      for (const TimepointRow& row : s.rows) {
        const CellResult& cell = row.cells[mi];
        out << s.dataset << ',' << scenario_name(s.scenario) << ',' << r.measures[mi] << ','
            << row.t << ',' << row.nodes << ',' << row.edges << ',';
        if (cell.status == MeasureStatus::Ok) out << format_double(cell.value);
        out << ',' << status_name(cell.status) << '\n';
      }
    }
  }
}

inline void write_trends_csv(std::ostream& out, const AnalysisResult& r) {
  out << "dataset,scenario,measure,S,variance,z,p,direction,significant\n";
  for (const SeriesTrend& st : r.trends) {
    if (!st.trend.testable) continue;
    out << st.key.dataset << ',' << scenario_name(st.key.scenario) << ',' << st.key.measure << ','
        << st.trend.S << ',' << format_double(st.trend.variance) << ','
        << format_double(st.trend.z) << ',' << format_double(st.trend.p_one_sided) << ','
        << direction_name(st.trend.direction) << ',' << (st.trend.significant ? "true" : "false")
        << '\n';
  }
}

inline nlohmann::ordered_json summary_json(const AnalysisResult& r, double sig_level) {
  nlohmann::ordered_json doc;
  doc["sig_level"] = sig_level;
  auto rows = nlohmann::ordered_json::array();
  for (const AggregateResult& a : r.aggregates) {
    const MeasureSpec* spec = find_measure(a.measure);
    nlohmann::ordered_json row;
    row["measure"] = a.measure;
    row["symbol"] = spec ? spec->symbol : "";
    row["scenario"] = scenario_name(a.scenario);
    row["predicted"] = direction_name(a.predicted);
    row["verdict"] = a.verdict == Direction::None ? "no_trend" : direction_name(a.verdict);
    row["k"] = a.k;
    row["n"] = a.n;
    row["p_binomial"] = a.p_binomial;
    row["k_opposite"] = a.k_opposite;
    row["p_opposite"] = a.p_opposite;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

inline nlohmann::ordered_json metadata_json(const RunConfig& config, const AnalysisResult& r) {
  nlohmann::ordered_json doc;
  doc["tool"] = "netdiv";
  doc["format_version"] = 1;
  nlohmann::ordered_json cfg;
  cfg["manifest"] = config.manifest_path;
  cfg["scenarios"] = nlohmann::ordered_json::array();
  if (config.run_full) cfg["scenarios"].push_back("full");
  if (config.run_connected) cfg["scenarios"].push_back("connected");
  cfg["timepoints"] = config.scenario.timepoints;
  cfg["t1"] = config.scenario.t1;
  cfg["exclude_anchor"] = config.scenario.exclude_anchor;
  cfg["sig_level"] = config.sig_level;
  cfg["two_sided"] = config.two_sided;
  cfg["measures"] = r.measures;
  cfg["rank_r"] = config.spectral.r;
  cfg["spectral_tolerance"] = config.spectral.rel_tolerance;
  cfg["max_iterations"] = config.spectral.max_iterations;
  cfg["dense_fallback_threshold"] = config.spectral.dense_fallback_threshold;
  cfg["rw_steps"] = config.rw_steps;
  cfg["theta_scope"] = config.theta_scope == ThetaScope::Lcc ? "lcc" : "nonisolated";
  cfg["diameter_percentile"] = config.diameter.percentile;
  cfg["diameter_samples"] = config.diameter.sample_size;
  cfg["diameter_interpolate"] = config.diameter.interpolate;
  cfg["seed"] = config.seed;
  doc["config"] = std::move(cfg);
  auto datasets = nlohmann::ordered_json::array();
  for (const DatasetInfo& d : r.datasets) {
    nlohmann::ordered_json row;
    row["name"] = d.name;
    row["path"] = d.path;
    row["bipartite"] = d.bipartite;
    row["edges"] = d.edges;
    row["nodes"] = d.nodes;
    row["self_loops_dropped"] = d.self_loops_dropped;
    row["error"] = d.error;
    datasets.push_back(std::move(row));
  }
  doc["datasets"] = std::move(datasets);
  return doc;
}

}  // namespace pipeline_detail

// Writes the report bundle into config.out_dir.
inline void write_bundle(const RunConfig& config, const AnalysisResult& r) {
  namespace fs = std::filesystem;
  using pipeline_detail::format_double;
  const fs::path out(config.out_dir);
  fs::create_directories(out / "plot-data");

  {
    std::ofstream f(out / "series.csv", std::ios::binary);
    pipeline_detail::write_series_csv(f, r);
  }
  {
    std::ofstream f(out / "trends.csv", std::ios::binary);
    pipeline_detail::write_trends_csv(f, r);
  }
  {
    std::ofstream f(out / "summary.json", std::ios::binary);
    f << pipeline_detail::summary_json(r, config.sig_level).dump(2) << '\n';
  }
  {
    std::ofstream f(out / "run_metadata.json", std::ios::binary);
    f << pipeline_detail::metadata_json(config, r).dump(2) << '\n';
  }

  for (const DatasetSeries& s : r.series) {
    for (std::size_t mi = 0; mi < r.measures.size(); ++mi) {
      const std::string stem = pipeline_detail::sanitize(s.dataset) + "_" +
                               scenario_name(s.scenario) + "_" + r.measures[mi];
      std::ofstream f(out / "plot-data" / (stem + ".tsv"), std::ios::binary);
      for (const TimepointRow& row : s.rows) {
        if (row.cells[mi].status != MeasureStatus::Ok) continue;
        f << row.t << '\t' << format_double(row.cells[mi].value) << '\n';
      }
      const SeriesTrend* st = nullptr;
      for (const SeriesTrend& cand : r.trends) {
        if (cand.key.dataset == s.dataset && cand.key.scenario == s.scenario &&
            cand.key.measure == r.measures[mi]) {
          st = &cand;
          break;
        }
      }
      std::ofstream v(out / "plot-data" / (stem + ".verdict"), std::ios::binary);
      if (st && st->trend.testable) {
        v << "direction=" << direction_name(st->trend.direction)
          << "\nsignificant=" << (st->trend.significant ? "true" : "false")
          << "\np=" << format_double(st->trend.p_one_sided) << "\nS=" << st->trend.S << '\n';
      } else {
        v << "direction=none\nsignificant=false\np=\nS=\n";
      }
    }
  }
}

struct VerifyResult {
  bool ok = true;
  std::string first_divergence;
};

// Re-reads a bundle, revalidates the schema, recomputes the Mann-Kendall
// results from series.csv and the aggregation from those, and cross-checks
// trends.csv and summary.json field by field.
inline VerifyResult verify_bundle(const std::string& dir) {
  namespace fs = std::filesystem;
  using pipeline_detail::format_double;
  VerifyResult vr;
  auto fail = [&](const std::string& what) {
    if (vr.ok) {
      vr.ok = false;
      vr.first_divergence = what;
    }
  };

  std::ifstream meta_f(fs::path(dir) / "run_metadata.json");
  if (!meta_f) return {false, "missing run_metadata.json"};
  nlohmann::json meta;
  try {
    meta_f >> meta;
  } catch (const std::exception& e) {
    return {false, std::string("run_metadata.json: ") + e.what()};
  }
  double sig_level;
  bool two_sided;
  std::map<std::string, bool> dataset_bipartite;
  try {
    sig_level = meta.at("config").at("sig_level").get<double>();
    two_sided = meta.at("config").at("two_sided").get<bool>();
    for (const auto& d : meta.at("datasets"))
      dataset_bipartite[d.at("name").get<std::string>()] = d.at("bipartite").get<bool>();
  } catch (const std::exception& e) {
    return {false, std::string("run_metadata.json schema: ") + e.what()};
  }

  auto split = [](const std::string& line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    return cols;
  };

  // series.csv -> ordered value series per (dataset, scenario, measure).
  struct SeriesAcc {
    std::vector<std::optional<double>> values;
    std::int64_t last_t = -1;
    bool all_skipped = true;
  };
  std::map<std::tuple<std::string, std::string, std::string>, SeriesAcc> series;
  {
    std::ifstream f(fs::path(dir) / "series.csv");
    if (!f) return {false, "missing series.csv"};
    std::string line;
    if (!std::getline(f, line) ||
        line != "dataset,scenario,measure,timepoint,node_count,edge_count,value,status")
      return {false, "series.csv: bad header"};
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto cols = split(line);
      if (cols.size() != 8) return {false, "series.csv line " + std::to_string(lineno) + ": bad column count"};
      const std::string& status = cols[7];
      if (status != "ok" && status != "undefined" && status != "skipped" && status != "error")
        return {false, "series.csv line " + std::to_string(lineno) + ": bad status"};
      SeriesAcc& acc = series[{cols[0], cols[1], cols[2]}];
      std::int64_t t;
      if (!detail::parse_int64(cols[3], t) || t <= acc.last_t)
        return {false, "series.csv line " + std::to_string(lineno) + ": bad timepoint order"};
      acc.last_t = t;
      if (status == "ok") {
        char* end = nullptr;
        const double v = std::strtod(cols[6].c_str(), &end);
        if (cols[6].empty() || end != cols[6].c_str() + cols[6].size())
          return {false, "series.csv line " + std::to_string(lineno) + ": bad value"};
        acc.values.emplace_back(v);
        acc.all_skipped = false;
      } else {
        acc.values.emplace_back(std::nullopt);
        if (status != "skipped") acc.all_skipped = false;
      }
    }
  }

  // Recompute trends and compare with trends.csv.
  std::vector<SeriesTrend> recomputed;
  std::map<std::tuple<std::string, std::string, std::string>, const TrendResult*> trend_index;
  for (auto& [key, acc] : series) {
    if (acc.all_skipped) continue;
    SeriesTrend st;
    st.key.dataset = std::get<0>(key);
    st.key.scenario = std::get<1>(key) == "full" ? Scenario::Full : Scenario::Connected;
    st.key.measure = std::get<2>(key);
    auto it = dataset_bipartite.find(st.key.dataset);
    st.key.bipartite_dataset = it != dataset_bipartite.end() && it->second;
    st.trend = mann_kendall(acc.values, sig_level, two_sided);
    recomputed.push_back(std::move(st));
  }
  for (const auto& st : recomputed) {
    if (st.trend.testable)
      trend_index[{st.key.dataset, scenario_name(st.key.scenario), st.key.measure}] = &st.trend;
  }

  {
    std::ifstream f(fs::path(dir) / "trends.csv");
    if (!f) return {false, "missing trends.csv"};
    std::string line;
    if (!std::getline(f, line) ||
        line != "dataset,scenario,measure,S,variance,z,p,direction,significant")
      return {false, "trends.csv: bad header"};
    std::size_t seen = 0;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto cols = split(line);
      if (cols.size() != 9) return {false, "trends.csv line " + std::to_string(lineno) + ": bad column count"};
      auto it = trend_index.find({cols[0], cols[1], cols[2]});
      const std::string record = cols[0] + "/" + cols[1] + "/" + cols[2];
      if (it == trend_index.end()) {
        fail("trends.csv: unexpected record " + record);
        continue;
      }
      ++seen;
      const TrendResult& t = *it->second;
      if (cols[3] != std::to_string(t.S)) fail(record + ": S mismatch");
      else if (cols[4] != format_double(t.variance)) fail(record + ": variance mismatch");
      else if (cols[5] != format_double(t.z)) fail(record + ": z mismatch");
      else if (cols[6] != format_double(t.p_one_sided)) fail(record + ": p mismatch");
      else if (cols[7] != direction_name(t.direction)) fail(record + ": direction mismatch");
      else if (cols[8] != (t.significant ? "true" : "false")) fail(record + ": significant mismatch");
      if (!vr.ok) return vr;
    }
    if (seen != trend_index.size()) fail("trends.csv: missing records");
    if (!vr.ok) return vr;
  }

  // Recompute aggregates and compare with summary.json.
  std::vector<AggregateResult> agg = verdict_table(recomputed, sig_level);
  std::ifstream sf(fs::path(dir) / "summary.json");
  if (!sf) return {false, "missing summary.json"};
  nlohmann::json summary;
  try {
    sf >> summary;
  } catch (const std::exception& e) {
    return {false, std::string("summary.json: ") + e.what()};
  }
  try {
    const auto& rows = summary.at("rows");
    if (rows.size() != agg.size()) return {false, "summary.json: row count mismatch"};
    for (std::size_t i = 0; i < agg.size(); ++i) {
      const auto& row = rows[i];
      const AggregateResult& a = agg[i];
      const std::string record =
          a.measure + "/" + scenario_name(a.scenario) + " summary";
      if (row.at("measure").get<std::string>() != a.measure ||
          row.at("scenario").get<std::string>() != scenario_name(a.scenario))
        return {false, record + ": order mismatch"};
      if (row.at("k").get<std::uint32_t>() != a.k) return {false, record + ": k mismatch"};
      if (row.at("n").get<std::uint32_t>() != a.n) return {false, record + ": n mismatch"};
      if (row.at("p_binomial").get<double>() != a.p_binomial)
        return {false, record + ": p mismatch"};
      const std::string verdict =
          a.verdict == Direction::None ? "no_trend" : direction_name(a.verdict);
      if (row.at("verdict").get<std::string>() != verdict)
        return {false, record + ": verdict mismatch"};
    }
  } catch (const std::exception& e) {
    return {false, std::string("summary.json schema: ") + e.what()};
  }
  return vr;
}

}  // namespace netdiv
