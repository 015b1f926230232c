// netdiv: temporal-network structural-diversity analysis.
//
//   netdiv analyze  --manifest data.tsv --out report/
//   netdiv generate --model ba --n 10000 --edges-per-step 2 --out ba.tsv
//   netdiv verify   report/

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "netdiv/growth.hpp"
#include "netdiv/pipeline.hpp"

namespace {

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run_analyze_command(netdiv::RunConfig config, const std::string& scenario_choice,
                        const std::string& measures_arg, const std::string& theta_scope_arg) {
  config.run_full = scenario_choice == "full" || scenario_choice == "both";
  config.run_connected = scenario_choice == "connected" || scenario_choice == "both";
  config.measures = split_csv_list(measures_arg);
  config.theta_scope =
      theta_scope_arg == "nonisolated" ? netdiv::ThetaScope::NonIsolated : netdiv::ThetaScope::Lcc;
  config.datasets = netdiv::parse_manifest_file(config.manifest_path);

  netdiv::AnalysisResult result = netdiv::run_analyze(config);
  netdiv::write_bundle(config, result);

  for (const auto& d : result.datasets) {
    if (!d.error.empty())
      std::cerr << "warning: dataset " << d.name << " failed: " << d.error << "\n";
    else if (d.self_loops_dropped > 0)
      std::cerr << "note: dataset " << d.name << ": dropped " << d.self_loops_dropped
                << " self-loops\n";
  }
  std::size_t failed = 0;
  for (const auto& d : result.datasets) {
    if (!d.error.empty()) ++failed;
  }
  std::cout << "analyzed " << (result.datasets.size() - failed) << "/" << result.datasets.size()
            << " datasets, " << result.trends.size() << " series; report in " << config.out_dir
            << "\n";
  return 0;
}

int run_generate_command(const netdiv::GrowthConfig& config, const std::string& out_path) {
  netdiv::TemporalEdgeList elist = netdiv::generate(config);

  // Write to a temp file first so a failed run leaves nothing behind.
  namespace fs = std::filesystem;
  const fs::path out(out_path);
  const fs::path tmp = out.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw netdiv::config_error("cannot write " + tmp.string());
    netdiv::write_edge_stream(f, elist);
  }
  fs::rename(tmp, out);

  nlohmann::ordered_json meta;
  meta["model"] = netdiv::growth_model_name(config.model);
  meta["n_target"] = config.n_target;
  meta["edges_per_step"] = config.edges_per_step;
  if (config.model == netdiv::GrowthModel::KernelGrowth) {
    meta["kernel"] = config.kernel == netdiv::KernelKind::Neumann ? "neumann" : "exponential";
    meta["kernel_alpha"] = config.kernel_alpha;
  }
  if (config.model == netdiv::GrowthModel::TriangleClosing) meta["epsilon"] = config.epsilon;
  meta["seed"] = config.seed;
  meta["edges"] = elist.edge_count();
  meta["nodes"] = elist.node_count();
  meta["note"] = "edge scores are sampled proportionally over non-adjacent pairs";
  {
    std::ofstream f(out.string() + ".meta.json", std::ios::binary);
    f << meta.dump(2) << '\n';
  }
  std::cout << "wrote " << elist.edge_count() << " edges over " << elist.node_count()
            << " nodes to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal-network structural-diversity toolkit"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "compute measures, trends and verdicts");
  netdiv::RunConfig config;
  std::string scenario_choice = "both";
  std::string measures_arg;
  std::string theta_scope_arg = "lcc";
  analyze->add_option("--manifest", config.manifest_path, "dataset manifest (name<TAB>path<TAB>kind)")
      ->required();
  analyze->add_option("--out", config.out_dir, "output directory")->required();
  analyze->add_option("--scenario", scenario_choice, "full|connected|both")
      ->check(CLI::IsMember({"full", "connected", "both"}));
  analyze->add_option("--timepoints", config.scenario.timepoints, "timepoint count (default 100)");
  analyze->add_option("--t1", config.scenario.t1, "connected-scenario anchor (default 75)");
  analyze->add_option("--sig-level", config.sig_level, "significance level (default 0.05)");
  analyze->add_option("--rank-r", config.spectral.r, "extremal eigenvalue count (default 50)");
  analyze->add_option("--rw-steps", config.rw_steps, "random-walk length (default 4)");
  analyze->add_option("--diameter-samples", config.diameter.sample_size,
                      "BFS sources for the effective diameter (default 500)");
  analyze->add_option("--spectral-tol", config.spectral.rel_tolerance,
                      "eigensolver relative tolerance (default 1e-9)");
  analyze->add_option("--seed", config.seed, "master seed (default 1)");
  analyze->add_option("--measures", measures_arg, "comma list of measure ids (default: all)");
  analyze->add_option("--jobs", config.jobs, "worker threads (default: hardware)");
  analyze->add_flag("--two-sided", config.two_sided, "two-sided Mann-Kendall tests");
  analyze->add_flag("--exclude-anchor", config.scenario.exclude_anchor,
                    "start the connected series at t1+1");
  analyze->add_option("--theta-scope", theta_scope_arg,
                      "graph used for the random-walk measure in the full scenario")
      ->check(CLI::IsMember({"lcc", "nonisolated"}));

  // generate
  auto* generate = app.add_subcommand("generate", "emit a synthetic temporal edge list");
  netdiv::GrowthConfig growth;
  std::string model_arg = "ba";
  std::string kernel_arg = "exponential";
  std::string gen_out;
  generate->add_option("--model", model_arg, "ba|eigenvector_pa|triangle_closing|kernel")
      ->check(CLI::IsMember({"ba", "eigenvector_pa", "triangle_closing", "kernel"}));
  generate->add_option("--n", growth.n_target, "target vertex count")->required();
  generate->add_option("--edges-per-step", growth.edges_per_step, "edges per step (default 2)");
  generate->add_option("--kernel", kernel_arg, "exponential|neumann")
      ->check(CLI::IsMember({"exponential", "neumann"}));
  generate->add_option("--kernel-alpha", growth.kernel_alpha, "kernel parameter (default 0.1)");
  generate->add_option("--epsilon", growth.epsilon,
                       "triangle-closing smoothing weight (default 0.01)");
  generate->add_option("--seed", growth.seed, "generator seed (default 1)");
  generate->add_option("--out", gen_out, "output TSV path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "revalidate a report bundle");
  std::string bundle_dir;
  verify->add_option("bundle", bundle_dir, "report directory")->required();

  analyze->add_flag("--assume-order", config.assume_order,
                    "use file order as virtual time when timestamps are absent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      return run_analyze_command(std::move(config), scenario_choice, measures_arg, theta_scope_arg);
    }
    if (*generate) {
      if (model_arg == "ba") growth.model = netdiv::GrowthModel::BarabasiAlbert;
      else if (model_arg == "eigenvector_pa") growth.model = netdiv::GrowthModel::EigenvectorPA;
      else if (model_arg == "triangle_closing") growth.model = netdiv::GrowthModel::TriangleClosing;
      else growth.model = netdiv::GrowthModel::KernelGrowth;
      growth.kernel =
          kernel_arg == "neumann" ? netdiv::KernelKind::Neumann : netdiv::KernelKind::Exponential;
      return run_generate_command(growth, gen_out);
    }
    if (*verify) {
      netdiv::VerifyResult res = netdiv::verify_bundle(bundle_dir);
      if (res.ok) {
        std::cout << "verify: ok\n";
        return 0;
      }
      std::cerr << "verify: FAILED: " << res.first_divergence << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
