#include <catch2/catch.hpp>
#include <cmath>

#include "netdiv/connectivity_measures.hpp"
#include "netdiv/degree_measures.hpp"
#include "netdiv/growth.hpp"
#include "netdiv/linkpred_measures.hpp"
#include "oracles.hpp"

using namespace netdiv;

TEST_CASE("generators are deterministic under a fixed seed") {
  for (GrowthModel model : {GrowthModel::BarabasiAlbert, GrowthModel::EigenvectorPA,
                            GrowthModel::TriangleClosing, GrowthModel::KernelGrowth}) {
    GrowthConfig cfg;
    cfg.model = model;
    cfg.n_target = model == GrowthModel::KernelGrowth ? 24 : 60;
    cfg.edges_per_step = 2;
    cfg.seed = 99;
    CHECK(generate(cfg) == generate(cfg));
  }
}

TEST_CASE("BA edge-count arithmetic") {
  GrowthConfig cfg;
  cfg.n_target = 1000;
  cfg.edges_per_step = 2;
  cfg.seed = 4;
  auto el = generate_ba(cfg);
  // m0 (n - m0 - 1) + C(m0+1, 2)
  CHECK(el.edge_count() == 2 * (1000 - 3) + 3);
  CHECK(el.node_count() == 1000);
  for (std::size_t i = 0; i < el.edge_count(); ++i)
    CHECK(el.edges[i].time == static_cast<std::int64_t>(i + 1));
}

TEST_CASE("BA with one edge per step grows a tree") {
  GrowthConfig cfg;
  cfg.n_target = 300;
  cfg.edges_per_step = 1;
  cfg.seed = 13;
  auto el = generate_ba(cfg);
  CHECK(el.edge_count() == el.node_count() - 1);
  CHECK(is_connected(build_snapshot(el, el.edge_count())));
}

TEST_CASE("BA degree exponent lands near three") {
  GrowthConfig cfg;
  cfg.n_target = 10000;
  cfg.edges_per_step = 2;
  cfg.seed = 7;
  auto el = generate_ba(cfg);
  auto stats = degree_stats(build_snapshot(el, el.edge_count()));
  auto gamma = power_law_exponent(stats);
  REQUIRE(gamma.has_value());
  CHECK(*gamma > 2.6);
  CHECK(*gamma < 3.4);
}

TEST_CASE("eigenvector PA stays within the drift budget at checkpoints") {
  GrowthConfig cfg;
  cfg.model = GrowthModel::EigenvectorPA;
  cfg.n_target = 400;
  cfg.edges_per_step = 2;
  cfg.seed = 21;
  std::vector<EvPaCheckpoint> checkpoints;
  auto el = generate_eigenvector_pa(cfg, &checkpoints);
  CHECK(el.edge_count() == 2 * (400 - 3) + 3);
  REQUIRE(!checkpoints.empty());
  for (const auto& cp : checkpoints) {
    CHECK(std::fabs(cp.incremental_lambda1 - cp.exact_lambda1) <= 0.05 * cp.exact_lambda1);
  }
}

TEST_CASE("triangle closing raises the clustering coefficient") {
  GrowthConfig cfg;
  cfg.model = GrowthModel::TriangleClosing;
  cfg.n_target = 300;
  cfg.edges_per_step = 3;
  cfg.seed = 5;
  auto el = generate_triangle_closing(cfg);
  const auto counts = make_timepoints(el.edge_count(), 20);
  const double early = *clustering_coefficient(build_snapshot(el, counts[4]));
  const double late = *clustering_coefficient(build_snapshot(el, counts[19]));
  CHECK(late > early);
}

TEST_CASE("triangle closing trends: clustering up, connected-scenario diameter down") {
  GrowthConfig cfg;
  cfg.model = GrowthModel::TriangleClosing;
  cfg.n_target = 2000;
  cfg.edges_per_step = 2;
  cfg.seed = 9;
  auto el = generate_triangle_closing(cfg);

  ScenarioConfig scen;
  scen.timepoints = 100;
  scen.t1 = 75;
  std::vector<std::optional<double>> clustering;
  for (std::size_t k : make_timepoints(el.edge_count(), scen.timepoints))
    clustering.push_back(clustering_coefficient(build_snapshot(el, k)));
  auto ct = mann_kendall(clustering);
  CHECK(ct.direction == Direction::Up);
  CHECK(ct.significant);

  auto cs = build_connected_series(el, scen);
  std::vector<std::optional<double>> diameter;
  DiameterOptions dop;
  dop.sample_size = 400;
  dop.seed = 77;
  for (const auto& snap : cs.series) diameter.push_back(effective_diameter(snap, dop));
  auto dt = mann_kendall(diameter);
  CHECK(dt.direction == Direction::Down);
  CHECK(dt.significant);
}

TEST_CASE("triangle closing completes small graphs and stops") {
  GrowthConfig cfg;
  cfg.model = GrowthModel::TriangleClosing;
  cfg.n_target = 10;
  cfg.edges_per_step = 100;  // far more than C(10,2) = 45
  cfg.seed = 3;
  auto el = generate_triangle_closing(cfg);
  CHECK(el.edge_count() == 45);
  GraphSnapshot g = build_snapshot(el, el.edge_count());
  CHECK(g.m == 45);
  for (NodeId u = 0; u < g.n; ++u) CHECK(g.simple_degree(u) == 9);
}

TEST_CASE("triangle closing with zero epsilon falls back to uniform sampling") {
  GrowthConfig cfg;
  cfg.model = GrowthModel::TriangleClosing;
  cfg.n_target = 12;
  cfg.edges_per_step = 1;
  cfg.epsilon = 0.0;
  cfg.seed = 11;
  auto el = generate_triangle_closing(cfg);
  CHECK(el.edge_count() == 12);
}

TEST_CASE("Neumann kernel matches the 2x2 geometric series") {
  // On K2 with alpha = 1/4 the series sums to 16/15 on the diagonal and
  // 4/15 off it.
  Matrix a(2);
  a(0, 1) = a(1, 0) = 1.0;
  Matrix k = neumann_kernel(a, 0.25);
  // direct series summation oracle
  double diag = 0.0, off = 0.0, pw = 1.0;
  for (int i = 0; i < 200; i += 2) {
    diag += pw;
    off += pw * 0.25;
    pw *= 0.0625;
  }
  CHECK(k(0, 0) == Approx(diag).epsilon(1e-12));
  CHECK(k(0, 1) == Approx(off).epsilon(1e-12));
  CHECK(k(1, 0) == Approx(off).epsilon(1e-12));
}

TEST_CASE("matrix exponential of the zero matrix is the identity") {
  Matrix zero(5);
  Matrix e = matrix_exponential(zero, 0.7);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) CHECK(e(i, j) == Approx(i == j ? 1.0 : 0.0).margin(1e-15));
  }
}

TEST_CASE("matrix exponential matches the dense eigendecomposition route") {
  Rng rng(301);
  auto tg = oracle::random_connected_multigraph(rng, 12, 10, 0.0);
  GraphSnapshot g = tg.snap();
  Matrix a(g.n);
  for (NodeId u = 0; u < g.n; ++u) {
    const auto row = g.row(u);
    const auto mult = g.row_mult(u);
    for (std::size_t j = 0; j < row.size(); ++j) a(u, row[j]) = mult[j];
  }
  Matrix e = matrix_exponential(a, 0.3);
  Eigen::MatrixXd ad = oracle::adjacency_dense(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ad);
  Eigen::MatrixXd expected = es.eigenvectors() *
                             (0.3 * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                             es.eigenvectors().transpose();
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j)
      CHECK(e(i, j) == Approx(expected(i, j)).margin(1e-10));
  }
}

TEST_CASE("kernel growth rejects a divergent Neumann parameter") {
  GrowthConfig cfg;
  cfg.model = GrowthModel::KernelGrowth;
  cfg.kernel = KernelKind::Neumann;
  cfg.n_target = 16;
  cfg.edges_per_step = 3;
  cfg.kernel_alpha = 0.9;  // lambda1 exceeds 1/alpha almost immediately
  cfg.seed = 17;
  CHECK_THROWS_AS(generate_kernel_growth(cfg), config_error);
}

TEST_CASE("kernel growth produces the requested volume") {
  for (KernelKind kind : {KernelKind::Exponential, KernelKind::Neumann}) {
    GrowthConfig cfg;
    cfg.model = GrowthModel::KernelGrowth;
    cfg.kernel = kind;
    cfg.n_target = 20;
    cfg.edges_per_step = 2;
    cfg.kernel_alpha = kind == KernelKind::Neumann ? 0.05 : 0.5;
    cfg.seed = 23;
    auto el = generate_kernel_growth(cfg);
    CHECK(el.edge_count() == 40);
    GraphSnapshot g = build_snapshot(el, el.edge_count());
    for (auto m : g.multiplicity) CHECK(m == 1);  // simple by construction
  }
}

TEST_CASE("exponential and Neumann kernels agree on the top-scored pair for small alpha") {
  // Both kernels order pairs by the leading A^2 term once alpha is small.
  Rng rng(307);
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto tg = oracle::random_connected_multigraph(rng, 20, 15, 0.0);
    GraphSnapshot g = tg.snap();
    Matrix a(g.n);
    for (NodeId u = 0; u < g.n; ++u) {
      for (NodeId v : g.row(u)) a(u, v) = 1.0;
    }
    const double alpha = 0.01;
    Matrix ek = matrix_exponential(a, alpha);
    Matrix nk = neumann_kernel(a, alpha);
    auto top_pair = [&](const Matrix& k) {
      std::pair<std::uint32_t, std::uint32_t> best{0, 0};
      double best_score = -1.0;
      for (std::uint32_t i = 0; i < g.n; ++i) {
        for (std::uint32_t j = i + 1; j < g.n; ++j) {
          if (g.edge_multiplicity(i, j) != 0) continue;
          if (k(i, j) > best_score) {
            best_score = k(i, j);
            best = {i, j};
          }
        }
      }
      return best;
    };
    if (top_pair(ek) == top_pair(nk)) ++agree;
  }
  CHECK(agree == 20);
}

TEST_CASE("superlinear growth diagnostic on exact power laws") {
  // m(t) = n(t): c = 1, predicted Down.
  {
    std::vector<RawTemporalEdge> raw;
    for (int v = 1; v <= 400; ++v) raw.push_back({0, v, v});  // star: n = m + 1
    auto el = compact_edge_list(std::move(raw), false);
    auto diag = superlinear_growth_diagnostic(el, 50);
    REQUIRE(diag.c_hat.has_value());
    CHECK(*diag.c_hat == Approx(1.0).margin(0.02));
    CHECK(diag.predicted_rank_direction == Direction::Down);
  }
  // Synthetic m(t) ~ n(t)^1.6: vertex k arrives exactly when the edge count
  // reaches k^1.6, so vertex j < k is already present from its own step.
  {
    std::vector<RawTemporalEdge> raw;
    std::int64_t t = 0;
    for (std::int64_t k = 20; k <= 400; ++k) {
      const auto target = static_cast<std::size_t>(std::pow(static_cast<double>(k), 1.6));
      std::int64_t j = 0;
      while (raw.size() < target) raw.push_back({k, j++ % k, ++t});
    }
    auto el = compact_edge_list(std::move(raw), false);
    auto diag = superlinear_growth_diagnostic(el, 60);
    REQUIRE(diag.c_hat.has_value());
    CHECK(*diag.c_hat == Approx(1.6).margin(0.05));
    CHECK(diag.predicted_rank_direction == Direction::None);
    CHECK(diag.in_reported_range);
  }
}

TEST_CASE("superlinear growth diagnostic on BA output") {
  GrowthConfig cfg;
  cfg.n_target = 4000;
  cfg.edges_per_step = 2;
  cfg.seed = 31;
  auto el = generate_ba(cfg);
  auto diag = superlinear_growth_diagnostic(el, 100);
  REQUIRE(diag.c_hat.has_value());
  CHECK(*diag.c_hat == Approx(1.0).margin(0.05));
  CHECK(diag.predicted_rank_direction == Direction::Down);
}

TEST_CASE("constant vertex count yields an undefined fit") {
  std::vector<RawTemporalEdge> raw;
  for (int i = 0; i < 40; ++i) raw.push_back({i % 3, (i + 1) % 3, i});
  auto el = compact_edge_list(std::move(raw), false);
  auto diag = superlinear_growth_diagnostic(el, 10);
  CHECK_FALSE(diag.c_hat.has_value());
}
