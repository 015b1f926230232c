#pragma once

// Mann-Kendall trend testing with tie-corrected variance, the predicted
// direction catalog, and binomial aggregation across datasets. For short
// series (n <= 5) with distinct values the one-sided p comes from the exact
// permutation distribution of S, where the normal approximation is off by
// more than a percent; longer series use the continuity-corrected normal.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netdiv/errors.hpp"
#include "netdiv/ingest.hpp"

namespace netdiv {

enum class Direction { Up, Down, None };

inline const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::None: return "none";
  }
  return "none";
}

struct TrendResult {
  long long S = 0;
  double variance = 0.0;
  double z = 0.0;             // continuity-corrected, 0 when S == 0
  double p_one_sided = 0.5;   // toward the sign of S
  double p_up = 0.5;          // P(trend is upward at least this strong)
  double p_down = 0.5;
  Direction direction = Direction::None;
  bool significant = false;
  std::uint32_t points = 0;   // non-missing values used
  bool testable = false;      // at least 3 non-missing points
};

namespace trend_detail {

// P(Z >= x) for a standard normal, stable in the far tail.
inline double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Counts of permutations of 1..n by inversion number (Mahonian numbers).
inline std::vector<double> inversion_counts(std::uint32_t n) {
  std::vector<double> c{1.0};
  for (std::uint32_t k = 2; k <= n; ++k) {
    std::vector<double> next(c.size() + k - 1, 0.0);
    // convolve with the uniform block of length k
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

}  // namespace trend_detail

// S, tie-corrected variance, z and one-sided p for a series with optional
// missing points (skipped pairwise). Significance is one-sided toward the
// sign of S unless two_sided is set.
inline TrendResult mann_kendall(const std::vector<std::optional<double>>& series,
                                double sig_level = 0.05, bool two_sided = false) {
  TrendResult res;
  std::vector<double> xs;
  xs.reserve(series.size());
  for (const auto& v : series) {
    if (v) xs.push_back(*v);
  }
  res.points = static_cast<std::uint32_t>(xs.size());
  if (xs.size() < 3) return res;
  res.testable = true;

  const std::size_t n = xs.size();
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (xs[j] > xs[i])
        ++s;
      else if (xs[j] < xs[i])
        --s;
    }
  }
  res.S = s;

  std::map<double, std::uint64_t> groups;
  for (double x : xs) ++groups[x];
  double tie_term = 0.0;
  bool has_ties = false;
  for (const auto& [value, t] : groups) {
    (void)value;
    if (t > 1) {
      has_ties = true;
      tie_term += static_cast<double>(t) * (t - 1.0) * (2.0 * t + 5.0);
    }
  }
  const double nn = static_cast<double>(n);
  res.variance = (nn * (nn - 1.0) * (2.0 * nn + 5.0) - tie_term) / 18.0;

  if (res.variance > 0.0) {
    const double sd = std::sqrt(res.variance);
    if (s != 0)
      res.z = (s > 0 ? (static_cast<double>(s) - 1.0) : (static_cast<double>(s) + 1.0)) / sd;
    // Each tail gets its own continuity correction; at S = 0 both tails
    // coincide and exceed one half, matching the inclusive exact tail.
    res.p_up = trend_detail::normal_upper_tail((static_cast<double>(s) - 1.0) / sd);
    res.p_down = trend_detail::normal_upper_tail(-(static_cast<double>(s) + 1.0) / sd);
  }

  if (!has_ties && n <= 5) {
    // Exact null distribution: S = maxS - 2 * inversions.
    const auto counts = trend_detail::inversion_counts(static_cast<std::uint32_t>(n));
    double total = 0.0;
    for (double c : counts) total += c;
    const long long max_s = static_cast<long long>(n * (n - 1) / 2);
    const std::size_t inv_obs = static_cast<std::size_t>((max_s - s) / 2);
    double le = 0.0;
    for (std::size_t i = 0; i <= inv_obs && i < counts.size(); ++i) le += counts[i];
    double ge = counts[inv_obs];
    for (std::size_t i = inv_obs + 1; i < counts.size(); ++i) ge += counts[i];
    res.p_up = le / total;    // few inversions = strong upward trend
    res.p_down = ge / total;
  }

  res.p_one_sided = s > 0 ? res.p_up : (s < 0 ? res.p_down : res.p_up);
  const double effective_p = two_sided ? 2.0 * res.p_one_sided : res.p_one_sided;
  if (s > 0 && effective_p < sig_level) {
    res.direction = Direction::Up;
    res.significant = true;
  } else if (s < 0 && effective_p < sig_level) {
    res.direction = Direction::Down;
    res.significant = true;
  }
  return res;
}

// Upper tail P(X >= k) for X ~ Binomial(n, p), log-domain coefficients.
inline double binomial_aggregate(std::uint32_t k, std::uint32_t n, double sig_level = 0.05) {
  if (k > n) throw config_error("binomial_aggregate: k > n");
  if (k == 0) return 1.0;
  const long double lp = logl(static_cast<long double>(sig_level));
  const long double lq = log1pl(static_cast<long double>(-sig_level));
  long double sum = 0.0L;
  for (std::uint32_t x = k; x <= n; ++x) {
    const long double lc = lgammal(static_cast<long double>(n) + 1.0L) -
                           lgammal(static_cast<long double>(x) + 1.0L) -
                           lgammal(static_cast<long double>(n - x) + 1.0L);
    sum += expl(lc + x * lp + (n - x) * lq);
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

// One row of the predicted-direction catalog.
struct MeasureSpec {
  std::string id;
  std::string symbol;
  std::string range;
  Direction predicted;
  bool monotone;             // proof exists for the connected case
  bool unipartite_only;      // clustering: bipartite datasets are skipped
};

// The eleven diversity measures plus the average degree, in report order.
inline const std::vector<MeasureSpec>& measure_catalog() {
  static const std::vector<MeasureSpec> catalog = {
      {"avg_degree", "d", "(0,inf)", Direction::Up, true, false},
      {"gini", "G", "[0,1]", Direction::Up, false, false},
      {"jain", "J", "(0,1]", Direction::Down, false, false},
      {"power_law", "gamma", "(1,inf)", Direction::Down, false, false},
      {"rel_entropy", "H_er", "[0,1]", Direction::Down, false, false},
      {"eff_diameter", "delta_0.9", "(0,inf)", Direction::Down, true, false},
      {"rw_return", "theta_r", "[1,inf)", Direction::Down, false, false},
      {"controllability", "C_r", "(0,1]", Direction::Down, true, false},
      {"alg_connectivity", "a", "[0,inf)", Direction::Up, true, false},
      {"clustering", "c", "[0,1]", Direction::Up, false, true},
      {"frac_rank", "rank_F", "[1,inf)", Direction::Down, false, false},
      {"eig_power_law", "alpha", "(1,inf)", Direction::Up, false, false},
  };
  return catalog;
}

inline const MeasureSpec* find_measure(const std::string& id) {
  for (const auto& m : measure_catalog()) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

struct SeriesKey {
  std::string dataset;
  Scenario scenario = Scenario::Full;
  std::string measure;
  bool bipartite_dataset = false;
};

struct SeriesTrend {
  SeriesKey key;
  TrendResult trend;
};

struct AggregateResult {
  std::string measure;
  Scenario scenario = Scenario::Full;
  std::uint32_t n = 0;           // datasets tested
  std::uint32_t k = 0;           // significant in the predicted direction
  std::uint32_t k_opposite = 0;  // significant against it
  double p_binomial = 1.0;       // upper tail at k
  double p_opposite = 1.0;
  Direction predicted = Direction::None;
  Direction verdict = Direction::None;  // None = no trend
};

// Cross-dataset aggregation per (measure, scenario). Untestable series are
// excluded from n, as are bipartite datasets for the clustering row. The
// verdict is the predicted direction when its binomial p clears the level;
// a significant opposite count is reported as the opposite verdict.
inline std::vector<AggregateResult> verdict_table(const std::vector<SeriesTrend>& results,
                                                  double sig_level = 0.05) {
  std::vector<AggregateResult> out;
  for (const auto& spec : measure_catalog()) {
    for (Scenario scen : {Scenario::Full, Scenario::Connected}) {
      AggregateResult agg;
      agg.measure = spec.id;
      agg.scenario = scen;
      agg.predicted = spec.predicted;
      bool seen = false;
      for (const auto& st : results) {
        if (st.key.measure != spec.id || st.key.scenario != scen) continue;
        seen = true;
        if (spec.unipartite_only && st.key.bipartite_dataset) continue;
        if (!st.trend.testable) continue;
        ++agg.n;
        if (st.trend.significant && st.trend.direction == spec.predicted) ++agg.k;
        if (st.trend.significant && st.trend.direction != spec.predicted &&
            st.trend.direction != Direction::None)
          ++agg.k_opposite;
      }
      if (!seen) continue;
      agg.p_binomial = binomial_aggregate(agg.k, agg.n, sig_level);
      agg.p_opposite = binomial_aggregate(agg.k_opposite, agg.n, sig_level);
      if (agg.p_binomial < sig_level) {
        agg.verdict = spec.predicted;
      } else if (agg.p_opposite < sig_level) {
        agg.verdict = spec.predicted == Direction::Up ? Direction::Down : Direction::Up;
      }
      out.push_back(agg);
    }
  }
  return out;
}

}  // namespace netdiv
