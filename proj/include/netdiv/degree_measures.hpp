#pragma once

// Degree-distribution equality measures: Gini coefficient, Jain's fairness
// index, power-law exponent, and relative edge distribution entropy.
// Undefined cases (too few vertices, exactly regular sequences for the
// exponent) come back as nullopt so the trend layer can treat them as
// series holes rather than fabricated values.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "netdiv/graph.hpp"

namespace netdiv {

struct DegreeStats {
  std::vector<std::uint64_t> sorted_degrees;  // ascending, >= 1
  std::uint64_t sum = 0;                      // = 2|E|
  double sum_sq = 0.0;
  std::uint64_t d_min = 0;
  std::uint32_t isolated_excluded = 0;

  std::size_t size() const { return sorted_degrees.size(); }
};

// Isolated vertices (possible in induced subgraphs) are excluded and counted.
inline DegreeStats degree_stats(const GraphSnapshot& g) {
  DegreeStats s;
  s.sorted_degrees.reserve(g.n);
  for (NodeId u = 0; u < g.n; ++u) {
    const std::uint64_t d = g.degree[u];
    if (d == 0) {
      ++s.isolated_excluded;
      continue;
    }
    s.sorted_degrees.push_back(d);
    s.sum += d;
    s.sum_sq += static_cast<double>(d) * static_cast<double>(d);
  }
  std::sort(s.sorted_degrees.begin(), s.sorted_degrees.end());
  s.d_min = s.sorted_degrees.empty() ? 0 : s.sorted_degrees.front();
  return s;
}

// Sample Gini over the ascending sequence: sum((2i - n - 1) x_i) / (n sum x).
inline std::optional<double> gini_coefficient(const DegreeStats& s) {
  const std::size_t n = s.size();
  if (n < 2 || s.sum == 0) return std::nullopt;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0;
    acc += w * static_cast<double>(s.sorted_degrees[i]);
  }
  return acc / (static_cast<double>(n) * static_cast<double>(s.sum));
}

// J = (sum d)^2 / (n sum d^2); 1 iff all degrees equal.
inline std::optional<double> jain_index(const DegreeStats& s) {
  const std::size_t n = s.size();
  if (n == 0 || s.sum == 0) return std::nullopt;
  const double sum = static_cast<double>(s.sum);
  return sum * sum / (static_cast<double>(n) * s.sum_sq);
}

// gamma = 1 + n / sum(ln(d / d_min)); regular sequences diverge (nullopt).
inline std::optional<double> power_law_exponent(const DegreeStats& s) {
  const std::size_t n = s.size();
  if (n < 2 || s.d_min == 0) return std::nullopt;
  double acc = 0.0;
  for (std::uint64_t d : s.sorted_degrees)
    acc += std::log(static_cast<double>(d) / static_cast<double>(s.d_min));
  if (acc == 0.0) return std::nullopt;  // all degrees equal: infinite exponent
  return 1.0 + static_cast<double>(n) / acc;
}

// H_er = (1/ln n) sum -(d/2|E|) ln(d/2|E|); 1 iff all degrees equal.
inline std::optional<double> relative_entropy(const DegreeStats& s) {
  const std::size_t n = s.size();
  if (n < 2 || s.sum == 0) return std::nullopt;
  const double total = static_cast<double>(s.sum);
  double h = 0.0;
  for (std::uint64_t d : s.sorted_degrees) {
    const double p = static_cast<double>(d) / total;
    h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(n));
}

}  // namespace netdiv
