#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qcompile::stats {

// Upper regularized incomplete gamma Q(a, x); drives the chi-square p-values.
double gamma_q(double a, double x);

// P[Chi2_dof >= statistic]
double chi_square_pvalue(double statistic, int dof);

// Pearson statistic against explicit expected counts (same total mass).
double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected);

// Goodness-of-fit p-value for observed counts vs uniform cells.
double chi_square_uniform_pvalue(const std::vector<std::uint64_t>& counts);

// Two-sample homogeneity test over shared categories.
double chi_square_two_sample_pvalue(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b);

struct MetricSummary {
  double mean = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  std::optional<double> analytic;  // exact reference when an oracle exists

  static MetricSummary of(const std::vector<double>& samples);
  nlohmann::json to_json() const;
};

struct StatsReport {
  nlohmann::json config;
  std::string version;
  std::map<std::string, MetricSummary> metrics;
  nlohmann::json extra;  // free-form per-experiment fields

  nlohmann::json to_json() const;
  std::string dump() const;  // canonical serialization used by determinism checks
};

}  // namespace qcompile::stats
