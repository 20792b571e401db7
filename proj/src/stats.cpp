#include "qcompile/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcompile::stats {

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_pvalue(double statistic, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi_square_pvalue: dof must be positive");
  if (statistic <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * statistic);
}

double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square_statistic: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_statistic: expected <= 0");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

double chi_square_uniform_pvalue(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform_pvalue: need >= 2 cells");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  std::vector<double> obs(counts.begin(), counts.end());
  std::vector<double> exp(counts.size(), expected);
  return chi_square_pvalue(chi_square_statistic(obs, exp), static_cast<int>(counts.size()) - 1);
}

double chi_square_two_sample_pvalue(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("chi_square_two_sample_pvalue: bad category counts");
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi_square_two_sample_pvalue: empty sample");
  double stat = 0.0;
  int dof = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pooled = (static_cast<double>(a[i]) + static_cast<double>(b[i])) / (na + nb);
    if (pooled == 0.0) continue;  // category absent from both samples
    const double ea = pooled * na;
    const double eb = pooled * nb;
    const double da = static_cast<double>(a[i]) - ea;
    const double db = static_cast<double>(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
    ++dof;
  }
  if (dof < 2) return 1.0;
  return chi_square_pvalue(stat, dof - 1);
}

MetricSummary MetricSummary::of(const std::vector<double>& samples) {
  MetricSummary s;
  s.count = samples.size();
  if (samples.empty()) return s;
  s.min = *std::min_element(samples.begin(), samples.end());
  s.max = *std::max_element(samples.begin(), samples.end());
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  double var = 0.0;
  for (double v : samples) var += (v - s.mean) * (v - s.mean);
  if (samples.size() > 1) {
    var /= static_cast<double>(samples.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return s;
}

nlohmann::json MetricSummary::to_json() const {
  nlohmann::json j{{"mean", mean},
                   {"std_error", std_error},
                   {"min", min},
                   {"max", max},
                   {"count", count}};
  if (analytic) j["analytic"] = *analytic;
  return j;
}

nlohmann::json StatsReport::to_json() const {
  nlohmann::json j;
  j["config"] = config;
  j["version"] = version;
  nlohmann::json m;
  for (const auto& [name, summary] : metrics) m[name] = summary.to_json();
  j["metrics"] = m;
  if (!extra.is_null()) j["extra"] = extra;
  return j;
}

std::string StatsReport::dump() const { return to_json().dump(2); }

}  // namespace qcompile::stats
