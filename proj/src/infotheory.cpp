#include "qcompile/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qcompile::infotheory {

void Distribution::validate() const {
  if (probs.empty()) throw std::invalid_argument("Distribution: empty support");
  double sum = 0.0;
  for (double p : probs) {
    if (p < -tol::norm) throw std::invalid_argument("Distribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("Distribution: probabilities must sum to 1");
}

std::size_t BitDistribution::index_of(const BitString& x) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) idx |= std::size_t{1} << i;
  return idx;
}

void BitDistribution::validate() const {
  if (n < 0 || probs.size() != (std::size_t{1} << n))
    throw std::invalid_argument("BitDistribution: size mismatch");
  Distribution{probs}.validate();
}

void CqState::validate() const {
  if (entries.empty()) throw std::invalid_argument("CqState: no entries");
  Distribution d;
  const Eigen::Index dim = entries[0].rho.rows();
  for (const auto& e : entries) {
    d.probs.push_back(e.prob);
    if (e.rho.rows() != dim || e.rho.cols() != dim)
      throw std::invalid_argument("CqState: inconsistent dimensions");
  }
  d.validate();
}

void SuperpositionSpec::validate() const {
  if (labels.empty()) throw std::invalid_argument("SuperpositionSpec: empty index set");
  if (amplitudes.size() != static_cast<Eigen::Index>(labels.size()) ||
      side_states.size() != labels.size())
    throw std::invalid_argument("SuperpositionSpec: size mismatch");
  for (int i : labels)
    if (i < 0 || i >= dim_a) throw std::invalid_argument("SuperpositionSpec: label out of range");
  if (std::abs(amplitudes.norm() - 1.0) > tol::norm)
    throw std::invalid_argument("SuperpositionSpec: amplitudes not normalized");
  const Eigen::Index de = side_states[0].size();
  for (const auto& s : side_states) {
    if (s.size() != de) throw std::invalid_argument("SuperpositionSpec: side state dims differ");
    if (std::abs(s.norm() - 1.0) > tol::norm)
      throw std::invalid_argument("SuperpositionSpec: side state not unit norm");
  }
}

double min_entropy(const Distribution& d) {
  d.validate();
  const double pmax = *std::max_element(d.probs.begin(), d.probs.end());
  return -std::log2(pmax);
}

double conditional_min_entropy(const BitDistribution& joint, const IndexSet& I,
                               const BitString& condition) {
  joint.validate();
  const IndexSet ibar = complement(I, joint.n);
  if (condition.size() != ibar.size())
    throw std::invalid_argument("conditional_min_entropy: condition length mismatch");
  double total = 0.0, pmax = 0.0;
  for (std::size_t idx = 0; idx < joint.probs.size(); ++idx) {
    bool match = true;
    for (std::size_t k = 0; k < ibar.size(); ++k) {
      if (static_cast<int>((idx >> ibar[k]) & 1) != condition[k]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    total += joint.probs[idx];
    pmax = std::max(pmax, joint.probs[idx]);
  }
  if (total <= 0.0)
    throw std::invalid_argument("conditional_min_entropy: conditioning event has probability 0");
  return -std::log2(pmax / total);
}

double max_entropy(const qsim::DensityMatrix& rho, double rank_tol) {
  const Eigen::VectorXd ev = rho.eigenvalues();
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > rank_tol) ++rank;
  return std::log2(std::max(rank, 1));
}

double binary_entropy(double mu) {
  if (mu < 0.0 || mu > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
  if (mu == 0.0 || mu == 1.0) return 0.0;
  return -(mu * std::log2(mu) + (1.0 - mu) * std::log2(1.0 - mu));
}

std::uint64_t hamming_ball_volume(int n, int radius) {
  if (n < 0 || radius < 0 || radius > n)
    throw std::invalid_argument("hamming_ball_volume: need 0 <= radius <= n");
  if (n > 62) throw ResourceError("hamming_ball_volume: n > 62 would overflow the exact count");
  std::uint64_t volume = 0, binom = 1;  // binom = C(n, j), exact at every step
  for (int j = 0; j <= radius; ++j) {
    volume += binom;
    binom = binom * static_cast<std::uint64_t>(n - j) / static_cast<std::uint64_t>(j + 1);
  }
  return volume;
}

SmallSuperposReport check_small_superposition(const SuperpositionSpec& spec,
                                              const Matrix& measure_basis) {
  spec.validate();
  const int da = spec.dim_a;
  const int de = spec.dim_e();
  if (measure_basis.rows() != da || measure_basis.cols() != da)
    throw std::invalid_argument("check_small_superposition: basis dimension mismatch");
  if ((measure_basis.adjoint() * measure_basis - Matrix::Identity(da, da)).cwiseAbs().maxCoeff() >
      1e-8)
    throw std::invalid_argument("check_small_superposition: basis not orthonormal");

  Vector phi = Vector::Zero(static_cast<Eigen::Index>(da) * de);
  for (std::size_t k = 0; k < spec.labels.size(); ++k) {
    const int i = spec.labels[k];
    for (int e = 0; e < de; ++e)
      phi[static_cast<Eigen::Index>(i) * de + e] +=
          spec.amplitudes[static_cast<Eigen::Index>(k)] * spec.side_states[k][e];
  }

  Distribution w, w_tilde;
  w.probs.resize(static_cast<std::size_t>(da));
  w_tilde.probs.resize(static_cast<std::size_t>(da));
  for (int wi = 0; wi < da; ++wi) {
    // coherent state: project A onto |w>, weight of the residual E vector
    double pw = 0.0;
    for (int e = 0; e < de; ++e) {
      qsim::Complex amp = 0.0;
      for (int a = 0; a < da; ++a)
        amp += std::conj(measure_basis(a, wi)) * phi[static_cast<Eigen::Index>(a) * de + e];
      pw += std::norm(amp);
    }
    w.probs[static_cast<std::size_t>(wi)] = pw;
    // mixture: classical average of per-label outcome weights
    double pwt = 0.0;
    for (std::size_t k = 0; k < spec.labels.size(); ++k)
      pwt += std::norm(spec.amplitudes[static_cast<Eigen::Index>(k)]) *
             std::norm(measure_basis(spec.labels[k], wi));
    w_tilde.probs[static_cast<std::size_t>(wi)] = pwt;
  }

  Matrix rho_e = Matrix::Zero(de, de);
  for (int a = 0; a < da; ++a)
    for (int e = 0; e < de; ++e)
      for (int f = 0; f < de; ++f)
        rho_e(e, f) += phi[static_cast<Eigen::Index>(a) * de + e] *
                       std::conj(phi[static_cast<Eigen::Index>(a) * de + f]);

  SmallSuperposReport report;
  report.hmin_w = min_entropy(w);
  report.hmin_w_tilde = min_entropy(w_tilde);
  report.log_j = std::log2(static_cast<double>(spec.labels.size()));
  report.h0_rho_e = max_entropy(qsim::DensityMatrix{rho_e});
  report.pass = report.hmin_w >= report.hmin_w_tilde - report.log_j - tol::entropy &&
                report.h0_rho_e <= report.log_j + tol::entropy;
  return report;
}

double sampling_violation_rate(const BitString& x, const BitString& xhat, double alpha,
                               double epsilon, int trials, Rng& rng) {
  const int m = static_cast<int>(x.size());
  if (xhat.size() != x.size()) throw std::invalid_argument("sampling_violation_rate: length mismatch");
  if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("sampling_violation_rate: alpha in (0,1)");
  if (trials <= 0) throw std::invalid_argument("sampling_violation_rate: trials must be positive");

  const int t = static_cast<int>(std::ceil(alpha * m));
  std::vector<std::uint8_t> diff(static_cast<std::size_t>(m));
  int total_diff = 0;
  for (int i = 0; i < m; ++i) {
    diff[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x[static_cast<std::size_t>(i)] !=
                                                                  xhat[static_cast<std::size_t>(i)]);
    total_diff += diff[static_cast<std::size_t>(i)];
  }

  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  int violations = 0;
  for (int trial = 0; trial < trials; ++trial) {
    // partial Fisher-Yates: perm[0..t) becomes a uniform t-subset
    int diff_T = 0, diff_Tp = 0, size_Tp = 0;
    for (int k = 0; k < t; ++k) {
      const int j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - k)));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(j)]);
      const int i = perm[static_cast<std::size_t>(k)];
      diff_T += diff[static_cast<std::size_t>(i)];
      if (rng.bit()) {  // theta_i = thetahat_i happens with probability 1/2
        ++size_Tp;
        diff_Tp += diff[static_cast<std::size_t>(i)];
      }
    }
    const int rest = m - t;
    const double r_rest = rest > 0 ? static_cast<double>(total_diff - diff_T) / rest : 0.0;
    const double r_test = size_Tp > 0 ? static_cast<double>(diff_Tp) / size_Tp : 0.0;
    if (r_rest > r_test + epsilon) ++violations;
  }
  return static_cast<double>(violations) / trials;
}

CqState markov_projection(const CqState& state) {
  state.validate();
  std::map<int, double> py;
  std::map<int, Matrix> accum;
  const Eigen::Index dim = state.entries[0].rho.rows();
  for (const auto& e : state.entries) {
    py[e.y] += e.prob;
    auto [it, inserted] = accum.try_emplace(e.y, Matrix::Zero(dim, dim));
    it->second += e.prob * e.rho;
  }
  CqState out;
  for (const auto& e : state.entries) {
    CqState::Entry ne = e;
    if (py[e.y] > 0.0) ne.rho = accum[e.y] / py[e.y];
    out.entries.push_back(std::move(ne));
  }
  return out;
}

CqState pointwise_purify(const CqState& state) {
  state.validate();
  const Eigen::Index d = state.entries[0].rho.rows();
  bool all_pure = true;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  solvers.reserve(state.entries.size());
  for (const auto& e : state.entries) {
    solvers.emplace_back(e.rho);
    int rank = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      if (solvers.back().eigenvalues()[i] > tol::rank) ++rank;
    if (rank > 1) all_pure = false;
  }
  const Eigen::Index r_dim = all_pure ? 1 : d;  // trivial register when nothing to purify
  CqState out;
  for (std::size_t k = 0; k < state.entries.size(); ++k) {
    const auto& es = solvers[k];
    Vector psi = Vector::Zero(d * r_dim);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double lambda = std::max(es.eigenvalues()[j], 0.0);
      if (lambda <= 0.0) continue;
      const Eigen::Index r_slot = all_pure ? 0 : j;
      for (Eigen::Index e = 0; e < d; ++e)
        psi[e * r_dim + r_slot] += std::sqrt(lambda) * es.eigenvectors()(e, j);
    }
    CqState::Entry ne;
    ne.x = state.entries[k].x;
    ne.y = state.entries[k].y;
    ne.prob = state.entries[k].prob;
    ne.rho = psi * psi.adjoint();
    out.entries.push_back(std::move(ne));
  }
  return out;
}

double cq_trace_distance(const CqState& a, const CqState& b) {
  // classical registers make the difference block-diagonal over (x, y)
  std::map<std::pair<int, int>, Matrix> blocks;
  auto add = [&blocks](const CqState& s, double sign) {
    for (const auto& e : s.entries) {
      auto key = std::make_pair(e.x, e.y);
      auto [it, inserted] = blocks.try_emplace(key, Matrix::Zero(e.rho.rows(), e.rho.cols()));
      it->second += sign * e.prob * e.rho;
    }
  };
  add(a, 1.0);
  add(b, -1.0);
  double dist = 0.0;
  for (const auto& [key, diff] : blocks) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    dist += 0.5 * es.eigenvalues().cwiseAbs().sum();
  }
  return dist;
}

qsim::DensityMatrix cq_average_state(const CqState& state) {
  state.validate();
  Matrix avg = Matrix::Zero(state.entries[0].rho.rows(), state.entries[0].rho.cols());
  for (const auto& e : state.entries) avg += e.prob * e.rho;
  return qsim::DensityMatrix{std::move(avg)};
}

}  // namespace qcompile::infotheory
