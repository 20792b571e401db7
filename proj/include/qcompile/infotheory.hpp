#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qcompile/common.hpp"
#include "qcompile/qsim.hpp"

namespace qcompile::infotheory {

using qsim::Matrix;
using qsim::Vector;

// Finite probability distribution; support labels are irrelevant for the
// entropy computations so only the weights are kept.
struct Distribution {
  std::vector<double> probs;
  void validate() const;
};

// Distribution over {0,1}^n, indexed little-endian: bit i of the index is the
// value at string position i.
struct BitDistribution {
  int n = 0;
  std::vector<double> probs;  // size 2^n

  static std::size_t index_of(const BitString& x);
  void validate() const;
};

// Classical-quantum state with up to two classical registers (set y = 0
// everywhere for a single register).
struct CqState {
  struct Entry {
    int x = 0;
    int y = 0;
    double prob = 0.0;
    Matrix rho;
  };
  std::vector<Entry> entries;
  void validate() const;
};

// |phi_AE> = sum_{i in J} alpha_i |i>|phi_E^i> with {|i>} the computational
// basis of a dim_a-dimensional register A.
struct SuperpositionSpec {
  int dim_a = 0;
  std::vector<int> labels;          // J, indices into the A basis
  Vector amplitudes;                // one per label, sum |alpha|^2 = 1
  std::vector<Vector> side_states;  // unit vectors, one per label
  void validate() const;
  int dim_e() const { return side_states.empty() ? 1 : static_cast<int>(side_states[0].size()); }
};

struct SmallSuperposReport {
  double hmin_w = 0.0;
  double hmin_w_tilde = 0.0;
  double log_j = 0.0;
  double h0_rho_e = 0.0;
  bool pass = false;
};

// H_inf(X) = -log2 max_x P(x)
double min_entropy(const Distribution& d);

// Min-entropy of X|_I given X|_comp(I) = condition. `condition` holds the
// values at the complement positions in ascending order.
double conditional_min_entropy(const BitDistribution& joint, const IndexSet& I,
                               const BitString& condition);

// H_0(rho) = log2 rank(rho); eigenvalues above rank_tol count toward the rank.
double max_entropy(const qsim::DensityMatrix& rho, double rank_tol = tol::rank);

double binary_entropy(double mu);

// sum_{j<=radius} C(n, j), exact. Supports n <= 62 so the count fits 64 bits.
std::uint64_t hamming_ball_volume(int n, int radius);

// Exact evaluation of both small-superposition bounds: the coherent-state
// outcome W keeps at least H_inf(W~) - log|J| bits, and tr_A of the state has
// max-entropy at most log|J|. `measure_basis` has the basis vectors |w> as
// columns.
SmallSuperposReport check_small_superposition(const SuperpositionSpec& spec,
                                              const Matrix& measure_basis);

// Monte Carlo estimate of Pr[x outside B_test] over random test subsets T of
// size ceil(alpha m) and random T' (fair coin per tested index): a violation
// is r_H(x|_Tbar, xhat|_Tbar) > r_H(x|_T', xhat|_T') + epsilon.
double sampling_violation_rate(const BitString& x, const BitString& xhat, double alpha,
                               double epsilon, int trials, Rng& rng);

// rho_E^y := sum_x P(x|y) rho_E^{x,y}; returns the projected state with the
// same (x, y, prob) skeleton. Equality with the input decides Markovianity.
CqState markov_projection(const CqState& state);

// Replaces each conditional state by a rank-1 projector on the doubled space
// purifying it. If every entry is already pure the purifying register is
// trivial and dimensions are unchanged.
CqState pointwise_purify(const CqState& state);

// Trace distance between two cq-states with block-diagonal classical parts.
double cq_trace_distance(const CqState& a, const CqState& b);

// rho_ER = sum P(x) proj(psi^x) for a pointwise-purified state; its rank
// drives the H_0 side of the benign bounds.
qsim::DensityMatrix cq_average_state(const CqState& state);

}  // namespace qcompile::infotheory
