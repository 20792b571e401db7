#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "qcompile/common.hpp"

namespace qcompile::qsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kDefaultDenseCap = 20;    // max qubits per dense block
inline constexpr int kDefaultMatrixCap = 12;   // max qubits in a reduced density matrix

// Amplitudes of |bit> in the given basis, relative to the computational basis.
Eigen::Vector2cd bb84_amplitudes(int bit, Basis basis);

// Density matrix with the usual validity checks attached.
struct DensityMatrix {
  Matrix mat;

  Eigen::Index dim() const { return mat.rows(); }
  // Throws StateError unless Hermitian, unit trace and PSD within tolerance.
  void validate() const;
  Eigen::VectorXd eigenvalues() const;
};

// Trace distance (1/2)tr|rho - sigma|, via the eigenvalues of the difference.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Works on any Eigen expression pair of equal dimension.
template <typename DerivedA, typename DerivedB>
double trace_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Matrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// Lazily factored register of qubits. Honest BB84 traffic stays in per-qubit
// product form; only operations that genuinely entangle (EPR pairs, adversary
// isometries) allocate dense amplitude blocks. Measuring a qubit consumes it
// into a classical record, so remeasurement is a state error by construction.
class QuantumState {
 public:
  QuantumState() = default;
  explicit QuantumState(int dense_cap, int matrix_cap = kDefaultMatrixCap)
      : dense_cap_(dense_cap), matrix_cap_(matrix_cap) {}

  int qubit_count() const { return static_cast<int>(slots_.size()); }
  bool is_live(int q) const;
  bool is_dense(int q) const;
  IndexSet live_qubits() const;
  int dense_cap() const { return dense_cap_; }

  // Width of the widest dense block and total number of dense-held qubits.
  int max_dense_width() const;
  int total_dense_qubits() const;

  // Appends qubits; returns the index of the first one.
  int add_product_qubits(const BitString& x, const BasisString& theta);
  int add_epr_pair();

  // Classical record of an already measured qubit.
  std::optional<int> consumed_outcome(int q) const;

  // Amplitude vector over exactly `qubits` in the given order. All blocks
  // touching the list must be fully contained in it.
  Vector dense_vector(std::span<const int> qubits) const;

  // Verifies unit norms and block consistency; throws StateError on failure.
  void check_invariants() const;

  friend BitString measure(QuantumState& state, std::span<const int> positions,
                           const BasisString& bases, Rng& rng);
  friend void apply_isometry(QuantumState& state, std::span<const int> qubits,
                             const Matrix& matrix);
  friend void apply_bit_flip(QuantumState& state, int qubit);
  friend DensityMatrix reduced_density(const QuantumState& state, std::span<const int> keep);

 private:
  struct ProductFactor {
    std::uint8_t bit;
    Basis basis;
  };
  struct DenseBlock {
    std::vector<int> qubits;  // tensor order; first qubit = most significant index bit
    Vector amps;
  };
  enum class SlotKind : std::uint8_t { Product, Dense, Consumed };
  struct Slot {
    SlotKind kind;
    ProductFactor product;  // valid when kind == Product
    int block = -1;         // valid when kind == Dense
    std::uint8_t outcome = 0;  // valid when kind == Consumed
  };

  // Merges everything entangled with `qubits` into one dense block whose
  // leading qubits are exactly `qubits` in order. Returns the block id.
  int merge_dense(std::span<const int> qubits);
  void erase_qubit_from_block(int block_id, int position_in_block);
  const Slot& slot(int q) const;

  std::vector<Slot> slots_;
  std::vector<DenseBlock> blocks_;  // freed entries have empty qubit lists
  int dense_cap_ = kDefaultDenseCap;
  int matrix_cap_ = kDefaultMatrixCap;
};

// BB84 product state |x>_theta.
QuantumState prepare_bb84(const BitString& x, const BasisString& theta,
                          int dense_cap = kDefaultDenseCap);

// `count` independent EPR pairs (|00>+|11>)/sqrt(2); qubits 2i, 2i+1 form pair i.
QuantumState prepare_epr_pairs(int count, int dense_cap = kDefaultDenseCap);

// Measures `positions` (in order) in the given bases. Outcomes follow the Born
// rule under `rng`; measured qubits become classical records.
BitString measure(QuantumState& state, std::span<const int> positions,
                  const BasisString& bases, Rng& rng);

// Applies a square isometry to the listed qubits (tensor order as listed),
// merging the touched blocks into one dense block first.
void apply_isometry(QuantumState& state, std::span<const int> qubits, const Matrix& matrix);

// Pauli-X on the encoded bit. Product-form qubits stay in product form.
void apply_bit_flip(QuantumState& state, int qubit);

// Partial trace down to `keep` (ascending order in the result).
DensityMatrix reduced_density(const QuantumState& state, std::span<const int> keep);

}  // namespace qcompile::qsim
