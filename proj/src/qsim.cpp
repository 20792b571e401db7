#include "qcompile/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace qcompile::qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Position of qubit q inside a block's qubit list.
int position_in(const std::vector<int>& qubits, int q) {
  for (std::size_t k = 0; k < qubits.size(); ++k)
    if (qubits[k] == q) return static_cast<int>(k);
  throw StateError("qubit not found in its block");
}

// Reorders amplitudes from qubit order `cur` to qubit order `tgt` (same set).
Vector permute_amplitudes(const Vector& amps, const std::vector<int>& cur,
                          const std::vector<int>& tgt) {
  const int w = static_cast<int>(cur.size());
  if (cur == tgt) return amps;
  // shift_of[k]: significance of tgt[k]'s bit inside the source index
  std::vector<int> src_shift(w);
  for (int k = 0; k < w; ++k) {
    const int pos = position_in(cur, tgt[k]);
    src_shift[k] = w - 1 - pos;
  }
  Vector out(amps.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    Eigen::Index j = 0;
    for (int k = 0; k < w; ++k) {
      const Eigen::Index bit = (i >> (w - 1 - k)) & 1;
      j |= bit << src_shift[k];
    }
    out[i] = amps[j];
  }
  return out;
}

Vector kron_amps(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

void apply_hadamard_at(Vector& amps, int width, int pos) {
  const Eigen::Index stride = Eigen::Index{1} << (width - 1 - pos);
  for (Eigen::Index base = 0; base < amps.size(); base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const Complex x = amps[i];
      const Complex y = amps[i + stride];
      amps[i] = (x + y) * kInvSqrt2;
      amps[i + stride] = (x - y) * kInvSqrt2;
    }
  }
}

Matrix permute_density(const Matrix& rho, const std::vector<int>& cur,
                       const std::vector<int>& tgt) {
  const int w = static_cast<int>(cur.size());
  if (cur == tgt) return rho;
  std::vector<int> src_shift(w);
  for (int k = 0; k < w; ++k) src_shift[k] = w - 1 - position_in(cur, tgt[k]);
  const Eigen::Index dim = rho.rows();
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index j = 0;
    for (int k = 0; k < w; ++k) j |= ((i >> (w - 1 - k)) & 1) << src_shift[k];
    map[static_cast<std::size_t>(i)] = j;
  }
  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      out(i, j) = rho(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
  return out;
}

}  // namespace

Eigen::Vector2cd bb84_amplitudes(int bit, Basis basis) {
  Eigen::Vector2cd v;
  if (basis == Basis::Plus) {
    v << (bit ? 0.0 : 1.0), (bit ? 1.0 : 0.0);
  } else {
    v << kInvSqrt2, (bit ? -kInvSqrt2 : kInvSqrt2);
  }
  return v;
}

void DensityMatrix::validate() const {
  if (mat.rows() != mat.cols()) throw StateError("density matrix not square");
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol::hermitian)
    throw StateError("density matrix not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > tol::norm || std::abs(mat.trace().imag()) > tol::norm)
    throw StateError("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol::psd)
    throw StateError("density matrix not positive semidefinite");
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.mat, sigma.mat);
}

bool QuantumState::is_live(int q) const { return slot(q).kind != SlotKind::Consumed; }

bool QuantumState::is_dense(int q) const { return slot(q).kind == SlotKind::Dense; }

IndexSet QuantumState::live_qubits() const {
  IndexSet out;
  for (int q = 0; q < qubit_count(); ++q)
    if (slots_[static_cast<std::size_t>(q)].kind != SlotKind::Consumed) out.push_back(q);
  return out;
}

int QuantumState::max_dense_width() const {
  int w = 0;
  for (const auto& b : blocks_) w = std::max(w, static_cast<int>(b.qubits.size()));
  return w;
}

int QuantumState::total_dense_qubits() const {
  int w = 0;
  for (const auto& b : blocks_) w += static_cast<int>(b.qubits.size());
  return w;
}

const QuantumState::Slot& QuantumState::slot(int q) const {
  if (q < 0 || q >= qubit_count()) throw std::invalid_argument("qubit index out of range");
  return slots_[static_cast<std::size_t>(q)];
}

int QuantumState::add_product_qubits(const BitString& x, const BasisString& theta) {
  if (x.size() != theta.size())
    throw std::invalid_argument("add_product_qubits: bit/basis length mismatch");
  const int first = qubit_count();
  for (std::size_t i = 0; i < x.size(); ++i) {
    Slot s;
    s.kind = SlotKind::Product;
    s.product = {static_cast<std::uint8_t>(x[i]), theta[i]};
    slots_.push_back(s);
  }
  return first;
}

int QuantumState::add_epr_pair() {
  const int first = qubit_count();
  DenseBlock block;
  block.qubits = {first, first + 1};
  block.amps = Vector::Zero(4);
  block.amps[0] = kInvSqrt2;
  block.amps[3] = kInvSqrt2;
  const int id = static_cast<int>(blocks_.size());
  blocks_.push_back(std::move(block));
  for (int k = 0; k < 2; ++k) {
    Slot s;
    s.kind = SlotKind::Dense;
    s.block = id;
    slots_.push_back(s);
  }
  return first;
}

std::optional<int> QuantumState::consumed_outcome(int q) const {
  const Slot& s = slot(q);
  if (s.kind != SlotKind::Consumed) return std::nullopt;
  return static_cast<int>(s.outcome);
}

int QuantumState::merge_dense(std::span<const int> qubits) {
  // closure: listed qubits plus every member of any touched dense block
  std::vector<int> order(qubits.begin(), qubits.end());
  std::unordered_set<int> seen(order.begin(), order.end());
  if (seen.size() != order.size()) throw std::invalid_argument("merge_dense: repeated qubit");
  for (int q : qubits) {
    const Slot& s = slot(q);
    if (s.kind == SlotKind::Consumed) throw StateError("merge_dense: qubit already measured");
    if (s.kind == SlotKind::Dense) {
      for (int member : blocks_[static_cast<std::size_t>(s.block)].qubits) {
        if (seen.insert(member).second) order.push_back(member);
      }
    }
  }
  if (static_cast<int>(order.size()) > dense_cap_)
    throw ResourceError("dense block cap exceeded (" + std::to_string(order.size()) + " > " +
                        std::to_string(dense_cap_) + " qubits)");

  // kron the source units in first-appearance order, then permute
  Vector amps(1);
  amps[0] = 1.0;
  std::vector<int> cur;
  std::unordered_set<int> merged_blocks;
  for (int q : order) {
    const Slot& s = slots_[static_cast<std::size_t>(q)];
    if (s.kind == SlotKind::Product) {
      amps = kron_amps(amps, bb84_amplitudes(s.product.bit, s.product.basis));
      cur.push_back(q);
    } else if (merged_blocks.insert(s.block).second) {
      const DenseBlock& b = blocks_[static_cast<std::size_t>(s.block)];
      amps = kron_amps(amps, b.amps);
      cur.insert(cur.end(), b.qubits.begin(), b.qubits.end());
    }
  }
  amps = permute_amplitudes(amps, cur, order);

  for (int old : merged_blocks) blocks_[static_cast<std::size_t>(old)] = DenseBlock{};
  const int id = static_cast<int>(blocks_.size());
  blocks_.push_back(DenseBlock{std::move(order), std::move(amps)});
  for (int q : blocks_.back().qubits) {
    slots_[static_cast<std::size_t>(q)].kind = SlotKind::Dense;
    slots_[static_cast<std::size_t>(q)].block = id;
  }
  return id;
}

void QuantumState::erase_qubit_from_block(int block_id, int position_in_block) {
  DenseBlock& b = blocks_[static_cast<std::size_t>(block_id)];
  b.qubits.erase(b.qubits.begin() + position_in_block);
  if (b.qubits.empty()) blocks_[static_cast<std::size_t>(block_id)] = DenseBlock{};
}

Vector QuantumState::dense_vector(std::span<const int> qubits) const {
  std::unordered_set<int> listed(qubits.begin(), qubits.end());
  if (listed.size() != qubits.size()) throw std::invalid_argument("dense_vector: repeated qubit");
  Vector amps(1);
  amps[0] = 1.0;
  std::vector<int> cur;
  std::unordered_set<int> merged_blocks;
  for (int q : qubits) {
    const Slot& s = slot(q);
    if (s.kind == SlotKind::Consumed) throw StateError("dense_vector: qubit already measured");
    if (s.kind == SlotKind::Product) {
      amps = kron_amps(amps, bb84_amplitudes(s.product.bit, s.product.basis));
      cur.push_back(q);
    } else if (merged_blocks.insert(s.block).second) {
      const DenseBlock& b = blocks_[static_cast<std::size_t>(s.block)];
      for (int member : b.qubits) {
        if (!listed.count(member))
          throw std::invalid_argument("dense_vector: qubit entangled with one outside the list");
      }
      amps = kron_amps(amps, b.amps);
      cur.insert(cur.end(), b.qubits.begin(), b.qubits.end());
    }
  }
  std::vector<int> tgt(qubits.begin(), qubits.end());
  return permute_amplitudes(amps, cur, tgt);
}

void QuantumState::check_invariants() const {
  for (std::size_t id = 0; id < blocks_.size(); ++id) {
    const DenseBlock& b = blocks_[id];
    if (b.qubits.empty()) continue;
    if (static_cast<int>(b.qubits.size()) > dense_cap_)
      throw StateError("block exceeds dense cap");
    if (b.amps.size() != (Eigen::Index{1} << b.qubits.size()))
      throw StateError("block amplitude size mismatch");
    if (std::abs(b.amps.norm() - 1.0) > tol::norm) throw StateError("block not unit norm");
    for (int q : b.qubits) {
      const Slot& s = slot(q);
      if (s.kind != SlotKind::Dense || s.block != static_cast<int>(id))
        throw StateError("slot/block inconsistency");
    }
  }
  for (int q = 0; q < qubit_count(); ++q) {
    const Slot& s = slots_[static_cast<std::size_t>(q)];
    if (s.kind == SlotKind::Dense) {
      const DenseBlock& b = blocks_[static_cast<std::size_t>(s.block)];
      if (std::count(b.qubits.begin(), b.qubits.end(), q) != 1)
        throw StateError("dense slot not in its block exactly once");
    }
  }
}

QuantumState prepare_bb84(const BitString& x, const BasisString& theta, int dense_cap) {
  if (x.size() != theta.size()) throw std::invalid_argument("prepare_bb84: length mismatch");
  QuantumState state(dense_cap);
  state.add_product_qubits(x, theta);
  return state;
}

QuantumState prepare_epr_pairs(int count, int dense_cap) {
  if (count < 0) throw std::invalid_argument("prepare_epr_pairs: negative count");
  QuantumState state(dense_cap);
  for (int i = 0; i < count; ++i) state.add_epr_pair();
  return state;
}

BitString measure(QuantumState& state, std::span<const int> positions, const BasisString& bases,
                  Rng& rng) {
  if (positions.size() != bases.size())
    throw std::invalid_argument("measure: positions/bases length mismatch");
  BitString outcome(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const int q = positions[k];
    const Basis basis = bases[k];
    QuantumState::Slot& s = state.slots_.at(static_cast<std::size_t>(q));
    int bit;
    if (s.kind == QuantumState::SlotKind::Consumed) {
      throw StateError("measure: qubit " + std::to_string(q) + " already measured");
    } else if (s.kind == QuantumState::SlotKind::Product) {
      // matching basis reproduces the encoded bit; mismatch is a fair coin
      bit = (basis == s.product.basis) ? s.product.bit : (rng.bit() ? 1 : 0);
    } else {
      QuantumState::DenseBlock& b = state.blocks_[static_cast<std::size_t>(s.block)];
      const int w = static_cast<int>(b.qubits.size());
      const int pos = position_in(b.qubits, q);
      if (basis == Basis::Times) apply_hadamard_at(b.amps, w, pos);
      const Eigen::Index stride = Eigen::Index{1} << (w - 1 - pos);
      double p0 = 0.0;
      for (Eigen::Index base = 0; base < b.amps.size(); base += 2 * stride)
        for (Eigen::Index i = base; i < base + stride; ++i) p0 += std::norm(b.amps[i]);
      bit = rng.real01() < p0 ? 0 : 1;
      double p_sel = bit == 0 ? p0 : 1.0 - p0;
      if (p_sel < 1e-12) {  // numerically forbidden branch
        bit ^= 1;
        p_sel = 1.0 - p_sel;
      }
      Vector next(b.amps.size() / 2);
      Eigen::Index out_i = 0;
      const double scale = 1.0 / std::sqrt(p_sel);
      for (Eigen::Index base = 0; base < b.amps.size(); base += 2 * stride)
        for (Eigen::Index i = base; i < base + stride; ++i)
          next[out_i++] = b.amps[i + (bit ? stride : 0)] * scale;
      b.amps = std::move(next);
      state.erase_qubit_from_block(s.block, pos);
    }
    s.kind = QuantumState::SlotKind::Consumed;
    s.outcome = static_cast<std::uint8_t>(bit);
    s.block = -1;
    outcome.set(k, bit);
  }
  return outcome;
}

void apply_isometry(QuantumState& state, std::span<const int> qubits, const Matrix& matrix) {
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index dim = Eigen::Index{1} << k;
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw std::invalid_argument("apply_isometry: matrix must be 2^k x 2^k for k listed qubits");
  const Matrix gram = matrix.adjoint() * matrix;
  if ((gram - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol::norm)
    throw std::invalid_argument("apply_isometry: matrix is not an isometry");

  const int id = state.merge_dense(qubits);
  QuantumState::DenseBlock& b = state.blocks_[static_cast<std::size_t>(id)];
  const Eigen::Index rest = b.amps.size() / dim;
  // listed qubits lead the order, so index = head * rest + tail; column-major
  // view (tail, head) turns the gate into one matrix product
  Eigen::Map<Matrix> view(b.amps.data(), rest, dim);
  Matrix updated = view * matrix.transpose();
  view = updated;
}

void apply_bit_flip(QuantumState& state, int qubit) {
  QuantumState::Slot& s = state.slots_.at(static_cast<std::size_t>(qubit));
  if (s.kind == QuantumState::SlotKind::Consumed)
    throw StateError("apply_bit_flip: qubit already measured");
  if (s.kind == QuantumState::SlotKind::Product) {
    // X fixes |0>_x and |1>_x up to phase; only +-basis bits flip
    if (s.product.basis == Basis::Plus) s.product.bit ^= 1;
    return;
  }
  QuantumState::DenseBlock& b = state.blocks_[static_cast<std::size_t>(s.block)];
  const int w = static_cast<int>(b.qubits.size());
  const int pos = position_in(b.qubits, qubit);
  const Eigen::Index stride = Eigen::Index{1} << (w - 1 - pos);
  for (Eigen::Index base = 0; base < b.amps.size(); base += 2 * stride)
    for (Eigen::Index i = base; i < base + stride; ++i) std::swap(b.amps[i], b.amps[i + stride]);
}

DensityMatrix reduced_density(const QuantumState& state, std::span<const int> keep) {
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("reduced_density: repeated qubit");
  if (static_cast<int>(sorted.size()) > state.matrix_cap_)
    throw ResourceError("reduced_density: matrix cap exceeded");
  std::unordered_set<int> kept(sorted.begin(), sorted.end());

  Matrix rho(1, 1);
  rho(0, 0) = 1.0;
  std::vector<int> cur;
  std::unordered_set<int> done_blocks;
  for (int q : sorted) {
    const auto& s = state.slot(q);
    if (s.kind == QuantumState::SlotKind::Consumed)
      throw std::invalid_argument("reduced_density: qubit already measured");
    if (s.kind == QuantumState::SlotKind::Product) {
      const Eigen::Vector2cd v = bb84_amplitudes(s.product.bit, s.product.basis);
      Matrix factor = v * v.adjoint();
      Matrix next(rho.rows() * 2, rho.cols() * 2);
      for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
          next.block(i * 2, j * 2, 2, 2) = rho(i, j) * factor;
      rho = std::move(next);
      cur.push_back(q);
    } else if (done_blocks.insert(s.block).second) {
      const auto& b = state.blocks_[static_cast<std::size_t>(s.block)];
      const int w = static_cast<int>(b.qubits.size());
      std::vector<int> kept_pos, traced_pos;
      for (int p = 0; p < w; ++p)
        (kept.count(b.qubits[static_cast<std::size_t>(p)]) ? kept_pos : traced_pos).push_back(p);
      const Eigen::Index kd = Eigen::Index{1} << kept_pos.size();
      const Eigen::Index td = Eigen::Index{1} << traced_pos.size();
      Matrix coeff = Matrix::Zero(kd, td);
      for (Eigen::Index idx = 0; idx < b.amps.size(); ++idx) {
        Eigen::Index ki = 0, ti = 0;
        for (std::size_t a = 0; a < kept_pos.size(); ++a)
          ki |= ((idx >> (w - 1 - kept_pos[a])) & 1) << (kept_pos.size() - 1 - a);
        for (std::size_t a = 0; a < traced_pos.size(); ++a)
          ti |= ((idx >> (w - 1 - traced_pos[a])) & 1) << (traced_pos.size() - 1 - a);
        coeff(ki, ti) = b.amps[idx];
      }
      Matrix factor = coeff * coeff.adjoint();
      Matrix next(rho.rows() * kd, rho.cols() * kd);
      for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
          next.block(i * kd, j * kd, kd, kd) = rho(i, j) * factor;
      rho = std::move(next);
      for (int p : kept_pos) cur.push_back(b.qubits[static_cast<std::size_t>(p)]);
    }
  }
  DensityMatrix out{permute_density(rho, cur, sorted)};
  return out;
}

}  // namespace qcompile::qsim
