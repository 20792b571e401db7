#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "qcompile/common.hpp"

namespace qcompile::commit {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Regev-style parameters. These are simulator-scale choices: the hiding and
// extraction properties are exercised statistically and exhaustively, but
// nothing here is sized for real-world cryptographic hardness.
struct LweParams {
  int d = 0;             // secret dimension
  std::int64_t q = 0;    // prime modulus
  int m_lwe = 0;         // randomness length / number of samples
  int noise_bound = 0;   // B; binding-mode noise is uniform on [-B, B]
  int stat_sec = 40;

  // Exhaustive-test scale: 2^16 randomness values enumerable in milliseconds.
  static LweParams tiny() { return {2, 13, 16, 0}; }
  // Default for protocol sessions; sized for speed, not hiding quality.
  static LweParams fast() { return {32, 3329, 256, 2}; }
  // Even lighter, for m = 1024 protocol runs.
  static LweParams mini() { return {16, 3329, 64, 1}; }
  // Sized so the statistical-hiding inequality holds at stat_sec = 40.
  static LweParams production() { return {128, 3329, 2048, 4}; }

  std::int64_t half() const { return q / 2; }

  // Shape checks, primality of q, and the decryption margin: either exact
  // (B = 0) or accumulated noise at least 8 sigma below q/4.
  void validate() const;
  double decryption_margin_sigmas() const;
  // m_lwe >= (d+1) log2(q) + 2 stat_sec, the leftover-hash condition for
  // statistical hiding at full strength.
  bool statistically_hiding() const;
  bool operator==(const LweParams&) const = default;
};

enum class KeyMode : std::uint8_t { Hiding = 0, Binding = 1 };

// Public commitment key. Hiding and binding keys have identical shape; the
// mode tag exists for bookkeeping and never changes the wire format.
struct CommitKey {
  KeyMode mode = KeyMode::Hiding;
  LweParams params;
  IntMatrix a;  // d x m_lwe over Z_q
  IntVector p;  // m_lwe over Z_q

  std::vector<std::uint8_t> serialize() const;
  static CommitKey deserialize(const std::vector<std::uint8_t>& bytes);
};

struct SecretKey {
  IntVector s;  // length d over Z_q
};

// One (u, c) ciphertext per committed bit, stored column-wise.
struct Commitment {
  IntMatrix u;  // d x nbits
  IntVector c;  // nbits

  int bits() const { return static_cast<int>(c.size()); }
  Commitment slice(int first, int count) const;
  std::vector<std::uint8_t> serialize() const;
  static Commitment deserialize(const std::vector<std::uint8_t>& bytes);
  bool operator==(const Commitment& other) const;
};

// One {0,1}^m_lwe column per committed bit.
using CommitRandomness = IntMatrix;

CommitKey gen_hiding(const LweParams& params, Rng& rng);
std::pair<CommitKey, SecretKey> gen_binding(const LweParams& params, Rng& rng);

CommitRandomness sample_randomness(const LweParams& params, int nbits, Rng& rng);
std::vector<std::uint8_t> serialize_randomness(const CommitRandomness& r);
CommitRandomness deserialize_randomness(const std::vector<std::uint8_t>& bytes);

// u_j = A r_j, c_j = p.r_j + bits_j * floor(q/2), all mod q.
Commitment commit_bits(const CommitKey& pk, const BitString& bits, const CommitRandomness& r);
bool verify_open_bits(const CommitKey& pk, const Commitment& com, const BitString& bits,
                      const CommitRandomness& r);
// Decode c - s.u toward 0 or floor(q/2); correct for well-formed commitments
// under a matching binding key.
BitString extract_bits(const SecretKey& sk, const CommitKey& pk, const Commitment& com);

// Position-wise (basis, bit) message wrappers: two bit-ciphertexts per pair.
Commitment commit_pair(const CommitKey& pk, Basis basis, int bit, const CommitRandomness& r);
bool verify_open_pair(const CommitKey& pk, const Commitment& com, Basis basis, int bit,
                      const CommitRandomness& r);
std::pair<Basis, int> extract_pair(const SecretKey& sk, const CommitKey& pk,
                                   const Commitment& com);

// Exact statistical distance between the single-bit commitment distributions
// of bit0 and bit1 under pk, by full enumeration of the randomness space.
// Requires m_lwe <= 20 and q^(d+1) small enough to histogram.
double hiding_distance(const CommitKey& pk, int bit0, int bit1);

}  // namespace qcompile::commit
