#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcompile {

// Centralized numeric tolerances used across the simulator.
namespace tol {
inline constexpr double norm = 1e-9;        // unit-norm slack for amplitude vectors
inline constexpr double hermitian = 1e-9;   // Hermiticity slack for density matrices
inline constexpr double psd = -1e-9;        // smallest admissible eigenvalue
inline constexpr double entropy = 1e-9;     // slack in entropy inequalities
inline constexpr double rank = 1e-7;        // eigenvalue cutoff when counting rank
}  // namespace tol

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic randomness. xoshiro256** seeded through splitmix64, so a
// single 64-bit seed expands into a full state and derived streams are
// decorrelated from their parents.

std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  bool bit() { return (next_u64() >> 63) != 0; }
  // 53-bit uniform double in [0, 1).
  double real01();
  bool bernoulli(double p) { return real01() < p; }

  // Stream derivation: seed for trial/sub-role `stream` under `master`.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream);

 private:
  std::uint64_t s_[4];
};

// ---------------------------------------------------------------------------
// Bit and basis strings. One byte per element keeps indexing trivial; the
// strings involved stay small (m <= a few thousand).

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, int fill = 0) : bits_(n, static_cast<std::uint8_t>(fill)) {}
  static BitString random(std::size_t n, Rng& rng);
  static BitString from_string(const std::string& zeros_and_ones);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int v) { bits_[i] = static_cast<std::uint8_t>(v & 1); }
  void push_back(int v) { bits_.push_back(static_cast<std::uint8_t>(v & 1)); }

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString& other) const = default;

  BitString restrict_to(const std::vector<int>& indices) const;
  std::string str() const;

  // LSB-first packing: bit i lands in byte i/8, position i%8.
  std::vector<std::uint8_t> pack() const;
  static BitString unpack(const std::vector<std::uint8_t>& bytes, std::size_t n);

 private:
  std::vector<std::uint8_t> bits_;
};

// Measurement bases. Plus is the computational basis, Times the diagonal one;
// under xor arithmetic Plus acts as 0 and Times as 1.
enum class Basis : std::uint8_t { Plus = 0, Times = 1 };

inline char basis_char(Basis b) { return b == Basis::Plus ? '+' : 'x'; }

class BasisString {
 public:
  BasisString() = default;
  explicit BasisString(std::size_t n, Basis fill = Basis::Plus) : v_(n, fill) {}
  static BasisString random(std::size_t n, Rng& rng);
  static BasisString from_bits(const BitString& bits);
  static BasisString from_string(const std::string& plus_times);  // e.g. "+x+"

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Basis operator[](std::size_t i) const { return v_[i]; }
  void set(std::size_t i, Basis b) { v_[i] = b; }

  BasisString operator^(const BasisString& other) const;
  bool operator==(const BasisString& other) const = default;

  BasisString restrict_to(const std::vector<int>& indices) const;
  BitString to_bits() const;
  std::string str() const;

 private:
  std::vector<Basis> v_;
};

// Sorted index sets over qubit/string positions.
using IndexSet = std::vector<int>;

IndexSet complement(const IndexSet& s, int n);
int hamming_distance(const BitString& x, const BitString& y);
int hamming_distance(const BasisString& x, const BasisString& y);
double relative_hamming(const BitString& x, const BitString& y);

// Hex helpers for transcript payloads.
std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

// Little-endian fixed-width integer packing used by the wire formats.
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v);
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v);
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v);
std::uint16_t get_u16(const std::vector<std::uint8_t>& in, std::size_t& pos);
std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos);
std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t& pos);

}  // namespace qcompile
