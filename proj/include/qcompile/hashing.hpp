#pragma once

#include "qcompile/common.hpp"

namespace qcompile::apps {

// Binary Toeplitz matrix plus an offset vector: a strongly 2-universal family
// with a compact seed. T[j][i] = diag[j - i + cols - 1].
struct HashSeed {
  int rows = 0;      // output bits
  int cols = 0;      // input bits
  BitString diag;    // rows + cols - 1 bits
  BitString offset;  // rows bits

  static HashSeed sample(int rows, int cols, Rng& rng);
  // Maps an input of length min(rows, cols)... identity on the first bits.
  static HashSeed identity(int rows, int cols);
  void check() const;

  std::vector<std::uint8_t> serialize() const;
  static HashSeed deserialize(const std::vector<std::uint8_t>& bytes, std::size_t& pos);
};

BitString toeplitz_hash(const HashSeed& seed, const BitString& input);

// Embeds x|_S into the full n-bit domain: value at positions of S (given in
// ascending order), zero elsewhere. Keeps the hash domain fixed even when the
// two parties disagree about S.
BitString embed_restriction(const BitString& values, const IndexSet& s, int n);

}  // namespace qcompile::apps
