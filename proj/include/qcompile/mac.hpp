#pragma once

#include <cstdint>
#include <span>

#include "qcompile/common.hpp"

namespace qcompile::apps {

// GF(2^t) with a fixed low-weight irreducible reduction polynomial,
// t in {8, 16, 32, 64}.
struct GfField {
  int t = 0;
  std::uint64_t poly_low = 0;  // reduction polynomial minus the x^t term
  std::uint64_t mask = 0;

  static GfField of(int t);
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
};

struct MacKey {
  int t = 0;
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;

  static MacKey sample(int t, Rng& rng);
};

// Polynomial-evaluation MAC with multiplicative masking:
// tag = p_m(k1) * k1 + k2 over GF(2^t), where p_m absorbs the bit length and
// the t-bit chunks of the message. The key-tag pair stays near-uniform when
// the message carries enough min-entropy, which is what makes the key
// reusable across sessions.
std::uint64_t extractor_mac_tag(const MacKey& key, std::span<const std::uint8_t> message);
bool extractor_mac_verify(const MacKey& key, std::span<const std::uint8_t> message,
                          std::uint64_t tag);

}  // namespace qcompile::apps
