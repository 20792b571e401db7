#include "qcompile/mac.hpp"

namespace qcompile::apps {

GfField GfField::of(int t) {
  GfField f;
  f.t = t;
  switch (t) {
    case 8: f.poly_low = 0x1B; break;         // x^8 + x^4 + x^3 + x + 1
    case 16: f.poly_low = 0x2B; break;        // x^16 + x^5 + x^3 + x + 1
    case 32: f.poly_low = 0x8D; break;        // x^32 + x^7 + x^3 + x^2 + 1
    case 64: f.poly_low = 0x1B; break;        // x^64 + x^4 + x^3 + x + 1
    default: throw std::invalid_argument("GfField: t must be 8, 16, 32 or 64");
  }
  f.mask = t == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << t) - 1);
  return f;
}

std::uint64_t GfField::mul(std::uint64_t a, std::uint64_t b) const {
  a &= mask;
  b &= mask;
  std::uint64_t res = 0;
  const std::uint64_t top = std::uint64_t{1} << (t - 1);
  while (b != 0) {
    if (b & 1) res ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & mask;
    if (carry) a ^= poly_low;
  }
  return res;
}

MacKey MacKey::sample(int t, Rng& rng) {
  const GfField f = GfField::of(t);
  MacKey key;
  key.t = t;
  key.k1 = rng.next_u64() & f.mask;
  key.k2 = rng.next_u64() & f.mask;
  return key;
}

std::uint64_t extractor_mac_tag(const MacKey& key, std::span<const std::uint8_t> message) {
  if (message.empty()) throw std::invalid_argument("extractor_mac_tag: empty message");
  const GfField f = GfField::of(key.t);
  const int chunk_bytes = key.t / 8;
  // Horner over [bit length, chunk_0, chunk_1, ...]; the length chunk keeps
  // messages that differ only by trailing zeros apart.
  std::uint64_t acc = (static_cast<std::uint64_t>(message.size()) * 8) & f.mask;
  for (std::size_t base = 0; base < message.size(); base += static_cast<std::size_t>(chunk_bytes)) {
    std::uint64_t chunk = 0;
    for (int k = 0; k < chunk_bytes && base + static_cast<std::size_t>(k) < message.size(); ++k)
      chunk |= static_cast<std::uint64_t>(message[base + static_cast<std::size_t>(k)]) << (8 * k);
    acc = f.mul(acc, key.k1) ^ chunk;
  }
  return f.mul(acc, key.k1) ^ key.k2;
}

bool extractor_mac_verify(const MacKey& key, std::span<const std::uint8_t> message,
                          std::uint64_t tag) {
  return extractor_mac_tag(key, message) == tag;
}

}  // namespace qcompile::mac
