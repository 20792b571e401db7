#include "qcompile/codes.hpp"

namespace qcompile::apps {

PasswordCode PasswordCode::repetition(int password_bits, int n) {
  if (password_bits < 1 || n < 1) throw ConfigError("PasswordCode: need positive sizes");
  if (n % password_bits != 0)
    throw ConfigError("PasswordCode: password_bits must divide the code length");
  PasswordCode code;
  code.password_bits = password_bits;
  code.n = n;
  code.block = n / password_bits;
  code.t = (code.block - 1) / 2;
  return code;
}

BasisString PasswordCode::encode(const BitString& w) const {
  if (w.size() != static_cast<std::size_t>(password_bits))
    throw std::invalid_argument("PasswordCode::encode: password length mismatch");
  BasisString out(static_cast<std::size_t>(n));
  for (int b = 0; b < password_bits; ++b) {
    const Basis basis = w[static_cast<std::size_t>(b)] ? Basis::Times : Basis::Plus;
    for (int j = 0; j < block; ++j) out.set(static_cast<std::size_t>(b * block + j), basis);
  }
  return out;
}

BitString PasswordCode::decode(const BasisString& word) const {
  if (word.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("PasswordCode::decode: word length mismatch");
  BitString out(static_cast<std::size_t>(password_bits));
  for (int b = 0; b < password_bits; ++b) {
    int ones = 0;
    for (int j = 0; j < block; ++j)
      ones += word[static_cast<std::size_t>(b * block + j)] == Basis::Times;
    out.set(static_cast<std::size_t>(b), 2 * ones > block ? 1 : 0);
  }
  return out;
}

BitString password_from_u64(std::uint64_t w, int password_bits) {
  BitString out(static_cast<std::size_t>(password_bits));
  for (int i = 0; i < password_bits; ++i) out.set(static_cast<std::size_t>(i), (w >> i) & 1);
  return out;
}

}  // namespace qcompile::apps
