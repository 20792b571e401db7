#pragma once

#include "qcompile/common.hpp"

namespace qcompile::apps {

// Password-to-basis code c : W -> {+,x}^n with polynomial-time decoding of up
// to t errors. The repetition construction keeps everything exhaustively
// testable; stronger codes can implement the same surface.
struct PasswordCode {
  int password_bits = 0;
  int n = 0;
  int block = 0;  // n / password_bits
  int t = 0;      // correctable errors, floor((block - 1) / 2)

  double delta() const { return static_cast<double>(t) / n; }
  std::uint64_t password_space() const { return std::uint64_t{1} << password_bits; }

  BasisString encode(const BitString& w) const;
  // Majority per block; ties decode toward 0.
  BitString decode(const BasisString& word) const;

  static PasswordCode repetition(int password_bits, int n);
};

BitString password_from_u64(std::uint64_t w, int password_bits);

}  // namespace qcompile::apps
