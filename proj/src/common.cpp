#include "qcompile/common.hpp"

#include <algorithm>
#include <bit>

namespace qcompile {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // rejection sampling on the top range keeps the draw unbiased
  const std::uint64_t threshold = -bound % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::real01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::derive(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ 0xA3EC647659359ACDULL;
  (void)splitmix64(s);
  s ^= stream * 0xD6E8FEB86659FD93ULL;
  return splitmix64(s);
}

BitString BitString::random(std::size_t n, Rng& rng) {
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, rng.bit() ? 1 : 0);
  return out;
}

BitString BitString::from_string(const std::string& s) {
  BitString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("BitString: expected 0/1");
    out.set(i, s[i] - '0');
  }
  return out;
}

BitString BitString::operator^(const BitString& other) const {
  if (size() != other.size()) throw std::invalid_argument("BitString xor: length mismatch");
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.set(i, bits_[i] ^ other.bits_[i]);
  return out;
}

BitString BitString::restrict_to(const std::vector<int>& indices) const {
  BitString out(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 0 || static_cast<std::size_t>(i) >= size())
      throw std::invalid_argument("BitString restriction index out of range");
    out.set(k, bits_[i]);
  }
  return out;
}

std::string BitString::str() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

std::vector<std::uint8_t> BitString::pack() const {
  std::vector<std::uint8_t> out((size() + 7) / 8, 0);
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return out;
}

BitString BitString::unpack(const std::vector<std::uint8_t>& bytes, std::size_t n) {
  if (bytes.size() < (n + 7) / 8) throw std::invalid_argument("BitString::unpack: short buffer");
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, (bytes[i / 8] >> (i % 8)) & 1);
  return out;
}

BasisString BasisString::random(std::size_t n, Rng& rng) {
  BasisString out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, rng.bit() ? Basis::Times : Basis::Plus);
  return out;
}

BasisString BasisString::from_bits(const BitString& bits) {
  BasisString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    out.set(i, bits[i] ? Basis::Times : Basis::Plus);
  return out;
}

BasisString BasisString::from_string(const std::string& s) {
  BasisString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') out.set(i, Basis::Plus);
    else if (s[i] == 'x' || s[i] == 'X') out.set(i, Basis::Times);
    else throw std::invalid_argument("BasisString: expected +/x");
  }
  return out;
}

BasisString BasisString::operator^(const BasisString& other) const {
  if (size() != other.size()) throw std::invalid_argument("BasisString xor: length mismatch");
  BasisString out(size());
  for (std::size_t i = 0; i < size(); ++i)
    out.set(i, static_cast<Basis>(static_cast<std::uint8_t>(v_[i]) ^
                                  static_cast<std::uint8_t>(other.v_[i])));
  return out;
}

BasisString BasisString::restrict_to(const std::vector<int>& indices) const {
  BasisString out(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 0 || static_cast<std::size_t>(i) >= size())
      throw std::invalid_argument("BasisString restriction index out of range");
    out.set(k, v_[i]);
  }
  return out;
}

BitString BasisString::to_bits() const {
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.set(i, static_cast<int>(v_[i]));
  return out;
}

std::string BasisString::str() const {
  std::string s(size(), '+');
  for (std::size_t i = 0; i < size(); ++i) s[i] = basis_char(v_[i]);
  return s;
}

IndexSet complement(const IndexSet& s, int n) {
  IndexSet out;
  out.reserve(static_cast<std::size_t>(n) - s.size());
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (k < s.size() && s[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

int hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

int hamming_distance(const BasisString& x, const BasisString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

double relative_hamming(const BitString& x, const BitString& y) {
  if (x.empty() && y.empty()) return 0.0;
  return static_cast<double>(hamming_distance(x, y)) / static_cast<double>(x.size());
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: bad digit");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  return out;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

namespace {
void need(const std::vector<std::uint8_t>& in, std::size_t pos, std::size_t n) {
  if (pos + n > in.size()) throw std::invalid_argument("payload truncated");
}
}  // namespace

std::uint16_t get_u16(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  need(in, pos, 2);
  std::uint16_t v = static_cast<std::uint16_t>(in[pos] | (in[pos + 1] << 8));
  pos += 2;
  return v;
}
std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  need(in, pos, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + i]) << (8 * i);
  pos += 4;
  return v;
}
std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  need(in, pos, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  pos += 8;
  return v;
}

}  // namespace qcompile
