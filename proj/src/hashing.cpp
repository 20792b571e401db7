#include "qcompile/hashing.hpp"

namespace qcompile::apps {

HashSeed HashSeed::sample(int rows, int cols, Rng& rng) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("HashSeed: need positive dimensions");
  HashSeed seed;
  seed.rows = rows;
  seed.cols = cols;
  seed.diag = BitString::random(static_cast<std::size_t>(rows + cols - 1), rng);
  seed.offset = BitString::random(static_cast<std::size_t>(rows), rng);
  return seed;
}

HashSeed HashSeed::identity(int rows, int cols) {
  HashSeed seed;
  seed.rows = rows;
  seed.cols = cols;
  seed.diag = BitString(static_cast<std::size_t>(rows + cols - 1));
  seed.diag.set(static_cast<std::size_t>(cols - 1), 1);  // T[j][i] = 1 iff i == j
  seed.offset = BitString(static_cast<std::size_t>(rows));
  return seed;
}

void HashSeed::check() const {
  if (rows < 1 || cols < 1 || diag.size() != static_cast<std::size_t>(rows + cols - 1) ||
      offset.size() != static_cast<std::size_t>(rows))
    throw std::invalid_argument("HashSeed: inconsistent shape");
}

std::vector<std::uint8_t> HashSeed::serialize() const {
  check();
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(rows));
  put_u32(out, static_cast<std::uint32_t>(cols));
  const auto d = diag.pack();
  const auto o = offset.pack();
  out.insert(out.end(), d.begin(), d.end());
  out.insert(out.end(), o.begin(), o.end());
  return out;
}

HashSeed HashSeed::deserialize(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
  HashSeed seed;
  seed.rows = static_cast<int>(get_u32(bytes, pos));
  seed.cols = static_cast<int>(get_u32(bytes, pos));
  if (seed.rows < 1 || seed.cols < 1) throw std::invalid_argument("HashSeed: bad dimensions");
  const std::size_t diag_bytes = (static_cast<std::size_t>(seed.rows + seed.cols - 1) + 7) / 8;
  const std::size_t off_bytes = (static_cast<std::size_t>(seed.rows) + 7) / 8;
  if (pos + diag_bytes + off_bytes > bytes.size())
    throw std::invalid_argument("HashSeed: truncated");
  std::vector<std::uint8_t> d(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                              bytes.begin() + static_cast<std::ptrdiff_t>(pos + diag_bytes));
  pos += diag_bytes;
  std::vector<std::uint8_t> o(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                              bytes.begin() + static_cast<std::ptrdiff_t>(pos + off_bytes));
  pos += off_bytes;
  seed.diag = BitString::unpack(d, static_cast<std::size_t>(seed.rows + seed.cols - 1));
  seed.offset = BitString::unpack(o, static_cast<std::size_t>(seed.rows));
  return seed;
}

BitString toeplitz_hash(const HashSeed& seed, const BitString& input) {
  seed.check();
  if (input.size() != static_cast<std::size_t>(seed.cols))
    throw std::invalid_argument("toeplitz_hash: input length mismatch");
  BitString out(static_cast<std::size_t>(seed.rows));
  for (int j = 0; j < seed.rows; ++j) {
    int acc = seed.offset[static_cast<std::size_t>(j)];
    for (int i = 0; i < seed.cols; ++i)
      acc ^= seed.diag[static_cast<std::size_t>(j - i + seed.cols - 1)] &
             input[static_cast<std::size_t>(i)];
    out.set(static_cast<std::size_t>(j), acc);
  }
  return out;
}

BitString embed_restriction(const BitString& values, const IndexSet& s, int n) {
  if (values.size() != s.size())
    throw std::invalid_argument("embed_restriction: value/index count mismatch");
  BitString out(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= n) throw std::invalid_argument("embed_restriction: index out of range");
    out.set(static_cast<std::size_t>(s[k]), values[k]);
  }
  return out;
}

}  // namespace qcompile::apps
