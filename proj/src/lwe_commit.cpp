#include "qcompile/lwe_commit.hpp"

#include <bit>
#include <cmath>

namespace qcompile::commit {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::int64_t mod_q(std::int64_t v, std::int64_t q) {
  v %= q;
  return v < 0 ? v + q : v;
}

void reduce_in_place(IntMatrix& m, std::int64_t q) {
  m = m.unaryExpr([q](std::int64_t v) { return mod_q(v, q); });
}

void reduce_in_place(IntVector& v, std::int64_t q) {
  v = v.unaryExpr([q](std::int64_t x) { return mod_q(x, q); });
}

void put_i64_vector(std::vector<std::uint8_t>& out, const IntVector& v) {
  put_u32(out, static_cast<std::uint32_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) put_u16(out, static_cast<std::uint16_t>(v[i]));
}

IntVector get_i64_vector(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  const std::uint32_t n = get_u32(in, pos);
  IntVector v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = get_u16(in, pos);
  return v;
}

void put_i64_matrix(std::vector<std::uint8_t>& out, const IntMatrix& m) {
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) put_u16(out, static_cast<std::uint16_t>(m(r, c)));
}

IntMatrix get_i64_matrix(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  const std::uint32_t rows = get_u32(in, pos);
  const std::uint32_t cols = get_u32(in, pos);
  IntMatrix m(rows, cols);
  for (std::uint32_t c = 0; c < cols; ++c)
    for (std::uint32_t r = 0; r < rows; ++r) m(r, c) = get_u16(in, pos);
  return m;
}

}  // namespace

void LweParams::validate() const {
  if (d < 1 || m_lwe < 1 || noise_bound < 0) throw ConfigError("LweParams: bad shape");
  if (q >= 65536) throw ConfigError("LweParams: q must fit the u16 wire format");
  if (!is_prime(q)) throw ConfigError("LweParams: q must be prime");
  if (noise_bound > 0 && decryption_margin_sigmas() < 8.0)
    throw ConfigError("LweParams: accumulated noise too close to q/4 for reliable extraction");
}

double LweParams::decryption_margin_sigmas() const {
  if (noise_bound == 0) return std::numeric_limits<double>::infinity();
  // e.r over random e in [-B,B]^m and random r in {0,1}^m: variance of offset
  // plus spread is m * B(B+1)/6
  const double var = static_cast<double>(m_lwe) * noise_bound * (noise_bound + 1) / 6.0;
  return (static_cast<double>(q) / 4.0) / std::sqrt(var);
}

bool LweParams::statistically_hiding() const {
  return static_cast<double>(m_lwe) >=
         (d + 1) * std::log2(static_cast<double>(q)) + 2.0 * stat_sec;
}

std::vector<std::uint8_t> CommitKey::serialize() const {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(mode));
  put_u32(out, static_cast<std::uint32_t>(params.d));
  put_u64(out, static_cast<std::uint64_t>(params.q));
  put_u32(out, static_cast<std::uint32_t>(params.m_lwe));
  put_u32(out, static_cast<std::uint32_t>(params.noise_bound));
  put_i64_matrix(out, a);
  put_i64_vector(out, p);
  return out;
}

CommitKey CommitKey::deserialize(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  if (bytes.empty()) throw std::invalid_argument("CommitKey: empty buffer");
  CommitKey key;
  key.mode = static_cast<KeyMode>(bytes[pos++]);
  key.params.d = static_cast<int>(get_u32(bytes, pos));
  key.params.q = static_cast<std::int64_t>(get_u64(bytes, pos));
  key.params.m_lwe = static_cast<int>(get_u32(bytes, pos));
  key.params.noise_bound = static_cast<int>(get_u32(bytes, pos));
  key.a = get_i64_matrix(bytes, pos);
  key.p = get_i64_vector(bytes, pos);
  return key;
}

Commitment Commitment::slice(int first, int count) const {
  if (first < 0 || count < 0 || first + count > bits())
    throw std::invalid_argument("Commitment::slice out of range");
  Commitment out;
  out.u = u.middleCols(first, count);
  out.c = c.segment(first, count);
  return out;
}

std::vector<std::uint8_t> Commitment::serialize() const {
  std::vector<std::uint8_t> out;
  put_i64_matrix(out, u);
  put_i64_vector(out, c);
  return out;
}

Commitment Commitment::deserialize(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  Commitment com;
  com.u = get_i64_matrix(bytes, pos);
  com.c = get_i64_vector(bytes, pos);
  return com;
}

bool Commitment::operator==(const Commitment& other) const {
  return u.rows() == other.u.rows() && u.cols() == other.u.cols() && c.size() == other.c.size() &&
         u == other.u && c == other.c;
}

CommitKey gen_hiding(const LweParams& params, Rng& rng) {
  params.validate();
  CommitKey key;
  key.mode = KeyMode::Hiding;
  key.params = params;
  key.a.resize(params.d, params.m_lwe);
  for (Eigen::Index c = 0; c < key.a.cols(); ++c)
    for (Eigen::Index r = 0; r < key.a.rows(); ++r)
      key.a(r, c) = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(params.q)));
  key.p.resize(params.m_lwe);
  for (Eigen::Index i = 0; i < key.p.size(); ++i)
    key.p[i] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(params.q)));
  return key;
}

std::pair<CommitKey, SecretKey> gen_binding(const LweParams& params, Rng& rng) {
  params.validate();
  CommitKey key;
  key.mode = KeyMode::Binding;
  key.params = params;
  key.a.resize(params.d, params.m_lwe);
  for (Eigen::Index c = 0; c < key.a.cols(); ++c)
    for (Eigen::Index r = 0; r < key.a.rows(); ++r)
      key.a(r, c) = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(params.q)));
  SecretKey sk;
  sk.s.resize(params.d);
  for (Eigen::Index i = 0; i < sk.s.size(); ++i)
    sk.s[i] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(params.q)));
  key.p = key.a.transpose() * sk.s;
  for (Eigen::Index i = 0; i < key.p.size(); ++i) {
    const std::int64_t noise =
        params.noise_bound == 0
            ? 0
            : static_cast<std::int64_t>(rng.below(2 * params.noise_bound + 1)) - params.noise_bound;
    key.p[i] = mod_q(key.p[i] + noise, params.q);
  }
  return {std::move(key), std::move(sk)};
}

CommitRandomness sample_randomness(const LweParams& params, int nbits, Rng& rng) {
  CommitRandomness r(params.m_lwe, nbits);
  for (int c = 0; c < nbits; ++c)
    for (int row = 0; row < params.m_lwe; ++row) r(row, c) = rng.bit() ? 1 : 0;
  return r;
}

std::vector<std::uint8_t> serialize_randomness(const CommitRandomness& r) {
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(r.rows()));
  put_u32(out, static_cast<std::uint32_t>(r.cols()));
  BitString flat(static_cast<std::size_t>(r.rows()) * static_cast<std::size_t>(r.cols()));
  std::size_t k = 0;
  for (Eigen::Index c = 0; c < r.cols(); ++c)
    for (Eigen::Index row = 0; row < r.rows(); ++row) flat.set(k++, static_cast<int>(r(row, c)));
  const auto packed = flat.pack();
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

CommitRandomness deserialize_randomness(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  const std::uint32_t rows = get_u32(bytes, pos);
  const std::uint32_t cols = get_u32(bytes, pos);
  const std::vector<std::uint8_t> rest(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  const BitString flat = BitString::unpack(rest, static_cast<std::size_t>(rows) * cols);
  CommitRandomness r(rows, cols);
  std::size_t k = 0;
  for (std::uint32_t c = 0; c < cols; ++c)
    for (std::uint32_t row = 0; row < rows; ++row) r(row, c) = flat[k++];
  return r;
}

Commitment commit_bits(const CommitKey& pk, const BitString& bits, const CommitRandomness& r) {
  const int nbits = static_cast<int>(bits.size());
  if (r.rows() != pk.params.m_lwe || r.cols() != nbits)
    throw std::invalid_argument("commit_bits: randomness shape mismatch");
  Commitment com;
  com.u = pk.a * r;
  reduce_in_place(com.u, pk.params.q);
  com.c = r.transpose() * pk.p;
  for (int j = 0; j < nbits; ++j)
    com.c[j] = mod_q(com.c[j] + (bits[static_cast<std::size_t>(j)] ? pk.params.half() : 0),
                     pk.params.q);
  return com;
}

bool verify_open_bits(const CommitKey& pk, const Commitment& com, const BitString& bits,
                      const CommitRandomness& r) {
  if (com.bits() != static_cast<int>(bits.size()) || r.cols() != com.bits() ||
      r.rows() != pk.params.m_lwe || com.u.rows() != pk.params.d)
    return false;
  return commit_bits(pk, bits, r) == com;
}

BitString extract_bits(const SecretKey& sk, const CommitKey& pk, const Commitment& com) {
  const std::int64_t q = pk.params.q;
  const std::int64_t half = pk.params.half();
  IntVector su = com.u.transpose() * sk.s;
  BitString out(static_cast<std::size_t>(com.bits()));
  for (int j = 0; j < com.bits(); ++j) {
    const std::int64_t v = mod_q(com.c[j] - su[j], q);
    const std::int64_t dist0 = std::min(v, q - v);
    const std::int64_t dv = std::abs(v - half);
    const std::int64_t dist1 = std::min(dv, q - dv);
    out.set(static_cast<std::size_t>(j), dist0 < dist1 ? 0 : 1);
  }
  return out;
}

namespace {
BitString pair_bits(Basis basis, int bit) {
  BitString bits(2);
  bits.set(0, basis == Basis::Times ? 1 : 0);
  bits.set(1, bit);
  return bits;
}
}  // namespace

Commitment commit_pair(const CommitKey& pk, Basis basis, int bit, const CommitRandomness& r) {
  return commit_bits(pk, pair_bits(basis, bit), r);
}

bool verify_open_pair(const CommitKey& pk, const Commitment& com, Basis basis, int bit,
                      const CommitRandomness& r) {
  return verify_open_bits(pk, com, pair_bits(basis, bit), r);
}

std::pair<Basis, int> extract_pair(const SecretKey& sk, const CommitKey& pk,
                                   const Commitment& com) {
  if (com.bits() != 2) throw std::invalid_argument("extract_pair: expected a 2-bit commitment");
  const BitString bits = extract_bits(sk, pk, com);
  return {bits[0] ? Basis::Times : Basis::Plus, bits[1]};
}

double hiding_distance(const CommitKey& pk, int bit0, int bit1) {
  const LweParams& params = pk.params;
  if (params.m_lwe > 20) throw ResourceError("hiding_distance: randomness space too large");
  double cells_d = 1.0;
  for (int i = 0; i <= params.d; ++i) cells_d *= static_cast<double>(params.q);
  if (cells_d > 8e6) throw ResourceError("hiding_distance: histogram too large");
  const std::size_t cells = static_cast<std::size_t>(cells_d);

  // Gray-code walk over all r in {0,1}^m_lwe; one column add/subtract per step.
  std::vector<std::uint32_t> hist(cells, 0);
  IntVector u = IntVector::Zero(params.d);
  std::int64_t c = 0;
  std::vector<std::uint8_t> on(static_cast<std::size_t>(params.m_lwe), 0);
  const std::uint64_t total = std::uint64_t{1} << params.m_lwe;
  auto cell_index = [&]() {
    std::size_t idx = 0;
    for (int i = 0; i < params.d; ++i)
      idx = idx * static_cast<std::size_t>(params.q) + static_cast<std::size_t>(u[i]);
    return idx * static_cast<std::size_t>(params.q) + static_cast<std::size_t>(c);
  };
  hist[cell_index()]++;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int j = std::countr_zero(i);
    const std::int64_t sign = on[static_cast<std::size_t>(j)] ? -1 : 1;
    on[static_cast<std::size_t>(j)] ^= 1;
    for (int row = 0; row < params.d; ++row) u[row] = mod_q(u[row] + sign * pk.a(row, j), params.q);
    c = mod_q(c + sign * pk.p[j], params.q);
    hist[cell_index()]++;
  }

  // bit b shifts c by b*floor(q/2); compare the two shifted histograms
  const std::int64_t q = params.q;
  const std::int64_t shift0 = bit0 ? params.half() : 0;
  const std::int64_t shift1 = bit1 ? params.half() : 0;
  double l1 = 0.0;
  for (std::size_t base = 0; base < cells; base += static_cast<std::size_t>(q)) {
    for (std::int64_t cc = 0; cc < q; ++cc) {
      const auto h0 = hist[base + static_cast<std::size_t>(mod_q(cc - shift0, q))];
      const auto h1 = hist[base + static_cast<std::size_t>(mod_q(cc - shift1, q))];
      l1 += std::abs(static_cast<double>(h0) - static_cast<double>(h1));
    }
  }
  return 0.5 * l1 / static_cast<double>(total);
}

}  // namespace qcompile::commit
