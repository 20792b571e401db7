#include "qcompile/sigma_trapdoor.hpp"

#include <algorithm>
#include <numeric>

namespace qcompile::commit {

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map.resize(map.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    inv.map[static_cast<std::size_t>(map[i])] = static_cast<int>(i);
  return inv;
}

Permutation Permutation::compose(const Permutation& inner) const {
  Permutation out;
  out.map.resize(map.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    out.map[i] = map[static_cast<std::size_t>(inner.map[i])];
  return out;
}

bool Permutation::is_valid() const {
  std::vector<bool> seen(map.size(), false);
  for (int x : map) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

Permutation Permutation::identity(int v) {
  Permutation p;
  p.map.resize(static_cast<std::size_t>(v));
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

Permutation Permutation::random(int v, Rng& rng) {
  Permutation p = identity(v);
  for (int i = v - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p.map[static_cast<std::size_t>(i)], p.map[static_cast<std::size_t>(j)]);
  }
  return p;
}

int Permutation::encoded_bits(int v) {
  int b = 1;
  while ((1 << b) < v) ++b;
  return b * v;
}

BitString Permutation::encode() const {
  const int v = size();
  const int b = encoded_bits(v) / v;
  BitString out(static_cast<std::size_t>(encoded_bits(v)));
  for (int i = 0; i < v; ++i)
    for (int k = 0; k < b; ++k)
      out.set(static_cast<std::size_t>(i * b + k), (map[static_cast<std::size_t>(i)] >> k) & 1);
  return out;
}

std::optional<Permutation> Permutation::decode(const BitString& bits, int v) {
  const int total = encoded_bits(v);
  if (static_cast<int>(bits.size()) != total) return std::nullopt;
  const int b = total / v;
  Permutation p;
  p.map.resize(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) {
    int img = 0;
    for (int k = 0; k < b; ++k) img |= bits[static_cast<std::size_t>(i * b + k)] << k;
    p.map[static_cast<std::size_t>(i)] = img;
  }
  if (!p.is_valid()) return std::nullopt;
  return p;
}

Graph Graph::random(int v, Rng& rng) {
  Graph g;
  g.v = v;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (rng.bit()) g.edges.emplace(i, j);
  return g;
}

Graph Graph::relabeled(const Permutation& pi) const {
  Graph out;
  out.v = v;
  for (const auto& [i, j] : edges) {
    int a = pi(i), b = pi(j);
    if (a > b) std::swap(a, b);
    out.edges.emplace(a, b);
  }
  return out;
}

std::vector<std::uint8_t> Graph::serialize() const {
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(edges.size()));
  for (const auto& [i, j] : edges) {
    put_u16(out, static_cast<std::uint16_t>(i));
    put_u16(out, static_cast<std::uint16_t>(j));
  }
  return out;
}

Graph Graph::deserialize(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
  Graph g;
  g.v = static_cast<int>(get_u32(bytes, pos));
  const std::uint32_t count = get_u32(bytes, pos);
  for (std::uint32_t k = 0; k < count; ++k) {
    const int i = get_u16(bytes, pos);
    const int j = get_u16(bytes, pos);
    g.edges.emplace(i, j);
  }
  return g;
}

void SigmaInstance::check() const {
  if (g0.v != g1.v) throw std::invalid_argument("SigmaInstance: vertex counts differ");
  if (witness && g0.relabeled(*witness) != g1)
    throw std::invalid_argument("SigmaInstance: witness is not an isomorphism");
}

SigmaInstance trapdoor_gen(int v, Rng& rng) {
  if (v < 4) throw std::invalid_argument("trapdoor_gen: need at least 4 vertices");
  SigmaInstance inst;
  inst.g0 = Graph::random(v, rng);
  inst.witness = Permutation::random(v, rng);
  inst.g1 = inst.g0.relabeled(*inst.witness);
  return inst;
}

bool sigma_accepts(const SigmaInstance& inst, const Graph& a, int b, const Permutation& z) {
  if (z.size() != inst.g0.v || !z.is_valid()) return false;
  const Graph& gb = b ? inst.g1 : inst.g0;
  return gb.relabeled(z) == a;
}

std::pair<TrapCommitment, TrapOpening> tcommit(const CommitKey& pk, const SigmaInstance& inst,
                                               int b, Rng& rng) {
  inst.check();
  const int v = inst.g0.v;
  // honest-verifier simulation for challenge b: z random, a := z(G_b)
  const Permutation z = Permutation::random(v, rng);
  const Graph a = (b ? inst.g1 : inst.g0).relabeled(z);

  const BitString z_bits = z.encode();
  const BitString zero_bits(z_bits.size());
  const int nbits = static_cast<int>(z_bits.size());
  CommitRandomness r_b = sample_randomness(pk.params, nbits, rng);
  CommitRandomness r_other = sample_randomness(pk.params, nbits, rng);

  TrapCommitment com;
  com.a = a;
  if (b == 0) {
    com.c0 = commit_bits(pk, z_bits, r_b);
    com.c1 = commit_bits(pk, zero_bits, r_other);
  } else {
    com.c1 = commit_bits(pk, z_bits, r_b);
    com.c0 = commit_bits(pk, zero_bits, r_other);
  }
  return {std::move(com), TrapOpening{b, z, std::move(r_b)}};
}

bool topen_verify(const CommitKey& pk, const SigmaInstance& inst, const TrapCommitment& com,
                  const TrapOpening& opening) {
  if (opening.b != 0 && opening.b != 1) return false;
  if (!sigma_accepts(inst, com.a, opening.b, opening.z)) return false;
  const Commitment& cb = opening.b ? com.c1 : com.c0;
  return verify_open_bits(pk, cb, opening.z.encode(), opening.r);
}

DualOpening tequivocate(const CommitKey& pk, const SigmaInstance& inst, Rng& rng) {
  inst.check();
  if (!inst.witness) throw std::invalid_argument("tequivocate: witness required");
  const int v = inst.g0.v;
  const Permutation pi = Permutation::random(v, rng);
  const Graph a = inst.g0.relabeled(pi);
  const Permutation z0 = pi;
  const Permutation z1 = pi.compose(inst.witness->inverse());  // z1(G1) = pi(G0) = a

  const BitString z0_bits = z0.encode();
  const BitString z1_bits = z1.encode();
  CommitRandomness r0 = sample_randomness(pk.params, static_cast<int>(z0_bits.size()), rng);
  CommitRandomness r1 = sample_randomness(pk.params, static_cast<int>(z1_bits.size()), rng);

  DualOpening out;
  out.com.a = a;
  out.com.c0 = commit_bits(pk, z0_bits, r0);
  out.com.c1 = commit_bits(pk, z1_bits, r1);
  out.open0 = TrapOpening{0, z0, std::move(r0)};
  out.open1 = TrapOpening{1, z1, std::move(r1)};
  return out;
}

TrapExtract textract(const SecretKey& sk, const CommitKey& pk, const SigmaInstance& inst,
                     const TrapCommitment& com) {
  const int v = inst.g0.v;
  auto side_valid = [&](const Commitment& c, int b) {
    if (c.bits() != Permutation::encoded_bits(v)) return false;
    const BitString bits = extract_bits(sk, pk, c);
    const auto z = Permutation::decode(bits, v);
    return z && sigma_accepts(inst, com.a, b, *z);
  };
  const bool v0 = side_valid(com.c0, 0);
  const bool v1 = side_valid(com.c1, 1);
  if (v0 && v1) return TrapExtract::Both;
  if (v0) return TrapExtract::Zero;
  if (v1) return TrapExtract::One;
  throw StateError("textract: neither side contains a valid reply");
}

}  // namespace qcompile::commit
