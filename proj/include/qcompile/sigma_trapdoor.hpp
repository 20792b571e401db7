#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qcompile/common.hpp"
#include "qcompile/lwe_commit.hpp"

namespace qcompile::commit {

// Vertex relabeling on {0,..,v-1}.
struct Permutation {
  std::vector<int> map;  // image of each vertex

  int size() const { return static_cast<int>(map.size()); }
  int operator()(int vertex) const { return map[static_cast<std::size_t>(vertex)]; }
  Permutation inverse() const;
  // (a.compose(b))(x) = a(b(x))
  Permutation compose(const Permutation& inner) const;
  bool is_valid() const;
  bool operator==(const Permutation&) const = default;

  static Permutation identity(int v);
  static Permutation random(int v, Rng& rng);

  // ceil(log2 v) bits per vertex image.
  BitString encode() const;
  static std::optional<Permutation> decode(const BitString& bits, int v);
  static int encoded_bits(int v);
};

struct Graph {
  int v = 0;
  std::set<std::pair<int, int>> edges;  // normalized i < j

  static Graph random(int v, Rng& rng);
  Graph relabeled(const Permutation& pi) const;
  bool operator==(const Graph&) const = default;

  std::vector<std::uint8_t> serialize() const;
  static Graph deserialize(const std::vector<std::uint8_t>& bytes, std::size_t& pos);
};

// Hard-relation instance for the trapdoor extension: isomorphic graph pair,
// witness = the isomorphism (g1 = witness(g0)).
struct SigmaInstance {
  Graph g0, g1;
  std::optional<Permutation> witness;

  SigmaInstance public_part() const { return {g0, g1, std::nullopt}; }
  void check() const;  // witness, when present, must map g0 to g1
};

SigmaInstance trapdoor_gen(int v, Rng& rng);

// Accepting conversation: a = z(G_b).
bool sigma_accepts(const SigmaInstance& inst, const Graph& a, int b, const Permutation& z);

struct TrapCommitment {
  Graph a;
  Commitment c0, c1;
};

struct TrapOpening {
  int b = 0;
  Permutation z;
  CommitRandomness r;
};

// Commitment to bit b: simulate (a, b, z), commit to the encoded reply in c_b
// and to the zero string in c_(1-b).
std::pair<TrapCommitment, TrapOpening> tcommit(const CommitKey& pk, const SigmaInstance& inst,
                                               int b, Rng& rng);

bool topen_verify(const CommitKey& pk, const SigmaInstance& inst, const TrapCommitment& com,
                  const TrapOpening& opening);

struct DualOpening {
  TrapCommitment com;
  TrapOpening open0, open1;
};

// With the witness, one commitment value opens to both bits.
DualOpening tequivocate(const CommitKey& pk, const SigmaInstance& inst, Rng& rng);

enum class TrapExtract { Zero, One, Both };

// Decrypt both sides and test which replies verify. Both valid is
// binding-break evidence; neither valid throws StateError.
TrapExtract textract(const SecretKey& sk, const CommitKey& pk, const SigmaInstance& inst,
                     const TrapCommitment& com);

}  // namespace qcompile::commit
