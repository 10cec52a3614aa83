#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latrw/codebook.hpp"
#include "latrw/lattice.hpp"
#include "latrw/rational.hpp"
#include "latrw/splitmix64.hpp"

namespace latrw {

// Information word, u_i in {0, ..., r_i - 1}.
struct InfoWord {
    std::vector<std::int64_t> u;

    friend bool operator==(const InfoWord& a, const InfoWord& b) { return a.u == b.u; }
};

// Hashed word, same mixed-radix ranges as InfoWord.
struct HashedWord {
    std::vector<std::int64_t> a;
};

// Per-block offset vector m with m_i in {0, ..., r_i - 1}, derived from
// (key, d) by keyed SplitMix64 mixing:
//   z = key; for j = 1..n: z = mix64(z XOR (d_j + 1));
//   m_i = mix64(z XOR i) mod r_i          (i = 1..n)
std::vector<std::int64_t> hash_vector(std::uint64_t key, const BlockIndex& d,
                                      const LatticeSpec& lattice);

// Hash configuration: a key, or disabled entirely (m = 0 everywhere, the
// plain linear construction).
struct Hasher {
    std::uint64_t key = 0;
    bool enabled = true;

    std::vector<std::int64_t> vector_for(const BlockIndex& d, const LatticeSpec& lattice) const {
        if (enabled) return hash_vector(key, d, lattice);
        return std::vector<std::int64_t>(lattice.dimension(), 0);
    }
};

// a_i = (u_i + m_i) mod r_i.
HashedWord apply_hash(const InfoWord& u, std::span<const std::int64_t> m,
                      const LatticeSpec& lattice);

// u_i = (a_i - m_i) mod r_i; exact inverse of apply_hash.
InfoWord unhash(const HashedWord& a, std::span<const std::int64_t> m, const LatticeSpec& lattice);

// Sequential cube-shaping encoder. Finds the unique b_i = a_i + r_i*k_i,
// one coordinate at a time, such that x = G*b lands in block d. Throws
// PhantomCodeword when the block is truncated and the point falls beyond
// the cube boundary.
Codeword encode_in_block(const HashedWord& a, const BlockIndex& d, const LatticeSpec& lattice,
                         const CodeParams& params);

struct DecodeResult {
    InfoWord u;
    HashedWord a;
    BlockIndex d;
    std::vector<std::int64_t> b;
};

// Exact inverse of the whole chain: forward-substitute b, reduce to a,
// locate the block, invert the hash.
DecodeResult decode(const RationalVector& x, const LatticeSpec& lattice, const CodeParams& params,
                    const Hasher& hasher);

enum class SearchStrategy { neighbors, full };

SearchStrategy parse_strategy(std::string_view text);
std::string_view strategy_name(SearchStrategy s);

struct RewriteChoice {
    Codeword codeword;
    BlockIndex block;
    Rational remaining_volume;  // prod_i (D*M - x_i)
};

Rational remaining_volume(const RationalVector& x, const CodeParams& params);

// Re-encodes u from state s: candidates are u's codewords in the candidate
// blocks (positive neighbors of s's block, or every block for the full
// strategy), filtered to x >= s componentwise and inside the cube; returns
// the candidate with the largest remaining volume, ties to the
// lexicographically smallest block. allow_in_place admits x == s (rewriting
// the currently stored word); the lifetime walk for zero-information codes
// turns it off to force progress.
RewriteChoice select_rewrite(const InfoWord& u, const RationalVector& s,
                             const LatticeSpec& lattice, const CodeParams& params,
                             const Hasher& hasher, SearchStrategy strategy,
                             bool allow_in_place = true);

// select_rewrite over all ceil(D)^n blocks, capped; the correctness oracle
// for the neighbor search.
RewriteChoice full_search_oracle(const InfoWord& u, const RationalVector& s,
                                 const LatticeSpec& lattice, const CodeParams& params,
                                 const Hasher& hasher,
                                 std::int64_t block_cap = kDefaultEnumerationCap);

}  // namespace latrw
