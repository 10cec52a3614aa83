#pragma once

#include <cstdint>
#include <vector>

#include "latrw/lattice.hpp"
#include "latrw/rational.hpp"

namespace latrw {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

// Code geometry: the signal cube [0, D*M)^n split into blocks of side M.
// D may be non-integer, in which case the blocks touching the upper faces
// are truncated.
struct CodeParams {
    int n = 0;
    std::int64_t M = 1;
    Rational D = 1;

    static CodeParams from_D(int n, std::int64_t M, Rational D);
    // q levels per cell, q - 1 = D*M.
    static CodeParams from_q(int n, std::int64_t M, const Rational& q);

    Rational q() const { return D * Rational(M) + Rational(1); }
    Rational cube_side() const { return D * Rational(M); }
    std::int64_t blocks_per_axis() const { return checked_int64(D.ceil()); }
};

// Per-axis block coordinates, each in {0, ..., ceil(D)-1}.
struct BlockIndex {
    std::vector<std::int64_t> d;

    friend bool operator==(const BlockIndex& a, const BlockIndex& b) { return a.d == b.d; }
    friend bool operator<(const BlockIndex& a, const BlockIndex& b) { return a.d < b.d; }
};

std::string format_block(const BlockIndex& d);

// Half-open interval [lo, hi) per axis.
struct AxisInterval {
    Rational lo;
    Rational hi;
};

// The box of block d: [d_i*M, min((d_i+1)*M, D*M)) per axis.
std::vector<AxisInterval> block_bounds(const BlockIndex& d, const CodeParams& params);

// d_i = floor(x_i / M); throws OutOfCube unless 0 <= x_i < D*M for all i.
BlockIndex block_of(const RationalVector& x, const CodeParams& params);

struct CodebookSizes {
    Rational full;           // (D*M)^n / |det G|
    Rational per_block_max;  // M^n / |det G|
};

CodebookSizes codebook_size_formula(const CodeParams& params, const Rational& det_g);

// (1/n) * log2(M^n / det G); reduces to log2 M for unit determinant.
double rate_bits_per_cell(const CodeParams& params, const Rational& det_g);

// An exact lattice point inside the cube together with its integer
// coefficients.
struct Codeword {
    RationalVector x;
    std::vector<std::int64_t> b;
};

// Exhaustively lists the lattice points inside the cube, ordered
// lexicographically by b. Test/analysis oracle; throws TooLarge when the
// size formula exceeds `cap`.
std::vector<Codeword> enumerate_codebook(const LatticeSpec& lattice, const CodeParams& params,
                                         std::int64_t cap = kDefaultEnumerationCap);

// {d + delta : delta in {0,1}^n} restricted to non-empty blocks, in
// lexicographic order. Includes d itself.
std::vector<BlockIndex> neighbor_blocks(const BlockIndex& d, const CodeParams& params);

}  // namespace latrw
