#include "latrw/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "latrw/errors.hpp"

namespace latrw {

CodeParams CodeParams::from_D(int n, std::int64_t M, Rational D) {
    if (n <= 0) throw DimensionMismatch("dimension must be positive");
    if (M <= 0) throw RangeViolation("M must be positive");
    if (D < Rational(1)) throw RangeViolation("D must be at least 1, got " + D.to_string());
    return CodeParams{n, M, std::move(D)};
}

CodeParams CodeParams::from_q(int n, std::int64_t M, const Rational& q) {
    if (M <= 0) throw RangeViolation("M must be positive");
    return from_D(n, M, (q - Rational(1)) / Rational(M));
}

std::string format_block(const BlockIndex& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.d.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(d.d[i]);
    }
    out += ')';
    return out;
}

std::vector<AxisInterval> block_bounds(const BlockIndex& d, const CodeParams& params) {
    if (static_cast<int>(d.d.size()) != params.n) {
        throw DimensionMismatch("block index has wrong dimension");
    }
    const std::int64_t axis_count = params.blocks_per_axis();
    const Rational side = params.cube_side();
    std::vector<AxisInterval> box;
    box.reserve(params.n);
    for (int i = 0; i < params.n; ++i) {
        if (d.d[i] < 0 || d.d[i] >= axis_count) {
            throw OutOfCube("block coordinate " + std::to_string(i + 1) + " out of range");
        }
        Rational lo = Rational(d.d[i]) * Rational(params.M);
        Rational hi = Rational(d.d[i] + 1) * Rational(params.M);
        box.push_back({std::move(lo), std::min(hi, side)});
    }
    return box;
}

BlockIndex block_of(const RationalVector& x, const CodeParams& params) {
    if (static_cast<int>(x.size()) != params.n) {
        throw DimensionMismatch("point has wrong dimension");
    }
    const Rational side = params.cube_side();
    BlockIndex d;
    d.d.resize(params.n);
    for (int i = 0; i < params.n; ++i) {
        if (x[i].is_negative() || x[i] >= side) {
            throw OutOfCube("coordinate " + std::to_string(i + 1) + " = " + x[i].to_string() +
                            " outside [0, " + side.to_string() + ")");
        }
        d.d[i] = checked_int64((x[i] / Rational(params.M)).floor());
    }
    return d;
}

CodebookSizes codebook_size_formula(const CodeParams& params, const Rational& det_g) {
    if (!det_g.is_positive()) throw RangeViolation("determinant must be positive");
    Rational full = 1;
    Rational per_block = 1;
    const Rational side = params.cube_side();
    for (int i = 0; i < params.n; ++i) {
        full *= side;
        per_block *= Rational(params.M);
    }
    return CodebookSizes{full / det_g, per_block / det_g};
}

double rate_bits_per_cell(const CodeParams& params, const Rational& det_g) {
    const auto sizes = codebook_size_formula(params, det_g);
    const Rational& words = sizes.per_block_max;
    return (std::log2(words.num().convert_to<double>()) -
            std::log2(words.den().convert_to<double>())) /
           params.n;
}

std::vector<Codeword> enumerate_codebook(const LatticeSpec& lattice, const CodeParams& params,
                                         std::int64_t cap) {
    const auto sizes = codebook_size_formula(params, lattice.generator.determinant());
    if (sizes.full > Rational(cap)) {
        throw TooLarge("codebook size " + sizes.full.to_string() + " exceeds enumeration cap " +
                       std::to_string(cap));
    }
    const int n = params.n;
    const Rational side = params.cube_side();
    const GeneratorMatrix& g = lattice.generator;

    std::vector<Codeword> out;
    std::vector<std::int64_t> b(n);
    RationalVector x(n);

    // Depth-first over b_1..b_n; at depth i the feasible range of b_i is the
    // set of integers keeping x_i inside [0, D*M).
    std::function<void(int)> descend = [&](int i) {
        if (i == n) {
            out.push_back(Codeword{x, b});
            return;
        }
        Rational partial = 0;
        for (int j = 0; j < i; ++j) partial += g.at(i, j) * Rational(b[j]);
        const Rational& gii = g.at(i, i);
        // partial + gii*b_i in [0, side)
        BigInt lo = ((Rational(0) - partial) / gii).ceil();
        BigInt hi = ((side - partial) / gii).ceil();  // exclusive
        for (BigInt v = lo; v < hi; ++v) {
            b[i] = checked_int64(v);
            x[i] = partial + gii * Rational(b[i]);
            descend(i + 1);
        }
    };
    descend(0);
    return out;
}

std::vector<BlockIndex> neighbor_blocks(const BlockIndex& d, const CodeParams& params) {
    if (static_cast<int>(d.d.size()) != params.n) {
        throw DimensionMismatch("block index has wrong dimension");
    }
    const std::int64_t axis_count = params.blocks_per_axis();
    const int n = params.n;
    std::vector<BlockIndex> out;
    out.reserve(std::size_t{1} << std::min(n, 20));
    BlockIndex cand = d;
    std::function<void(int)> descend = [&](int i) {
        if (i == n) {
            out.push_back(cand);
            return;
        }
        for (std::int64_t delta = 0; delta <= 1; ++delta) {
            cand.d[i] = d.d[i] + delta;
            if (cand.d[i] >= axis_count) continue;  // empty block
            descend(i + 1);
        }
    };
    descend(0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace latrw
