#pragma once

// Exact integer view of a code: multiplying through by L, the lcm of the
// generator entries' denominators, turns every codec-path quantity into an
// integer, so the hot loops run without rational normalization. This is an
// internal representation; the public API speaks Rational.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "latrw/codebook.hpp"
#include "latrw/lattice.hpp"
#include "latrw/rational.hpp"

namespace latrw::detail {

using I128 = __int128;
using U128 = unsigned __int128;

inline std::int64_t mod_radix(std::int64_t v, std::int64_t r) {
    std::int64_t m = v % r;
    return m < 0 ? m + r : m;
}

inline I128 ceil_div(I128 num, I128 den) {
    I128 q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}

inline I128 floor_div(I128 num, I128 den) {
    I128 q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

struct ScaledCode {
    int n = 0;
    std::int64_t L = 1;
    std::vector<std::int64_t> g;  // row-major, L * g_ij
    std::vector<std::int64_t> radices;
    std::int64_t LM = 0;        // L * M
    std::int64_t side_num = 0;  // D*M = side_num / side_den, reduced
    std::int64_t side_den = 1;
    bool volume_fits_u128 = false;

    std::int64_t gs(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }

    // x' < L * D*M, exactly.
    bool inside_cube(std::int64_t x_scaled) const {
        return I128(x_scaled) * side_den < I128(L) * side_num;
    }

    // Smallest scaled value outside the cube; x' is inside iff x' < this.
    std::int64_t cube_end_scaled() const {
        return static_cast<std::int64_t>(floor_div(I128(L) * side_num - 1, side_den) + 1);
    }

    U128 volume_factor(std::int64_t x_scaled) const {
        return U128(I128(L) * side_num - I128(x_scaled) * side_den);
    }
};

inline ScaledCode make_scaled(const LatticeSpec& lattice, const CodeParams& params) {
    ScaledCode sc;
    sc.n = lattice.dimension();
    BigInt l = 1;
    for (int i = 0; i < sc.n; ++i) {
        for (int j = 0; j <= i; ++j) {
            l = boost::multiprecision::lcm(l, lattice.generator.at(i, j).den());
        }
    }
    sc.L = checked_int64(l);
    sc.g.assign(static_cast<std::size_t>(sc.n) * sc.n, 0);
    for (int i = 0; i < sc.n; ++i) {
        for (int j = 0; j <= i; ++j) {
            sc.g[static_cast<std::size_t>(i) * sc.n + j] =
                checked_int64((lattice.generator.at(i, j) * Rational(sc.L)).num());
        }
    }
    sc.radices = lattice.radices;
    sc.LM = sc.L * lattice.M;
    const Rational side = params.cube_side();
    sc.side_num = checked_int64(side.num());
    sc.side_den = checked_int64(side.den());

    U128 fmax = U128(sc.L) * U128(sc.side_num);
    int bits = 0;
    while (fmax > 0) {
        fmax >>= 1;
        ++bits;
    }
    sc.volume_fits_u128 = bits * sc.n <= 126;
    return sc;
}

// Scaled monotone lower bounds: x'_i >= L*s_i, compared exactly via
// x'_i * s_den_i >= L * s_num_i.
struct ScaledFloor {
    std::vector<std::int64_t> num;
    std::vector<std::int64_t> den;
};

inline ScaledFloor scale_state(const RationalVector& s) {
    ScaledFloor f;
    f.num.reserve(s.size());
    f.den.reserve(s.size());
    for (const auto& v : s) {
        f.num.push_back(checked_int64(v.num()));
        f.den.push_back(checked_int64(v.den()));
    }
    return f;
}

enum class EncodeStatus { ok, phantom, below_state };

// One sequential shaping pass: b_i = a_i + r_i*k_i with the unique k_i that
// places x_i inside block coordinate d_i. `floor_s` adds the monotone
// x >= s filter with early abandon; `all_equal` reports x == s exactly.
inline EncodeStatus encode_scaled(const ScaledCode& sc, std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> d, const ScaledFloor* floor_s,
                                  std::vector<std::int64_t>& b,
                                  std::vector<std::int64_t>& x_scaled,
                                  bool* all_equal = nullptr) {
    const int n = sc.n;
    bool equal = true;
    for (int i = 0; i < n; ++i) {
        I128 partial = 0;
        for (int j = 0; j < i; ++j) partial += I128(sc.gs(i, j)) * b[j];
        const std::int64_t gii = sc.gs(i, i);
        const I128 lo = I128(sc.LM) * d[i];
        const I128 k = ceil_div(lo - partial - I128(gii) * a[i], sc.LM);
        const I128 bi = I128(a[i]) + I128(sc.radices[i]) * k;
        const I128 xi = partial + I128(gii) * bi;
        if (xi < lo || xi >= lo + sc.LM) {
            throw std::logic_error("shaping step left its block; broken invariant");
        }
        x_scaled[i] = static_cast<std::int64_t>(xi);
        b[i] = static_cast<std::int64_t>(bi);
        if (!sc.inside_cube(x_scaled[i])) return EncodeStatus::phantom;
        if (floor_s != nullptr) {
            const I128 lhs = I128(x_scaled[i]) * floor_s->den[i];
            const I128 rhs = I128(sc.L) * floor_s->num[i];
            if (lhs < rhs) return EncodeStatus::below_state;
            if (lhs != rhs) equal = false;
        }
    }
    if (all_equal != nullptr) *all_equal = equal;
    return EncodeStatus::ok;
}

inline Codeword materialize(const ScaledCode& sc, const std::vector<std::int64_t>& b,
                            const std::vector<std::int64_t>& x_scaled) {
    Codeword cw;
    cw.b = b;
    cw.x.reserve(x_scaled.size());
    for (auto v : x_scaled) cw.x.emplace_back(BigInt(v), BigInt(sc.L));
    return cw;
}

// Exact comparable remaining-volume key; all candidates share the common
// denominator (L*side_den)^n, so only numerators are compared.
struct VolumeKey {
    bool use128 = true;
    U128 v128 = 0;
    BigInt vbig;

    static VolumeKey of(const ScaledCode& sc, const std::vector<std::int64_t>& x_scaled) {
        VolumeKey k;
        k.use128 = sc.volume_fits_u128;
        if (k.use128) {
            U128 p = 1;
            for (auto v : x_scaled) p *= sc.volume_factor(v);
            k.v128 = p;
        } else {
            BigInt p = 1;
            for (auto v : x_scaled) {
                p *= BigInt(sc.L) * sc.side_num - BigInt(v) * sc.side_den;
            }
            k.vbig = p;
        }
        return k;
    }

    bool operator>(const VolumeKey& o) const { return use128 ? v128 > o.v128 : vbig > o.vbig; }
};

// Lexicographic odometer over {0..axis_count-1}^n; returns false after the
// last block.
inline bool next_block(std::vector<std::int64_t>& d, std::int64_t axis_count) {
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
        if (++d[i] < axis_count) return true;
        d[i] = 0;
    }
    return false;
}

}  // namespace latrw::detail
