#include "latrw/codec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "latrw/detail/scaled.hpp"
#include "latrw/errors.hpp"

namespace latrw {

namespace {

using detail::EncodeStatus;
using detail::mod_radix;
using detail::ScaledCode;
using detail::ScaledFloor;
using detail::VolumeKey;

void check_word_range(std::span<const std::int64_t> w, const LatticeSpec& lattice,
                      const char* what) {
    if (w.size() != lattice.radices.size()) {
        throw DimensionMismatch(std::string(what) + " has wrong dimension");
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= lattice.radices[i]) {
            throw RangeViolation(std::string(what) + " component " + std::to_string(i + 1) +
                                 " = " + std::to_string(w[i]) + " outside [0, " +
                                 std::to_string(lattice.radices[i]) + ")");
        }
    }
}

RewriteChoice select_impl(const InfoWord& u, const RationalVector& s, const LatticeSpec& lattice,
                          const CodeParams& params, const Hasher& hasher, SearchStrategy strategy,
                          bool allow_in_place, std::int64_t block_cap) {
    check_word_range(u.u, lattice, "info word");
    if (static_cast<int>(s.size()) != params.n) {
        throw DimensionMismatch("state has wrong dimension");
    }
    const Rational side = params.cube_side();
    for (int i = 0; i < params.n; ++i) {
        if (s[i].is_negative() || s[i] >= side) {
            throw OutOfCube("state coordinate " + std::to_string(i + 1) + " outside the cube");
        }
    }

    const ScaledCode sc = detail::make_scaled(lattice, params);
    const ScaledFloor floor_s = detail::scale_state(s);
    const int n = params.n;
    const std::int64_t axis_count = params.blocks_per_axis();

    std::vector<BlockIndex> neighbor_list;
    std::vector<std::int64_t> odometer;
    if (strategy == SearchStrategy::neighbors) {
        neighbor_list = neighbor_blocks(block_of(s, params), params);
    } else {
        BigInt total = 1;
        for (int i = 0; i < n; ++i) total *= axis_count;
        if (total > block_cap) {
            throw TooLarge("full search over " + total.str() + " blocks exceeds cap " +
                           std::to_string(block_cap));
        }
        odometer.assign(n, 0);
    }

    std::vector<std::int64_t> b(n);
    std::vector<std::int64_t> x_scaled(n);
    std::vector<std::int64_t> a(n);

    bool have_best = false;
    VolumeKey best_vol;
    std::vector<std::int64_t> best_b(n);
    std::vector<std::int64_t> best_x(n);
    BlockIndex best_d;

    std::size_t neighbor_pos = 0;
    BlockIndex current;
    current.d.assign(n, 0);
    for (;;) {
        if (strategy == SearchStrategy::neighbors) {
            if (neighbor_pos >= neighbor_list.size()) break;
            current = neighbor_list[neighbor_pos++];
        } else {
            current.d = odometer;
        }

        const auto m = hasher.vector_for(current, lattice);
        for (int i = 0; i < n; ++i) a[i] = mod_radix(u.u[i] + m[i], lattice.radices[i]);

        bool all_equal = false;
        const EncodeStatus st =
            detail::encode_scaled(sc, a, current.d, &floor_s, b, x_scaled, &all_equal);
        if (st == EncodeStatus::ok && (allow_in_place || !all_equal)) {
            VolumeKey vol = VolumeKey::of(sc, x_scaled);
            // Strict improvement only: blocks arrive in lexicographic order,
            // so ties keep the smallest block.
            if (!have_best || vol > best_vol) {
                have_best = true;
                best_vol = vol;
                best_b = b;
                best_x = x_scaled;
                best_d = current;
            }
        }

        if (strategy == SearchStrategy::full && !detail::next_block(odometer, axis_count)) break;
    }

    if (!have_best) {
        throw MemoryFull("no admissible codeword above the current state");
    }
    RewriteChoice choice;
    choice.codeword = detail::materialize(sc, best_b, best_x);
    choice.block = best_d;
    choice.remaining_volume = remaining_volume(choice.codeword.x, params);
    return choice;
}

}  // namespace

std::vector<std::int64_t> hash_vector(std::uint64_t key, const BlockIndex& d,
                                      const LatticeSpec& lattice) {
    const int n = lattice.dimension();
    if (static_cast<int>(d.d.size()) != n) {
        throw DimensionMismatch("block index has wrong dimension");
    }
    std::uint64_t z = key;
    for (int j = 0; j < n; ++j) {
        z = mix64(z ^ static_cast<std::uint64_t>(d.d[j] + 1));
    }
    std::vector<std::int64_t> m(n);
    for (int i = 0; i < n; ++i) {
        m[i] = static_cast<std::int64_t>(mix64(z ^ static_cast<std::uint64_t>(i + 1)) %
                                         static_cast<std::uint64_t>(lattice.radices[i]));
    }
    return m;
}

HashedWord apply_hash(const InfoWord& u, std::span<const std::int64_t> m,
                      const LatticeSpec& lattice) {
    check_word_range(u.u, lattice, "info word");
    if (m.size() != u.u.size()) throw DimensionMismatch("hash vector has wrong dimension");
    HashedWord out;
    out.a.resize(u.u.size());
    for (std::size_t i = 0; i < u.u.size(); ++i) {
        out.a[i] = mod_radix(u.u[i] + m[i], lattice.radices[i]);
    }
    return out;
}

InfoWord unhash(const HashedWord& a, std::span<const std::int64_t> m, const LatticeSpec& lattice) {
    check_word_range(a.a, lattice, "hashed word");
    if (m.size() != a.a.size()) throw DimensionMismatch("hash vector has wrong dimension");
    InfoWord out;
    out.u.resize(a.a.size());
    for (std::size_t i = 0; i < a.a.size(); ++i) {
        out.u[i] = mod_radix(a.a[i] - m[i], lattice.radices[i]);
    }
    return out;
}

Codeword encode_in_block(const HashedWord& a, const BlockIndex& d, const LatticeSpec& lattice,
                         const CodeParams& params) {
    check_word_range(a.a, lattice, "hashed word");
    if (static_cast<int>(d.d.size()) != params.n) {
        throw DimensionMismatch("block index has wrong dimension");
    }
    const std::int64_t axis_count = params.blocks_per_axis();
    for (int i = 0; i < params.n; ++i) {
        if (d.d[i] < 0 || d.d[i] >= axis_count) {
            throw OutOfCube("block coordinate " + std::to_string(i + 1) + " out of range");
        }
    }
    const ScaledCode sc = detail::make_scaled(lattice, params);
    std::vector<std::int64_t> b(params.n);
    std::vector<std::int64_t> x_scaled(params.n);
    const EncodeStatus st = detail::encode_scaled(sc, a.a, d.d, nullptr, b, x_scaled);
    if (st == EncodeStatus::phantom) {
        throw PhantomCodeword("codeword for block " + format_block(d) +
                              " falls outside the cube (truncated block)");
    }
    return detail::materialize(sc, b, x_scaled);
}

DecodeResult decode(const RationalVector& x, const LatticeSpec& lattice, const CodeParams& params,
                    const Hasher& hasher) {
    DecodeResult res;
    res.d = block_of(x, params);  // also enforces cube membership
    res.b = lattice.generator.solve_triangular(x);
    res.a.a.resize(res.b.size());
    for (std::size_t i = 0; i < res.b.size(); ++i) {
        res.a.a[i] = mod_radix(res.b[i], lattice.radices[i]);
    }
    const auto m = hasher.vector_for(res.d, lattice);
    res.u = unhash(res.a, m, lattice);
    return res;
}

SearchStrategy parse_strategy(std::string_view text) {
    if (text == "neighbors") return SearchStrategy::neighbors;
    if (text == "full") return SearchStrategy::full;
    throw ConfigError("unknown strategy '" + std::string(text) + "' (want neighbors|full)");
}

std::string_view strategy_name(SearchStrategy s) {
    return s == SearchStrategy::neighbors ? "neighbors" : "full";
}

Rational remaining_volume(const RationalVector& x, const CodeParams& params) {
    const Rational side = params.cube_side();
    Rational vol = 1;
    for (const auto& xi : x) vol *= side - xi;
    return vol;
}

RewriteChoice select_rewrite(const InfoWord& u, const RationalVector& s,
                             const LatticeSpec& lattice, const CodeParams& params,
                             const Hasher& hasher, SearchStrategy strategy, bool allow_in_place) {
    return select_impl(u, s, lattice, params, hasher, strategy, allow_in_place,
                       kDefaultEnumerationCap);
}

RewriteChoice full_search_oracle(const InfoWord& u, const RationalVector& s,
                                 const LatticeSpec& lattice, const CodeParams& params,
                                 const Hasher& hasher, std::int64_t block_cap) {
    return select_impl(u, s, lattice, params, hasher, SearchStrategy::full, true, block_cap);
}

}  // namespace latrw
