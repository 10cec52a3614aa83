#include <doctest.h>

#include <set>
#include <vector>

#include "latrw/codec.hpp"
#include "latrw/errors.hpp"
#include "latrw/splitmix64.hpp"

using latrw::BlockIndex;
using latrw::CodeParams;
using latrw::Hasher;
using latrw::HashedWord;
using latrw::InfoWord;
using latrw::Rational;

namespace {

latrw::LatticeSpec demo2d_spec() {
    auto g = latrw::GeneratorMatrix::from_rows(
        {{Rational(1), Rational(0)}, {Rational::parse("1/2"), Rational(1)}});
    return latrw::validate_lattice(std::move(g), 5);
}

CodeParams demo2d_params() { return CodeParams::from_D(2, 5, Rational(2)); }

latrw::LatticeSpec e8_spec(std::int64_t m = 4) {
    return latrw::validate_lattice(latrw::e8_generator(), m);
}

const Hasher kNoHash{0, false};

}  // namespace

TEST_CASE("mix64 golden values") {
    CHECK(latrw::mix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(latrw::mix64(1) == 0x910A2DEC89025CC1ULL);
    CHECK(latrw::mix64(0xDEADBEEFULL) == 0x4ADFB90F68C9EB9BULL);
}

TEST_CASE("hash_vector golden values") {
    const auto spec = demo2d_spec();  // radices (5,5)
    CHECK(latrw::hash_vector(0, BlockIndex{{0, 0}}, spec) == std::vector<std::int64_t>{2, 2});
    CHECK(latrw::hash_vector(0, BlockIndex{{1, 0}}, spec) == std::vector<std::int64_t>{1, 1});
    CHECK(latrw::hash_vector(0, BlockIndex{{0, 1}}, spec) == std::vector<std::int64_t>{0, 3});
    CHECK(latrw::hash_vector(0, BlockIndex{{1, 1}}, spec) == std::vector<std::int64_t>{3, 0});
    CHECK(latrw::hash_vector(12345, BlockIndex{{0, 0}}, spec) ==
          std::vector<std::int64_t>{1, 3});

    // radices (8,4,2): diag(1,2,4) with M=8
    auto g = latrw::GeneratorMatrix::from_rows({{Rational(1), Rational(0), Rational(0)},
                                                {Rational(0), Rational(2), Rational(0)},
                                                {Rational(0), Rational(0), Rational(4)}});
    const auto spec3 = latrw::validate_lattice(std::move(g), 8);
    REQUIRE(spec3.radices == std::vector<std::int64_t>{8, 4, 2});
    CHECK(latrw::hash_vector(7, BlockIndex{{2, 0, 1}}, spec3) ==
          std::vector<std::int64_t>{0, 3, 0});

    // determinism
    CHECK(latrw::hash_vector(99, BlockIndex{{1, 1}}, spec) ==
          latrw::hash_vector(99, BlockIndex{{1, 1}}, spec));

    // radix 1 forces m = 0
    const auto unary = latrw::validate_lattice(latrw::rectangular_generator(1), 1);
    CHECK(latrw::hash_vector(123456, BlockIndex{{0}}, unary) == std::vector<std::int64_t>{0});
}

TEST_CASE("apply_hash and unhash") {
    const auto spec = demo2d_spec();
    const std::vector<std::int64_t> m{4, 2};
    const auto a = latrw::apply_hash(InfoWord{{3, 4}}, m, spec);
    CHECK(a.a == std::vector<std::int64_t>{2, 1});
    CHECK(latrw::unhash(HashedWord{{2, 1}}, m, spec).u == std::vector<std::int64_t>{3, 4});

    const std::vector<std::int64_t> zero{0, 0};
    CHECK(latrw::apply_hash(InfoWord{{3, 4}}, zero, spec).a == std::vector<std::int64_t>{3, 4});

    // wraparound in the first (radix 8) coordinate of E8 with M=4
    const auto e8 = e8_spec();
    const std::vector<std::int64_t> m8{1, 0, 0, 0, 0, 0, 0, 0};
    const auto a8 = latrw::apply_hash(InfoWord{{7, 3, 3, 3, 3, 3, 3, 1}}, m8, e8);
    CHECK(a8.a[0] == 0);

    CHECK_THROWS_AS(latrw::apply_hash(InfoWord{{5, 0}}, zero, spec), latrw::RangeViolation);
    CHECK_THROWS_AS(latrw::apply_hash(InfoWord{{-1, 0}}, zero, spec), latrw::RangeViolation);

    // roundtrip over random words and hash vectors
    latrw::Splitmix64 rng(31337);
    for (int iter = 0; iter < 10000; ++iter) {
        InfoWord u{{static_cast<std::int64_t>(rng.next_below(5)),
                    static_cast<std::int64_t>(rng.next_below(5))}};
        const std::vector<std::int64_t> mv{static_cast<std::int64_t>(rng.next_below(5)),
                                           static_cast<std::int64_t>(rng.next_below(5))};
        CHECK(latrw::unhash(latrw::apply_hash(u, mv, spec), mv, spec) == u);
    }
}

TEST_CASE("keyed hashing is a bijection on every block") {
    const auto spec = demo2d_spec();
    for (std::int64_t d1 = 0; d1 < 2; ++d1) {
        for (std::int64_t d2 = 0; d2 < 2; ++d2) {
            const auto m = latrw::hash_vector(0xFEEDFACE, BlockIndex{{d1, d2}}, spec);
            std::set<std::vector<std::int64_t>> images;
            for (std::int64_t u1 = 0; u1 < 5; ++u1) {
                for (std::int64_t u2 = 0; u2 < 5; ++u2) {
                    images.insert(latrw::apply_hash(InfoWord{{u1, u2}}, m, spec).a);
                }
            }
            CHECK(images.size() == 25);
        }
    }
}

TEST_CASE("encode_in_block worked examples") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();

    auto cw = latrw::encode_in_block(HashedWord{{2, 3}}, BlockIndex{{0, 0}}, spec, params);
    CHECK(cw.b == std::vector<std::int64_t>{2, 3});
    CHECK(cw.x == latrw::RationalVector{Rational(2), Rational(4)});

    cw = latrw::encode_in_block(HashedWord{{2, 3}}, BlockIndex{{1, 0}}, spec, params);
    CHECK(cw.b == std::vector<std::int64_t>{7, -2});
    CHECK(cw.x == latrw::RationalVector{Rational(7), Rational::parse("3/2")});

    cw = latrw::encode_in_block(HashedWord{{0, 0}}, BlockIndex{{0, 0}}, spec, params);
    CHECK(cw.x == latrw::RationalVector{Rational(0), Rational(0)});

    cw = latrw::encode_in_block(HashedWord{{4, 1}}, BlockIndex{{0, 1}}, spec, params);
    CHECK(cw.b == std::vector<std::int64_t>{4, 6});
    CHECK(cw.x == latrw::RationalVector{Rational(4), Rational(8)});
}

TEST_CASE("shaping containment, exhaustive on the small code") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    for (std::int64_t d1 = 0; d1 < 2; ++d1) {
        for (std::int64_t d2 = 0; d2 < 2; ++d2) {
            const BlockIndex d{{d1, d2}};
            const auto box = latrw::block_bounds(d, params);
            for (std::int64_t a1 = 0; a1 < 5; ++a1) {
                for (std::int64_t a2 = 0; a2 < 5; ++a2) {
                    const auto cw =
                        latrw::encode_in_block(HashedWord{{a1, a2}}, d, spec, params);
                    for (int i = 0; i < 2; ++i) {
                        CHECK(cw.x[i] >= box[i].lo);
                        CHECK(cw.x[i] < box[i].hi);
                    }
                }
            }
        }
    }
}

TEST_CASE("shaping containment, random blocks on e8") {
    const auto spec = e8_spec();
    const auto params = CodeParams::from_D(8, 4, Rational(4));
    latrw::Splitmix64 rng(0xE8);
    for (int iter = 0; iter < 2000; ++iter) {
        HashedWord a;
        BlockIndex d;
        for (int i = 0; i < 8; ++i) {
            a.a.push_back(static_cast<std::int64_t>(rng.next_below(
                static_cast<std::uint64_t>(spec.radices[static_cast<std::size_t>(i)]))));
            d.d.push_back(static_cast<std::int64_t>(rng.next_below(4)));
        }
        const auto cw = latrw::encode_in_block(a, d, spec, params);
        const auto box = latrw::block_bounds(d, params);
        for (int i = 0; i < 8; ++i) {
            CHECK(cw.x[i] >= box[i].lo);
            CHECK(cw.x[i] < box[i].hi);
        }
    }
}

TEST_CASE("the shaping offset is the unique one keeping its coordinate in the block") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    for (std::int64_t d1 = 0; d1 < 2; ++d1) {
        for (std::int64_t d2 = 0; d2 < 2; ++d2) {
            const BlockIndex d{{d1, d2}};
            for (std::int64_t a1 = 0; a1 < 5; ++a1) {
                for (std::int64_t a2 = 0; a2 < 5; ++a2) {
                    const auto cw =
                        latrw::encode_in_block(HashedWord{{a1, a2}}, d, spec, params);
                    // shifting b_i by +-r_i (i.e. k_i by +-1) must leave the
                    // per-coordinate interval [d_i*M, (d_i+1)*M)
                    for (int i = 0; i < 2; ++i) {
                        Rational partial = 0;
                        for (int j = 0; j < i; ++j) {
                            partial += spec.generator.at(i, j) * Rational(cw.b[j]);
                        }
                        for (int sign : {-1, +1}) {
                            const Rational xi =
                                partial + spec.generator.at(i, i) *
                                              Rational(cw.b[i] + sign * spec.radices[i]);
                            const bool inside = xi >= Rational(d.d[i] * 5) &&
                                                xi < Rational((d.d[i] + 1) * 5);
                            CHECK_FALSE(inside);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("phantom codewords in a truncated block") {
    // 1-D, M=4, D=3/2: block 1 is [4,6); hashed symbols 2 and 3 would land
    // on 6 and 7, outside the cube.
    const auto spec = latrw::validate_lattice(latrw::rectangular_generator(1), 4);
    const auto params = CodeParams::from_D(1, 4, Rational::parse("3/2"));
    CHECK(latrw::encode_in_block(HashedWord{{0}}, BlockIndex{{1}}, spec, params).x[0] ==
          Rational(4));
    CHECK(latrw::encode_in_block(HashedWord{{1}}, BlockIndex{{1}}, spec, params).x[0] ==
          Rational(5));
    CHECK_THROWS_AS(latrw::encode_in_block(HashedWord{{2}}, BlockIndex{{1}}, spec, params),
                    latrw::PhantomCodeword);
    CHECK_THROWS_AS(latrw::encode_in_block(HashedWord{{3}}, BlockIndex{{1}}, spec, params),
                    latrw::PhantomCodeword);
}

TEST_CASE("decode worked example") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    const auto res =
        latrw::decode({Rational(7), Rational::parse("3/2")}, spec, params, kNoHash);
    CHECK(res.b == std::vector<std::int64_t>{7, -2});
    CHECK(res.a.a == std::vector<std::int64_t>{2, 3});
    CHECK(res.d == BlockIndex{{1, 0}});
    CHECK(res.u.u == std::vector<std::int64_t>{2, 3});

    // zero point decodes to the negated hash vector
    const Hasher keyed{42, true};
    const auto zero = latrw::decode({Rational(0), Rational(0)}, spec, params, keyed);
    const auto m = latrw::hash_vector(42, BlockIndex{{0, 0}}, spec);
    for (int i = 0; i < 2; ++i) CHECK(zero.u.u[static_cast<std::size_t>(i)] == (5 - m[static_cast<std::size_t>(i)]) % 5);

    CHECK_THROWS_AS(latrw::decode({Rational::parse("1/3"), Rational(0)}, spec, params, kNoHash),
                    latrw::NotALatticePoint);
    CHECK_THROWS_AS(latrw::decode({Rational(11), Rational(0)}, spec, params, kNoHash),
                    latrw::OutOfCube);
}

TEST_CASE("encode-decode roundtrip over random words, blocks and keys") {
    const auto demo2d = demo2d_spec();
    const auto demo2dp = demo2d_params();
    const auto e8 = e8_spec();
    const auto e8p = CodeParams::from_D(8, 4, Rational(4));
    latrw::Splitmix64 rng(0xC0DEC);

    for (int iter = 0; iter < 2000; ++iter) {
        const Hasher hasher{rng.next(), true};

        InfoWord u2{{static_cast<std::int64_t>(rng.next_below(5)),
                     static_cast<std::int64_t>(rng.next_below(5))}};
        BlockIndex d2{{static_cast<std::int64_t>(rng.next_below(2)),
                       static_cast<std::int64_t>(rng.next_below(2))}};
        const auto m2 = hasher.vector_for(d2, demo2d);
        const auto cw2 = latrw::encode_in_block(latrw::apply_hash(u2, m2, demo2d), d2, demo2d, demo2dp);
        CHECK(latrw::decode(cw2.x, demo2d, demo2dp, hasher).u == u2);

        InfoWord u8;
        BlockIndex d8;
        for (int i = 0; i < 8; ++i) {
            u8.u.push_back(static_cast<std::int64_t>(rng.next_below(
                static_cast<std::uint64_t>(e8.radices[static_cast<std::size_t>(i)]))));
            d8.d.push_back(static_cast<std::int64_t>(rng.next_below(4)));
        }
        const auto m8 = hasher.vector_for(d8, e8);
        const auto cw8 = latrw::encode_in_block(latrw::apply_hash(u8, m8, e8), d8, e8, e8p);
        CHECK(latrw::decode(cw8.x, e8, e8p, hasher).u == u8);
    }
}

TEST_CASE("select_rewrite worked example") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    const latrw::RationalVector s{Rational(2), Rational(4)};
    const auto choice = latrw::select_rewrite(InfoWord{{4, 1}}, s, spec, params, kNoHash,
                                              latrw::SearchStrategy::neighbors);
    CHECK(choice.codeword.x == latrw::RationalVector{Rational(4), Rational(8)});
    CHECK(choice.block == BlockIndex{{0, 1}});
    CHECK(choice.remaining_volume == Rational(12));

    // the full oracle agrees here
    const auto full = latrw::full_search_oracle(InfoWord{{4, 1}}, s, spec, params, kNoHash);
    CHECK(full.codeword.x == choice.codeword.x);
}

TEST_CASE("from the erased state the zero block wins under the plain construction") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    const latrw::RationalVector zero{Rational(0), Rational(0)};
    for (std::int64_t u1 = 0; u1 < 5; ++u1) {
        for (std::int64_t u2 = 0; u2 < 5; ++u2) {
            const auto choice = latrw::select_rewrite(InfoWord{{u1, u2}}, zero, spec, params,
                                                      kNoHash, latrw::SearchStrategy::neighbors);
            CHECK(choice.block == BlockIndex{{0, 0}});
            const auto full =
                latrw::full_search_oracle(InfoWord{{u1, u2}}, zero, spec, params, kNoHash);
            CHECK(full.codeword.x == choice.codeword.x);
        }
    }

    const auto e8 = e8_spec();
    const auto e8p = CodeParams::from_D(8, 4, Rational(4));
    latrw::Splitmix64 rng(0x5E1EC7);
    const latrw::RationalVector zero8(8, Rational(0));
    const BlockIndex origin{{0, 0, 0, 0, 0, 0, 0, 0}};
    for (int iter = 0; iter < 100; ++iter) {
        InfoWord u;
        for (int i = 0; i < 8; ++i) {
            u.u.push_back(static_cast<std::int64_t>(rng.next_below(
                static_cast<std::uint64_t>(e8.radices[static_cast<std::size_t>(i)]))));
        }
        const auto choice = latrw::select_rewrite(u, zero8, e8, e8p, kNoHash,
                                                  latrw::SearchStrategy::neighbors);
        CHECK(choice.block == origin);
    }
}

TEST_CASE("select_rewrite reports a full memory") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    const latrw::RationalVector s{Rational::parse("19/2"), Rational::parse("19/2")};
    for (std::int64_t u1 = 0; u1 < 5; ++u1) {
        for (std::int64_t u2 = 0; u2 < 5; ++u2) {
            CHECK_THROWS_AS(latrw::select_rewrite(InfoWord{{u1, u2}}, s, spec, params, kNoHash,
                                                  latrw::SearchStrategy::neighbors),
                            latrw::MemoryFull);
        }
    }
}

TEST_CASE("monotonicity and oracle dominance over random states") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    latrw::Splitmix64 rng(0xACE);
    int oracle_in_neighborhood = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        const Hasher hasher{rng.next(), true};
        latrw::RationalVector s;
        for (int i = 0; i < 2; ++i) {
            const auto den = static_cast<std::int64_t>(rng.next_below(4)) + 1;
            const auto num =
                static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(10 * den)));
            s.push_back(Rational(latrw::BigInt(num), latrw::BigInt(den)));
        }
        InfoWord u{{static_cast<std::int64_t>(rng.next_below(5)),
                    static_cast<std::int64_t>(rng.next_below(5))}};

        latrw::RationalVector nb_x;
        Rational nb_vol{-1};
        bool nb_ok = true;
        try {
            const auto nb = latrw::select_rewrite(u, s, spec, params, hasher,
                                                  latrw::SearchStrategy::neighbors);
            nb_x = nb.codeword.x;
            nb_vol = nb.remaining_volume;
            for (int i = 0; i < 2; ++i) CHECK(nb_x[static_cast<std::size_t>(i)] >= s[static_cast<std::size_t>(i)]);
        } catch (const latrw::MemoryFull&) {
            nb_ok = false;
        }

        try {
            const auto full = latrw::full_search_oracle(u, s, spec, params, hasher);
            // the unrestricted maximum is at least as good
            if (nb_ok) CHECK(full.remaining_volume >= nb_vol);
            const auto nbs = latrw::neighbor_blocks(latrw::block_of(s, params), params);
            const bool in_nb =
                std::find(nbs.begin(), nbs.end(), full.block) != nbs.end();
            if (in_nb) {
                ++oracle_in_neighborhood;
                REQUIRE(nb_ok);
                CHECK(full.codeword.x == nb_x);
            }
        } catch (const latrw::MemoryFull&) {
            CHECK_FALSE(nb_ok);
        }
    }
    CHECK(oracle_in_neighborhood > 0);
}

TEST_CASE("full search respects the block cap") {
    const auto e8 = e8_spec(16);
    const auto params = CodeParams::from_D(8, 16, Rational(16));
    const latrw::RationalVector zero(8, Rational(0));
    InfoWord u;
    u.u.assign(8, 0);
    CHECK_THROWS_AS(latrw::full_search_oracle(u, zero, e8, params, kNoHash), latrw::TooLarge);
}

TEST_CASE("in-place rewrites can be disallowed") {
    const auto spec = demo2d_spec();
    const auto params = demo2d_params();
    // store u = (2,3) at its block-(0,0) codeword x=(2,4)
    const latrw::RationalVector s{Rational(2), Rational(4)};
    const auto dec = latrw::decode(s, spec, params, kNoHash);
    REQUIRE(dec.u.u == std::vector<std::int64_t>{2, 3});

    const auto in_place = latrw::select_rewrite(dec.u, s, spec, params, kNoHash,
                                                latrw::SearchStrategy::neighbors, true);
    CHECK(in_place.codeword.x == s);

    const auto forced = latrw::select_rewrite(dec.u, s, spec, params, kNoHash,
                                              latrw::SearchStrategy::neighbors, false);
    CHECK(forced.codeword.x != s);
    for (int i = 0; i < 2; ++i) CHECK(forced.codeword.x[static_cast<std::size_t>(i)] >= s[static_cast<std::size_t>(i)]);
}

TEST_CASE("remaining volume formula") {
    const auto params = demo2d_params();
    CHECK(latrw::remaining_volume({Rational(4), Rational(8)}, params) == Rational(12));
    CHECK(latrw::remaining_volume({Rational(0), Rational(0)}, params) == Rational(100));
}
