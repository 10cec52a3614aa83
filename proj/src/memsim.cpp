#include "latrw/memsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "latrw/detail/scaled.hpp"
#include "latrw/errors.hpp"
#include "latrw/splitmix64.hpp"

namespace latrw {

namespace {

using detail::I128;
using detail::U128;

bool is_zero_rate(const LatticeSpec& lattice) {
    return std::all_of(lattice.radices.begin(), lattice.radices.end(),
                       [](std::int64_t r) { return r == 1; });
}

void commit(MemoryState& mem, const RewriteChoice& choice) {
    for (std::size_t i = 0; i < mem.cells.size(); ++i) {
        if (choice.codeword.x[i] < mem.cells[i]) {
            throw std::logic_error("monotone write invariant violated");
        }
    }
    mem.cells = choice.codeword.x;
    ++mem.write_count;
}

// A code with one word carries no information; rewriting it repeatedly
// would legally sit in place forever. The walk instead forces an advance on
// every write after the first, marching the single word up the blocks.
TrialResult zero_rate_walk(const CodecContext& ctx) {
    MemoryState mem = init_memory(ctx.params);
    InfoWord u;
    u.u.assign(ctx.params.n, 0);
    for (;;) {
        try {
            auto choice = select_rewrite(u, mem.cells, ctx.lattice, ctx.params, ctx.hasher,
                                         ctx.strategy, /*allow_in_place=*/mem.write_count == 0);
            commit(mem, choice);
        } catch (const MemoryFull&) {
            break;
        }
    }
    return TrialResult{mem.write_count, std::move(mem)};
}

}  // namespace

MemoryState init_memory(const CodeParams& params) {
    MemoryState mem;
    mem.cells.assign(params.n, Rational(0));
    return mem;
}

RewriteChoice write_word(MemoryState& mem, const InfoWord& u, const CodecContext& ctx) {
    auto choice = select_rewrite(u, mem.cells, ctx.lattice, ctx.params, ctx.hasher, ctx.strategy);
    commit(mem, choice);
    return choice;
}

TrialResult run_lifetime_trial(const CodecContext& ctx, std::uint64_t rng_seed) {
    if (is_zero_rate(ctx.lattice)) return zero_rate_walk(ctx);

    MemoryState mem = init_memory(ctx.params);
    Splitmix64 rng(rng_seed);
    InfoWord u;
    u.u.resize(ctx.params.n);
    for (;;) {
        for (int i = 0; i < ctx.params.n; ++i) {
            u.u[i] = static_cast<std::int64_t>(
                rng.next_below(static_cast<std::uint64_t>(ctx.lattice.radices[i])));
        }
        try {
            write_word(mem, u, ctx);
        } catch (const MemoryFull&) {
            break;
        }
    }
    return TrialResult{mem.write_count, std::move(mem)};
}

std::uint64_t adversarial_min_writes(const CodecContext& ctx, std::uint64_t max_steps,
                                     std::int64_t word_cap) {
    const LatticeSpec& lattice = ctx.lattice;
    const CodeParams& params = ctx.params;
    const int n = params.n;

    if (is_zero_rate(lattice)) return zero_rate_walk(ctx).writes;

    BigInt words_big = 1;
    for (auto r : lattice.radices) words_big *= r;
    if (words_big > word_cap) {
        throw TooLarge("word set of size " + words_big.str() + " exceeds adversary cap " +
                       std::to_string(word_cap));
    }
    const std::int64_t word_count = checked_int64(words_big);

    const detail::ScaledCode sc = detail::make_scaled(lattice, params);
    if (!sc.volume_fits_u128) {
        throw TooLarge("cube too large for the adversary probe");
    }
    const std::int64_t axis_count = params.blocks_per_axis();
    if (ctx.strategy == SearchStrategy::full) {
        BigInt total = 1;
        for (int i = 0; i < n; ++i) total *= axis_count;
        if (total > kDefaultEnumerationCap) {
            throw TooLarge("full-strategy adversary over " + total.str() + " blocks");
        }
    }

    // Lexicographic word rank, most-significant component first.
    std::vector<std::int64_t> stride(n);
    stride[n - 1] = 1;
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * lattice.radices[i + 1];

    MemoryState mem = init_memory(params);
    std::vector<U128> best_vol(static_cast<std::size_t>(word_count));
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(word_count));
    const std::int64_t cube_end = sc.cube_end_scaled();

    for (;;) {
        if (mem.write_count >= max_steps) {
            throw TooLarge("adversary walk exceeded the step cap");
        }
        std::fill(seen.begin(), seen.end(), 0);
        const detail::ScaledFloor fs = detail::scale_state(mem.cells);
        std::vector<std::int64_t> x_floor(n);  // per-axis scaled lower bound ceil(L*s_i)
        for (int i = 0; i < n; ++i) {
            x_floor[i] = static_cast<std::int64_t>(
                detail::ceil_div(I128(sc.L) * fs.num[i], fs.den[i]));
        }

        std::vector<BlockIndex> blocks;
        if (ctx.strategy == SearchStrategy::neighbors) {
            blocks = neighbor_blocks(block_of(mem.cells, params), params);
        } else {
            BlockIndex cur;
            cur.d.assign(n, 0);
            blocks.push_back(cur);
            while (detail::next_block(cur.d, axis_count)) blocks.push_back(cur);
        }

        // For every word, the best (max-volume) admissible codeword over the
        // candidate blocks -- found by walking each block's subcodebook above
        // the state instead of encoding every word separately.
        std::vector<std::int64_t> b(n);
        for (const auto& d : blocks) {
            const auto m = ctx.hasher.vector_for(d, lattice);
            // Depth-first over the block's subcodebook, restricted per axis
            // to x_i >= max(block floor, state).
            std::vector<I128> partial(n + 1, 0);
            std::vector<I128> bcur(n), bend(n);
            std::vector<std::int64_t> rank(n + 1, 0);
            std::vector<U128> vol(n + 1);
            vol[0] = 1;
            int level = 0;
            bool entering = true;
            while (level >= 0) {
                if (entering) {
                    // compute the partial sum and b-range once per entry
                    entering = false;
                    I128 p = 0;
                    for (int j = 0; j < level; ++j) p += I128(sc.gs(level, j)) * b[j];
                    partial[level] = p;
                    const std::int64_t gii = sc.gs(level, level);
                    const I128 lo_x = std::max<I128>(I128(sc.LM) * d.d[level], x_floor[level]);
                    const I128 hi_x = std::min<I128>(I128(sc.LM) * (d.d[level] + 1), cube_end);
                    if (lo_x >= hi_x) {
                        --level;
                        continue;
                    }
                    bcur[level] = detail::ceil_div(lo_x - p, gii);
                    bend[level] = detail::ceil_div(hi_x - p, gii);
                }
                if (bcur[level] >= bend[level]) {
                    --level;
                    continue;
                }
                const I128 bi = bcur[level]++;
                b[level] = static_cast<std::int64_t>(bi);
                const std::int64_t gii = sc.gs(level, level);
                const std::int64_t xi =
                    static_cast<std::int64_t>(partial[level] + I128(gii) * bi);
                const std::int64_t ui = detail::mod_radix(
                    detail::mod_radix(b[level], lattice.radices[level]) - m[level],
                    lattice.radices[level]);
                rank[level + 1] = rank[level] + ui * stride[level];
                vol[level + 1] = vol[level] * sc.volume_factor(xi);
                if (level + 1 == n) {
                    auto idx = static_cast<std::size_t>(rank[n]);
                    if (!seen[idx] || vol[n] > best_vol[idx]) {
                        seen[idx] = 1;
                        best_vol[idx] = vol[n];
                    }
                } else {
                    ++level;
                    entering = true;
                }
            }
        }

        // Rewriting means new information: the stored word is not an
        // adversarial move (its in-place rewrite consumes nothing and would
        // loop forever once it is the only writable word).
        std::int64_t stored_rank = -1;
        if (mem.write_count > 0) {
            const auto dec = decode(mem.cells, lattice, params, ctx.hasher);
            stored_rank = 0;
            for (int i = 0; i < n; ++i) stored_rank += dec.u.u[static_cast<std::size_t>(i)] * stride[static_cast<std::size_t>(i)];
        }

        // Adversary: minimal best volume, ties to the smallest word.
        std::int64_t worst = -1;
        for (std::int64_t w = 0; w < word_count; ++w) {
            if (!seen[static_cast<std::size_t>(w)] || w == stored_rank) continue;
            if (worst < 0 || best_vol[static_cast<std::size_t>(w)] <
                                 best_vol[static_cast<std::size_t>(worst)]) {
                worst = w;
            }
        }
        if (worst < 0) break;  // no new word is writable: memory full

        InfoWord u;
        u.u.resize(n);
        std::int64_t rest = worst;
        for (int i = 0; i < n; ++i) {
            u.u[i] = rest / stride[i];
            rest %= stride[i];
        }
        auto choice =
            select_rewrite(u, mem.cells, lattice, params, ctx.hasher, ctx.strategy);
        commit(mem, choice);
    }
    return mem.write_count;
}

std::vector<std::uint64_t> run_trials(const CodecContext& ctx, std::int64_t trials,
                                      std::uint64_t base_seed, int jobs) {
    if (trials <= 0) throw ConfigError("trial count must be positive");
    std::vector<std::uint64_t> writes(static_cast<std::size_t>(trials));
    jobs = std::max(1, jobs);

    std::atomic<std::int64_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const std::int64_t t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                writes[static_cast<std::size_t>(t)] =
                    run_lifetime_trial(ctx, base_seed + static_cast<std::uint64_t>(t)).writes;
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return writes;
}

TrialStats summarize_trials(const std::vector<std::uint64_t>& writes) {
    const auto t = static_cast<double>(writes.size());
    U128 sum = 0;
    U128 sum_sq = 0;
    for (auto w : writes) {
        sum += w;
        sum_sq += U128(w) * w;
    }
    TrialStats stats;
    stats.mean = static_cast<double>(sum) / t;
    if (writes.size() > 1) {
        const double var =
            (static_cast<double>(sum_sq) - static_cast<double>(sum) * stats.mean) / (t - 1.0);
        stats.ci95 = 1.96 * std::sqrt(std::max(var, 0.0) / t);
    }
    return stats;
}

std::vector<SweepRow> sweep(const SweepRequest& req) {
    if (req.trials <= 0) throw ConfigError("trial count must be positive");
    if (req.q_values.empty() || req.M_values.empty()) {
        throw ConfigError("sweep needs at least one q and one M");
    }
    std::vector<std::int64_t> qs = req.q_values;
    std::vector<std::int64_t> ms = req.M_values;
    std::sort(qs.begin(), qs.end());
    std::sort(ms.begin(), ms.end());

    const Rational det = req.generator.determinant();
    std::vector<SweepRow> rows;
    for (auto q : qs) {
        for (auto m : ms) {
            SweepRow row;
            row.q = q;
            row.M = m;
            row.trials = 0;
            row.seed = req.base_seed;
            row.strategy = std::string(strategy_name(req.strategy));

            if (q < 2) {
                row.note = "skipped: q < 2";
                rows.push_back(std::move(row));
                continue;
            }
            if (m <= 0) {
                row.note = "skipped: M < 1";
                rows.push_back(std::move(row));
                continue;
            }
            row.D = Rational(q - 1) / Rational(m);
            if (row.D < Rational(1)) {
                row.note = "skipped: D < 1";
                rows.push_back(std::move(row));
                continue;
            }
            CodeParams params = CodeParams::from_D(req.generator.dimension(), m, row.D);
            row.rate = rate_bits_per_cell(params, det);
            LatticeSpec spec = [&]() -> LatticeSpec {
                try {
                    return validate_lattice(req.generator, m);
                } catch (const NonIntegerRadix& e) {
                    row.note = std::string("skipped: ") + e.what();
                    return LatticeSpec{req.generator, 0, {}};
                }
            }();
            if (!row.note.empty()) {
                rows.push_back(std::move(row));
                continue;
            }

            CodecContext ctx{std::move(spec), std::move(params), req.hasher, req.strategy};
            const auto writes = run_trials(ctx, req.trials, req.base_seed, req.jobs);
            const auto stats = summarize_trials(writes);
            row.mean_writes = stats.mean;
            row.ci95 = stats.ci95;
            row.trials = req.trials;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionMismatch("mismatched series lengths");
    const auto count = xs.size();
    if (count < 2) throw InsufficientData("need at least two points for a line fit");
    double sx = 0;
    double sy = 0;
    for (std::size_t i = 0; i < count; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(count);
    const double my = sy / static_cast<double>(count);
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (std::size_t i = 0; i < count; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0) throw InsufficientData("all x values identical");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0) {
        fit.r_squared = 1.0;  // constant data, fitted exactly
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss_res += e * e;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

LinearFit linearity_check(std::int64_t M, const std::vector<Rational>& D_values,
                          const GeneratorMatrix& generator, std::int64_t trials,
                          std::uint64_t base_seed, const Hasher& hasher, SearchStrategy strategy,
                          int jobs) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& d : D_values) {
        LatticeSpec spec = validate_lattice(generator, M);
        CodeParams params = CodeParams::from_D(generator.dimension(), M, d);
        CodecContext ctx{std::move(spec), std::move(params), hasher, strategy};
        const auto writes = run_trials(ctx, trials, base_seed, jobs);
        xs.push_back(d.to_double());
        ys.push_back(summarize_trials(writes).mean);
    }
    return fit_line(xs, ys);
}

}  // namespace latrw
