#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latrw/codec.hpp"

namespace latrw {

// Analog cell vector with monotone-increase write semantics.
struct MemoryState {
    RationalVector cells;
    std::uint64_t write_count = 0;
};

struct CodecContext {
    LatticeSpec lattice;
    CodeParams params;
    Hasher hasher;
    SearchStrategy strategy = SearchStrategy::neighbors;
};

// All cells at zero (erased), no writes recorded.
MemoryState init_memory(const CodeParams& params);

// Writes u via select_rewrite; on success the state becomes the chosen
// codeword. Throws MemoryFull and leaves the state untouched when no
// admissible codeword exists.
RewriteChoice write_word(MemoryState& mem, const InfoWord& u, const CodecContext& ctx);

struct TrialResult {
    std::uint64_t writes = 0;
    MemoryState final_state;
};

// Draws words uniformly over the mixed-radix word set and writes until the
// memory is full. Fully determined by (ctx.hasher.key, rng_seed). For a
// zero-information code (all radices 1) the single word is driven up the
// block diagonal instead, one forced advance per write after the first.
TrialResult run_lifetime_trial(const CodecContext& ctx, std::uint64_t rng_seed);

// Greedy adversary: each step writes the word, different from the one
// currently stored, whose best rewrite leaves the least remaining volume
// (ties to the lexicographically smallest word); it stops when no new word
// fits. Lower-bound probe for the guaranteed write count. Throws TooLarge
// when the word set exceeds `word_cap` or the walk exceeds `max_steps`.
std::uint64_t adversarial_min_writes(const CodecContext& ctx,
                                     std::uint64_t max_steps = 1'000'000,
                                     std::int64_t word_cap = kDefaultEnumerationCap);

struct SweepRow {
    std::int64_t q = 0;
    std::int64_t M = 0;
    Rational D = 0;
    double rate = 0.0;
    std::optional<double> mean_writes;
    std::optional<double> ci95;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string strategy;
    std::string note;  // empty, or the reason the pair was skipped
};

struct SweepRequest {
    std::vector<std::int64_t> q_values;
    std::vector<std::int64_t> M_values;
    GeneratorMatrix generator;
    std::int64_t trials = 1000;
    std::uint64_t base_seed = 1;
    Hasher hasher;
    SearchStrategy strategy = SearchStrategy::neighbors;
    int jobs = 1;
};

// One row per (q, M) pair, sorted by (q, rate). Trial t always runs with
// seed base_seed + t, so results are byte-identical for any job count.
// Infeasible pairs get a note instead of statistics.
std::vector<SweepRow> sweep(const SweepRequest& req);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least squares fit; throws InsufficientData for fewer than two points.
LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Mean lifetime against D at fixed M, fitted linearly.
LinearFit linearity_check(std::int64_t M, const std::vector<Rational>& D_values,
                          const GeneratorMatrix& generator, std::int64_t trials,
                          std::uint64_t base_seed, const Hasher& hasher,
                          SearchStrategy strategy = SearchStrategy::neighbors, int jobs = 1);

// Mean and half-width of the normal-approximation 95% interval.
struct TrialStats {
    double mean = 0.0;
    double ci95 = 0.0;
};

TrialStats summarize_trials(const std::vector<std::uint64_t>& writes);

// Runs `trials` lifetime trials (seeds base_seed + t) on `jobs` threads;
// the result is independent of the job count.
std::vector<std::uint64_t> run_trials(const CodecContext& ctx, std::int64_t trials,
                                      std::uint64_t base_seed, int jobs);

}  // namespace latrw
