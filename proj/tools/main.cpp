#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "latrw/cli.hpp"
#include "latrw/errors.hpp"

namespace {

using latrw::cli::RunConfig;

// Flags seen on the command line; only set values override the config file.
struct FlagOverlay {
    std::optional<std::string> lattice;
    std::optional<std::string> M_list;
    std::optional<std::string> q_list;
    std::optional<std::string> D;
    std::optional<std::uint64_t> key;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> strategy;
    bool hash_off = false;
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::string config_path;
};

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        const std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        std::size_t used = 0;
        out.push_back(std::stoll(piece, &used));
        if (used != piece.size()) {
            throw latrw::ConfigError("bad integer list element '" + piece + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

RunConfig build_config(const FlagOverlay& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = latrw::cli::load_config_file(f.config_path);
    if (f.lattice) cfg.lattice = *f.lattice;
    if (f.M_list) cfg.M_values = parse_list(*f.M_list);
    if (f.q_list) cfg.q_values = parse_list(*f.q_list);
    if (f.D) cfg.D = *f.D;
    if (f.key) cfg.key = *f.key;
    if (f.seed) cfg.seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.strategy) cfg.strategy = *f.strategy;
    if (f.hash_off) cfg.hash_off = true;
    if (f.out) cfg.out = *f.out;
    if (f.jobs) cfg.jobs = *f.jobs;
    return cfg;
}

void add_common_flags(CLI::App* cmd, FlagOverlay& f) {
    cmd->add_option("--lattice", f.lattice, "Builtin lattice (e8, rect:N) or definition file");
    cmd->add_option("--M", f.M_list, "Block side M (comma list for sweep)");
    cmd->add_option("--q", f.q_list, "Cell levels q, with q-1 = D*M (comma list for sweep)");
    cmd->add_option("--D", f.D, "Blocks per axis D as an exact rational (alternative to --q)");
    cmd->add_option("--key", f.key, "Hash key");
    cmd->add_option("--seed", f.seed, "Base RNG seed");
    cmd->add_option("--trials", f.trials, "Trials per parameter point");
    cmd->add_option("--strategy", f.strategy, "Rewrite search: neighbors|full");
    cmd->add_flag("--hash-off", f.hash_off, "Disable the block hash (m = 0 everywhere)");
    cmd->add_option("--out", f.out, "Output file (CSV or JSON, command dependent)");
    cmd->add_option("--jobs", f.jobs, "Worker threads for sweeps");
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values")
        ->envname("LATTICE_REWRITE_CONFIG");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice rewriting codes for monotone multilevel memories"};
    app.require_subcommand(1);

    FlagOverlay flags;
    std::string u_text;
    std::string s_text;
    std::string x_text;

    CLI::App* info = app.add_subcommand("info", "Code parameters, sizes and rate");
    add_common_flags(info, flags);

    CLI::App* encode = app.add_subcommand("encode", "Encode a word from a given memory state");
    add_common_flags(encode, flags);
    encode->add_option("--u", u_text, "Information word, comma separated")->required();
    encode->add_option("--s", s_text, "Current state, comma separated exact rationals (default 0)");

    CLI::App* decode = app.add_subcommand("decode", "Decode a stored point");
    add_common_flags(decode, flags);
    decode->add_option("--x", x_text, "Stored point, comma separated exact rationals")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo write-lifetime sweep over (q, M)");
    add_common_flags(sweep, flags);

    CLI::App* dump = app.add_subcommand("dump", "Dump the whole codebook as CSV");
    add_common_flags(dump, flags);

    CLI::App* adversary = app.add_subcommand("adversary", "Greedy worst-case write probe");
    add_common_flags(adversary, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return latrw::cli::kExitConfig;
    }

    try {
        const RunConfig cfg = build_config(flags);
        if (info->parsed()) return latrw::cli::cmd_info(cfg, std::cout, std::cerr);
        if (encode->parsed()) {
            return latrw::cli::cmd_encode(cfg, u_text, s_text, std::cout, std::cerr);
        }
        if (decode->parsed()) return latrw::cli::cmd_decode(cfg, x_text, std::cout, std::cerr);
        if (sweep->parsed()) return latrw::cli::cmd_sweep(cfg, std::cout, std::cerr);
        if (dump->parsed()) return latrw::cli::cmd_dump(cfg, std::cout, std::cerr);
        if (adversary->parsed()) return latrw::cli::cmd_adversary(cfg, std::cout, std::cerr);
    } catch (const latrw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return latrw::cli::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return latrw::cli::kExitConfig;
    }
    return latrw::cli::kExitConfig;
}
