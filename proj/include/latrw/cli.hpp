#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latrw/memsim.hpp"

namespace latrw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitMemoryFull = 3;
inline constexpr int kExitDecode = 4;
inline constexpr int kExitTooLarge = 5;

// Single source of truth for a run. Flags override file values; the whole
// struct round-trips losslessly through JSON.
struct RunConfig {
    std::string lattice = "e8";  // builtin name ("e8", "rect:N") or file path
    std::vector<std::int64_t> M_values;
    std::vector<std::int64_t> q_values;
    std::optional<std::string> D;  // exact rational text; alternative to q
    std::uint64_t key = 0;
    std::uint64_t seed = 1;
    std::int64_t trials = 1000;
    std::string strategy = "neighbors";
    bool hash_off = false;
    std::string out;
    int jobs = 1;

    bool operator==(const RunConfig&) const = default;
};

std::string config_to_json_text(const RunConfig& cfg);
RunConfig config_from_json_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

struct ResolvedCode {
    LatticeSpec lattice;
    CodeParams params;
    Hasher hasher;
    SearchStrategy strategy;
};

// Builds the code from the config for the single-parameter commands
// (info/encode/decode/dump/adversary). Requires one M and exactly one of
// q or D.
ResolvedCode resolve_code(const RunConfig& cfg);

int cmd_info(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_encode(const RunConfig& cfg, const std::string& u_text, const std::string& s_text,
               std::ostream& out, std::ostream& err);
int cmd_decode(const RunConfig& cfg, const std::string& x_text, std::ostream& out,
               std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dump(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_adversary(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace latrw::cli
