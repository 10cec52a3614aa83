#include "latrw/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "latrw/errors.hpp"
#include "latrw/io.hpp"

namespace latrw::cli {

namespace {

using nlohmann::json;

// Exceptions -> exit codes. Decode lookups map the lattice/cube failures to
// the dedicated decode exit code; everywhere else they are config mistakes.
int guard(std::ostream& err, bool decode_context, const std::function<int()>& body) {
    try {
        return body();
    } catch (const MemoryFull& e) {
        err << "error: " << e.what() << '\n';
        return kExitMemoryFull;
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kExitTooLarge;
    } catch (const NotALatticePoint& e) {
        err << "error: " << e.what() << '\n';
        return decode_context ? kExitDecode : kExitConfig;
    } catch (const OutOfCube& e) {
        err << "error: " << e.what() << '\n';
        return decode_context ? kExitDecode : kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitFailure;
    }
}

GeneratorMatrix generator_from_selector(const std::string& selector,
                                        std::optional<std::int64_t>* file_m) {
    if (selector == "e8") return e8_generator();
    if (selector.rfind("rect:", 0) == 0) {
        const std::string dim = selector.substr(5);
        try {
            return rectangular_generator(std::stoi(dim));
        } catch (const std::exception&) {
            throw ConfigError("bad rectangular dimension in '" + selector + "'");
        }
    }
    if (selector == "rect") {
        throw ConfigError("rectangular lattice needs a dimension, e.g. --lattice rect:8");
    }
    LatticeFile file = load_lattice_file(selector);
    if (file_m != nullptr) *file_m = file.M;
    return std::move(file.generator);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        const std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        std::size_t used = 0;
        out.push_back(std::stoll(piece, &used));
        if (used != piece.size()) throw ConfigError("bad integer '" + piece + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    return f;
}

std::string human_block(const BlockIndex& d) { return format_block(d); }

}  // namespace

std::string config_to_json_text(const RunConfig& cfg) {
    json j;
    j["lattice"] = cfg.lattice;
    j["M"] = cfg.M_values;
    j["q"] = cfg.q_values;
    if (cfg.D) j["D"] = *cfg.D;
    j["key"] = cfg.key;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["strategy"] = cfg.strategy;
    j["hash_off"] = cfg.hash_off;
    j["out"] = cfg.out;
    j["jobs"] = cfg.jobs;
    return j.dump(2) + "\n";
}

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    for (const auto& [k, v] : j.items()) {
        if (k == "lattice") {
            cfg.lattice = v.get<std::string>();
        } else if (k == "M") {
            cfg.M_values = v.is_array() ? v.get<std::vector<std::int64_t>>()
                                        : std::vector<std::int64_t>{v.get<std::int64_t>()};
        } else if (k == "q") {
            cfg.q_values = v.is_array() ? v.get<std::vector<std::int64_t>>()
                                        : std::vector<std::int64_t>{v.get<std::int64_t>()};
        } else if (k == "D") {
            cfg.D = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::int64_t>());
        } else if (k == "key") {
            cfg.key = v.get<std::uint64_t>();
        } else if (k == "seed") {
            cfg.seed = v.get<std::uint64_t>();
        } else if (k == "trials") {
            cfg.trials = v.get<std::int64_t>();
        } else if (k == "strategy") {
            cfg.strategy = v.get<std::string>();
        } else if (k == "hash_off") {
            cfg.hash_off = v.get<bool>();
        } else if (k == "out") {
            cfg.out = v.get<std::string>();
        } else if (k == "jobs") {
            cfg.jobs = v.get<int>();
        } else {
            throw ConfigError("unknown config field '" + k + "'");
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

ResolvedCode resolve_code(const RunConfig& cfg) {
    std::optional<std::int64_t> file_m;
    GeneratorMatrix g = generator_from_selector(cfg.lattice, &file_m);

    std::optional<std::int64_t> m;
    if (cfg.M_values.size() == 1) {
        m = cfg.M_values.front();
    } else if (cfg.M_values.size() > 1) {
        throw ConfigError("this command takes a single M");
    } else if (file_m) {
        m = *file_m;
    }
    if (!m) throw ConfigError("M is required (flag, config, or lattice file)");

    const bool has_q = !cfg.q_values.empty();
    if (has_q && cfg.D) throw ConfigError("give exactly one of q or D, not both");
    if (!has_q && !cfg.D) throw ConfigError("give exactly one of q or D");
    if (has_q && cfg.q_values.size() != 1) throw ConfigError("this command takes a single q");

    CodeParams params = has_q
                            ? CodeParams::from_q(g.dimension(), *m, Rational(cfg.q_values.front()))
                            : CodeParams::from_D(g.dimension(), *m, Rational::parse(*cfg.D));
    LatticeSpec spec = validate_lattice(std::move(g), *m);
    return ResolvedCode{std::move(spec), std::move(params), Hasher{cfg.key, !cfg.hash_off},
                        parse_strategy(cfg.strategy)};
}

int cmd_info(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(err, false, [&]() {
        ResolvedCode code = resolve_code(cfg);
        const Rational det = code.lattice.generator.determinant();
        const auto sizes = codebook_size_formula(code.params, det);
        BigInt words = 1;
        for (auto r : code.lattice.radices) words *= r;

        std::string radices;
        for (std::size_t i = 0; i < code.lattice.radices.size(); ++i) {
            if (i) radices += ',';
            radices += std::to_string(code.lattice.radices[i]);
        }

        out << "lattice: " << cfg.lattice << '\n'
            << "n: " << code.params.n << '\n'
            << "M: " << code.params.M << '\n'
            << "D: " << code.params.D << '\n'
            << "q: " << code.params.q() << '\n'
            << "det: " << det << '\n'
            << "alpha: " << code.lattice.generator.scale_factor() << '\n'
            << "radices: " << radices << '\n'
            << "rate_bits_per_cell: " << rate_bits_per_cell(code.params, det) << '\n'
            << "codebook_full: " << sizes.full << '\n'
            << "codebook_block_max: " << sizes.per_block_max << '\n'
            << "words: " << words << '\n';

        if (!cfg.out.empty()) {
            json j;
            j["lattice"] = cfg.lattice;
            j["n"] = code.params.n;
            j["M"] = code.params.M;
            j["D"] = code.params.D.to_string();
            j["q"] = code.params.q().to_string();
            j["det"] = det.to_string();
            j["alpha"] = code.lattice.generator.scale_factor();
            j["radices"] = code.lattice.radices;
            j["rate_bits_per_cell"] = rate_bits_per_cell(code.params, det);
            j["codebook_full"] = sizes.full.to_string();
            j["codebook_block_max"] = sizes.per_block_max.to_string();
            j["words"] = words.str();
            auto f = open_out(cfg.out);
            f << j.dump(2) << '\n';
        }
        return kExitOk;
    });
}

int cmd_encode(const RunConfig& cfg, const std::string& u_text, const std::string& s_text,
               std::ostream& out, std::ostream& err) {
    return guard(err, false, [&]() {
        ResolvedCode code = resolve_code(cfg);
        InfoWord u;
        u.u = parse_int_list(u_text);
        RationalVector s(static_cast<std::size_t>(code.params.n), Rational(0));
        if (!s_text.empty()) s = parse_rational_vector(s_text);

        const RewriteChoice choice =
            select_rewrite(u, s, code.lattice, code.params, code.hasher, code.strategy);
        out << "block: " << human_block(choice.block) << '\n'
            << "x: " << format_rational_vector(choice.codeword.x) << '\n'
            << "remaining_volume: " << choice.remaining_volume << '\n';
        return kExitOk;
    });
}

int cmd_decode(const RunConfig& cfg, const std::string& x_text, std::ostream& out,
               std::ostream& err) {
    return guard(err, true, [&]() {
        ResolvedCode code = resolve_code(cfg);
        const RationalVector x = parse_rational_vector(x_text);
        const DecodeResult res = decode(x, code.lattice, code.params, code.hasher);
        std::string u;
        for (std::size_t i = 0; i < res.u.u.size(); ++i) {
            if (i) u += ',';
            u += std::to_string(res.u.u[i]);
        }
        out << "u: " << u << '\n' << "block: " << human_block(res.d) << '\n';
        return kExitOk;
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(err, false, [&]() {
        if (cfg.q_values.empty()) throw ConfigError("sweep needs --q (one or more values)");
        if (cfg.D) throw ConfigError("sweep takes q values, not D");
        if (cfg.M_values.empty()) throw ConfigError("sweep needs --M (one or more values)");

        SweepRequest req{cfg.q_values,
                         cfg.M_values,
                         generator_from_selector(cfg.lattice, nullptr),
                         cfg.trials,
                         cfg.seed,
                         Hasher{cfg.key, !cfg.hash_off},
                         parse_strategy(cfg.strategy),
                         cfg.jobs};
        const auto rows = sweep(req);

        if (cfg.out.empty()) {
            write_sweep_csv(out, rows);
        } else {
            auto f = open_out(cfg.out);
            write_sweep_csv(f, rows);
            // summary table
            for (const auto& row : rows) {
                out << "q=" << row.q << " M=" << row.M << " D=" << csv_rational(row.D);
                if (row.mean_writes) {
                    char buf[128];
                    std::snprintf(buf, sizeof(buf), " mean_writes=%.3f (ci95 %.3f, %lld trials)",
                                  *row.mean_writes, row.ci95.value_or(0.0),
                                  static_cast<long long>(row.trials));
                    out << buf;
                } else {
                    out << ' ' << row.note;
                }
                out << '\n';
            }
        }
        const bool any_ok = std::any_of(rows.begin(), rows.end(),
                                        [](const SweepRow& r) { return r.mean_writes.has_value(); });
        return any_ok ? kExitOk : kExitConfig;
    });
}

int cmd_dump(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(err, false, [&]() {
        ResolvedCode code = resolve_code(cfg);
        if (cfg.out.empty()) {
            write_codebook_csv(out, code.lattice, code.params, code.hasher);
        } else {
            auto f = open_out(cfg.out);
            write_codebook_csv(f, code.lattice, code.params, code.hasher);
        }
        return kExitOk;
    });
}

int cmd_adversary(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(err, false, [&]() {
        ResolvedCode code = resolve_code(cfg);
        CodecContext ctx{std::move(code.lattice), std::move(code.params), code.hasher,
                         code.strategy};
        out << "writes: " << adversarial_min_writes(ctx) << '\n';
        return kExitOk;
    });
}

}  // namespace latrw::cli
