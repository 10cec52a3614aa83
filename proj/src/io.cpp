#include "latrw/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "latrw/errors.hpp"

namespace latrw {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string general6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Rational rational_from_json(const nlohmann::json& v, const char* where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw ConfigError(std::string(where) + ": generator entries must be integers or \"p/q\" strings");
}

}  // namespace

std::string csv_rational(const Rational& r) { return r.to_decimal_string(); }

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "q,M,D,rate_bits_per_cell,mean_writes,ci95,trials,seed,strategy,note\n";
    for (const auto& row : rows) {
        os << row.q << ',' << row.M << ',' << csv_rational(row.D) << ','
           << general6(row.rate) << ',';
        if (row.mean_writes) os << fixed6(*row.mean_writes);
        os << ',';
        if (row.ci95) os << fixed6(*row.ci95);
        os << ',' << row.trials << ',' << row.seed << ',' << row.strategy << ',' << row.note
           << '\n';
    }
}

void write_codebook_csv(std::ostream& os, const LatticeSpec& lattice, const CodeParams& params,
                        const Hasher& hasher, std::int64_t cap) {
    const int n = params.n;
    const auto codebook = enumerate_codebook(lattice, params, cap);

    auto columns = [&](const char* prefix) {
        std::string h;
        for (int i = 0; i < n; ++i) {
            h += ',';
            h += prefix;
            h += std::to_string(i + 1);
        }
        return h;
    };
    os << columns("x").substr(1) << columns("b") << columns("d") << columns("a") << columns("u")
       << '\n';

    for (const auto& cw : codebook) {
        const DecodeResult dec = decode(cw.x, lattice, params, hasher);
        std::string line;
        for (int i = 0; i < n; ++i) {
            if (i) line += ',';
            line += cw.x[i].to_string();
        }
        for (auto v : cw.b) line += ',' + std::to_string(v);
        for (auto v : dec.d.d) line += ',' + std::to_string(v);
        for (auto v : dec.a.a) line += ',' + std::to_string(v);
        for (auto v : dec.u.u) line += ',' + std::to_string(v);
        os << line << '\n';
    }
}

LatticeFile parse_lattice_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("lattice file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("M") || !j.contains("generator")) {
        throw ConfigError("lattice file needs fields n, M, generator");
    }
    const int n = j.at("n").get<int>();
    const auto& gen = j.at("generator");
    if (!gen.is_array() || static_cast<int>(gen.size()) != n) {
        throw ConfigError("generator must be an n-row array");
    }
    std::vector<std::vector<Rational>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (const auto& jrow : gen) {
        if (!jrow.is_array() || static_cast<int>(jrow.size()) != n) {
            throw ConfigError("generator rows must each have n entries");
        }
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(n));
        for (const auto& v : jrow) row.push_back(rational_from_json(v, "generator"));
        rows.push_back(std::move(row));
    }
    LatticeFile file{GeneratorMatrix::from_rows(std::move(rows)), j.at("M").get<std::int64_t>()};
    return file;
}

LatticeFile load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lattice file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_lattice_json(ss.str());
}

}  // namespace latrw
