#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latrw/memsim.hpp"

namespace latrw {

// Exact decimal when the expansion terminates, "p/q" otherwise.
std::string csv_rational(const Rational& r);

// Header: q,M,D,rate_bits_per_cell,mean_writes,ci95,trials,seed,strategy,note
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// One codeword per row: exact x coordinates, then b, d, a, u.
void write_codebook_csv(std::ostream& os, const LatticeSpec& lattice, const CodeParams& params,
                        const Hasher& hasher, std::int64_t cap = kDefaultEnumerationCap);

// Lattice definition file: {"n": int, "M": int, "generator": [["p/q", ...], ...]}.
struct LatticeFile {
    GeneratorMatrix generator;
    std::int64_t M = 0;
};

LatticeFile load_lattice_file(const std::string& path);
LatticeFile parse_lattice_json(const std::string& text);

}  // namespace latrw
