#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latrw/rational.hpp"

namespace latrw {

// Lower-triangular lattice generator with positive diagonal. The lattice is
// the set {G*b : b integer vector}, with x_i = sum_{j<=i} g_ij * b_j.
class GeneratorMatrix {
  public:
    // Validates shape: square, g_ij = 0 above the diagonal, g_ii > 0.
    static GeneratorMatrix from_rows(std::vector<std::vector<Rational>> rows);

    int dimension() const { return n_; }
    const Rational& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }

    // Product of the diagonal; equals the Voronoi cell volume.
    Rational determinant() const;

    // Normalization constant alpha = det^(-1/n), so that alpha*G has unit
    // determinant. Reporting only; the codec never uses it.
    double scale_factor() const;

    RationalVector lattice_point(std::span<const std::int64_t> b) const;

    // Inverse of lattice_point by forward substitution. Throws
    // NotALatticePoint when x is not an exact lattice point.
    std::vector<std::int64_t> solve_triangular(const RationalVector& x) const;

  private:
    GeneratorMatrix(int n, std::vector<Rational> entries)
        : n_(n), entries_(std::move(entries)) {}

    int n_ = 0;
    std::vector<Rational> entries_;  // row-major
};

GeneratorMatrix e8_generator();
GeneratorMatrix rectangular_generator(int n);

// A generator paired with the block side M. radices[i] = M / g_ii is the
// per-coordinate information alphabet size.
struct LatticeSpec {
    GeneratorMatrix generator;
    std::int64_t M = 1;
    std::vector<std::int64_t> radices;

    int dimension() const { return generator.dimension(); }
};

// Checks that every M / g_ii is a positive integer and builds the radices.
LatticeSpec validate_lattice(GeneratorMatrix generator, std::int64_t M);

}  // namespace latrw
