#include "latrw/lattice.hpp"

#include <cmath>
#include <utility>

#include "latrw/errors.hpp"

namespace latrw {

GeneratorMatrix GeneratorMatrix::from_rows(std::vector<std::vector<Rational>> rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw DimensionMismatch("generator must have positive dimension");
    std::vector<Rational> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) {
            throw DimensionMismatch("generator row " + std::to_string(i + 1) + " has wrong length");
        }
        for (int j = 0; j < n; ++j) {
            if (j > i && !rows[i][j].is_zero()) {
                throw NotLowerTriangular("nonzero entry above the diagonal at row " +
                                         std::to_string(i + 1) + ", column " + std::to_string(j + 1));
            }
            if (j == i && !rows[i][j].is_positive()) {
                throw NonPositiveDiagonal("diagonal entry " + std::to_string(i + 1) +
                                          " must be positive, got " + rows[i][j].to_string());
            }
            entries.push_back(std::move(rows[i][j]));
        }
    }
    return GeneratorMatrix(n, std::move(entries));
}

Rational GeneratorMatrix::determinant() const {
    Rational det = 1;
    for (int i = 0; i < n_; ++i) det *= at(i, i);
    return det;
}

double GeneratorMatrix::scale_factor() const {
    return std::pow(determinant().to_double(), -1.0 / n_);
}

RationalVector GeneratorMatrix::lattice_point(std::span<const std::int64_t> b) const {
    if (static_cast<int>(b.size()) != n_) {
        throw DimensionMismatch("coefficient vector has length " + std::to_string(b.size()) +
                                ", expected " + std::to_string(n_));
    }
    RationalVector x(n_);
    for (int i = 0; i < n_; ++i) {
        Rational acc = 0;
        for (int j = 0; j <= i; ++j) acc += at(i, j) * Rational(b[j]);
        x[i] = std::move(acc);
    }
    return x;
}

std::vector<std::int64_t> GeneratorMatrix::solve_triangular(const RationalVector& x) const {
    if (static_cast<int>(x.size()) != n_) {
        throw DimensionMismatch("point has length " + std::to_string(x.size()) + ", expected " +
                                std::to_string(n_));
    }
    std::vector<std::int64_t> b(n_);
    for (int i = 0; i < n_; ++i) {
        Rational rest = x[i];
        for (int j = 0; j < i; ++j) rest -= at(i, j) * Rational(b[j]);
        Rational bi = rest / at(i, i);
        if (!bi.is_integer()) {
            throw NotALatticePoint("coordinate " + std::to_string(i + 1) +
                                   " does not resolve to an integer coefficient (" +
                                   bi.to_string() + ")");
        }
        b[i] = checked_int64(bi.num());
    }
    return b;
}

GeneratorMatrix e8_generator() {
    const Rational h(1, 2);
    std::vector<std::vector<Rational>> rows = {
        {h, 0, 0, 0, 0, 0, 0, 0},
        {h, 1, 0, 0, 0, 0, 0, 0},
        {h, -1, 1, 0, 0, 0, 0, 0},
        {h, 0, -1, 1, 0, 0, 0, 0},
        {h, 0, 0, -1, 1, 0, 0, 0},
        {h, 0, 0, 0, -1, 1, 0, 0},
        {h, 0, 0, 0, 0, -1, 1, 0},
        {h, 0, 0, 0, 0, 0, -1, 2},
    };
    return GeneratorMatrix::from_rows(std::move(rows));
}

GeneratorMatrix rectangular_generator(int n) {
    if (n <= 0) throw DimensionMismatch("rectangular generator needs positive dimension");
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
    return GeneratorMatrix::from_rows(std::move(rows));
}

LatticeSpec validate_lattice(GeneratorMatrix generator, std::int64_t M) {
    if (M <= 0) throw RangeViolation("M must be positive");
    const int n = generator.dimension();
    std::vector<std::int64_t> radices(n);
    for (int i = 0; i < n; ++i) {
        Rational r = Rational(M) / generator.at(i, i);
        if (!r.is_integer() || !r.is_positive()) {
            throw NonIntegerRadix(i, "M / g_" + std::to_string(i + 1) + std::to_string(i + 1) +
                                         " = " + r.to_string() + " is not a positive integer");
        }
        radices[i] = checked_int64(r.num());
    }
    // Consistency: prod r_i must equal M^n / det G whenever det G divides M^n.
    Rational prod = 1;
    for (auto r : radices) prod *= Rational(r);
    Rational mn = 1;
    for (int i = 0; i < n; ++i) mn *= Rational(M);
    if (prod * generator.determinant() != mn) {
        throw RangeViolation("radix product inconsistent with M^n / det G");
    }
    return LatticeSpec{std::move(generator), M, std::move(radices)};
}

}  // namespace latrw
