#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "simerka/integer.hpp"

namespace simerka {

using Matrix = std::vector<std::vector<Int>>;

/// Rank of `rows` modulo the prime p (p < 2^63).
std::size_t rank_mod(const Matrix& rows, std::uint64_t p);

/// Indices of a maximal set of rows independent modulo p, in input order.
std::vector<std::size_t> independent_rows_mod(const Matrix& rows, std::uint64_t p);

/// Exact determinant of a square matrix by CRT over 62-bit primes up to the
/// Hadamard bound. Primes are processed in parallel.
Int modular_determinant(const Matrix& square);
Int modular_determinant_serial(const Matrix& square);

/// Upper triangular Hermite basis of the lattice spanned by `rows`, given a
/// nonzero multiple D of its index (so D Z^n lies in the lattice).
Matrix hermite_mod(const Matrix& rows, std::size_t columns, const Int& D);

/// Invariant factors (> 1, each dividing the next) of Z^n / L for the full
/// rank lattice L spanned by `basis`, with D Z^n contained in L.
std::vector<Int> smith_divisors(const Matrix& basis, const Int& D);

/// Relation lattice over a factor base of fixed dimension. Rows are added
/// incrementally; analysis runs lazily and is cached until the next add.
class RelationLattice {
public:
    explicit RelationLattice(std::size_t dimension);

    std::size_t dimension() const { return dim_; }
    std::size_t rows() const { return rows_.size(); }
    void add(const std::vector<std::int64_t>& row);

    bool full_rank() const;
    /// Index of the lattice in Z^n; throws rank_deficient when not full rank.
    const Int& determinant() const;
    const std::vector<Int>& elementary_divisors() const;
    /// Largest elementary divisor (1 for the trivial group).
    Int exponent() const;
    bool contains(const std::vector<std::int64_t>& v) const;

    /// Columns left after sparse elimination and the Hermite basis on them.
    const std::vector<std::size_t>& core_columns() const;
    const Matrix& core_hermite() const;

private:
    using SparseRow = std::map<std::size_t, Int>;
    struct Pivot {
        std::size_t column;
        SparseRow row; ///< entry at `column` is 1
    };

    void analyze() const;

    std::size_t dim_;
    std::vector<SparseRow> rows_;

    mutable bool analyzed_ = false;
    mutable bool full_rank_ = false;
    mutable Int det_;
    mutable std::vector<Int> divisors_;
    mutable std::vector<Pivot> pivots_;
    mutable std::vector<std::size_t> core_cols_;
    mutable Matrix core_h_;
};

} // namespace simerka
