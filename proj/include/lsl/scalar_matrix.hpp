#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lsl/field.hpp"

namespace lsl {

// Dense matrix over an exact field. Everything downstream (window subspaces,
// admissibility systems, regular representations) reduces to this.
class ScalarMatrix {
  public:
    ScalarMatrix() : field_(Field::rationals()), rows_(0), cols_(0) {}
    ScalarMatrix(const Field& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

    static ScalarMatrix identity(const Field& f, std::size_t n);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const ScalarMatrix& o) const;
    bool is_zero() const;

    ScalarMatrix operator+(const ScalarMatrix& o) const;
    ScalarMatrix operator-(const ScalarMatrix& o) const;
    ScalarMatrix operator*(const ScalarMatrix& o) const;
    ScalarMatrix transpose() const;

    std::vector<Scalar> row(std::size_t r) const;
    void set_row(std::size_t r, const std::vector<Scalar>& v);
    ScalarMatrix select_columns(const std::vector<std::size_t>& cols) const;
    static ScalarMatrix vstack(const ScalarMatrix& a, const ScalarMatrix& b);
    static ScalarMatrix from_rows(const Field& f, std::size_t cols,
                                  const std::vector<std::vector<Scalar>>& rows);

    // In-place reduced row echelon form; returns pivot column indices.
    std::vector<std::size_t> rref();

  private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;

    std::vector<std::size_t> rref_f2();        // bit-packed XOR elimination
    std::vector<std::size_t> rref_generic();
};

std::size_t rank(ScalarMatrix m);

// RREF with zero rows dropped: the canonical basis of the row space.
// Subspaces are compared syntactically on this form.
ScalarMatrix row_basis(ScalarMatrix m);

// Canonical (RREF'd) basis of {x : m x = 0}.
ScalarMatrix kernel_basis(const ScalarMatrix& m);

// Annihilator of the row space of `basis` in the dual: functionals f with
// basis . f = 0; identical to kernel_basis(basis).
inline ScalarMatrix annihilator(const ScalarMatrix& basis) { return kernel_basis(basis); }

bool subspace_equal(const ScalarMatrix& a_rref, const ScalarMatrix& b_rref);
bool in_row_space(const ScalarMatrix& basis_rref, const std::vector<Scalar>& v);
bool subspace_contains(const ScalarMatrix& outer_rref, const ScalarMatrix& inner_rref);
ScalarMatrix subspace_sum(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix subspace_intersect(const ScalarMatrix& a, const ScalarMatrix& b);

// Row basis of {T x : x in row space of basis}; map acts on column vectors.
ScalarMatrix image_of_subspace(const ScalarMatrix& map, const ScalarMatrix& basis);
// Row basis of {x : T x in row space of basis}.
ScalarMatrix preimage_of_subspace(const ScalarMatrix& map, const ScalarMatrix& basis);

// One solution of A x = b (free variables set to zero), or nullopt.
std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b);

// Deterministic canonical solution of A x = b: over Fp the true lexicographic
// minimum under 0 < 1 < ... < p-1 coordinate by coordinate; over Q (where a
// lex minimum need not exist) the free-variables-zero solution.
std::optional<std::vector<Scalar>> lex_min_solve(const ScalarMatrix& a, const std::vector<Scalar>& b);

// Incremental row-space builder: feeds vectors one at a time, keeps an RREF.
class RowSpanAccumulator {
  public:
    RowSpanAccumulator(const Field& f, std::size_t cols) : field_(f), cols_(cols) {}
    // true if the vector enlarged the span
    bool add(std::vector<Scalar> v);
    std::size_t dim() const { return rows_.size(); }
    bool saturated() const { return rows_.size() == cols_; }
    ScalarMatrix basis() const;  // canonical RREF

  private:
    Field field_;
    std::size_t cols_;
    std::vector<std::vector<Scalar>> rows_;   // kept in RREF, sorted by pivot
    std::vector<std::size_t> pivots_;
};

}  // namespace lsl
