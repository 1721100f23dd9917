#include "lsl/scalar_matrix.hpp"

#include <algorithm>

namespace lsl {

ScalarMatrix ScalarMatrix::identity(const Field& f, std::size_t n) {
    ScalarMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

bool ScalarMatrix::operator==(const ScalarMatrix& o) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("SpecMismatch", "matrix shape mismatch");
    ScalarMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("SpecMismatch", "matrix shape mismatch");
    ScalarMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (cols_ != o.rows_) throw Error("SpecMismatch", "matrix shape mismatch in product");
    ScalarMatrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
        }
    return r;
}

ScalarMatrix ScalarMatrix::transpose() const {
    ScalarMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Scalar> ScalarMatrix::row(std::size_t r) const {
    return std::vector<Scalar>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

void ScalarMatrix::set_row(std::size_t r, const std::vector<Scalar>& v) {
    if (v.size() != cols_) throw Error("SpecMismatch", "row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + r * cols_);
}

ScalarMatrix ScalarMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    ScalarMatrix r(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(i, cols[j]);
    return r;
}

ScalarMatrix ScalarMatrix::vstack(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ == 0) return b;
    if (b.rows_ == 0) return a;
    if (a.cols_ != b.cols_ || !(a.field_ == b.field_))
        throw Error("SpecMismatch", "vstack shape mismatch");
    ScalarMatrix r(a.field_, a.rows_ + b.rows_, a.cols_);
    r.a_ = a.a_;
    r.a_.insert(r.a_.end(), b.a_.begin(), b.a_.end());
    return r;
}

ScalarMatrix ScalarMatrix::from_rows(const Field& f, std::size_t cols,
                                     const std::vector<std::vector<Scalar>>& rows) {
    ScalarMatrix r(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) r.set_row(i, rows[i]);
    return r;
}

std::vector<std::size_t> ScalarMatrix::rref() {
    if (field_.kind == FieldKind::Fp && field_.p == 2 && rows_ > 16) return rref_f2();
    return rref_generic();
}

std::vector<std::size_t> ScalarMatrix::rref_generic() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && at(p, c).is_zero()) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(p, j));
        Scalar inv = at(r, c).inv();
        for (std::size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c).is_zero()) continue;
            Scalar f = at(i, c);
            for (std::size_t j = c; j < cols_; ++j) at(i, j) = at(i, j) - f * at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::size_t> ScalarMatrix::rref_f2() {
    const std::size_t words = (cols_ + 63) / 64;
    std::vector<std::uint64_t> bits(rows_ * words, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j).residue()) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t p = r;
        while (p < rows_ && !(bits[p * words + w] & mask)) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t k = 0; k < words; ++k) std::swap(bits[r * words + k], bits[p * words + k]);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || !(bits[i * words + w] & mask)) continue;
            for (std::size_t k = w; k < words; ++k) bits[i * words + k] ^= bits[r * words + k];
        }
        pivots.push_back(c);
        ++r;
    }
    const Scalar z = Scalar::zero(field_), o = Scalar::one(field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            at(i, j) = (bits[i * words + j / 64] >> (j % 64)) & 1 ? o : z;
    return pivots;
}

std::size_t rank(ScalarMatrix m) { return m.rref().size(); }

ScalarMatrix row_basis(ScalarMatrix m) {
    auto pivots = m.rref();
    ScalarMatrix r(m.field(), pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) r.set_row(i, m.row(i));
    return r;
}

ScalarMatrix kernel_basis(const ScalarMatrix& m) {
    ScalarMatrix r = m;
    auto pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> vecs;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
        v[c] = Scalar::one(m.field());
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, c);
        vecs.push_back(std::move(v));
    }
    return row_basis(ScalarMatrix::from_rows(m.field(), m.cols(), vecs));
}

bool subspace_equal(const ScalarMatrix& a, const ScalarMatrix& b) { return a == b; }

bool in_row_space(const ScalarMatrix& basis, const std::vector<Scalar>& v) {
    // reduce v against the RREF basis
    std::vector<Scalar> w = v;
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        std::size_t pc = 0;
        while (pc < basis.cols() && basis.at(i, pc).is_zero()) ++pc;
        if (pc == basis.cols()) continue;
        if (w[pc].is_zero()) continue;
        Scalar f = w[pc];
        for (std::size_t j = pc; j < basis.cols(); ++j) w[j] = w[j] - f * basis.at(i, j);
    }
    for (const auto& s : w)
        if (!s.is_zero()) return false;
    return true;
}

bool subspace_contains(const ScalarMatrix& outer, const ScalarMatrix& inner) {
    for (std::size_t i = 0; i < inner.rows(); ++i)
        if (!in_row_space(outer, inner.row(i))) return false;
    return true;
}

ScalarMatrix subspace_sum(const ScalarMatrix& a, const ScalarMatrix& b) {
    return row_basis(ScalarMatrix::vstack(a, b));
}

ScalarMatrix subspace_intersect(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows() == 0) return a;
    if (b.rows() == 0) return b;
    // x = c . a with (annihilator of b) x = 0
    ScalarMatrix ann = annihilator(b);              // rows: functionals vanishing on b
    ScalarMatrix sys = ann * a.transpose();         // constraints on coefficients c
    ScalarMatrix coeffs = kernel_basis(sys);
    return row_basis(coeffs * a);
}

ScalarMatrix image_of_subspace(const ScalarMatrix& map, const ScalarMatrix& basis) {
    return row_basis(basis * map.transpose());
}

ScalarMatrix preimage_of_subspace(const ScalarMatrix& map, const ScalarMatrix& basis) {
    if (basis.rows() == basis.cols()) {
        // full space: preimage is everything
        return row_basis(ScalarMatrix::identity(map.field(), map.cols()));
    }
    return kernel_basis(annihilator(basis) * map);
}

std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b) {
    if (b.size() != a.rows()) throw Error("SpecMismatch", "rhs length mismatch");
    ScalarMatrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Scalar> x(a.cols(), Scalar::zero(a.field()));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

std::optional<std::vector<Scalar>> lex_min_solve(const ScalarMatrix& a, const std::vector<Scalar>& b) {
    auto base = solve(a, b);
    if (!base) return std::nullopt;
    if (a.field().kind == FieldKind::Rational) return base;  // documented canonical choice

    // greedy per-coordinate minimization: pin x_j to the least residue that
    // keeps the system solvable
    ScalarMatrix sys = a;
    std::vector<Scalar> rhs = b;
    const std::size_t n = a.cols();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::int64_t v = 0; v < a.field().p; ++v) {
            ScalarMatrix pinned(a.field(), sys.rows() + 1, n);
            std::vector<Scalar> prhs = rhs;
            for (std::size_t i = 0; i < sys.rows(); ++i) pinned.set_row(i, sys.row(i));
            std::vector<Scalar> pin(n, Scalar::zero(a.field()));
            pin[j] = Scalar::one(a.field());
            pinned.set_row(sys.rows(), pin);
            prhs.push_back(Scalar::from_int(a.field(), v));
            if (solve(pinned, prhs)) {
                sys = std::move(pinned);
                rhs = std::move(prhs);
                break;
            }
        }
    }
    return solve(sys, rhs);
}

bool RowSpanAccumulator::add(std::vector<Scalar> v) {
    if (v.size() != cols_) throw Error("SpecMismatch", "vector length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v[pivots_[i]].is_zero()) continue;
        Scalar f = v[pivots_[i]];
        for (std::size_t j = pivots_[i]; j < cols_; ++j) v[j] = v[j] - f * rows_[i][j];
    }
    std::size_t pc = 0;
    while (pc < cols_ && v[pc].is_zero()) ++pc;
    if (pc == cols_) return false;
    Scalar inv = v[pc].inv();
    for (std::size_t j = pc; j < cols_; ++j) v[j] = v[j] * inv;
    // eliminate the new pivot from existing rows, keep rows sorted by pivot
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][pc].is_zero()) continue;
        Scalar f = rows_[i][pc];
        for (std::size_t j = pc; j < cols_; ++j) rows_[i][j] = rows_[i][j] - f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pc);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

ScalarMatrix RowSpanAccumulator::basis() const {
    return ScalarMatrix::from_rows(field_, cols_, rows_);
}

}  // namespace lsl
