#pragma once

#include <optional>

#include "lsl/group_ring.hpp"
#include "lsl/scalar_matrix.hpp"

namespace lsl {

// Exact division in K[Z^d] (Laurent ring): monomial-normalize both sides,
// cancel leading terms under lex order. Throws InexactDivision if q does not
// divide p. Used by the fraction-free eliminations below.
GroupRingElement laurent_divexact(const GroupRingElement& p, const GroupRingElement& q);

// Determinant by cofactor expansion; fine at the dimensions this tool targets.
GroupRingElement laurent_det(const GrMatrix& a);

// Coefficients c_0..c_{dim-1} of det(lambda I - A) = lambda^dim
// + c_{dim-1} lambda^{dim-1} + ... + c_0, entries in K[Z^d]. Uses
// Faddeev-LeVerrier (divisions by 1..dim) when the characteristic is 0 or
// > dim, cofactor expansion over K[Z^d][lambda] otherwise.
std::vector<GroupRingElement> char_poly(const GrMatrix& a);

// All elements of a finite (cyclic product) group in canonical order.
FiniteSubset enumerate_group(const GroupSpec& spec);

// Left-multiplication operator on K[G] (finite G) in the delta basis,
// so that rr(a) rr(b) = rr(ab). Matrix version acts blockwise on K[G]^dim.
ScalarMatrix regular_representation(const GroupRingElement& a);
ScalarMatrix regular_representation(const GrMatrix& a);

struct FractionRankResult {
    int rank = 0;
    std::vector<std::size_t> pivot_rows;  // indices into the original matrix
    std::vector<std::size_t> pivot_cols;
};

// Rank over the fraction field of K[Z^d], computed by Bareiss fraction-free
// elimination; pivots chosen deterministically (lowest entry in canonical
// term order). No rational functions are ever materialized.
FractionRankResult fraction_rank_detail(const GrMatrix& a);
int fraction_rank(const GrMatrix& a);

// Nonzero v over K[Z^d] with A v = 0 when rank < dim (Cramer minors on the
// pivot submatrix), nullopt when A has full column rank.
std::optional<std::vector<GroupRingElement>> laurent_kernel_vector(const GrMatrix& a);

}  // namespace lsl
