#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lsl/field.hpp"
#include "lsl/group.hpp"

namespace lsl {

// Element of K[G]: finitely supported K-valued function on G, held as a
// canonically sorted term list with no zero coefficients. Product is the
// convolution (a.b)(m) = sum over k h = m of a(k) b(h).
struct GroupRingElement {
    Field field;
    GroupSpec spec;
    std::vector<std::pair<GroupElement, Scalar>> terms;

    static GroupRingElement zero(const Field& f, const GroupSpec& s);
    static GroupRingElement delta(const Field& f, const GroupSpec& s, const GroupElement& g);
    static GroupRingElement from_terms(const Field& f, const GroupSpec& s,
                                       std::vector<std::pair<GroupElement, Scalar>> terms);

    bool is_zero() const { return terms.empty(); }
    Scalar coefficient(const GroupElement& g) const;
    FiniteSubset support() const;
    bool operator==(const GroupRingElement& o) const;
    std::string to_string() const;
};

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_neg(const GroupRingElement& a);
GroupRingElement gr_scalar_mul(const Scalar& c, const GroupRingElement& a);
GroupRingElement gr_convolve(const GroupRingElement& a, const GroupRingElement& b);
// a*(g) = a(g^-1); anti-automorphism: (ab)* = b* a*
GroupRingElement gr_involution(const GroupRingElement& a);

// Square matrix over K[G]; the matrix form of a linear cellular automaton.
struct GrMatrix {
    Field field;
    GroupSpec spec;
    int dim = 0;
    std::vector<GroupRingElement> entries;  // dim x dim, row-major

    static GrMatrix zero(const Field& f, const GroupSpec& s, int dim);
    static GrMatrix identity(const Field& f, const GroupSpec& s, int dim);

    GroupRingElement& at(int i, int j) { return entries[i * dim + j]; }
    const GroupRingElement& at(int i, int j) const { return entries[i * dim + j]; }

    bool is_zero() const;
    bool operator==(const GrMatrix& o) const;

    // union of entry supports, closed up to contain the identity
    FiniteSubset support_with_identity() const;
};

GrMatrix mat_add(const GrMatrix& a, const GrMatrix& b);
GrMatrix mat_mul(const GrMatrix& a, const GrMatrix& b);
GrMatrix mat_scalar_mul(const GroupRingElement& c, const GrMatrix& a);
GrMatrix mat_pow(const GrMatrix& a, int n);
// (A~)_ij = (A_ji)*; satisfies (AB)~ = B~ A~
GrMatrix transpose_involute(const GrMatrix& a);

}  // namespace lsl
