#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsl/field.hpp"

namespace lsl {

enum class GroupKind { FreeAbelian, Free, CyclicProduct };

// Finitely generated groups with decidable normal forms:
//   FreeAbelian  Z^d          exponent vectors, lex order
//   Free         F_k          reduced words over signed generators, shortlex order
//   CyclicProduct Z/n1 x ... x Z/nk   residue vectors, lex order
struct GroupSpec {
    GroupKind kind = GroupKind::FreeAbelian;
    int rank = 0;                       // FreeAbelian: d, Free: generator count
    std::vector<std::int64_t> orders;   // CyclicProduct only, each >= 2

    static GroupSpec free_abelian(int d);
    static GroupSpec free_group(int k);
    static GroupSpec cyclic_product(std::vector<std::int64_t> orders);

    bool operator==(const GroupSpec&) const = default;
    bool is_finite() const { return kind == GroupKind::CyclicProduct; }
    std::int64_t finite_size() const;   // CyclicProduct only
    std::string to_string() const;
};

// Normal-form element; interpretation depends on the GroupSpec it belongs to.
// FreeAbelian/CyclicProduct: component vector. Free: reduced word, letter
// +i = generator i, -i = its inverse (i = 1..rank).
struct GroupElement {
    std::vector<std::int64_t> data;
    bool operator==(const GroupElement&) const = default;
};

GroupElement identity(const GroupSpec& spec);
GroupElement group_mul(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupSpec& spec, const GroupElement& a);
void validate_element(const GroupSpec& spec, const GroupElement& a);  // NonCanonical/SpecMismatch
bool canonical_less(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
std::string element_to_string(const GroupSpec& spec, const GroupElement& a);

// Finite subset in canonical sorted order without duplicates.
struct FiniteSubset {
    GroupSpec spec;
    std::vector<GroupElement> elems;

    static FiniteSubset of(const GroupSpec& spec, std::vector<GroupElement> elems);
    static FiniteSubset singleton_identity(const GroupSpec& spec);

    std::size_t size() const { return elems.size(); }
    bool contains(const GroupElement& g) const;
    // position in canonical order; throws if absent
    std::size_t index_of(const GroupElement& g) const;
    bool operator==(const FiniteSubset&) const = default;
};

FiniteSubset set_product(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_power(const FiniteSubset& e, int n);  // n >= 0; e^0 = {1}
FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_inverse(const FiniteSubset& a);
FiniteSubset left_translate(const GroupElement& g, const FiniteSubset& e);
// (S u S^-1 u {1})^n
FiniteSubset ball(const GroupSpec& spec, const FiniteSubset& gens, int n);
FiniteSubset standard_generators(const GroupSpec& spec);

// Finite-index sublattice H <= Z^d given by generators, held as a row-style
// Hermite normal form. Representatives are the mixed-radix box below the
// diagonal; decompose(g) = (h, t) with g = h + t, h in H, t a representative.
struct CosetData {
    GroupSpec spec;                                   // ambient Z^d
    std::vector<std::vector<std::int64_t>> hnf;       // d x d, upper triangular, diag > 0
    std::vector<GroupElement> reps;                   // canonical order
    std::int64_t index = 0;

    GroupElement reduce(const GroupElement& g) const;                       // the representative
    std::pair<GroupElement, GroupElement> decompose(const GroupElement& g) const;
    // coordinates of h in the HNF basis; nullopt if g is not in H
    std::optional<std::vector<std::int64_t>> subgroup_coords(const GroupElement& g) const;
    std::size_t rep_index(const GroupElement& g) const;  // index of reduce(g) in reps
};

// throws UnsupportedGroup (non-FreeAbelian), InfiniteIndex (rank-deficient)
CosetData coset_data(const GroupSpec& spec, const std::vector<GroupElement>& generators);

}  // namespace lsl
