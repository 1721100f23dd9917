#pragma once

#include <optional>
#include <string>

#include "lsl/group_ring.hpp"
#include "lsl/matrix_kernels.hpp"
#include "lsl/scalar_matrix.hpp"

namespace lsl {

// Finitely supported configuration G -> K^dim (zero cells omitted, sorted).
struct FiniteConfig {
    Field field;
    GroupSpec spec;
    int dim = 0;
    std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells;

    static FiniteConfig zero(const Field& f, const GroupSpec& s, int dim);
    static FiniteConfig of(const Field& f, const GroupSpec& s, int dim,
                           std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells);
    std::vector<Scalar> value_at(const GroupElement& g) const;
    bool is_zero() const { return cells.empty(); }
    bool operator==(const FiniteConfig&) const = default;
};

// Values of a configuration on a finite window, flattened in canonical
// coordinate order: window elements in canonical order, dim coordinates each.
struct WindowData {
    FiniteSubset window;
    int dim = 0;
    std::vector<Scalar> values;

    static WindowData zero(const Field& f, FiniteSubset window, int dim);
    std::vector<Scalar> value_at(const GroupElement& g) const;
    bool operator==(const WindowData&) const = default;
};

// Linear cellular automaton tau(x)(g) = sum_h A(h) x(gh), h over the memory
// set, A(h) the dim x dim coefficient block of the matrix at h. The matrix
// form multiplies contravariantly: compose(s, t) has matrix s.matrix t.matrix.
struct LinearCA {
    Field field;
    GroupSpec spec;
    int dim = 0;
    GrMatrix matrix;
    FiniteSubset memory;  // union of entry supports plus the identity

    static LinearCA from_matrix(GrMatrix m);
    // blocks: memory element -> dim x dim scalar matrix; keys must lie in mem
    static LinearCA from_local_rule(const Field& f, const GroupSpec& s, int dim,
                                    const FiniteSubset& mem,
                                    const std::vector<std::pair<GroupElement, ScalarMatrix>>& blocks);
    ScalarMatrix block_at(const GroupElement& g) const;
    bool is_zero() const { return matrix.is_zero(); }
};

FiniteConfig apply_finite(const LinearCA& t, const FiniteConfig& x);

// Image data on target given source data y; needs target . memory inside
// y.window (throws WindowMismatch otherwise).
WindowData apply_window(const LinearCA& t, const WindowData& y, const FiniteSubset& target);

// Matrix of the window map A^E -> A^target, y |-> tau(y)|_target.
ScalarMatrix window_map_matrix(const LinearCA& t, const FiniteSubset& target, const FiniteSubset& e);

// One step on configurations periodic along the sublattice: data lives on the
// coset representatives.
WindowData apply_periodic(const LinearCA& t, const CosetData& cosets, const WindowData& x);

LinearCA compose(const LinearCA& s, const LinearCA& t);
LinearCA power(const LinearCA& t, int n);

enum class Verdict { Yes, No, Unknown };
std::string verdict_name(Verdict v);

struct NilpotencyReport {
    Verdict verdict = Verdict::Unknown;
    std::optional<int> index;   // set when verdict == Yes
    std::string mode;           // "charpoly" | "regular" | "power"
    std::string witness;        // nonzero char-poly coefficient / power evidence
    int bound_used = 0;         // power mode search bound
};

// mode: auto (by group), charpoly (Z^d), regular (finite groups),
// power (bounded search A^k = 0, k <= bound; default bound 4 dim |memory|).
NilpotencyReport is_nilpotent(const LinearCA& t, const std::string& mode = "auto",
                              std::optional<int> bound = std::nullopt);

struct PreInjectivityReport {
    Verdict verdict = Verdict::Unknown;
    std::string mode;                    // "fraction_rank" | "finite_group" | "bounded_search"
    std::optional<FiniteConfig> witness; // verified nonzero finite kernel config
    std::optional<int> radius;           // bounded search only
};

PreInjectivityReport is_pre_injective(const LinearCA& t, std::optional<int> radius = std::nullopt);

struct SurjectivityReport {
    Verdict verdict = Verdict::Unknown;
    std::string evidence;
    std::optional<bool> sofic_cross_check;  // Z + finite field only
};

// Full-shift surjectivity via the pre-injectivity equivalence on amenable
// groups; over Z with a finite field the verdict is additionally cross-checked
// by exact sofic image comparison.
SurjectivityReport is_surjective(const LinearCA& t);

// Memory must lie in the sublattice; returns the same automaton viewed over
// the sublattice in its own exponent coordinates.
LinearCA restrict_to_subgroup(const LinearCA& t, const CosetData& cosets);

}  // namespace lsl
