#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsl/lca.hpp"

namespace lsl {

// A subspace of A^window in canonical coordinates (window sorted, then the
// dim alphabet coordinates). basis is the unique RREF, so equality of
// subspaces is plain equality of the structs.
struct WindowSubspace {
    FiniteSubset window;
    int dim = 0;
    ScalarMatrix basis;

    std::size_t space_dim() const { return basis.rows(); }
    bool operator==(const WindowSubspace&) const = default;
};

// Linear SFT Sigma(D, W): configurations x with (values of x on every
// translate gD, read in D-order) inside W. The defining window always
// contains the identity.
struct LinearSFT {
    Field field;
    GroupSpec spec;
    int dim = 0;
    FiniteSubset d_window;
    ScalarMatrix w_basis;  // RREF basis of the allowed D-patterns

    static LinearSFT of(const Field& f, const GroupSpec& s, int dim, FiniteSubset d_window,
                        ScalarMatrix w_basis);
    static LinearSFT full_shift(const Field& f, const GroupSpec& s, int dim);
    static LinearSFT zero_shift(const Field& f, const GroupSpec& s, int dim);
};

// ker(tau) presented on tau's memory: W = kernel of the local rule.
LinearSFT kernel_sft(const LinearCA& t);

// Base change both operands to D1 u D2 and intersect the pattern spaces.
LinearSFT intersect(const LinearSFT& a, const LinearSFT& b);

// {y in A^Omega : y restricted to every translate gD inside Omega lies in W}.
// Always contains the window language.
WindowSubspace locally_admissible(const LinearSFT& s, const FiniteSubset& omega);

struct WindowLanguageReport {
    WindowSubspace language;
    std::string mode;       // "exact_Z" | "exact_finite" | "radius(r)"
    bool certified = false; // exact modes: true; radius: r and r+1 agreed
    int radius_used = 0;
};

// The restrictions of Sigma-configurations to omega.
//   exact_Z      G = Z with a finite field: block-graph essentialization,
//                certificate is unconditional
//   exact_finite finite G: project the global solution space
//   radius       any G: project locally admissible data on omega.ball(r);
//                certified only when radii r and r+1 agree (labeled heuristic)
//   auto         picks the strongest applicable mode
// Errors: AlphabetInfinite (exact_Z over Q), UnsupportedMode.
WindowLanguageReport window_language(const LinearSFT& s, const FiniteSubset& omega,
                                     const std::string& mode = "auto", int radius = 2);

// Common kernel of the maps x -> (g -> sum_j sum_h gen_j(h) x(gh)_j), one per
// generator row; generators are rows in K[G]^dim (a single element when
// dim = 1). Empty generator list gives the full shift.
LinearSFT perp_of_ideal(const Field& f, const GroupSpec& s, int dim,
                        const std::vector<std::vector<GroupRingElement>>& generators);

struct SigmaPerp {
    WindowSubspace annihilator;   // RREF basis of the functionals killing Sigma_omega
    std::vector<LinearCA> maps;   // the same functionals packaged as CAs
                                  // (functional in output coordinate 0, memory = omega)
};

// Basis of the dual-space annihilator of the window language on omega.
// Requires a certified language (throws UncertifiedLanguage otherwise).
SigmaPerp sigma_perp_window(const LinearSFT& s, const FiniteSubset& omega,
                            const std::string& lang_mode = "auto", int radius = 2);

// D must lie inside the sublattice; rewrites D in sublattice coordinates.
LinearSFT restrict_sft(const LinearSFT& s, const CosetData& cosets);

struct DccStep {
    int n = 0;                     // compares chain[n] with chain[n+1]
    std::vector<std::int64_t> window_hint;  // unused placeholder for JSON friendliness
    std::size_t dim_n = 0;         // language dims on the comparison window D_n u D_{n+1}
    std::size_t dim_next = 0;
    bool equal = false;
    bool certified = false;        // both language computations certified
};

struct DccReport {
    std::vector<DccStep> steps;
    std::optional<int> stab_step;  // first n from which every checked step is a certified equality
    std::string verdict;           // "Stabilized" | "NotStabilized"
    std::string notes;
};

// Walks a decreasing chain of SFTs, verifying inclusion windowwise (throws
// NotDecreasing when the windowwise check fails) and comparing consecutive
// subshifts through their window languages on D_n u D_{n+1}.
DccReport dcc_probe(const std::vector<LinearSFT>& chain, int max_steps,
                    const std::string& lang_mode = "auto", int radius = 1);

// Sigma_n = configurations constant on ball(n); Sigma_0 is the full shift and
// the chain is constant from n = 1 on.
std::vector<LinearSFT> constants_chain(const Field& f, const GroupSpec& s, int dim, int length);

// Free-group approximants of "constant on cosets of the commutator subgroup":
// W_r identifies window positions u, v in ball(r) with equal abelianization.
// The chain keeps dropping; the limit object is not of finite type.
std::vector<LinearSFT> coset_constants_chain(const Field& f, int free_rank, int max_radius);

}  // namespace lsl
