#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsl/sft.hpp"

namespace lsl {

// An automaton together with the subshift it acts on (absent = full shift)
// and the symmetrized memory window used by window probes.
struct SpaceTimeSystem {
    LinearCA tau;
    FiniteSubset msym;  // memory u memory^{-1}
    std::optional<LinearSFT> sigma;

    static SpaceTimeSystem of(LinearCA tau, std::optional<LinearSFT> sigma = std::nullopt);
};

// {(tau^n x)|_omega : x in the system's domain}. Exact: on a full shift this
// is plain image linear algebra; on a subshift it needs a certified window
// language (throws UncertifiedLanguage otherwise).
WindowSubspace image_window(const SpaceTimeSystem& sys, int n, const FiniteSubset& omega,
                            const std::string& lang_mode = "auto", int radius = 2);

struct LimitReport {
    FiniteSubset window;
    std::vector<std::size_t> dims;  // dims of the image chain on the window, step 0 upward
    std::optional<int> stab_step;   // first step whose window image equals the reported limit
    std::string certificate;        // "zero_power" | "exact_Z" | "plateau(N)" | "none"
    WindowSubspace limit;
};

// Non-increasing chain V_n = image_window(sys, n, omega), reported with the
// strongest certificate available:
//   zero_power  some power of the automaton is the zero map (limit {0})
//   exact_Z     sofic image comparison certifies the chain of image subshifts
//               is constant from stab_step on
//   plateau(N)  dims agreed for N consecutive steps (heuristic)
LimitReport limit_set_window(const SpaceTimeSystem& sys, const FiniteSubset& omega,
                             int max_steps = 64, int patience = 3);

struct StabilityReport {
    std::optional<int> stable_at;  // first n with tau^n(domain) = tau^(n+1)(domain)
    int horizon = 0;
    std::string mode;      // "exact_Z" | "plateau"
    bool certified = false;
};

// Does the image chain tau^n(domain) stop moving? exact_Z compares canonical
// sofic images (Z, finite field; a found step is a proof); plateau watches
// window dims on msym and is only a heuristic.
StabilityReport is_stable(const SpaceTimeSystem& sys, const std::string& mode = "auto",
                          int horizon = 8, int patience = 3);

// Nilpotency through the vanishing of image windows on the identity:
// tau^n = 0 iff the identity-window image of step n is zero. Conclusive both
// ways on Z^d and finite groups via power-index bounds; Unknown otherwise.
NilpotencyReport nilpotency_via_limit_set(const LinearCA& t, int max_steps = 64);

struct BackwardReport {
    bool feasible = false;
    std::optional<int> failed_depth;  // first depth with no preimage
    std::vector<WindowData> tower;    // x_k on omega . memory^k, tau(x_{k+1}) = x_k windowwise
};

// Deterministic backward orbit segment under y: solves tau^k z = y on the
// target window in one deep system per depth (lex-minimal solutions), then
// lays out the forward images of the deepest solution.
BackwardReport backward_orbit_segment(const SpaceTimeSystem& sys, const WindowData& y, int depth);

// Matrix of the automaton on configurations periodic along the sublattice,
// acting on coordinates (representative, alphabet coordinate).
ScalarMatrix periodic_transition_matrix(const LinearCA& t, const CosetData& cosets);

// Basis of {x : tau^k x = x} among sublattice-periodic configurations, as a
// subspace on the representative window.
WindowSubspace fixed_points_periodic(const LinearCA& t, const CosetData& cosets, int k);

struct ClosedImageCheck {
    std::size_t direct_dim = 0;          // dim of the image window computed on omega
    std::vector<std::size_t> widened;    // dims after widening by ball(r) and projecting back
    bool consistent = false;             // all widened dims match the direct one
};

// Window-consistency diagnostic for image subspaces: widening the window and
// projecting back must not change anything.
ClosedImageCheck closed_image_window_check(const SpaceTimeSystem& sys, int n,
                                           const FiniteSubset& omega, int slack = 2);

// Space-time diagram of a finitely supported start on Z as a plain PGM
// (one row per step, cell value = little-endian base-p digits of the vector).
std::string render_spacetime(const LinearCA& t, const FiniteConfig& init, int steps,
                             std::int64_t lo, std::int64_t hi);

}  // namespace lsl
