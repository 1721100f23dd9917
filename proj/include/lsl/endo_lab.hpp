#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lsl/field.hpp"

namespace lsl {

// Endomorphism of a countable-dimensional space that maps basis vectors to
// basis vectors or to zero. rule(m) = image index of e_m (nullopt = zero).
// working_window(N, depth) gives a truncation bound W so that the truncated
// iteration reports the visible sets on [0, N] exactly down to `depth`.
struct BasisEndomorphism {
    std::string name;
    std::function<std::optional<std::uint64_t>(std::uint64_t)> rule;
    std::function<std::uint64_t(std::uint64_t, int)> working_window;
};

// e_m -> e_{m+1}: injective, image misses e_0.
BasisEndomorphism shift_up_endo();

// e_m -> e_{m-1}, e_0 -> 0: every basis vector dies pointwise, yet every
// truncated visible set stays full.
BasisEndomorphism shift_down_endo();

// Finite descending chains of every length glued onto the common tail
// 1 -> 0 -> 0 -> ...; the visible limit is {e_0, e_1} even though no single
// chain survives.
BasisEndomorphism glued_chains_endo();

// Orbit of e_start; entries after a zero image stay empty.
std::vector<std::optional<std::uint64_t>> iterate_basis(const BasisEndomorphism& f,
                                                        std::uint64_t start, int steps);

struct PointwiseReport {
    std::vector<std::optional<int>> death_step;  // per start 0..N, step the orbit hits zero
    std::string verdict;                         // "AllDieBy(n)" | "Survivor(k, horizon)"
};

// Does every basis orbit reach zero within the horizon?
PointwiseReport pointwise_nilpotency_probe(const BasisEndomorphism& f, std::uint64_t n,
                                           int horizon);

struct TruncatedLimitReport {
    std::uint64_t truncation = 0;  // reported window [0, truncation]
    std::uint64_t working = 0;     // computation window [0, working]
    std::vector<std::vector<std::uint64_t>> visible;  // step n: image^n indices on [0, truncation]
    std::vector<std::uint64_t> survivors;             // visible set at the final step
    std::vector<std::uint64_t> image_of_survivors;
    std::string caveat;  // truncated computations can misrepresent genuinely infinite behaviour
};

// Iterates S -> rule(S) inside [0, working_window(n, depth)] and reports the
// visible part of each step.
TruncatedLimitReport limit_set_truncated(const BasisEndomorphism& f, std::uint64_t n, int depth);

struct ClosedImageDemoReport {
    int truncation = 0;
    int max_window = 0;
    int nilpotent_cap = 0;
    std::vector<std::uint64_t> escape_depths;  // support depth of the greedy preimage, column 1..
    std::vector<std::uint64_t> capped_depths;  // same recurrence under the nilpotent cap
    bool unbounded_growth = false;             // depths keep climbing (escape to infinity)
    bool bounded_contrast = false;             // capped depths stay below the cap
    std::string note;
};

// Greedy preimage columns x(0) = 0, x(i+1) = y(i) + psi(x(i)) for the constant
// target y = e_0: with psi the raw upward shift the support depth at column w
// is exactly w-1 (the e_{w-1} coefficient is 1 no matter the seed), with a
// nilpotent cap it stays below the cap. Exact arithmetic over f.
ClosedImageDemoReport closed_image_demo(const Field& f, int truncation = 32, int max_window = 8,
                                        int nilpotent_cap = 3);

}  // namespace lsl
