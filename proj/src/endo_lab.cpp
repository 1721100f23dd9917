#include "lsl/endo_lab.hpp"

#include <algorithm>
#include <set>

namespace lsl {

namespace {

// chain n >= 2 occupies indices [first(n), first(n) + n - 2], first(2) = 2
std::uint64_t chain_first(std::uint64_t n) { return 2 + (n - 1) * (n - 2) / 2; }
std::uint64_t chain_last(std::uint64_t n) { return chain_first(n) + n - 2; }

std::uint64_t chain_of(std::uint64_t m) {
    if (m <= 1) return 2;
    std::uint64_t n = 2;
    while (chain_last(n) < m) ++n;
    return n;
}

}  // namespace

BasisEndomorphism shift_up_endo() {
    return BasisEndomorphism{
        "shift_up",
        [](std::uint64_t m) -> std::optional<std::uint64_t> { return m + 1; },
        [](std::uint64_t n, int) { return n; },
    };
}

BasisEndomorphism shift_down_endo() {
    return BasisEndomorphism{
        "shift_down",
        [](std::uint64_t m) -> std::optional<std::uint64_t> {
            if (m == 0) return std::nullopt;
            return m - 1;
        },
        [](std::uint64_t n, int depth) { return n + static_cast<std::uint64_t>(std::max(depth, 0)); },
    };
}

BasisEndomorphism glued_chains_endo() {
    return BasisEndomorphism{
        "glued_chains",
        [](std::uint64_t m) -> std::optional<std::uint64_t> {
            if (m <= 1) return 0;
            return m == chain_first(chain_of(m)) ? 1 : m - 1;
        },
        [](std::uint64_t n, int depth) {
            std::uint64_t deep = static_cast<std::uint64_t>(std::max(depth, 0)) + 1;
            return chain_last(std::max<std::uint64_t>({deep, chain_of(n), 2}));
        },
    };
}

std::vector<std::optional<std::uint64_t>> iterate_basis(const BasisEndomorphism& f,
                                                        std::uint64_t start, int steps) {
    std::vector<std::optional<std::uint64_t>> orbit;
    orbit.reserve(steps + 1);
    orbit.emplace_back(start);
    for (int s = 0; s < steps; ++s)
        orbit.push_back(orbit.back() ? f.rule(*orbit.back()) : std::nullopt);
    return orbit;
}

PointwiseReport pointwise_nilpotency_probe(const BasisEndomorphism& f, std::uint64_t n,
                                           int horizon) {
    PointwiseReport rep;
    std::optional<std::uint64_t> survivor;
    int latest = 0;
    for (std::uint64_t w = 0; w <= n; ++w) {
        std::optional<std::uint64_t> cur = w;
        std::optional<int> death;
        for (int s = 1; s <= horizon && cur; ++s) {
            cur = f.rule(*cur);
            if (!cur) death = s;
        }
        rep.death_step.push_back(death);
        if (death)
            latest = std::max(latest, *death);
        else if (!survivor)
            survivor = w;
    }
    rep.verdict = survivor
                      ? "Survivor(" + std::to_string(*survivor) + ", " + std::to_string(horizon) + ")"
                      : "AllDieBy(" + std::to_string(latest) + ")";
    return rep;
}

TruncatedLimitReport limit_set_truncated(const BasisEndomorphism& f, std::uint64_t n, int depth) {
    TruncatedLimitReport rep;
    rep.truncation = n;
    rep.working = std::max(f.working_window(n, depth), n);
    rep.caveat = "sets were computed inside the truncation [0, " + std::to_string(rep.working) +
                 "]; behaviour that only shows up beyond any finite window cannot be ruled out";
    std::set<std::uint64_t> s;
    for (std::uint64_t m = 0; m <= rep.working; ++m) s.insert(m);
    auto visible_part = [&] {
        std::vector<std::uint64_t> v;
        for (std::uint64_t m : s) {
            if (m > n) break;
            v.push_back(m);
        }
        return v;
    };
    rep.visible.push_back(visible_part());
    for (int step = 1; step <= depth; ++step) {
        std::set<std::uint64_t> next;
        for (std::uint64_t m : s) {
            auto img = f.rule(m);
            if (img && *img <= rep.working) next.insert(*img);
        }
        s = std::move(next);
        rep.visible.push_back(visible_part());
    }
    rep.survivors = rep.visible.back();
    std::set<std::uint64_t> image;
    for (std::uint64_t m : rep.survivors) {
        auto img = f.rule(m);
        if (img) image.insert(*img);
    }
    rep.image_of_survivors.assign(image.begin(), image.end());
    return rep;
}

ClosedImageDemoReport closed_image_demo(const Field& f, int truncation, int max_window,
                                        int nilpotent_cap) {
    if (truncation <= max_window + 1 || max_window < 1 || nilpotent_cap < 1)
        throw Error("RangeTooLarge", "demo needs 1 <= max_window < truncation - 1 and a positive cap");
    ClosedImageDemoReport rep;
    rep.truncation = truncation;
    rep.max_window = max_window;
    rep.nilpotent_cap = nilpotent_cap;

    auto run = [&](std::optional<int> cap) {
        std::vector<std::uint64_t> depths;
        std::vector<Scalar> x(truncation, Scalar::zero(f));
        for (int w = 1; w <= max_window; ++w) {
            // x <- e_0 + shift(x), shifting coefficients one slot up
            std::vector<Scalar> nx(truncation, Scalar::zero(f));
            for (int j = 0; j + 1 < truncation; ++j) {
                if (cap && j + 1 >= *cap) break;
                nx[j + 1] = x[j];
            }
            nx[0] = nx[0] + Scalar::one(f);
            x = std::move(nx);
            std::uint64_t depth = 0;
            for (int j = 0; j < truncation; ++j)
                if (!x[j].is_zero()) depth = static_cast<std::uint64_t>(j);
            depths.push_back(depth);
        }
        return depths;
    };
    rep.escape_depths = run(std::nullopt);
    rep.capped_depths = run(nilpotent_cap);

    rep.unbounded_growth = true;
    for (int w = 1; w <= max_window; ++w)
        if (rep.escape_depths[w - 1] != static_cast<std::uint64_t>(w - 1)) rep.unbounded_growth = false;
    std::uint64_t cap_limit = static_cast<std::uint64_t>(nilpotent_cap) - 1;
    rep.bounded_contrast =
        *std::max_element(rep.capped_depths.begin(), rep.capped_depths.end()) <= cap_limit;
    rep.note = "every solution column w carries coefficient 1 on slot w-1 whatever the seed, so the "
               "uncapped preimages must climb; the cap-" +
               std::to_string(nilpotent_cap) + " variant stays below slot " +
               std::to_string(nilpotent_cap);
    return rep;
}

}  // namespace lsl
