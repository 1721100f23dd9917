#include "lsl/spacetime.hpp"

#include <algorithm>

#include "lsl/sofic.hpp"

namespace lsl {

namespace {

std::vector<std::size_t> column_selection(const FiniteSubset& sub, const FiniteSubset& super,
                                          int dim) {
    std::vector<std::size_t> sel;
    sel.reserve(sub.size() * dim);
    for (const auto& g : sub.elems) {
        std::size_t ei = super.index_of(g);
        for (int j = 0; j < dim; ++j) sel.push_back(ei * dim + j);
    }
    return sel;
}

bool exact_z_applicable(const SpaceTimeSystem& sys) {
    return sys.tau.spec.kind == GroupKind::FreeAbelian && sys.tau.spec.rank == 1 &&
           sys.tau.field.kind == FieldKind::Fp;
}

}  // namespace

SpaceTimeSystem SpaceTimeSystem::of(LinearCA tau, std::optional<LinearSFT> sigma) {
    if (sigma) {
        if (!(sigma->field == tau.field) || !(sigma->spec == tau.spec) || sigma->dim != tau.dim)
            throw Error("SpecMismatch", "automaton and domain subshift disagree");
    }
    FiniteSubset msym = set_union(tau.memory, set_inverse(tau.memory));
    return SpaceTimeSystem{std::move(tau), std::move(msym), std::move(sigma)};
}

WindowSubspace image_window(const SpaceTimeSystem& sys, int n, const FiniteSubset& omega,
                            const std::string& lang_mode, int radius) {
    if (n < 0) throw Error("UnsupportedMode", "image step must be nonnegative");
    LinearCA cur = power(sys.tau, n);
    FiniteSubset e = set_product(omega, cur.memory);
    ScalarMatrix map = window_map_matrix(cur, omega, e);
    if (!sys.sigma) return WindowSubspace{omega, sys.tau.dim, row_basis(map.transpose())};
    WindowLanguageReport lang = window_language(*sys.sigma, e, lang_mode, radius);
    if (!lang.certified)
        throw Error("UncertifiedLanguage",
                    "image window needs a certified domain language (mode " + lang.mode + ")");
    return WindowSubspace{omega, sys.tau.dim, image_of_subspace(map, lang.language.basis)};
}

LimitReport limit_set_window(const SpaceTimeSystem& sys, const FiniteSubset& omega, int max_steps,
                             int patience) {
    if (max_steps < 0) throw Error("UnsupportedMode", "step limit must be nonnegative");
    patience = std::max(patience, 1);
    LimitReport rep;
    rep.window = omega;
    rep.certificate = "none";
    std::vector<WindowSubspace> chain;
    auto first_equal_to_last = [&] {
        int m = static_cast<int>(chain.size()) - 1;
        while (m > 0 && chain[m - 1] == chain.back()) --m;
        return m;
    };
    for (int n = 0; n <= max_steps; ++n) {
        chain.push_back(image_window(sys, n, omega));
        rep.dims.push_back(chain.back().space_dim());
        if (power(sys.tau, n).is_zero()) {
            rep.certificate = "zero_power";
            rep.stab_step = first_equal_to_last();
            break;
        }
        int run = static_cast<int>(chain.size()) - 1 - first_equal_to_last();
        if (run >= patience) {
            rep.certificate = "plateau(" + std::to_string(patience) + ")";
            if (exact_z_applicable(sys)) {
                try {
                    StabilityReport st = is_stable(sys, "exact_Z", n, patience);
                    if (st.stable_at && *st.stable_at <= n) rep.certificate = "exact_Z";
                } catch (const Error& e) {
                    if (e.code != "Overflow") throw;
                }
            }
            rep.stab_step = first_equal_to_last();
            break;
        }
    }
    rep.limit = chain.back();
    return rep;
}

StabilityReport is_stable(const SpaceTimeSystem& sys, const std::string& mode, int horizon,
                          int patience) {
    std::string m = mode;
    if (m == "auto") m = exact_z_applicable(sys) ? "exact_Z" : "plateau";
    patience = std::max(patience, 1);
    StabilityReport rep;
    rep.horizon = horizon;
    rep.mode = m;
    if (m == "exact_Z") {
        if (!exact_z_applicable(sys))
            throw Error("UnsupportedGroup", "exact_Z stability needs Z with a finite field");
        rep.certified = true;
        LinearSFT domain = sys.sigma ? *sys.sigma
                                     : LinearSFT::full_shift(sys.tau.field, sys.tau.spec, sys.tau.dim);
        // stability indices start at n = 1: compare tau^n(Sigma) with tau^(n+1)(Sigma)
        SoficImage prev = SoficImage::of(domain, power(sys.tau, 1));
        for (int n = 1; n <= horizon; ++n) {
            SoficImage next = SoficImage::of(domain, power(sys.tau, n + 1));
            if (prev.equals(next)) {
                rep.stable_at = n;
                return rep;
            }
            prev = std::move(next);
        }
        return rep;
    }
    if (m == "plateau") {
        rep.certified = false;
        std::vector<WindowSubspace> chain;
        for (int n = 0; n <= horizon; ++n) {
            chain.push_back(image_window(sys, n, sys.msym));
            int run = 0;
            for (int k = static_cast<int>(chain.size()) - 1;
                 k > 0 && chain[k - 1] == chain.back(); --k)
                ++run;
            if (run >= patience) {
                rep.stable_at = std::max(1, static_cast<int>(chain.size()) - 1 - run);
                return rep;
            }
        }
        return rep;
    }
    throw Error("UnsupportedMode", "stability mode must be auto, exact_Z or plateau");
}

NilpotencyReport nilpotency_via_limit_set(const LinearCA& t, int max_steps) {
    NilpotencyReport rep;
    rep.mode = "limit_set";
    std::optional<int> index_bound;
    if (t.spec.kind == GroupKind::FreeAbelian) {
        index_bound = t.dim;
    } else if (t.spec.is_finite()) {
        index_bound = t.dim * static_cast<int>(enumerate_group(t.spec).size());
    }
    const int cap = index_bound ? std::min(*index_bound, max_steps) : max_steps;
    rep.bound_used = cap;
    SpaceTimeSystem sys = SpaceTimeSystem::of(t);
    FiniteSubset id = FiniteSubset::singleton_identity(t.spec);
    for (int n = 1; n <= cap; ++n) {
        WindowSubspace v = image_window(sys, n, id);
        if (v.space_dim() == 0) {
            if (!power(t, n).is_zero())
                throw Error("Internal", "identity-window image vanished but the power does not");
            rep.verdict = Verdict::Yes;
            rep.index = n;
            rep.witness = "identity-window image vanishes at step " + std::to_string(n);
            return rep;
        }
    }
    if (index_bound && *index_bound <= max_steps) {
        rep.verdict = Verdict::No;
        rep.witness = "identity-window image still nonzero at the power-index bound " +
                      std::to_string(*index_bound);
    } else {
        rep.verdict = Verdict::Unknown;
        rep.witness = "no vanishing image window up to step " + std::to_string(cap);
    }
    return rep;
}

BackwardReport backward_orbit_segment(const SpaceTimeSystem& sys, const WindowData& y, int depth) {
    if (depth < 0) throw Error("UnsupportedMode", "depth must be nonnegative");
    if (!(y.window.spec == sys.tau.spec) || y.dim != sys.tau.dim)
        throw Error("SpecMismatch", "target data does not match the automaton");
    BackwardReport rep;
    WindowData deepest = y;
    int reached = 0;
    for (int k = 1; k <= depth; ++k) {
        FiniteSubset e = set_product(y.window, set_power(sys.tau.memory, k));
        LinearCA pk = power(sys.tau, k);
        ScalarMatrix map = window_map_matrix(pk, y.window, e);
        std::optional<std::vector<Scalar>> z;
        if (sys.sigma) {
            WindowLanguageReport lang = window_language(*sys.sigma, e);
            if (!lang.certified)
                throw Error("UncertifiedLanguage", "backward solving needs a certified language");
            const ScalarMatrix& b = lang.language.basis;
            auto c = lex_min_solve(map * b.transpose(), y.values);
            if (c) {
                std::vector<Scalar> vals(b.cols(), Scalar::zero(sys.tau.field));
                for (std::size_t col = 0; col < b.cols(); ++col)
                    for (std::size_t r = 0; r < b.rows(); ++r)
                        vals[col] = vals[col] + (*c)[r] * b.at(r, col);
                z = std::move(vals);
            }
        } else {
            z = lex_min_solve(map, y.values);
        }
        if (!z) {
            rep.failed_depth = k;
            break;
        }
        deepest = WindowData{std::move(e), sys.tau.dim, std::move(*z)};
        reached = k;
    }
    rep.feasible = !rep.failed_depth.has_value();
    for (int k = 0; k <= reached; ++k) {
        FiniteSubset ek = set_product(y.window, set_power(sys.tau.memory, k));
        WindowData xk = k == reached ? deepest : apply_window(power(sys.tau, reached - k), deepest, ek);
        if (k == 0 && !(xk.values == y.values))
            throw Error("Internal", "backward tower does not reproduce the target");
        rep.tower.push_back(std::move(xk));
    }
    return rep;
}

ScalarMatrix periodic_transition_matrix(const LinearCA& t, const CosetData& cosets) {
    FiniteSubset reps = FiniteSubset::of(t.spec, cosets.reps);
    const std::size_t n = reps.size() * t.dim;
    ScalarMatrix p(t.field, n, n);
    for (std::size_t c = 0; c < n; ++c) {
        WindowData e = WindowData::zero(t.field, reps, t.dim);
        e.values[c] = Scalar::one(t.field);
        WindowData img = apply_periodic(t, cosets, e);
        for (std::size_t r = 0; r < n; ++r) p.at(r, c) = img.values[r];
    }
    return p;
}

WindowSubspace fixed_points_periodic(const LinearCA& t, const CosetData& cosets, int k) {
    if (k <= 0) throw Error("UnsupportedMode", "temporal period must be positive");
    ScalarMatrix p = periodic_transition_matrix(t, cosets);
    ScalarMatrix q = ScalarMatrix::identity(t.field, p.rows());
    for (int i = 0; i < k; ++i) q = p * q;
    q = q - ScalarMatrix::identity(t.field, p.rows());
    return WindowSubspace{FiniteSubset::of(t.spec, cosets.reps), t.dim, kernel_basis(q)};
}

ClosedImageCheck closed_image_window_check(const SpaceTimeSystem& sys, int n,
                                           const FiniteSubset& omega, int slack) {
    ClosedImageCheck check;
    WindowSubspace direct = image_window(sys, n, omega);
    check.direct_dim = direct.space_dim();
    check.consistent = true;
    FiniteSubset gens = standard_generators(sys.tau.spec);
    for (int r = 1; r <= slack; ++r) {
        FiniteSubset big = set_product(omega, ball(sys.tau.spec, gens, r));
        WindowSubspace wide = image_window(sys, n, big);
        ScalarMatrix proj =
            row_basis(wide.basis.select_columns(column_selection(omega, big, sys.tau.dim)));
        check.widened.push_back(proj.rows());
        if (!subspace_equal(proj, direct.basis)) check.consistent = false;
    }
    return check;
}

std::string render_spacetime(const LinearCA& t, const FiniteConfig& init, int steps,
                             std::int64_t lo, std::int64_t hi) {
    if (t.spec.kind != GroupKind::FreeAbelian || t.spec.rank != 1)
        throw Error("UnsupportedGroup", "space-time rendering needs the group Z");
    if (t.field.kind != FieldKind::Fp)
        throw Error("AlphabetInfinite", "space-time rendering needs a finite alphabet");
    if (!(init.field == t.field) || !(init.spec == t.spec) || init.dim != t.dim)
        throw Error("SpecMismatch", "start configuration does not match the automaton");
    if (hi < lo) throw Error("RangeTooLarge", "empty column range");
    if (steps < 0) throw Error("RangeTooLarge", "negative step count");
    std::int64_t maxval = 1;
    for (int j = 0; j < t.dim; ++j) {
        maxval *= t.field.p;
        if (maxval > 65536) throw Error("RangeTooLarge", "cell values do not fit a PGM");
    }
    --maxval;
    const std::int64_t width = hi - lo + 1;
    const std::int64_t height = static_cast<std::int64_t>(steps) + 1;
    if (width * height > 4'000'000) throw Error("RangeTooLarge", "image would be too big");

    std::string out = "P2\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
                      std::to_string(maxval) + "\n";
    FiniteConfig x = init;
    for (int row = 0; row <= steps; ++row) {
        for (std::int64_t g = lo; g <= hi; ++g) {
            std::vector<Scalar> v = x.value_at(GroupElement{{g}});
            std::int64_t code = 0, w = 1;
            for (int j = 0; j < t.dim; ++j) {
                code += v[j].residue() * w;
                w *= t.field.p;
            }
            out += std::to_string(code);
            out += g == hi ? '\n' : ' ';
        }
        if (row < steps) x = apply_finite(t, x);
    }
    return out;
}

}  // namespace lsl
