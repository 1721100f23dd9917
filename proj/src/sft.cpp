#include "lsl/sft.hpp"

#include <algorithm>
#include <map>

#include "lsl/sofic.hpp"

namespace lsl {

namespace {

constexpr std::uint64_t kMaxPaths = std::uint64_t(1) << 21;

// Functionals on |src| x dim coordinates re-embedded into a larger window;
// src element i sits at destination position placement[i].
ScalarMatrix embed_functionals(const ScalarMatrix& ann, const std::vector<std::size_t>& placement,
                               std::size_t dst_positions, int dim) {
    ScalarMatrix out(ann.field(), ann.rows(), dst_positions * dim);
    for (std::size_t r = 0; r < ann.rows(); ++r)
        for (std::size_t si = 0; si < placement.size(); ++si)
            for (int j = 0; j < dim; ++j)
                out.at(r, placement[si] * dim + j) = ann.at(r, si * dim + j);
    return out;
}

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

WindowLanguageReport language_exact_z(const LinearSFT& s, const FiniteSubset& omega) {
    if (s.spec.kind != GroupKind::FreeAbelian || s.spec.rank != 1)
        throw Error("UnsupportedGroup", "exact_Z mode needs the group Z");
    if (s.field.kind != FieldKind::Fp)
        throw Error("AlphabetInfinite", "exact_Z mode needs a finite alphabet");
    const int dim = s.dim;
    const std::int64_t p = s.field.p;
    BlockPresentation pres = sft_presentation(s, 1);
    const int span = pres.span;
    const std::uint64_t a_sz = pres.alphabet;
    const std::size_t n = pres.graph.num_states();

    const std::int64_t o0 = omega.elems.front().data[0];
    const std::int64_t o1 = omega.elems.back().data[0];
    const int hull = static_cast<int>(o1 - o0) + 1;

    RowSpanAccumulator acc(s.field, omega.size() * dim);
    std::vector<std::uint64_t> letters(std::max(hull, span), 0);
    auto load_state = [&](std::uint32_t u) {
        std::uint64_t code = pres.state_codes[u];
        for (int k = 0; k < span; ++k) {
            letters[k] = code % a_sz;
            code /= a_sz;
        }
    };
    auto emit = [&] {
        std::vector<Scalar> v;
        v.reserve(omega.size() * dim);
        for (const auto& o : omega.elems) {
            std::uint64_t code = letters[o.data[0] - o0];
            for (int j = 0; j < dim; ++j) {
                v.push_back(Scalar::from_int(s.field, static_cast<std::int64_t>(code % p)));
                code /= p;
            }
        }
        acc.add(std::move(v));
    };

    if (hull <= span) {
        for (std::uint32_t u = 0; u < n; ++u) {
            load_state(u);
            emit();
            if (acc.saturated()) break;
        }
    } else {
        const int k_edges = hull - span;
        std::vector<std::uint64_t> cnt(n, 1), nxt(n, 0);
        for (int step = 0; step < k_edges; ++step) {
            std::fill(nxt.begin(), nxt.end(), 0);
            std::uint64_t total = 0;
            for (std::size_t u = 0; u < n; ++u) {
                for (const auto& [b, v] : pres.graph.adj[u])
                    nxt[u] = std::min(nxt[u] + cnt[v], kMaxPaths + 1);
                total = std::min(total + nxt[u], kMaxPaths + 1);
            }
            cnt.swap(nxt);
            if (step + 1 == k_edges && total > kMaxPaths)
                throw Error("Overflow", "window language path enumeration too large");
        }
        // iterative DFS over paths of k_edges edges from every start state
        struct Frame {
            std::uint32_t state;
            std::size_t edge = 0;
        };
        std::vector<Frame> stack;
        for (std::uint32_t u = 0; u < n && !acc.saturated(); ++u) {
            load_state(u);
            stack.assign(1, Frame{u, 0});
            while (!stack.empty()) {
                Frame& f = stack.back();
                int depth = static_cast<int>(stack.size()) - 1;
                if (depth == k_edges) {
                    emit();
                    if (acc.saturated()) break;
                    stack.pop_back();
                    continue;
                }
                const auto& edges = pres.graph.adj[f.state];
                if (f.edge == edges.size()) {
                    stack.pop_back();
                    continue;
                }
                auto [b, v] = edges[f.edge++];
                letters[span + depth] = b;
                stack.push_back(Frame{v, 0});
            }
        }
    }
    return WindowLanguageReport{WindowSubspace{omega, dim, acc.basis()}, "exact_Z", true, 0};
}

WindowLanguageReport language_exact_finite(const LinearSFT& s, const FiniteSubset& omega) {
    if (!s.spec.is_finite())
        throw Error("UnsupportedGroup", "exact_finite mode needs a finite group");
    FiniteSubset all = enumerate_group(s.spec);
    WindowSubspace global = locally_admissible(s, all);
    ScalarMatrix proj = global.basis.select_columns(column_selection(omega, all, s.dim));
    return WindowLanguageReport{WindowSubspace{omega, s.dim, row_basis(std::move(proj))},
                                "exact_finite", true, 0};
}

WindowLanguageReport language_radius(const LinearSFT& s, const FiniteSubset& omega, int radius) {
    if (radius < 0) throw Error("UnsupportedMode", "radius must be nonnegative");
    FiniteSubset gens = standard_generators(s.spec);
    auto projected = [&](int r) {
        FiniteSubset win = set_product(omega, ball(s.spec, gens, r));
        WindowSubspace loc = locally_admissible(s, win);
        return row_basis(loc.basis.select_columns(column_selection(omega, win, s.dim)));
    };
    ScalarMatrix at_r = projected(radius);
    ScalarMatrix at_r1 = projected(radius + 1);
    bool certified = subspace_equal(at_r, at_r1);
    return WindowLanguageReport{WindowSubspace{omega, s.dim, std::move(at_r1)},
                                "radius(" + std::to_string(radius) + ")", certified, radius};
}

}  // namespace

LinearSFT LinearSFT::of(const Field& f, const GroupSpec& s, int dim, FiniteSubset d_window,
                        ScalarMatrix w_basis) {
    if (dim <= 0) throw Error("SpecMismatch", "alphabet dimension must be positive");
    if (!(d_window.spec == s)) throw Error("SpecMismatch", "window from a different group");
    if (d_window.size() == 0) throw Error("SpecMismatch", "defining window is empty");
    if (!(w_basis.field() == f)) throw Error("SpecMismatch", "pattern basis over a different field");
    if (w_basis.cols() != d_window.size() * static_cast<std::size_t>(dim))
        throw Error("SpecMismatch", "pattern basis width is not |D| * dim");
    GroupElement id = FiniteSubset::singleton_identity(s).elems.front();
    if (!d_window.contains(id)) {
        FiniteSubset e = set_union(d_window, FiniteSubset::singleton_identity(s));
        std::vector<std::size_t> placement(d_window.size());
        for (std::size_t i = 0; i < d_window.size(); ++i)
            placement[i] = e.index_of(d_window.elems[i]);
        ScalarMatrix big = embed_functionals(annihilator(w_basis), placement, e.size(), dim);
        w_basis = kernel_basis(big);
        d_window = std::move(e);
    } else {
        w_basis = row_basis(std::move(w_basis));
    }
    return LinearSFT{f, s, dim, std::move(d_window), std::move(w_basis)};
}

LinearSFT LinearSFT::full_shift(const Field& f, const GroupSpec& s, int dim) {
    return of(f, s, dim, FiniteSubset::singleton_identity(s), ScalarMatrix::identity(f, dim));
}

LinearSFT LinearSFT::zero_shift(const Field& f, const GroupSpec& s, int dim) {
    return of(f, s, dim, FiniteSubset::singleton_identity(s), ScalarMatrix(f, 0, dim));
}

LinearSFT kernel_sft(const LinearCA& t) {
    ScalarMatrix local = window_map_matrix(t, FiniteSubset::singleton_identity(t.spec), t.memory);
    return LinearSFT::of(t.field, t.spec, t.dim, t.memory, kernel_basis(local));
}

LinearSFT intersect(const LinearSFT& a, const LinearSFT& b) {
    if (!(a.field == b.field) || !(a.spec == b.spec) || a.dim != b.dim)
        throw Error("SpecMismatch", "intersecting subshifts over different setups");
    FiniteSubset e = set_union(a.d_window, b.d_window);
    auto placed = [&](const LinearSFT& s) {
        std::vector<std::size_t> placement(s.d_window.size());
        for (std::size_t i = 0; i < s.d_window.size(); ++i)
            placement[i] = e.index_of(s.d_window.elems[i]);
        return embed_functionals(annihilator(s.w_basis), placement, e.size(), s.dim);
    };
    ScalarMatrix sys = ScalarMatrix::vstack(placed(a), placed(b));
    return LinearSFT::of(a.field, a.spec, a.dim, std::move(e), kernel_basis(sys));
}

WindowSubspace locally_admissible(const LinearSFT& s, const FiniteSubset& omega) {
    if (!(omega.spec == s.spec)) throw Error("SpecMismatch", "window from a different group");
    if (omega.size() == 0) throw Error("SpecMismatch", "window is empty");
    ScalarMatrix ann = annihilator(s.w_basis);
    const int dim = s.dim;
    FiniteSubset candidates = set_product(omega, set_inverse(s.d_window));
    std::vector<std::vector<Scalar>> rows;
    std::vector<std::size_t> placement(s.d_window.size());
    for (const auto& g : candidates.elems) {
        bool inside = true;
        for (std::size_t di = 0; di < s.d_window.size() && inside; ++di) {
            GroupElement gd = group_mul(s.spec, g, s.d_window.elems[di]);
            if (omega.contains(gd))
                placement[di] = omega.index_of(gd);
            else
                inside = false;
        }
        if (!inside) continue;
        for (std::size_t r = 0; r < ann.rows(); ++r) {
            std::vector<Scalar> v(omega.size() * dim, Scalar::zero(s.field));
            for (std::size_t di = 0; di < placement.size(); ++di)
                for (int j = 0; j < dim; ++j)
                    v[placement[di] * dim + j] = ann.at(r, di * dim + j);
            rows.push_back(std::move(v));
        }
    }
    ScalarMatrix sys = ScalarMatrix::from_rows(s.field, omega.size() * dim, rows);
    return WindowSubspace{omega, dim, kernel_basis(sys)};
}

WindowLanguageReport window_language(const LinearSFT& s, const FiniteSubset& omega,
                                     const std::string& mode, int radius) {
    if (!(omega.spec == s.spec)) throw Error("SpecMismatch", "window from a different group");
    if (omega.size() == 0) throw Error("SpecMismatch", "window is empty");
    std::string m = mode;
    if (m == "auto") {
        if (s.spec.kind == GroupKind::FreeAbelian && s.spec.rank == 1 &&
            s.field.kind == FieldKind::Fp)
            m = "exact_Z";
        else if (s.spec.is_finite())
            m = "exact_finite";
        else
            m = "radius";
    }
    if (m == "exact_Z") return language_exact_z(s, omega);
    if (m == "exact_finite") return language_exact_finite(s, omega);
    if (m == "radius") return language_radius(s, omega, radius);
    throw Error("UnsupportedMode", "window language mode must be auto, exact_Z, exact_finite or radius");
}

LinearSFT perp_of_ideal(const Field& f, const GroupSpec& s, int dim,
                        const std::vector<std::vector<GroupRingElement>>& generators) {
    LinearSFT acc = LinearSFT::full_shift(f, s, dim);
    for (const auto& row : generators) {
        if (static_cast<int>(row.size()) != dim)
            throw Error("SpecMismatch", "generator row length is not dim");
        GrMatrix m = GrMatrix::zero(f, s, dim);
        for (int j = 0; j < dim; ++j) {
            if (!(row[j].field == f) || !(row[j].spec == s))
                throw Error("SpecMismatch", "generator entry over a different setup");
            m.at(0, j) = row[j];
        }
        acc = intersect(acc, kernel_sft(LinearCA::from_matrix(std::move(m))));
    }
    return acc;
}

SigmaPerp sigma_perp_window(const LinearSFT& s, const FiniteSubset& omega,
                            const std::string& lang_mode, int radius) {
    WindowLanguageReport lang = window_language(s, omega, lang_mode, radius);
    if (!lang.certified)
        throw Error("UncertifiedLanguage",
                    "dual annihilator needs a certified window language (mode " + lang.mode + ")");
    ScalarMatrix ann = annihilator(lang.language.basis);
    SigmaPerp out;
    out.annihilator = WindowSubspace{omega, s.dim, ann};
    for (std::size_t r = 0; r < ann.rows(); ++r) {
        GrMatrix m = GrMatrix::zero(s.field, s.spec, s.dim);
        for (std::size_t oi = 0; oi < omega.size(); ++oi)
            for (int j = 0; j < s.dim; ++j) {
                const Scalar& c = ann.at(r, oi * s.dim + j);
                if (c.is_zero()) continue;
                m.at(0, j) = gr_add(m.at(0, j), GroupRingElement::from_terms(
                                                    s.field, s.spec, {{omega.elems[oi], c}}));
            }
        out.maps.push_back(LinearCA::from_matrix(std::move(m)));
    }
    return out;
}

LinearSFT restrict_sft(const LinearSFT& s, const CosetData& cosets) {
    if (!(cosets.spec == s.spec)) throw Error("SpecMismatch", "coset data from a different group");
    GroupSpec sub = GroupSpec::free_abelian(s.spec.rank);
    std::vector<std::pair<GroupElement, std::size_t>> mapped;
    mapped.reserve(s.d_window.size());
    for (std::size_t i = 0; i < s.d_window.size(); ++i) {
        auto coords = cosets.subgroup_coords(s.d_window.elems[i]);
        if (!coords)
            throw Error("MemoryNotInSubgroup",
                        "window element " + element_to_string(s.spec, s.d_window.elems[i]) +
                            " is outside the sublattice");
        mapped.emplace_back(GroupElement{std::move(*coords)}, i);
    }
    std::sort(mapped.begin(), mapped.end(), [&](const auto& a, const auto& b) {
        return canonical_less(sub, a.first, b.first);
    });
    std::vector<GroupElement> elems;
    std::vector<std::size_t> sel;
    for (const auto& [g, oi] : mapped) {
        elems.push_back(g);
        for (int j = 0; j < s.dim; ++j) sel.push_back(oi * s.dim + j);
    }
    return LinearSFT::of(s.field, sub, s.dim, FiniteSubset::of(sub, std::move(elems)),
                         s.w_basis.select_columns(sel));
}

DccReport dcc_probe(const std::vector<LinearSFT>& chain, int max_steps,
                    const std::string& lang_mode, int radius) {
    if (chain.size() < 2) throw Error("SpecMismatch", "chain needs at least two subshifts");
    const int steps = std::min<int>(max_steps, static_cast<int>(chain.size()) - 1);
    DccReport rep;
    bool uncertified = false;
    for (int n = 0; n < steps; ++n) {
        const LinearSFT& a = chain[n];
        const LinearSFT& b = chain[n + 1];
        if (!(a.field == b.field) || !(a.spec == b.spec) || a.dim != b.dim)
            throw Error("SpecMismatch", "chain members over different setups");
        FiniteSubset e = set_union(a.d_window, b.d_window);
        // windowwise inclusion certificate for step n+1 inside step n: the
        // locally admissible data of the smaller shift already satisfies the
        // larger shift's pattern space
        WindowSubspace loc = locally_admissible(b, e);
        ScalarMatrix proj = loc.basis.select_columns(column_selection(a.d_window, e, a.dim));
        for (std::size_t r = 0; r < proj.rows(); ++r)
            if (!in_row_space(a.w_basis, proj.row(r)))
                throw Error("NotDecreasing",
                            "windowwise inclusion fails between steps " + std::to_string(n) +
                                " and " + std::to_string(n + 1));
        WindowLanguageReport la = window_language(a, e, lang_mode, radius);
        WindowLanguageReport lb = window_language(b, e, lang_mode, radius);
        DccStep st;
        st.n = n;
        st.dim_n = la.language.space_dim();
        st.dim_next = lb.language.space_dim();
        st.equal = la.language == lb.language;
        st.certified = la.certified && lb.certified;
        if (!st.certified) uncertified = true;
        rep.steps.push_back(std::move(st));
    }
    int stab = -1;
    for (int n = static_cast<int>(rep.steps.size()) - 1; n >= 0; --n) {
        if (rep.steps[n].equal && rep.steps[n].certified)
            stab = n;
        else
            break;
    }
    if (stab >= 0) {
        rep.stab_step = stab;
        rep.verdict = "Stabilized";
    } else {
        rep.verdict = "NotStabilized";
    }
    rep.notes = uncertified ? "some window languages are uncertified radius-mode estimates"
                            : "all window languages certified";
    return rep;
}

std::vector<LinearSFT> constants_chain(const Field& f, const GroupSpec& s, int dim, int length) {
    std::vector<LinearSFT> chain;
    if (length <= 0) return chain;
    chain.push_back(LinearSFT::full_shift(f, s, dim));
    FiniteSubset gens = standard_generators(s);
    for (int n = 1; n < length; ++n) {
        FiniteSubset d = ball(s, gens, n);
        ScalarMatrix w(f, dim, d.size() * dim);
        for (int j = 0; j < dim; ++j)
            for (std::size_t pos = 0; pos < d.size(); ++pos)
                w.at(j, pos * dim + j) = Scalar::one(f);
        chain.push_back(LinearSFT::of(f, s, dim, d, std::move(w)));
    }
    return chain;
}

std::vector<LinearSFT> coset_constants_chain(const Field& f, int free_rank, int max_radius) {
    GroupSpec s = GroupSpec::free_group(free_rank);
    FiniteSubset gens = standard_generators(s);
    std::vector<LinearSFT> chain;
    for (int r = 0; r <= max_radius; ++r) {
        FiniteSubset d = ball(s, gens, r);
        std::map<std::vector<std::int64_t>, std::vector<std::size_t>> classes;
        for (std::size_t i = 0; i < d.size(); ++i) {
            std::vector<std::int64_t> ab(free_rank, 0);
            for (std::int64_t letter : d.elems[i].data)
                letter > 0 ? ++ab[letter - 1] : --ab[-letter - 1];
            classes[std::move(ab)].push_back(i);
        }
        ScalarMatrix w(f, classes.size(), d.size());
        std::size_t row = 0;
        for (const auto& [ab, members] : classes) {
            for (std::size_t i : members) w.at(row, i) = Scalar::one(f);
            ++row;
        }
        chain.push_back(LinearSFT::of(f, s, 1, d, std::move(w)));
    }
    return chain;
}

}  // namespace lsl
