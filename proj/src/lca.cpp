#include "lsl/lca.hpp"

#include <algorithm>

#include "lsl/sofic.hpp"

namespace lsl {

FiniteConfig FiniteConfig::zero(const Field& f, const GroupSpec& s, int dim) {
    return FiniteConfig{f, s, dim, {}};
}

FiniteConfig FiniteConfig::of(const Field& f, const GroupSpec& s, int dim,
                              std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells) {
    for (auto& [g, v] : cells) {
        validate_element(s, g);
        if (static_cast<int>(v.size()) != dim)
            throw Error("SpecMismatch", "cell vector length does not match alphabet dimension");
    }
    std::sort(cells.begin(), cells.end(),
              [&](const auto& x, const auto& y) { return canonical_less(s, x.first, y.first); });
    std::vector<std::pair<GroupElement, std::vector<Scalar>>> out;
    for (auto& c : cells) {
        if (!out.empty() && out.back().first == c.first) {
            for (int i = 0; i < dim; ++i) out.back().second[i] = out.back().second[i] + c.second[i];
        } else {
            out.push_back(std::move(c));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& c) {
                                 return std::all_of(c.second.begin(), c.second.end(),
                                                    [](const Scalar& s) { return s.is_zero(); });
                             }),
              out.end());
    return FiniteConfig{f, s, dim, std::move(out)};
}

std::vector<Scalar> FiniteConfig::value_at(const GroupElement& g) const {
    for (const auto& [h, v] : cells)
        if (h == g) return v;
    return std::vector<Scalar>(dim, Scalar::zero(field));
}

WindowData WindowData::zero(const Field& f, FiniteSubset window, int dim) {
    std::size_t n = window.size() * dim;
    return WindowData{std::move(window), dim, std::vector<Scalar>(n, Scalar::zero(f))};
}

std::vector<Scalar> WindowData::value_at(const GroupElement& g) const {
    std::size_t i = window.index_of(g);
    return std::vector<Scalar>(values.begin() + i * dim, values.begin() + (i + 1) * dim);
}

LinearCA LinearCA::from_matrix(GrMatrix m) {
    LinearCA t;
    t.field = m.field;
    t.spec = m.spec;
    t.dim = m.dim;
    t.memory = m.support_with_identity();
    t.matrix = std::move(m);
    return t;
}

LinearCA LinearCA::from_local_rule(const Field& f, const GroupSpec& s, int dim,
                                   const FiniteSubset& mem,
                                   const std::vector<std::pair<GroupElement, ScalarMatrix>>& blocks) {
    GrMatrix m = GrMatrix::zero(f, s, dim);
    for (const auto& [g, b] : blocks) {
        if (!mem.contains(g))
            throw Error("KeyOutsideMemory", "local rule key outside memory: " + element_to_string(s, g));
        if (b.rows() != static_cast<std::size_t>(dim) || b.cols() != static_cast<std::size_t>(dim))
            throw Error("SpecMismatch", "local rule block has wrong shape");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (b.at(i, j).is_zero()) continue;
                m.at(i, j) = gr_add(m.at(i, j),
                                    gr_scalar_mul(b.at(i, j), GroupRingElement::delta(f, s, g)));
            }
    }
    return from_matrix(std::move(m));
}

ScalarMatrix LinearCA::block_at(const GroupElement& g) const {
    ScalarMatrix b(field, dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b.at(i, j) = matrix.at(i, j).coefficient(g);
    return b;
}

FiniteConfig apply_finite(const LinearCA& t, const FiniteConfig& x) {
    if (!(t.field == x.field) || !(t.spec == x.spec) || t.dim != x.dim)
        throw Error("SpecMismatch", "configuration does not match the automaton");
    // tau(x)(g) = sum_h A(h) x(gh): cell s contributes A(h) x(s) at g = s h^-1
    std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells;
    for (const auto& [s, v] : x.cells) {
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j) {
                const auto& entry = t.matrix.at(i, j);
                for (const auto& [h, c] : entry.terms) {
                    GroupElement g = group_mul(t.spec, s, group_inv(t.spec, h));
                    std::vector<Scalar> w(t.dim, Scalar::zero(t.field));
                    w[i] = c * v[j];
                    cells.emplace_back(std::move(g), std::move(w));
                }
            }
    }
    return FiniteConfig::of(t.field, t.spec, t.dim, std::move(cells));
}

ScalarMatrix window_map_matrix(const LinearCA& t, const FiniteSubset& target, const FiniteSubset& e) {
    if (!(target.spec == t.spec) || !(e.spec == t.spec))
        throw Error("SpecMismatch", "windows from a different group");
    ScalarMatrix m(t.field, target.size() * t.dim, e.size() * t.dim);
    for (std::size_t gi = 0; gi < target.size(); ++gi) {
        const GroupElement& g = target.elems[gi];
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j) {
                const auto& entry = t.matrix.at(i, j);
                for (const auto& [h, c] : entry.terms) {
                    GroupElement gh = group_mul(t.spec, g, h);
                    if (!e.contains(gh))
                        throw Error("WindowMismatch",
                                    "source window misses " + element_to_string(t.spec, gh));
                    std::size_t col = e.index_of(gh) * t.dim + j;
                    m.at(gi * t.dim + i, col) = m.at(gi * t.dim + i, col) + c;
                }
            }
    }
    return m;
}

WindowData apply_window(const LinearCA& t, const WindowData& y, const FiniteSubset& target) {
    ScalarMatrix m = window_map_matrix(t, target, y.window);
    WindowData out = WindowData::zero(t.field, target, t.dim);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Scalar acc = Scalar::zero(t.field);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.at(r, c).is_zero()) continue;
            acc = acc + m.at(r, c) * y.values[c];
        }
        out.values[r] = acc;
    }
    return out;
}

WindowData apply_periodic(const LinearCA& t, const CosetData& cosets, const WindowData& x) {
    if (!(cosets.spec == t.spec)) throw Error("SpecMismatch", "coset data from a different group");
    FiniteSubset reps = FiniteSubset::of(t.spec, cosets.reps);
    if (!(x.window == reps)) throw Error("WindowMismatch", "periodic data must live on the representatives");
    WindowData out = WindowData::zero(t.field, reps, t.dim);
    for (std::size_t ti = 0; ti < reps.size(); ++ti) {
        const GroupElement& rep = reps.elems[ti];
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j) {
                const auto& entry = t.matrix.at(i, j);
                for (const auto& [h, c] : entry.terms) {
                    std::size_t src = cosets.rep_index(group_mul(t.spec, rep, h));
                    out.values[ti * t.dim + i] =
                        out.values[ti * t.dim + i] + c * x.values[src * t.dim + j];
                }
            }
    }
    return out;
}

LinearCA compose(const LinearCA& s, const LinearCA& t) {
    return LinearCA::from_matrix(mat_mul(s.matrix, t.matrix));
}

LinearCA power(const LinearCA& t, int n) { return LinearCA::from_matrix(mat_pow(t.matrix, n)); }

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "Yes";
        case Verdict::No: return "No";
        default: return "Unknown";
    }
}

static int nilpotency_index_by_powers(const GrMatrix& m, int cap) {
    GrMatrix p = m;
    for (int k = 1; k <= cap; ++k) {
        if (p.is_zero()) return k;
        p = mat_mul(p, m);
    }
    if (p.is_zero()) return cap + 1;
    throw Error("Internal", "nilpotency index exceeded its certified cap");
}

NilpotencyReport is_nilpotent(const LinearCA& t, const std::string& mode, std::optional<int> bound) {
    std::string m = mode;
    if (m == "auto") {
        switch (t.spec.kind) {
            case GroupKind::FreeAbelian: m = "charpoly"; break;
            case GroupKind::CyclicProduct: m = "regular"; break;
            default: m = "power"; break;
        }
    }
    NilpotencyReport rep;
    rep.mode = m;

    if (m == "charpoly") {
        auto c = char_poly(t.matrix);
        for (int i = 0; i < t.dim; ++i) {
            if (!c[i].is_zero()) {
                rep.verdict = Verdict::No;
                rep.witness = "char poly coefficient c_" + std::to_string(i) + " = " + c[i].to_string();
                return rep;
            }
        }
        // char poly = lambda^dim forces matrix^dim = 0 (Cayley-Hamilton)
        rep.verdict = Verdict::Yes;
        rep.index = nilpotency_index_by_powers(t.matrix, t.dim);
        return rep;
    }
    if (m == "regular") {
        if (!t.spec.is_finite()) throw Error("UnsupportedGroup", "regular mode needs a finite group");
        ScalarMatrix rho = regular_representation(t.matrix);
        int cap = static_cast<int>(rho.rows());
        ScalarMatrix p = rho;
        for (int k = 1; k <= cap; ++k) {
            if (p.is_zero()) {
                rep.verdict = Verdict::Yes;
                rep.index = k;
                return rep;
            }
            p = p * rho;
        }
        rep.verdict = Verdict::No;
        rep.witness = "regular representation power " + std::to_string(cap) + " is nonzero";
        return rep;
    }
    if (m == "power") {
        int b = bound.value_or(4 * t.dim * static_cast<int>(t.memory.size()));
        if (b <= 0) throw Error("BoundRequired", "power mode needs a positive search bound");
        rep.bound_used = b;
        GrMatrix p = t.matrix;
        for (int k = 1; k <= b; ++k) {
            if (p.is_zero()) {
                rep.verdict = Verdict::Yes;
                rep.index = k;
                return rep;
            }
            p = mat_mul(p, t.matrix);
        }
        rep.verdict = Verdict::Unknown;
        rep.witness = "no zero power up to bound " + std::to_string(b);
        return rep;
    }
    throw Error("SpecMismatch", "unknown nilpotency mode '" + m + "'");
}

// finite groups: the full transition matrix of tau on A^G, coordinates (i, g)
static ScalarMatrix full_map_matrix(const LinearCA& t) {
    FiniteSubset g = enumerate_group(t.spec);
    const std::size_t n = g.size();
    ScalarMatrix m(t.field, n * t.dim, n * t.dim);
    for (std::size_t gi = 0; gi < n; ++gi)
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j)
                for (const auto& [h, c] : t.matrix.at(i, j).terms) {
                    std::size_t hi = g.index_of(group_mul(t.spec, g.elems[gi], h));
                    m.at(gi * t.dim + i, hi * t.dim + j) =
                        m.at(gi * t.dim + i, hi * t.dim + j) + c;
                }
    return m;
}

static FiniteConfig config_from_laurent_kernel(const LinearCA& t,
                                               const std::vector<GroupRingElement>& v) {
    // x(g)_j = v_j(g^-1) turns A v = 0 into tau(x) = 0
    std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells;
    for (int j = 0; j < t.dim; ++j)
        for (const auto& [g, c] : v[j].terms) {
            std::vector<Scalar> w(t.dim, Scalar::zero(t.field));
            w[j] = c;
            cells.emplace_back(group_inv(t.spec, g), std::move(w));
        }
    return FiniteConfig::of(t.field, t.spec, t.dim, std::move(cells));
}

PreInjectivityReport is_pre_injective(const LinearCA& t, std::optional<int> radius) {
    PreInjectivityReport rep;
    if (t.spec.kind == GroupKind::FreeAbelian) {
        rep.mode = "fraction_rank";
        if (fraction_rank(t.matrix) == t.dim) {
            rep.verdict = Verdict::Yes;
            return rep;
        }
        auto v = laurent_kernel_vector(t.matrix);
        FiniteConfig w = config_from_laurent_kernel(t, *v);
        if (w.is_zero() || !apply_finite(t, w).is_zero())
            throw Error("Internal", "kernel witness failed verification");
        rep.verdict = Verdict::No;
        rep.witness = std::move(w);
        return rep;
    }
    if (t.spec.kind == GroupKind::CyclicProduct) {
        rep.mode = "finite_group";
        ScalarMatrix m = full_map_matrix(t);
        ScalarMatrix ker = kernel_basis(m);
        if (ker.rows() == 0) {
            rep.verdict = Verdict::Yes;
            return rep;
        }
        FiniteSubset g = enumerate_group(t.spec);
        std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells;
        for (std::size_t gi = 0; gi < g.size(); ++gi) {
            std::vector<Scalar> w(t.dim, Scalar::zero(t.field));
            for (int i = 0; i < t.dim; ++i) w[i] = ker.at(0, gi * t.dim + i);
            cells.emplace_back(g.elems[gi], std::move(w));
        }
        FiniteConfig w = FiniteConfig::of(t.field, t.spec, t.dim, std::move(cells));
        if (w.is_zero() || !apply_finite(t, w).is_zero())
            throw Error("Internal", "kernel witness failed verification");
        rep.verdict = Verdict::No;
        rep.witness = std::move(w);
        return rep;
    }

    // free groups: search for kernel configurations supported in a ball
    int r = radius.value_or(2);
    rep.mode = "bounded_search";
    rep.radius = r;
    FiniteSubset supp = ball(t.spec, standard_generators(t.spec), r);
    FiniteSubset targets = set_product(supp, set_inverse(t.memory));
    // x supported on supp, constraint tau(x)(g) = 0 for all g that can see supp
    ScalarMatrix sys(t.field, targets.size() * t.dim, supp.size() * t.dim);
    for (std::size_t gi = 0; gi < targets.size(); ++gi) {
        const GroupElement& g = targets.elems[gi];
        for (int i = 0; i < t.dim; ++i)
            for (int j = 0; j < t.dim; ++j)
                for (const auto& [h, c] : t.matrix.at(i, j).terms) {
                    GroupElement gh = group_mul(t.spec, g, h);
                    if (!supp.contains(gh)) continue;
                    std::size_t col = supp.index_of(gh) * t.dim + j;
                    sys.at(gi * t.dim + i, col) = sys.at(gi * t.dim + i, col) + c;
                }
    }
    ScalarMatrix ker = kernel_basis(sys);
    if (ker.rows() > 0) {
        std::vector<std::pair<GroupElement, std::vector<Scalar>>> cells;
        for (std::size_t si = 0; si < supp.size(); ++si) {
            std::vector<Scalar> w(t.dim, Scalar::zero(t.field));
            for (int i = 0; i < t.dim; ++i) w[i] = ker.at(0, si * t.dim + i);
            cells.emplace_back(supp.elems[si], std::move(w));
        }
        FiniteConfig w = FiniteConfig::of(t.field, t.spec, t.dim, std::move(cells));
        if (w.is_zero() || !apply_finite(t, w).is_zero())
            throw Error("Internal", "kernel witness failed verification");
        rep.verdict = Verdict::No;
        rep.witness = std::move(w);
        return rep;
    }
    rep.verdict = Verdict::Unknown;
    return rep;
}

SurjectivityReport is_surjective(const LinearCA& t) {
    SurjectivityReport rep;
    if (t.spec.kind == GroupKind::FreeAbelian) {
        PreInjectivityReport pre = is_pre_injective(t);
        rep.verdict = pre.verdict;
        rep.evidence = "pre-injectivity equivalence on the full shift (amenable group); fraction rank "
                       + std::string(pre.verdict == Verdict::Yes ? "full" : "deficient");
        if (t.spec.rank == 1 && t.field.kind == FieldKind::Fp) {
            try {
                bool full = sofic_image_equals_full(t);
                rep.sofic_cross_check = full;
                if ((rep.verdict == Verdict::Yes) != full)
                    throw Error("Internal", "sofic cross-check disagrees with the rank verdict");
            } catch (const Error& e) {
                if (e.code != "Overflow") throw;
            }
        }
        return rep;
    }
    if (t.spec.kind == GroupKind::CyclicProduct) {
        ScalarMatrix m = full_map_matrix(t);
        bool full = rank(m) == m.rows();
        rep.verdict = full ? Verdict::Yes : Verdict::No;
        rep.evidence = "finite-group transition matrix rank";
        return rep;
    }
    rep.verdict = Verdict::Unknown;
    rep.evidence = "no surjectivity criterion available on a free group";
    return rep;
}

LinearCA restrict_to_subgroup(const LinearCA& t, const CosetData& cosets) {
    if (!(cosets.spec == t.spec)) throw Error("SpecMismatch", "coset data from a different group");
    GroupSpec sub = GroupSpec::free_abelian(t.spec.rank);
    GrMatrix m = GrMatrix::zero(t.field, sub, t.dim);
    for (int i = 0; i < t.dim; ++i)
        for (int j = 0; j < t.dim; ++j) {
            std::vector<std::pair<GroupElement, Scalar>> terms;
            for (const auto& [g, c] : t.matrix.at(i, j).terms) {
                auto coords = cosets.subgroup_coords(g);
                if (!coords)
                    throw Error("MemoryNotInSubgroup",
                                "memory element " + element_to_string(t.spec, g) + " not in the sublattice");
                terms.emplace_back(GroupElement{*coords}, c);
            }
            m.at(i, j) = GroupRingElement::from_terms(t.field, sub, std::move(terms));
        }
    return LinearCA::from_matrix(std::move(m));
}

}  // namespace lsl
