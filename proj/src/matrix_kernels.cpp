#include "lsl/matrix_kernels.hpp"

#include <algorithm>

namespace lsl {

static void require_laurent(const GroupSpec& s, const char* what) {
    if (s.kind != GroupKind::FreeAbelian)
        throw Error("UnsupportedGroup", std::string(what) + " needs a free abelian group");
}

// shift every exponent vector by `off`
static GroupRingElement monomial_shift(const GroupRingElement& a, const std::vector<std::int64_t>& off) {
    GroupRingElement r = a;
    for (auto& [g, c] : r.terms)
        for (std::size_t i = 0; i < off.size(); ++i) g.data[i] += off[i];
    // shifting preserves lex order, terms stay sorted
    return r;
}

GroupRingElement laurent_divexact(const GroupRingElement& p, const GroupRingElement& q) {
    require_laurent(p.spec, "exact division");
    if (q.is_zero()) throw Error("DivisionByZero", "division by the zero element");
    if (p.is_zero()) return p;
    const int d = p.spec.rank;

    // normalize to honest polynomials with per-variable minimum exponent 0
    std::vector<std::int64_t> pmin(d), qmin(d);
    for (int i = 0; i < d; ++i) {
        pmin[i] = p.terms[0].first.data[i];
        qmin[i] = q.terms[0].first.data[i];
        for (const auto& [g, c] : p.terms) pmin[i] = std::min(pmin[i], g.data[i]);
        for (const auto& [g, c] : q.terms) qmin[i] = std::min(qmin[i], g.data[i]);
    }
    std::vector<std::int64_t> pneg(d), qneg(d);
    for (int i = 0; i < d; ++i) {
        pneg[i] = -pmin[i];
        qneg[i] = -qmin[i];
    }
    GroupRingElement r = monomial_shift(p, pneg);
    GroupRingElement q0 = monomial_shift(q, qneg);

    // cancel lex-leading terms; exactness makes the greedy loop sound
    const auto& qlead = q0.terms.back();
    std::vector<std::pair<GroupElement, Scalar>> quot;
    while (!r.is_zero()) {
        const auto& rlead = r.terms.back();
        GroupElement e = rlead.first;
        for (int i = 0; i < d; ++i) {
            e.data[i] -= qlead.first.data[i];
            if (e.data[i] < 0) throw Error("InexactDivision", "leading monomial not divisible");
        }
        Scalar c = rlead.second / qlead.second;
        quot.emplace_back(e, c);
        GroupRingElement t = GroupRingElement::from_terms(p.field, p.spec, {{e, c}});
        r = gr_sub(r, gr_convolve(t, q0));
    }
    GroupRingElement s = GroupRingElement::from_terms(p.field, p.spec, std::move(quot));
    // p = x^pmin p0, q = x^qmin q0  =>  p/q = x^(pmin - qmin) (p0/q0)
    std::vector<std::int64_t> back(d);
    for (int i = 0; i < d; ++i) back[i] = pmin[i] - qmin[i];
    return monomial_shift(s, back);
}

static GroupRingElement det_rec(const std::vector<std::vector<GroupRingElement>>& m,
                                std::vector<std::size_t> cols, std::size_t row,
                                const Field& f, const GroupSpec& s) {
    if (cols.empty()) return GroupRingElement::delta(f, s, identity(s));
    GroupRingElement acc = GroupRingElement::zero(f, s);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const GroupRingElement& e = m[row][cols[k]];
        if (e.is_zero()) continue;
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        GroupRingElement minor = det_rec(m, std::move(rest), row + 1, f, s);
        GroupRingElement term = gr_convolve(e, minor);
        acc = (k % 2 == 0) ? gr_add(acc, term) : gr_sub(acc, term);
    }
    return acc;
}

static GroupRingElement det_of(const std::vector<std::vector<GroupRingElement>>& m,
                               const Field& f, const GroupSpec& s) {
    std::vector<std::size_t> cols(m.size());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return det_rec(m, std::move(cols), 0, f, s);
}

GroupRingElement laurent_det(const GrMatrix& a) {
    require_laurent(a.spec, "determinant");
    std::vector<std::vector<GroupRingElement>> m(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) m[i].push_back(a.at(i, j));
    return det_of(m, a.field, a.spec);
}

static GroupRingElement gr_trace(const GrMatrix& a) {
    GroupRingElement t = GroupRingElement::zero(a.field, a.spec);
    for (int i = 0; i < a.dim; ++i) t = gr_add(t, a.at(i, i));
    return t;
}

// polynomials in lambda with K[Z^d] coefficients, index = degree
using LambdaPoly = std::vector<GroupRingElement>;

static LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b, const Field& f, const GroupSpec& s) {
    LambdaPoly r(a.size() + b.size() - 1, GroupRingElement::zero(f, s));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = gr_add(r[i + j], gr_convolve(a[i], b[j]));
    }
    return r;
}

static LambdaPoly lp_det(const std::vector<std::vector<LambdaPoly>>& m, std::vector<std::size_t> cols,
                         std::size_t row, const Field& f, const GroupSpec& s) {
    if (cols.empty()) return {GroupRingElement::delta(f, s, identity(s))};
    LambdaPoly acc{GroupRingElement::zero(f, s)};
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        LambdaPoly term = lp_mul(m[row][cols[k]], lp_det(m, std::move(rest), row + 1, f, s), f, s);
        if (term.size() > acc.size()) acc.resize(term.size(), GroupRingElement::zero(f, s));
        for (std::size_t t = 0; t < term.size(); ++t)
            acc[t] = (k % 2 == 0) ? gr_add(acc[t], term[t]) : gr_sub(acc[t], term[t]);
    }
    return acc;
}

std::vector<GroupRingElement> char_poly(const GrMatrix& a) {
    require_laurent(a.spec, "characteristic polynomial");
    const Field& f = a.field;
    const GroupSpec& s = a.spec;
    const int d = a.dim;
    std::vector<GroupRingElement> c(d, GroupRingElement::zero(f, s));

    if (f.characteristic() == 0 || f.characteristic() > d) {
        // Faddeev-LeVerrier, divisions only by 1..d
        GrMatrix m = a;
        c[d - 1] = gr_neg(gr_trace(m));
        for (int k = 2; k <= d; ++k) {
            GrMatrix shifted = m;
            for (int i = 0; i < d; ++i)
                shifted.at(i, i) = gr_add(shifted.at(i, i), c[d - k + 1]);
            m = mat_mul(a, shifted);
            Scalar inv_k = Scalar::from_int(f, k).inv();
            c[d - k] = gr_neg(gr_scalar_mul(inv_k, gr_trace(m)));
        }
        return c;
    }

    // cofactor expansion of det(lambda I - A) over K[Z^d][lambda]
    std::vector<std::vector<LambdaPoly>> m(d, std::vector<LambdaPoly>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            LambdaPoly e{gr_neg(a.at(i, j))};
            if (i == j) e.push_back(GroupRingElement::delta(f, s, identity(s)));
            m[i][j] = std::move(e);
        }
    std::vector<std::size_t> cols(d);
    for (int i = 0; i < d; ++i) cols[i] = static_cast<std::size_t>(i);
    LambdaPoly det = lp_det(m, std::move(cols), 0, f, s);
    det.resize(d + 1, GroupRingElement::zero(f, s));
    for (int i = 0; i < d; ++i) c[i] = det[i];
    return c;
}

FiniteSubset enumerate_group(const GroupSpec& spec) {
    if (!spec.is_finite()) throw Error("UnsupportedGroup", "cannot enumerate an infinite group");
    std::vector<GroupElement> all;
    GroupElement cur = identity(spec);
    for (;;) {
        all.push_back(cur);
        int i = spec.rank - 1;
        while (i >= 0) {
            if (++cur.data[i] < spec.orders[i]) break;
            cur.data[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return FiniteSubset::of(spec, std::move(all));
}

ScalarMatrix regular_representation(const GroupRingElement& a) {
    FiniteSubset g = enumerate_group(a.spec);
    const std::size_t n = g.size();
    ScalarMatrix m(a.field, n, n);
    for (std::size_t hi = 0; hi < n; ++hi)
        for (const auto& [x, c] : a.terms) {
            std::size_t row = g.index_of(group_mul(a.spec, x, g.elems[hi]));
            m.at(row, hi) = m.at(row, hi) + c;
        }
    return m;
}

ScalarMatrix regular_representation(const GrMatrix& a) {
    FiniteSubset g = enumerate_group(a.spec);
    const std::size_t n = g.size();
    ScalarMatrix m(a.field, n * a.dim, n * a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            const auto& e = a.at(i, j);
            for (std::size_t hi = 0; hi < n; ++hi)
                for (const auto& [x, c] : e.terms) {
                    std::size_t row = g.index_of(group_mul(a.spec, x, g.elems[hi]));
                    m.at(i * n + row, j * n + hi) = m.at(i * n + row, j * n + hi) + c;
                }
        }
    return m;
}

// deterministic pivot order: walk the sorted term lists
static bool entry_less(const GroupRingElement& a, const GroupRingElement& b) {
    for (std::size_t i = 0; i < std::min(a.terms.size(), b.terms.size()); ++i) {
        if (canonical_less(a.spec, a.terms[i].first, b.terms[i].first)) return true;
        if (canonical_less(a.spec, b.terms[i].first, a.terms[i].first)) return false;
        std::string ca = a.terms[i].second.to_string(), cb = b.terms[i].second.to_string();
        if (ca != cb) return ca < cb;
    }
    return a.terms.size() < b.terms.size();
}

FractionRankResult fraction_rank_detail(const GrMatrix& a) {
    require_laurent(a.spec, "fraction rank");
    const int n = a.dim;
    std::vector<std::vector<GroupRingElement>> m(n);
    std::vector<std::size_t> orig(n);
    for (int i = 0; i < n; ++i) {
        orig[i] = static_cast<std::size_t>(i);
        for (int j = 0; j < n; ++j) m[i].push_back(a.at(i, j));
    }
    GroupRingElement prev = GroupRingElement::delta(a.field, a.spec, identity(a.spec));
    FractionRankResult res;
    int r = 0;
    for (int col = 0; col < n && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i) {
            if (m[i][col].is_zero()) continue;
            if (piv < 0 || entry_less(m[i][col], m[piv][col])) piv = i;
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        std::swap(orig[r], orig[piv]);
        for (int i = r + 1; i < n; ++i) {
            for (int j = col + 1; j < n; ++j) {
                GroupRingElement num = gr_sub(gr_convolve(m[i][j], m[r][col]),
                                              gr_convolve(m[i][col], m[r][j]));
                m[i][j] = laurent_divexact(num, prev);
            }
            m[i][col] = GroupRingElement::zero(a.field, a.spec);
        }
        prev = m[r][col];
        res.pivot_rows.push_back(orig[r]);
        res.pivot_cols.push_back(static_cast<std::size_t>(col));
        ++r;
    }
    res.rank = r;
    return res;
}

int fraction_rank(const GrMatrix& a) { return fraction_rank_detail(a).rank; }

std::optional<std::vector<GroupRingElement>> laurent_kernel_vector(const GrMatrix& a) {
    FractionRankResult fr = fraction_rank_detail(a);
    const int n = a.dim;
    if (fr.rank == n) return std::nullopt;
    std::size_t free_col = 0;
    while (std::find(fr.pivot_cols.begin(), fr.pivot_cols.end(), free_col) != fr.pivot_cols.end())
        ++free_col;

    const std::size_t r = fr.pivot_cols.size();
    auto minor_det = [&](std::optional<std::size_t> replace_with_free) {
        GrMatrix m = GrMatrix::zero(a.field, a.spec, std::max<int>(1, static_cast<int>(r)));
        if (r == 0) return GroupRingElement::delta(a.field, a.spec, identity(a.spec));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                std::size_t col = (replace_with_free && *replace_with_free == j)
                                      ? free_col
                                      : fr.pivot_cols[j];
                m.at(static_cast<int>(i), static_cast<int>(j)) =
                    a.at(static_cast<int>(fr.pivot_rows[i]), static_cast<int>(col));
            }
        return laurent_det(m);
    };

    std::vector<GroupRingElement> v(n, GroupRingElement::zero(a.field, a.spec));
    v[free_col] = minor_det(std::nullopt);
    for (std::size_t j = 0; j < r; ++j) v[fr.pivot_cols[j]] = gr_neg(minor_det(j));
    return v;
}

}  // namespace lsl
