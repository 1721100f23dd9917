#include "lsl/group.hpp"

#include <algorithm>
#include <cstdlib>

namespace lsl {

GroupSpec GroupSpec::free_abelian(int d) {
    if (d < 1) throw Error("SpecMismatch", "free abelian rank must be >= 1");
    GroupSpec s;
    s.kind = GroupKind::FreeAbelian;
    s.rank = d;
    return s;
}

GroupSpec GroupSpec::free_group(int k) {
    if (k < 1) throw Error("SpecMismatch", "free group rank must be >= 1");
    GroupSpec s;
    s.kind = GroupKind::Free;
    s.rank = k;
    return s;
}

GroupSpec GroupSpec::cyclic_product(std::vector<std::int64_t> orders) {
    if (orders.empty()) throw Error("SpecMismatch", "cyclic product needs at least one factor");
    for (auto n : orders)
        if (n < 2) throw Error("SpecMismatch", "cyclic factor orders must be >= 2");
    GroupSpec s;
    s.kind = GroupKind::CyclicProduct;
    s.rank = static_cast<int>(orders.size());
    s.orders = std::move(orders);
    return s;
}

std::int64_t GroupSpec::finite_size() const {
    if (kind != GroupKind::CyclicProduct) throw Error("UnsupportedGroup", "group is infinite");
    std::int64_t n = 1;
    for (auto o : orders) n *= o;
    return n;
}

std::string GroupSpec::to_string() const {
    switch (kind) {
        case GroupKind::FreeAbelian: return "Z^" + std::to_string(rank);
        case GroupKind::Free: return "F_" + std::to_string(rank);
        default: {
            std::string s;
            for (std::size_t i = 0; i < orders.size(); ++i)
                s += (i ? " x Z/" : "Z/") + std::to_string(orders[i]);
            return s;
        }
    }
}

GroupElement identity(const GroupSpec& spec) {
    if (spec.kind == GroupKind::Free) return GroupElement{{}};
    return GroupElement{std::vector<std::int64_t>(spec.rank, 0)};
}

void validate_element(const GroupSpec& spec, const GroupElement& a) {
    if (spec.kind == GroupKind::Free) {
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            std::int64_t c = a.data[i];
            if (c == 0 || std::abs(c) > spec.rank)
                throw Error("SpecMismatch", "free word letter out of range");
            if (i + 1 < a.data.size() && a.data[i + 1] == -c)
                throw Error("NonCanonical", "free word is not reduced");
        }
        return;
    }
    if (static_cast<int>(a.data.size()) != spec.rank)
        throw Error("SpecMismatch", "element length does not match group rank");
    if (spec.kind == GroupKind::CyclicProduct) {
        for (int i = 0; i < spec.rank; ++i)
            if (a.data[i] < 0 || a.data[i] >= spec.orders[i])
                throw Error("NonCanonical", "residue out of range");
    }
}

GroupElement group_mul(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    switch (spec.kind) {
        case GroupKind::FreeAbelian: {
            GroupElement r = a;
            for (int i = 0; i < spec.rank; ++i) r.data[i] += b.data[i];
            return r;
        }
        case GroupKind::CyclicProduct: {
            GroupElement r = a;
            for (int i = 0; i < spec.rank; ++i) {
                r.data[i] = (r.data[i] + b.data[i]) % spec.orders[i];
                if (r.data[i] < 0) r.data[i] += spec.orders[i];
            }
            return r;
        }
        default: {
            // concatenate and cancel at the junction
            GroupElement r = a;
            for (auto c : b.data) {
                if (!r.data.empty() && r.data.back() == -c)
                    r.data.pop_back();
                else
                    r.data.push_back(c);
            }
            return r;
        }
    }
}

GroupElement group_inv(const GroupSpec& spec, const GroupElement& a) {
    switch (spec.kind) {
        case GroupKind::FreeAbelian: {
            GroupElement r = a;
            for (auto& c : r.data) c = -c;
            return r;
        }
        case GroupKind::CyclicProduct: {
            GroupElement r = a;
            for (int i = 0; i < spec.rank; ++i)
                r.data[i] = a.data[i] == 0 ? 0 : spec.orders[i] - a.data[i];
            return r;
        }
        default: {
            GroupElement r;
            r.data.reserve(a.data.size());
            for (auto it = a.data.rbegin(); it != a.data.rend(); ++it) r.data.push_back(-*it);
            return r;
        }
    }
}

bool canonical_less(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    if (spec.kind == GroupKind::Free) {
        if (a.data.size() != b.data.size()) return a.data.size() < b.data.size();
        // shortlex with letter order 1 < -1 < 2 < -2 < ...
        auto key = [](std::int64_t c) { return 2 * std::abs(c) + (c < 0 ? 1 : 0); };
        for (std::size_t i = 0; i < a.data.size(); ++i)
            if (a.data[i] != b.data[i]) return key(a.data[i]) < key(b.data[i]);
        return false;
    }
    return a.data < b.data;
}

std::string element_to_string(const GroupSpec& spec, const GroupElement& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.data.size(); ++i)
        s += (i ? "," : "") + std::to_string(a.data[i]);
    return s + ")";
}

FiniteSubset FiniteSubset::of(const GroupSpec& spec, std::vector<GroupElement> elems) {
    for (const auto& e : elems) validate_element(spec, e);
    std::sort(elems.begin(), elems.end(),
              [&](const GroupElement& x, const GroupElement& y) { return canonical_less(spec, x, y); });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    FiniteSubset f;
    f.spec = spec;
    f.elems = std::move(elems);
    return f;
}

FiniteSubset FiniteSubset::singleton_identity(const GroupSpec& spec) {
    return of(spec, {identity(spec)});
}

bool FiniteSubset::contains(const GroupElement& g) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), g,
                               [&](const GroupElement& x, const GroupElement& y) {
                                   return canonical_less(spec, x, y);
                               });
    return it != elems.end() && *it == g;
}

std::size_t FiniteSubset::index_of(const GroupElement& g) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), g,
                               [&](const GroupElement& x, const GroupElement& y) {
                                   return canonical_less(spec, x, y);
                               });
    if (it == elems.end() || !(*it == g))
        throw Error("WindowMismatch", "element not in subset: " + element_to_string(spec, g));
    return static_cast<std::size_t>(it - elems.begin());
}

FiniteSubset set_product(const FiniteSubset& a, const FiniteSubset& b) {
    if (!(a.spec == b.spec)) throw Error("SpecMismatch", "set product across different groups");
    std::vector<GroupElement> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.elems)
        for (const auto& y : b.elems) out.push_back(group_mul(a.spec, x, y));
    return FiniteSubset::of(a.spec, std::move(out));
}

FiniteSubset set_power(const FiniteSubset& e, int n) {
    if (n < 0) throw Error("SpecMismatch", "set power needs n >= 0");
    FiniteSubset acc = FiniteSubset::singleton_identity(e.spec);
    for (int i = 0; i < n; ++i) acc = set_product(acc, e);
    return acc;
}

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b) {
    if (!(a.spec == b.spec)) throw Error("SpecMismatch", "set union across different groups");
    std::vector<GroupElement> out = a.elems;
    out.insert(out.end(), b.elems.begin(), b.elems.end());
    return FiniteSubset::of(a.spec, std::move(out));
}

FiniteSubset set_inverse(const FiniteSubset& a) {
    std::vector<GroupElement> out;
    out.reserve(a.size());
    for (const auto& x : a.elems) out.push_back(group_inv(a.spec, x));
    return FiniteSubset::of(a.spec, std::move(out));
}

FiniteSubset left_translate(const GroupElement& g, const FiniteSubset& e) {
    std::vector<GroupElement> out;
    out.reserve(e.size());
    for (const auto& x : e.elems) out.push_back(group_mul(e.spec, g, x));
    return FiniteSubset::of(e.spec, std::move(out));
}

FiniteSubset ball(const GroupSpec& spec, const FiniteSubset& gens, int n) {
    if (!(gens.spec == spec)) throw Error("SpecMismatch", "generators from a different group");
    FiniteSubset sym = set_union(set_union(gens, set_inverse(gens)),
                                 FiniteSubset::singleton_identity(spec));
    return set_power(sym, n);
}

FiniteSubset standard_generators(const GroupSpec& spec) {
    std::vector<GroupElement> gens;
    if (spec.kind == GroupKind::Free) {
        for (int i = 1; i <= spec.rank; ++i) gens.push_back(GroupElement{{i}});
    } else {
        for (int i = 0; i < spec.rank; ++i) {
            GroupElement e = identity(spec);
            e.data[i] = 1;
            if (spec.kind == GroupKind::CyclicProduct && spec.orders[i] == 1) continue;
            gens.push_back(e);
        }
    }
    return FiniteSubset::of(spec, std::move(gens));
}

static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

CosetData coset_data(const GroupSpec& spec, const std::vector<GroupElement>& generators) {
    if (spec.kind != GroupKind::FreeAbelian)
        throw Error("UnsupportedGroup", "coset data requires a free abelian group");
    const int d = spec.rank;
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& g : generators) {
        validate_element(spec, g);
        m.push_back(g.data);
    }

    // row-style Hermite normal form via euclidean row reduction
    std::vector<std::vector<std::int64_t>> h(d, std::vector<std::int64_t>(d, 0));
    int row = 0;
    for (int col = 0; col < d && row < static_cast<int>(m.size()); ++col) {
        for (;;) {
            int piv = -1;
            for (int r = row; r < static_cast<int>(m.size()); ++r)
                if (m[r][col] != 0 && (piv < 0 || std::abs(m[r][col]) < std::abs(m[piv][col])))
                    piv = r;
            if (piv < 0) break;
            std::swap(m[row], m[piv]);
            bool clean = true;
            for (int r = row + 1; r < static_cast<int>(m.size()); ++r) {
                if (m[r][col] == 0) continue;
                std::int64_t q = floor_div(m[r][col], m[row][col]);
                for (int c = 0; c < d; ++c) m[r][c] -= q * m[row][c];
                if (m[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[row][col] == 0) continue;
        if (m[row][col] < 0)
            for (int c = 0; c < d; ++c) m[row][c] = -m[row][c];
        ++row;
    }
    // pivots must fill the diagonal, else the subgroup has infinite index
    std::vector<std::vector<std::int64_t>> basis;
    for (int r = 0; r < row; ++r) basis.push_back(m[r]);
    int prow = 0;
    for (int col = 0; col < d; ++col) {
        if (prow >= static_cast<int>(basis.size()) || basis[prow][col] == 0)
            throw Error("InfiniteIndex", "generators do not span a finite-index sublattice");
        ++prow;
    }
    for (int i = 0; i < d; ++i) h[i] = basis[i];
    // reduce entries above each pivot into [0, pivot)
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < i; ++k) {
            std::int64_t q = floor_div(h[k][i], h[i][i]);
            if (q != 0)
                for (int c = 0; c < d; ++c) h[k][c] -= q * h[i][c];
        }

    CosetData cd;
    cd.spec = spec;
    cd.hnf = h;
    cd.index = 1;
    for (int i = 0; i < d; ++i) cd.index *= h[i][i];
    if (cd.index > (1 << 20)) throw Error("Overflow", "subgroup index too large");

    std::vector<GroupElement> reps;
    reps.reserve(static_cast<std::size_t>(cd.index));
    GroupElement cur = identity(spec);
    for (;;) {
        reps.push_back(cur);
        int i = d - 1;
        while (i >= 0) {
            if (++cur.data[i] < h[i][i]) break;
            cur.data[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    std::sort(reps.begin(), reps.end(), [&](const GroupElement& x, const GroupElement& y) {
        return canonical_less(spec, x, y);
    });
    cd.reps = std::move(reps);
    return cd;
}

GroupElement CosetData::reduce(const GroupElement& g) const {
    GroupElement t = g;
    const int d = spec.rank;
    for (int i = 0; i < d; ++i) {
        std::int64_t q = floor_div(t.data[i], hnf[i][i]);
        if (q != 0)
            for (int c = i; c < d; ++c) t.data[c] -= q * hnf[i][c];
    }
    return t;
}

std::pair<GroupElement, GroupElement> CosetData::decompose(const GroupElement& g) const {
    GroupElement t = reduce(g);
    GroupElement h = g;
    for (int i = 0; i < spec.rank; ++i) h.data[i] -= t.data[i];
    return {h, t};
}

std::optional<std::vector<std::int64_t>> CosetData::subgroup_coords(const GroupElement& g) const {
    const int d = spec.rank;
    GroupElement w = g;
    std::vector<std::int64_t> coords(d, 0);
    for (int i = 0; i < d; ++i) {
        std::int64_t q = floor_div(w.data[i], hnf[i][i]);
        coords[i] = q;
        for (int c = i; c < d; ++c) w.data[c] -= q * hnf[i][c];
    }
    for (int i = 0; i < d; ++i)
        if (w.data[i] != 0) return std::nullopt;
    return coords;
}

std::size_t CosetData::rep_index(const GroupElement& g) const {
    GroupElement t = reduce(g);
    auto it = std::lower_bound(reps.begin(), reps.end(), t,
                               [&](const GroupElement& x, const GroupElement& y) {
                                   return canonical_less(spec, x, y);
                               });
    return static_cast<std::size_t>(it - reps.begin());
}

}  // namespace lsl
