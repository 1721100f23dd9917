#include "lsl/group_ring.hpp"

#include <algorithm>

namespace lsl {

static void normalize_terms(const GroupSpec& spec,
                            std::vector<std::pair<GroupElement, Scalar>>& terms) {
    std::sort(terms.begin(), terms.end(),
              [&](const auto& x, const auto& y) { return canonical_less(spec, x.first, y.first); });
    std::vector<std::pair<GroupElement, Scalar>> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = out.back().second + t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.second.is_zero(); }),
              out.end());
    terms = std::move(out);
}

GroupRingElement GroupRingElement::zero(const Field& f, const GroupSpec& s) {
    return GroupRingElement{f, s, {}};
}

GroupRingElement GroupRingElement::delta(const Field& f, const GroupSpec& s, const GroupElement& g) {
    validate_element(s, g);
    return GroupRingElement{f, s, {{g, Scalar::one(f)}}};
}

GroupRingElement GroupRingElement::from_terms(const Field& f, const GroupSpec& s,
                                              std::vector<std::pair<GroupElement, Scalar>> terms) {
    for (auto& [g, c] : terms) {
        validate_element(s, g);
        if (!(c.field() == f)) throw Error("FieldMismatch", "term coefficient from wrong field");
    }
    normalize_terms(s, terms);
    return GroupRingElement{f, s, std::move(terms)};
}

Scalar GroupRingElement::coefficient(const GroupElement& g) const {
    for (const auto& [h, c] : terms)
        if (h == g) return c;
    return Scalar::zero(field);
}

FiniteSubset GroupRingElement::support() const {
    std::vector<GroupElement> elems;
    elems.reserve(terms.size());
    for (const auto& [g, c] : terms) elems.push_back(g);
    return FiniteSubset::of(spec, std::move(elems));
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
    return field == o.field && spec == o.spec && terms == o.terms;
}

std::string GroupRingElement::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s += " + ";
        s += terms[i].second.to_string() + "*d" + element_to_string(spec, terms[i].first);
    }
    return s;
}

static void check_compatible(const GroupRingElement& a, const GroupRingElement& b) {
    if (!(a.field == b.field)) throw Error("FieldMismatch", "group ring operands over different fields");
    if (!(a.spec == b.spec)) throw Error("SpecMismatch", "group ring operands over different groups");
}

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    auto terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    normalize_terms(a.spec, terms);
    return GroupRingElement{a.field, a.spec, std::move(terms)};
}

GroupRingElement gr_neg(const GroupRingElement& a) {
    GroupRingElement r = a;
    for (auto& [g, c] : r.terms) c = -c;
    return r;
}

GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b) {
    return gr_add(a, gr_neg(b));
}

GroupRingElement gr_scalar_mul(const Scalar& c, const GroupRingElement& a) {
    if (!(c.field() == a.field)) throw Error("FieldMismatch", "scalar from wrong field");
    if (c.is_zero()) return GroupRingElement::zero(a.field, a.spec);
    GroupRingElement r = a;
    for (auto& [g, x] : r.terms) x = x * c;
    return r;
}

GroupRingElement gr_convolve(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    std::vector<std::pair<GroupElement, Scalar>> terms;
    terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& [g, x] : a.terms)
        for (const auto& [h, y] : b.terms)
            terms.emplace_back(group_mul(a.spec, g, h), x * y);
    normalize_terms(a.spec, terms);
    return GroupRingElement{a.field, a.spec, std::move(terms)};
}

GroupRingElement gr_involution(const GroupRingElement& a) {
    std::vector<std::pair<GroupElement, Scalar>> terms;
    terms.reserve(a.terms.size());
    for (const auto& [g, c] : a.terms) terms.emplace_back(group_inv(a.spec, g), c);
    normalize_terms(a.spec, terms);
    return GroupRingElement{a.field, a.spec, std::move(terms)};
}

GrMatrix GrMatrix::zero(const Field& f, const GroupSpec& s, int dim) {
    if (dim < 1) throw Error("SpecMismatch", "matrix dimension must be >= 1");
    GrMatrix m;
    m.field = f;
    m.spec = s;
    m.dim = dim;
    m.entries.assign(static_cast<std::size_t>(dim) * dim, GroupRingElement::zero(f, s));
    return m;
}

GrMatrix GrMatrix::identity(const Field& f, const GroupSpec& s, int dim) {
    GrMatrix m = zero(f, s, dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = GroupRingElement::delta(f, s, lsl::identity(s));
    return m;
}

bool GrMatrix::is_zero() const {
    for (const auto& e : entries)
        if (!e.is_zero()) return false;
    return true;
}

bool GrMatrix::operator==(const GrMatrix& o) const {
    return field == o.field && spec == o.spec && dim == o.dim && entries == o.entries;
}

FiniteSubset GrMatrix::support_with_identity() const {
    std::vector<GroupElement> elems{lsl::identity(spec)};
    for (const auto& e : entries)
        for (const auto& [g, c] : e.terms) elems.push_back(g);
    return FiniteSubset::of(spec, std::move(elems));
}

static void check_compatible(const GrMatrix& a, const GrMatrix& b) {
    if (!(a.field == b.field)) throw Error("FieldMismatch", "matrices over different fields");
    if (!(a.spec == b.spec) || a.dim != b.dim)
        throw Error("SpecMismatch", "matrices over different groups or dimensions");
}

GrMatrix mat_add(const GrMatrix& a, const GrMatrix& b) {
    check_compatible(a, b);
    GrMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i)
        r.entries[i] = gr_add(r.entries[i], b.entries[i]);
    return r;
}

GrMatrix mat_mul(const GrMatrix& a, const GrMatrix& b) {
    check_compatible(a, b);
    GrMatrix r = GrMatrix::zero(a.field, a.spec, a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < a.dim; ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) = gr_add(r.at(i, j), gr_convolve(a.at(i, k), b.at(k, j)));
            }
        }
    return r;
}

GrMatrix mat_scalar_mul(const GroupRingElement& c, const GrMatrix& a) {
    GrMatrix r = a;
    for (auto& e : r.entries) e = gr_convolve(c, e);
    return r;
}

GrMatrix mat_pow(const GrMatrix& a, int n) {
    if (n < 0) throw Error("SpecMismatch", "matrix power needs n >= 0");
    GrMatrix r = GrMatrix::identity(a.field, a.spec, a.dim);
    for (int i = 0; i < n; ++i) r = mat_mul(r, a);
    return r;
}

GrMatrix transpose_involute(const GrMatrix& a) {
    GrMatrix r = GrMatrix::zero(a.field, a.spec, a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) r.at(i, j) = gr_involution(a.at(j, i));
    return r;
}

}  // namespace lsl
