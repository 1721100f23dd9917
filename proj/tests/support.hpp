#pragma once

// Shared factories for the unit tests. Everything deterministic; random data
// always comes from a caller-seeded mt19937_64.

#include <cstdint>
#include <random>
#include <vector>

#include "lsl/lca.hpp"
#include "lsl/sft.hpp"

namespace ts {

inline lsl::Field f2() { return lsl::Field::fp(2); }
inline lsl::Field f3() { return lsl::Field::fp(3); }
inline lsl::Field f5() { return lsl::Field::fp(5); }
inline lsl::Field qq() { return lsl::Field::rationals(); }

inline lsl::GroupSpec z() { return lsl::GroupSpec::free_abelian(1); }
inline lsl::GroupSpec z2() { return lsl::GroupSpec::free_abelian(2); }
inline lsl::GroupSpec fr2() { return lsl::GroupSpec::free_group(2); }
inline lsl::GroupSpec c2() { return lsl::GroupSpec::cyclic_product({2}); }
inline lsl::GroupSpec c23() { return lsl::GroupSpec::cyclic_product({2, 3}); }

inline lsl::GroupElement ge(std::vector<std::int64_t> v) { return lsl::GroupElement{std::move(v)}; }

inline lsl::FiniteSubset interval(std::int64_t lo, std::int64_t hi) {
    std::vector<lsl::GroupElement> e;
    for (std::int64_t k = lo; k <= hi; ++k) e.push_back(ge({k}));
    return lsl::FiniteSubset::of(z(), std::move(e));
}

inline lsl::FiniteSubset box2(std::int64_t lo0, std::int64_t hi0, std::int64_t lo1,
                              std::int64_t hi1) {
    std::vector<lsl::GroupElement> e;
    for (std::int64_t a = lo0; a <= hi0; ++a)
        for (std::int64_t b = lo1; b <= hi1; ++b) e.push_back(ge({a, b}));
    return lsl::FiniteSubset::of(z2(), std::move(e));
}

// Laurent element over Z: sum of c_k t^k given as (exponent, coefficient) pairs.
inline lsl::GroupRingElement laurent(const lsl::Field& f,
                                     std::vector<std::pair<std::int64_t, std::int64_t>> terms) {
    std::vector<std::pair<lsl::GroupElement, lsl::Scalar>> ts;
    for (auto& [e, c] : terms) ts.emplace_back(ge({e}), lsl::Scalar::from_int(f, c));
    return lsl::GroupRingElement::from_terms(f, z(), std::move(ts));
}

// d = 1 automaton over Z with the given Laurent symbol.
inline lsl::LinearCA ca1(const lsl::Field& f,
                         std::vector<std::pair<std::int64_t, std::int64_t>> terms) {
    lsl::GrMatrix m = lsl::GrMatrix::zero(f, z(), 1);
    m.at(0, 0) = laurent(f, std::move(terms));
    return lsl::LinearCA::from_matrix(std::move(m));
}

inline lsl::Scalar rnd_scalar(const lsl::Field& f, std::mt19937_64& rng) {
    if (f.kind == lsl::FieldKind::Fp)
        return lsl::Scalar::from_int(f, static_cast<std::int64_t>(rng() % f.p));
    return lsl::Scalar::from_int(f, static_cast<std::int64_t>(rng() % 7) - 3);
}

inline lsl::GroupRingElement rnd_gr(const lsl::Field& f, const lsl::GroupSpec& s,
                                    const lsl::FiniteSubset& support, std::mt19937_64& rng) {
    std::vector<std::pair<lsl::GroupElement, lsl::Scalar>> terms;
    for (const auto& g : support.elems) terms.emplace_back(g, rnd_scalar(f, rng));
    return lsl::GroupRingElement::from_terms(f, s, std::move(terms));
}

inline lsl::GrMatrix rnd_mat(const lsl::Field& f, const lsl::GroupSpec& s, int dim,
                             const lsl::FiniteSubset& support, std::mt19937_64& rng) {
    lsl::GrMatrix m = lsl::GrMatrix::zero(f, s, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = rnd_gr(f, s, support, rng);
    return m;
}

inline lsl::FiniteConfig rnd_config(const lsl::Field& f, const lsl::GroupSpec& s, int dim,
                                    const lsl::FiniteSubset& support, std::mt19937_64& rng) {
    std::vector<std::pair<lsl::GroupElement, std::vector<lsl::Scalar>>> cells;
    for (const auto& g : support.elems) {
        std::vector<lsl::Scalar> v;
        for (int i = 0; i < dim; ++i) v.push_back(rnd_scalar(f, rng));
        cells.emplace_back(g, std::move(v));
    }
    return lsl::FiniteConfig::of(f, s, dim, std::move(cells));
}

template <typename Fn>
std::string error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const lsl::Error& e) {
        return e.code;
    }
    return "";
}

}  // namespace ts
