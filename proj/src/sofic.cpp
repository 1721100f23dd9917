#include "lsl/sofic.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lsl {

namespace {

constexpr std::uint64_t kMaxStates = std::uint64_t(1) << 20;
constexpr std::uint64_t kMaxEdges = std::uint64_t(1) << 22;
constexpr std::size_t kMaxSubsets = std::size_t(1) << 18;

std::int64_t checked_pow(std::int64_t base, int e, std::uint64_t limit, const char* what) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= static_cast<std::uint64_t>(base);
        if (r > limit) throw Error("Overflow", std::string(what) + " too large");
    }
    return static_cast<std::int64_t>(r);
}

void require_z_fp(const Field& f, const GroupSpec& s) {
    if (s.kind != GroupKind::FreeAbelian || s.rank != 1)
        throw Error("UnsupportedGroup", "block presentations need the group Z");
    if (f.kind != FieldKind::Fp)
        throw Error("AlphabetInfinite", "a finite alphabet needs a finite coefficient field");
}

}  // namespace

std::uint64_t alphabet_size(const Field& f, int dim) {
    if (f.kind != FieldKind::Fp)
        throw Error("AlphabetInfinite", "a finite alphabet needs a finite coefficient field");
    return static_cast<std::uint64_t>(checked_pow(f.p, dim, 1 << 20, "alphabet"));
}

std::uint64_t letter_encode(const Field& f, int dim, const Scalar* v) {
    std::uint64_t code = 0, w = 1;
    for (int j = 0; j < dim; ++j) {
        code += static_cast<std::uint64_t>(v[j].residue()) * w;
        w *= static_cast<std::uint64_t>(f.p);
    }
    return code;
}

std::vector<Scalar> letter_decode(const Field& f, int dim, std::uint64_t code) {
    std::vector<Scalar> v;
    v.reserve(dim);
    for (int j = 0; j < dim; ++j) {
        v.push_back(Scalar::from_int(f, static_cast<std::int64_t>(code % f.p)));
        code /= static_cast<std::uint64_t>(f.p);
    }
    return v;
}

LabeledGraph trim_essential(const LabeledGraph& g, std::vector<std::uint32_t>* keep) {
    const std::size_t n = g.num_states();
    std::vector<std::size_t> outdeg(n, 0), indeg(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        outdeg[s] = g.adj[s].size();
        for (const auto& [lab, t] : g.adj[s]) indeg[t]++;
    }
    std::vector<bool> alive(n, true);
    std::vector<std::uint32_t> work;
    for (std::uint32_t s = 0; s < n; ++s)
        if (outdeg[s] == 0 || indeg[s] == 0) work.push_back(s);
    // reverse adjacency for decrementing in-degrees of predecessors' targets
    std::vector<std::vector<std::uint32_t>> radj(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (const auto& [lab, t] : g.adj[s]) radj[t].push_back(s);
    while (!work.empty()) {
        std::uint32_t s = work.back();
        work.pop_back();
        if (!alive[s]) continue;
        alive[s] = false;
        for (const auto& [lab, t] : g.adj[s])
            if (alive[t] && --indeg[t] == 0) work.push_back(t);
        for (std::uint32_t p : radj[s])
            if (alive[p] && --outdeg[p] == 0) work.push_back(p);
    }
    std::vector<std::uint32_t> remap(n, UINT32_MAX);
    std::vector<std::uint32_t> kept;
    for (std::uint32_t s = 0; s < n; ++s)
        if (alive[s]) {
            remap[s] = static_cast<std::uint32_t>(kept.size());
            kept.push_back(s);
        }
    LabeledGraph out;
    out.alphabet = g.alphabet;
    out.adj.resize(kept.size());
    for (std::uint32_t s : kept)
        for (const auto& [lab, t] : g.adj[s])
            if (alive[t]) out.adj[remap[s]].emplace_back(lab, remap[t]);
    if (keep) *keep = std::move(kept);
    return out;
}

Dfa language_dfa(const LabeledGraph& g) {
    if (g.alphabet == 0 || g.alphabet > 4096)
        throw Error("Overflow", "alphabet unsuitable for determinization");
    Dfa d;
    d.alphabet = g.alphabet;
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> subsets;
    auto intern = [&](std::vector<std::uint32_t> s) -> std::uint32_t {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        if (subsets.size() >= kMaxSubsets) throw Error("Overflow", "determinization too large");
        std::uint32_t id = static_cast<std::uint32_t>(subsets.size());
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };
    std::vector<std::uint32_t> all(g.num_states());
    std::iota(all.begin(), all.end(), 0u);
    d.start = intern(std::move(all));
    for (std::uint32_t cur = 0; cur < subsets.size(); ++cur) {
        std::map<std::uint64_t, std::vector<std::uint32_t>> buckets;
        for (std::uint32_t s : subsets[cur])
            for (const auto& [lab, t] : g.adj[s]) buckets[lab].push_back(t);
        std::vector<std::uint32_t> row(g.alphabet);
        for (std::uint64_t a = 0; a < g.alphabet; ++a) {
            auto it = buckets.find(a);
            if (it == buckets.end()) {
                row[a] = intern({});
            } else {
                auto& v = it->second;
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
                row[a] = intern(std::move(v));
            }
        }
        d.next.push_back(std::move(row));
        d.accepting.push_back(!subsets[cur].empty());
    }
    return d;
}

Dfa minimize_dfa(const Dfa& d) {
    const std::size_t n = d.next.size();
    std::vector<std::uint32_t> cls(n);
    for (std::size_t s = 0; s < n; ++s) cls[s] = d.accepting[s] ? 1 : 0;
    std::size_t classes = 2;
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig;
        std::vector<std::uint32_t> next_cls(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::uint32_t> key;
            key.reserve(d.alphabet + 1);
            key.push_back(cls[s]);
            for (std::uint64_t a = 0; a < d.alphabet; ++a) key.push_back(cls[d.next[s][a]]);
            auto [it, inserted] = sig.emplace(std::move(key), static_cast<std::uint32_t>(sig.size()));
            next_cls[s] = it->second;
        }
        if (sig.size() == classes && classes > 0) {
            cls = std::move(next_cls);
            break;
        }
        if (sig.size() == classes) break;
        classes = sig.size();
        cls = std::move(next_cls);
    }
    Dfa m;
    m.alphabet = d.alphabet;
    m.start = cls[d.start];
    m.next.assign(classes, std::vector<std::uint32_t>(d.alphabet, 0));
    m.accepting.assign(classes, false);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::uint64_t a = 0; a < d.alphabet; ++a) m.next[cls[s]][a] = cls[d.next[s][a]];
        m.accepting[cls[s]] = d.accepting[s];
    }
    return m;
}

Dfa canonical_dfa(const Dfa& d) {
    Dfa m = minimize_dfa(d);
    const std::size_t n = m.next.size();
    std::vector<std::uint32_t> order(n, UINT32_MAX);
    std::vector<std::uint32_t> bfs{m.start};
    order[m.start] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (std::uint64_t a = 0; a < m.alphabet; ++a) {
            std::uint32_t t = m.next[bfs[i]][a];
            if (order[t] == UINT32_MAX) {
                order[t] = static_cast<std::uint32_t>(bfs.size());
                bfs.push_back(t);
            }
        }
    Dfa c;
    c.alphabet = m.alphabet;
    c.start = 0;
    c.next.assign(bfs.size(), std::vector<std::uint32_t>(m.alphabet, 0));
    c.accepting.assign(bfs.size(), false);
    for (std::uint32_t i = 0; i < bfs.size(); ++i) {
        for (std::uint64_t a = 0; a < m.alphabet; ++a) c.next[i][a] = order[m.next[bfs[i]][a]];
        c.accepting[i] = m.accepting[bfs[i]];
    }
    return c;
}

Dfa all_words_dfa(std::uint64_t alphabet) {
    Dfa d;
    d.alphabet = alphabet;
    d.start = 0;
    d.next.assign(1, std::vector<std::uint32_t>(alphabet, 0));
    d.accepting.assign(1, true);
    return d;
}

BlockPresentation sft_presentation(const LinearSFT& s, int min_span) {
    require_z_fp(s.field, s.spec);
    const int dim = s.dim;
    const std::int64_t p = s.field.p;
    const std::uint64_t a_sz = alphabet_size(s.field, dim);

    std::int64_t d0 = s.d_window.elems.front().data[0];
    std::int64_t d1 = s.d_window.elems.back().data[0];
    const int m = static_cast<int>(d1 - d0);
    const int span = std::max({min_span, m, 1});

    std::uint64_t n_states = 1;
    for (int i = 0; i < span; ++i) {
        n_states *= a_sz;
        if (n_states > kMaxStates) throw Error("Overflow", "block state space too large");
    }
    if (n_states * a_sz > kMaxEdges) throw Error("Overflow", "block edge space too large");

    ScalarMatrix ann = annihilator(s.w_basis);
    // contrib[r][di][letter] = functional row r paired with a letter placed at
    // D's position di, reduced mod p
    const std::size_t n_rows = ann.rows(), n_d = s.d_window.size();
    std::vector<std::int64_t> contrib(n_rows * n_d * a_sz, 0);
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t di = 0; di < n_d; ++di)
            for (std::uint64_t code = 0; code < a_sz; ++code) {
                std::int64_t acc = 0;
                std::uint64_t c = code;
                for (int j = 0; j < dim; ++j) {
                    acc += ann.at(r, di * dim + j).residue() * static_cast<std::int64_t>(c % p);
                    c /= p;
                }
                contrib[(r * n_d + di) * a_sz + code] = acc % p;
            }
    // position inside an edge word (letters 0..span) of each D element, with
    // the window aligned so its rightmost element sits on the newest letter
    std::vector<int> pos(n_d);
    for (std::size_t di = 0; di < n_d; ++di)
        pos[di] = span - static_cast<int>(d1 - s.d_window.elems[di].data[0]);

    std::uint64_t drop = n_states / a_sz;  // a_sz^(span-1)
    LabeledGraph g;
    g.alphabet = a_sz;
    g.adj.resize(n_states);
    std::vector<std::uint64_t> letters(span + 1);
    for (std::uint64_t u = 0; u < n_states; ++u) {
        std::uint64_t c = u;
        for (int k = 0; k < span; ++k) {
            letters[k] = c % a_sz;
            c /= a_sz;
        }
        for (std::uint64_t b = 0; b < a_sz; ++b) {
            letters[span] = b;
            bool ok = true;
            for (std::size_t r = 0; r < n_rows && ok; ++r) {
                std::int64_t acc = 0;
                for (std::size_t di = 0; di < n_d; ++di)
                    acc += contrib[(r * n_d + di) * a_sz + letters[pos[di]]];
                ok = acc % p == 0;
            }
            if (ok) g.adj[u].emplace_back(b, static_cast<std::uint32_t>(u / a_sz + b * drop));
        }
    }
    BlockPresentation pres;
    pres.span = span;
    pres.alphabet = a_sz;
    std::vector<std::uint32_t> keep;
    pres.graph = trim_essential(g, &keep);
    pres.state_codes.assign(keep.begin(), keep.end());
    return pres;
}

SoficImage SoficImage::of(const LinearSFT& sigma, const LinearCA& t) {
    require_z_fp(t.field, t.spec);
    if (!(sigma.field == t.field) || !(sigma.spec == t.spec) || sigma.dim != t.dim)
        throw Error("SpecMismatch", "automaton and subshift disagree");
    const int dim = t.dim;
    const std::int64_t p = t.field.p;
    const std::uint64_t a_sz = alphabet_size(t.field, dim);

    // memory hull of tau
    std::int64_t a0 = 0, a1 = 0;
    bool any = false;
    for (const auto& e : t.matrix.entries)
        for (const auto& [g, c] : e.terms) {
            if (!any) {
                a0 = a1 = g.data[0];
                any = true;
            } else {
                a0 = std::min(a0, g.data[0]);
                a1 = std::max(a1, g.data[0]);
            }
        }
    const int width = any ? static_cast<int>(a1 - a0) : 0;

    BlockPresentation pres = sft_presentation(sigma, std::max(1, width));
    const int span = pres.span;

    // out[k][letter] = block at exponent a0+k applied to the letter, as a
    // residue vector
    std::vector<std::vector<std::int64_t>> out(
        static_cast<std::size_t>(width) + 1, std::vector<std::int64_t>(a_sz * dim, 0));
    if (any)
        for (int k = 0; k <= width; ++k) {
            ScalarMatrix b = t.block_at(GroupElement{{a0 + k}});
            for (std::uint64_t code = 0; code < a_sz; ++code) {
                std::uint64_t c = code;
                std::vector<std::int64_t> x(dim);
                for (int j = 0; j < dim; ++j) {
                    x[j] = static_cast<std::int64_t>(c % p);
                    c /= p;
                }
                for (int i = 0; i < dim; ++i) {
                    std::int64_t acc = 0;
                    for (int j = 0; j < dim; ++j) acc += b.at(i, j).residue() * x[j];
                    out[k][code * dim + i] = acc % p;
                }
            }
        }

    SoficImage img;
    img.graph.alphabet = a_sz;
    img.graph.adj.resize(pres.graph.num_states());
    std::vector<std::uint64_t> letters(span + 1);
    for (std::uint32_t u = 0; u < pres.graph.num_states(); ++u) {
        std::uint64_t code = pres.state_codes[u];
        for (int k = 0; k < span; ++k) {
            letters[k] = code % a_sz;
            code /= a_sz;
        }
        for (const auto& [b, v] : pres.graph.adj[u]) {
            letters[span] = b;
            std::uint64_t lab = 0, w = 1;
            for (int i = 0; i < dim; ++i) {
                std::int64_t acc = 0;
                for (int k = 0; k <= width; ++k)
                    acc += out[k][letters[span - width + k] * dim + i];
                lab += static_cast<std::uint64_t>(acc % p) * w;
                w *= static_cast<std::uint64_t>(p);
            }
            img.graph.adj[u].emplace_back(lab, v);
        }
    }
    img.canonical = canonical_dfa(language_dfa(img.graph));
    return img;
}

SoficImage SoficImage::of_full_shift(const LinearCA& t) {
    return of(LinearSFT::full_shift(t.field, t.spec, t.dim), t);
}

bool SoficImage::is_full_shift() const {
    return canonical == canonical_dfa(all_words_dfa(graph.alphabet));
}

bool sofic_image_equals_full(const LinearCA& t) {
    return SoficImage::of_full_shift(t).is_full_shift();
}

}  // namespace lsl
