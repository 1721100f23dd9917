#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lsl/sft.hpp"

namespace lsl {

// Letters of the finite alphabet K^dim (K = F_p) encoded as sum v_i p^i.
std::uint64_t alphabet_size(const Field& f, int dim);  // p^dim, guarded
std::uint64_t letter_encode(const Field& f, int dim, const Scalar* v);
std::vector<Scalar> letter_decode(const Field& f, int dim, std::uint64_t code);

// Finite labeled graph presenting a subshift over Z: bi-infinite label
// sequences along bi-infinite paths. Finite path labels are exactly the
// subshift's words once the graph is essential.
struct LabeledGraph {
    std::uint64_t alphabet = 0;
    // adj[s] = (label, target)
    std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> adj;
    std::size_t num_states() const { return adj.size(); }
};

// Largest subgraph in which every state has a predecessor and a successor.
// keep (optional out): original indices of the surviving states.
LabeledGraph trim_essential(const LabeledGraph& g, std::vector<std::uint32_t>* keep = nullptr);

// Complete deterministic automaton; used as the canonical form for comparing
// factor languages (hence subshifts) over Z.
struct Dfa {
    std::uint64_t alphabet = 0;
    std::uint32_t start = 0;
    std::vector<std::vector<std::uint32_t>> next;
    std::vector<bool> accepting;
    bool operator==(const Dfa&) const = default;
};

// Subset construction from the full state set: a word is accepted iff it
// labels some path, i.e. iff it belongs to the factor language.
Dfa language_dfa(const LabeledGraph& g);
Dfa minimize_dfa(const Dfa& d);
// Minimize, then renumber by BFS from the start state with ascending labels:
// equal canonical DFAs <=> equal languages <=> equal subshifts.
Dfa canonical_dfa(const Dfa& d);
Dfa all_words_dfa(std::uint64_t alphabet);

// De Bruijn-style block presentation of an SFT over Z: states are blocks of
// `span` consecutive letters, an edge appends one letter and enforces the
// defining constraint on the newest positions, and trimming removes every
// block that cannot sit on a bi-infinite admissible path.
struct BlockPresentation {
    int span = 0;
    std::uint64_t alphabet = 0;
    std::vector<std::uint64_t> state_codes;  // block contents, base |alphabet|
    LabeledGraph graph;                      // labels = appended letter
};
BlockPresentation sft_presentation(const LinearSFT& s, int min_span = 1);

// Presentation of the image subshift tau(Sigma) over Z (finite field):
// the SFT presentation of Sigma relabeled by the local output of tau.
struct SoficImage {
    LabeledGraph graph;
    Dfa canonical;

    static SoficImage of(const LinearSFT& sigma, const LinearCA& t);
    static SoficImage of_full_shift(const LinearCA& t);

    bool equals(const SoficImage& o) const { return canonical == o.canonical; }
    bool is_full_shift() const;
};

// tau(A^Z) = A^Z, decided exactly.
bool sofic_image_equals_full(const LinearCA& t);

}  // namespace lsl
