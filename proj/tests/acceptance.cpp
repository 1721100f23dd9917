// Acceptance harness: one criterion per invocation, selected by argv[1]
// (1..11). Prints exactly one "criterion N PASS|FAIL" line on stdout and
// reports details of any failure on stderr.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lsl/endo_lab.hpp"
#include "lsl/sofic.hpp"
#include "lsl/spacetime.hpp"
#include "support.hpp"

using namespace lsl;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "  FAILED: " << what << "\n";
    }
}

FiniteSubset pick_support(const FiniteSubset& pool, std::size_t max_terms, std::mt19937_64& rng) {
    std::vector<GroupElement> chosen;
    std::size_t want = 1 + rng() % max_terms;
    for (std::size_t i = 0; i < want; ++i) chosen.push_back(pool.elems[rng() % pool.size()]);
    return FiniteSubset::of(pool.spec, std::move(chosen));
}

GrMatrix sparse_rnd_mat(const Field& f, const GroupSpec& s, int dim, const FiniteSubset& pool,
                        std::size_t max_terms, std::mt19937_64& rng) {
    GrMatrix m = GrMatrix::zero(f, s, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m.at(i, j) = ts::rnd_gr(f, s, pick_support(pool, max_terms, rng), rng);
    return m;
}

GrMatrix strict_upper(const Field& f, const GroupSpec& s, int dim, const FiniteSubset& pool,
                      std::mt19937_64& rng) {
    GrMatrix m = GrMatrix::zero(f, s, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            m.at(i, j) = ts::rnd_gr(f, s, pick_support(pool, 2, rng), rng);
    return m;
}

// ---------------------------------------------------------------------------
// criterion 1: three independent nilpotency deciders agree

bool criterion_1() {
    std::mt19937_64 rng(1001);
    std::vector<Field> fields{ts::f2(), ts::f3(), ts::qq()};
    std::vector<GroupSpec> groups{ts::z(), ts::z2(), ts::c23()};
    int tested = 0;
    for (const Field& f : fields)
        for (const GroupSpec& s : groups) {
            FiniteSubset pool = ball(s, standard_generators(s), 2);
            for (int it = 0; it < 24; ++it) {
                int dim = 1 + it % 3;
                if (f.kind == FieldKind::Rational && dim == 3) dim = 2;
                GrMatrix m = (it % 3 == 1) ? strict_upper(f, s, dim, pool, rng)
                                           : sparse_rnd_mat(f, s, dim, pool, 3, rng);
                LinearCA t = LinearCA::from_matrix(std::move(m));
                ++tested;

                NilpotencyReport main = is_nilpotent(t);
                NilpotencyReport lim = nilpotency_via_limit_set(t);
                expect(main.verdict != Verdict::Unknown, "matrix-route verdict inconclusive");
                expect(lim.verdict != Verdict::Unknown, "limit-set verdict inconclusive");
                expect(main.verdict == lim.verdict,
                       "matrix route and limit-set route disagree (" + main.mode + ")");
                if (main.verdict == Verdict::Yes && main.index && lim.index)
                    expect(*main.index == *lim.index, "nilpotency indices disagree");

                NilpotencyReport pow = is_nilpotent(t, "power", 6);
                if (pow.verdict != Verdict::Unknown)
                    expect(pow.verdict == main.verdict, "power mode disagrees when conclusive");
            }
        }
    expect(tested >= 200, "fewer than 200 instances were generated");
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criterion 2: composition order matches evaluation order

bool criterion_2() {
    std::mt19937_64 rng(1002);
    Field f = ts::f2();
    FiniteSubset pool = ts::interval(-2, 2);
    for (int it = 0; it < 200; ++it) {
        int dim = 1 + it % 3;
        LinearCA a = LinearCA::from_matrix(sparse_rnd_mat(f, ts::z(), dim, pool, 3, rng));
        LinearCA b = LinearCA::from_matrix(sparse_rnd_mat(f, ts::z(), dim, pool, 3, rng));
        LinearCA ab = compose(a, b);
        for (int k = 0; k < 20; ++k) {
            FiniteConfig x = ts::rnd_config(f, ts::z(), dim, ts::interval(-3, 3), rng);
            if (!(apply_finite(ab, x) == apply_finite(a, apply_finite(b, x)))) {
                expect(false, "compose(a,b) disagrees with a after b at instance " +
                                  std::to_string(it));
                return false;
            }
        }
    }
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criteria 3 and 4 share one batch of generated subshifts over F_2 and Z

struct GeneratedSft {
    LinearSFT sft;
    std::vector<std::int64_t> d_cells;      // sorted
    int dim = 0;
    std::vector<std::uint32_t> w_rows;      // raw generator bitmasks over |D|*dim bits
    int omega_len = 0;
};

std::vector<GeneratedSft> make_sft_batch() {
    std::mt19937_64 rng(1003);
    Field f = ts::f2();
    std::vector<GeneratedSft> out;
    for (int inst = 0; inst < 50; ++inst) {
        int dim = inst < 30 ? 1 : 2;
        std::set<std::int64_t> cells;
        std::size_t want = dim == 1 ? 2 + rng() % 2 : 1 + rng() % 2;
        while (cells.size() < want) cells.insert(static_cast<std::int64_t>(rng() % 5) - 2);
        std::vector<std::int64_t> d_cells(cells.begin(), cells.end());
        int width = static_cast<int>(d_cells.size()) * dim;

        std::vector<std::uint32_t> rows;
        if (inst % 10 == 9) {
            for (int b = 0; b < width; ++b) rows.push_back(1u << b);  // full pattern space
        } else {
            std::size_t nrows = 1 + rng() % static_cast<std::size_t>(width);
            for (std::size_t r = 0; r < nrows; ++r) {
                std::uint32_t row = static_cast<std::uint32_t>(rng()) & ((1u << width) - 1);
                if (row) rows.push_back(row);
            }
            if (rows.empty()) rows.push_back(1);
        }

        ScalarMatrix w(f, rows.size(), width);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int b = 0; b < width; ++b)
                if (rows[r] >> b & 1) w.at(r, b) = Scalar::one(f);
        std::vector<GroupElement> elems;
        for (auto c : d_cells) elems.push_back(ts::ge({c}));
        GeneratedSft g{LinearSFT::of(f, ts::z(), dim, FiniteSubset::of(ts::z(), elems), w),
                       d_cells, dim, rows,
                       dim == 1 ? 3 + static_cast<int>(rng() % 6) : 1 + static_cast<int>(rng() % 2)};
        out.push_back(std::move(g));
    }
    return out;
}

// minimal self-contained F_2 row reduction on bitmask rows
struct MaskSpan {
    std::vector<std::uint32_t> rows;  // kept fully reduced, sorted by leading bit

    bool insert(std::uint32_t v) {
        for (std::uint32_t r : rows)
            if (std::uint32_t h = high_bit(r); v >> h & 1) v ^= r;
        if (!v) return false;
        for (std::uint32_t& r : rows)
            if (std::uint32_t h = high_bit(v); r >> h & 1) r ^= v;
        rows.push_back(v);
        std::sort(rows.begin(), rows.end(), std::greater<>());
        return true;
    }
    static std::uint32_t high_bit(std::uint32_t x) {
        std::uint32_t h = 0;
        while (x >>= 1) ++h;
        return h;
    }
    std::size_t rank() const { return rows.size(); }
};

// every assignment on omega . ball(4) passing all local checks, projected to omega
MaskSpan enumerate_oracle(const GeneratedSft& g) {
    const int L = g.omega_len;
    const std::int64_t e_lo = -4, e_hi = L + 3;
    const int cells = static_cast<int>(e_hi - e_lo + 1);
    const int bits = cells * g.dim;
    const int width = static_cast<int>(g.d_cells.size()) * g.dim;

    // annihilator of the pattern space, by direct search over 2^width functionals
    MaskSpan ann;
    for (std::uint32_t y = 1; y < (1u << width); ++y) {
        bool kills = true;
        for (std::uint32_t w : g.w_rows)
            if (__builtin_popcount(y & w) & 1) {
                kills = false;
                break;
            }
        if (kills) ann.insert(y);
    }

    // one parity constraint per (translate, annihilator row), keyed by last bit
    std::vector<std::vector<std::uint32_t>> by_last(bits);
    for (std::int64_t t = e_lo - g.d_cells.front(); t + g.d_cells.back() <= e_hi; ++t) {
        for (std::uint32_t y : ann.rows) {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < g.d_cells.size(); ++i)
                for (int j = 0; j < g.dim; ++j)
                    if (y >> (i * g.dim + j) & 1)
                        mask |= 1u << ((t + g.d_cells[i] - e_lo) * g.dim + j);
            if (mask) by_last[MaskSpan::high_bit(mask)].push_back(mask);
        }
    }

    MaskSpan projected;
    const std::size_t full = static_cast<std::size_t>(L) * g.dim;
    // depth-first walk over all assignments, pruning as soon as a constraint closes
    std::vector<std::uint32_t> stack{0};
    std::vector<int> depth{0};
    while (!stack.empty()) {
        std::uint32_t cur = stack.back();
        int at = depth.back();
        stack.pop_back();
        depth.pop_back();
        if (at == bits) {
            std::uint32_t v = 0;
            for (int c = 0; c < L; ++c)
                for (int j = 0; j < g.dim; ++j)
                    if (cur >> ((c + 4) * g.dim + j) & 1) v |= 1u << (c * g.dim + j);
            projected.insert(v);
            if (projected.rank() == full) return projected;  // cannot grow further
            continue;
        }
        for (std::uint32_t bit : {0u, 1u}) {
            std::uint32_t next = cur | (bit << at);
            bool ok = true;
            for (std::uint32_t m : by_last[at])
                if (__builtin_popcount(next & m) & 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                stack.push_back(next);
                depth.push_back(at + 1);
            }
        }
    }
    return projected;
}

std::vector<std::uint32_t> masks_of(const ScalarMatrix& basis, const Field& f) {
    std::vector<std::uint32_t> rows;
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        std::uint32_t m = 0;
        for (std::size_t c = 0; c < basis.cols(); ++c)
            if (basis.at(r, c) == Scalar::one(f)) m |= 1u << c;
        rows.push_back(m);
    }
    return rows;
}

bool criterion_3() {
    std::vector<GeneratedSft> batch = make_sft_batch();
    Field f = ts::f2();
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const GeneratedSft& g = batch[i];
        WindowLanguageReport lang =
            window_language(g.sft, ts::interval(0, g.omega_len - 1), "exact_Z");
        expect(lang.certified && lang.mode == "exact_Z",
               "language not certified at instance " + std::to_string(i));

        MaskSpan oracle = enumerate_oracle(g);
        MaskSpan lib;
        for (std::uint32_t m : masks_of(lang.language.basis, f)) lib.insert(m);
        expect(lib.rows == oracle.rows,
               "window language differs from the enumeration oracle at instance " +
                   std::to_string(i) + " (lib " + std::to_string(lib.rank()) + ", oracle " +
                   std::to_string(oracle.rank()) + ")");
    }
    return failures == 0;
}

bool criterion_4() {
    std::vector<GeneratedSft> batch = make_sft_batch();
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const GeneratedSft& g = batch[i];
        FiniteSubset omega = ts::interval(0, std::min(g.omega_len, 6) - 1);
        WindowLanguageReport lang = window_language(g.sft, omega, "exact_Z");
        SigmaPerp perp = sigma_perp_window(g.sft, omega, "exact_Z");
        ScalarMatrix joint_kernel = row_basis(kernel_basis(perp.annihilator.basis));
        expect(subspace_equal(joint_kernel, lang.language.basis),
               "kernel of the annihilator differs from the language at instance " +
                   std::to_string(i));
        expect(perp.maps.size() == perp.annihilator.basis.rows(),
               "one functional automaton expected per annihilator row");
    }
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criterion 5: pre-injectivity = surjectivity on full shifts over Z

bool criterion_5() {
    std::mt19937_64 rng(1005);
    Field f = ts::f2();
    FiniteSubset pool = ts::interval(-2, 2);
    int yes = 0, no = 0;
    for (int it = 0; it < 100; ++it) {
        int dim = 1 + it % 2;
        LinearCA t = LinearCA::from_matrix(sparse_rnd_mat(f, ts::z(), dim, pool, 3, rng));
        PreInjectivityReport pre = is_pre_injective(t);
        SurjectivityReport sur = is_surjective(t);
        expect(pre.verdict != Verdict::Unknown, "pre-injectivity inconclusive over Z");
        expect(sur.verdict != Verdict::Unknown, "surjectivity inconclusive over Z");
        expect(pre.verdict == sur.verdict,
               "pre-injectivity and surjectivity disagree at instance " + std::to_string(it));
        bool full = sofic_image_equals_full(t);
        expect(full == (sur.verdict == Verdict::Yes),
               "sofic image comparison disagrees with the verdict at instance " +
                   std::to_string(it));
        if (sur.sofic_cross_check)
            expect(*sur.sofic_cross_check == (sur.verdict == Verdict::Yes),
                   "internal cross-check mismatch");
        (sur.verdict == Verdict::Yes ? yes : no) += 1;
    }
    expect(yes > 0 && no > 0, "instance mix never exercised one of the verdicts");
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criteria 6 and 7 share instances: window-scale limit set behaviour

std::vector<LinearCA> limit_instances() {
    std::mt19937_64 rng(1006);
    Field f = ts::f2();
    std::vector<LinearCA> out;
    for (int it = 0; it < 50; ++it) {
        int dim = it % 2 ? 2 : 1;
        FiniteSubset pool = dim == 1 ? ts::interval(-2, 2) : ts::interval(-1, 1);
        GrMatrix m = (it % 5 == 4) ? strict_upper(f, ts::z(), std::max(dim, 2), pool, rng)
                                   : sparse_rnd_mat(f, ts::z(), dim, pool, 2, rng);
        out.push_back(LinearCA::from_matrix(std::move(m)));
    }
    return out;
}

bool exact_certificate(const std::string& c) { return c == "zero_power" || c == "exact_Z"; }

bool criterion_6() {
    Field f = ts::f2();
    FiniteSubset omega = ts::interval(0, 2);
    int exact = 0, spanning_checked = 0;
    std::vector<LinearCA> instances = limit_instances();
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const LinearCA& t = instances[i];
        SpaceTimeSystem sys = SpaceTimeSystem::of(t);
        LimitReport lim = limit_set_window(sys, omega, 16, 6);
        for (std::size_t n = 1; n < lim.dims.size(); ++n)
            expect(lim.dims[n] <= lim.dims[n - 1],
                   "image dims increased at instance " + std::to_string(i));

        for (std::size_t r = 0; r < lim.limit.basis.rows(); ++r) {
            WindowData y{lim.limit.window, t.dim, lim.limit.basis.row(r)};
            expect(backward_orbit_segment(sys, y, 6).feasible,
                   "limit vector without a depth-6 backward tower at instance " +
                       std::to_string(i));
        }

        if (exact_certificate(lim.certificate)) {
            ++exact;
            FiniteSubset big = set_product(omega, t.memory);
            LimitReport lim_big = limit_set_window(sys, big, 16, 6);
            if (exact_certificate(lim_big.certificate)) {
                ++spanning_checked;
                ScalarMatrix map = window_map_matrix(t, omega, big);
                ScalarMatrix forward = row_basis(lim_big.limit.basis * map.transpose());
                expect(subspace_equal(forward, lim.limit.basis),
                       "one step does not map the limit window onto itself at instance " +
                           std::to_string(i));
            }
        }

        int p = 2 + static_cast<int>(i % 5);  // sublattice pZ, p <= 6
        int k = 1 + static_cast<int>(i % 3);
        CosetData cd = coset_data(ts::z(), {ts::ge({p})});
        WindowSubspace fixed = fixed_points_periodic(t, cd, k);
        LimitReport lim_reps = limit_set_window(sys, fixed.window, 16, 6);
        for (std::size_t r = 0; r < fixed.basis.rows(); ++r)
            expect(in_row_space(lim_reps.limit.basis, fixed.basis.row(r)),
                   "temporally periodic point escapes the limit window at instance " +
                       std::to_string(i));
    }
    expect(exact >= 10, "too few instances certified exactly (" + std::to_string(exact) + ")");
    expect(spanning_checked >= 10, "spanning check ran on too few instances");
    return failures == 0;
}

bool criterion_7() {
    Field f = ts::f2();
    FiniteSubset omega = ts::interval(0, 2);
    int checked = 0;
    std::vector<LinearCA> instances = limit_instances();
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const LinearCA& t = instances[i];
        SpaceTimeSystem sys = SpaceTimeSystem::of(t);
        LimitReport lim = limit_set_window(sys, omega, 16, 6);
        if (!exact_certificate(lim.certificate)) continue;
        ++checked;
        StabilityReport st = is_stable(sys, "exact_Z", 16);
        expect(st.certified, "exact_Z stability must be certified");
        expect(st.stable_at.has_value(),
               "exactly certified limit without a stability index at instance " +
                   std::to_string(i));
        if (st.stable_at) {
            LinearSFT full = LinearSFT::full_shift(t.field, t.spec, t.dim);
            SoficImage a = SoficImage::of(full, power(t, *st.stable_at));
            SoficImage b = SoficImage::of(full, power(t, *st.stable_at + 1));
            expect(a.equals(b), "reported stability index is not a fixed point of the chain");
        }
    }
    expect(checked >= 10, "too few exactly-certified instances (" + std::to_string(checked) + ")");
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criterion 8: chain stabilization contrast

bool criterion_8() {
    Field f = ts::f2();
    DccReport good = dcc_probe(constants_chain(f, ts::z(), 1, 5), 4);
    expect(good.verdict == "Stabilized", "constants chain did not stabilize");
    expect(good.stab_step == 1, "constants chain must stabilize at step 1");
    for (const DccStep& s : good.steps)
        if (s.n >= 1) expect(s.equal && s.certified, "constants chain step not certified equal");

    std::vector<LinearSFT> approx = coset_constants_chain(f, 2, 4);  // radii 0..4
    approx.erase(approx.begin());  // radius 0 is the degenerate full shift
    DccReport bad = dcc_probe(approx, 3);
    expect(bad.verdict == "NotStabilized", "coset approximants must keep dropping");
    expect(bad.steps.size() == 3, "expected comparisons at radii 1..4");
    for (const DccStep& s : bad.steps) {
        expect(!s.equal, "coset approximant step unexpectedly equal");
        expect(s.dim_next < s.dim_n, "window dims must drop strictly radius to radius");
    }
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criterion 9: truncated endomorphism examples at N = 100

bool criterion_9() {
    const std::uint64_t N = 100;

    PointwiseReport up = pointwise_nilpotency_probe(shift_up_endo(), N, 101);
    expect(up.verdict == "Survivor(0, 101)", "raw shift-up should survive pointwise at 0");
    TruncatedLimitReport up_lim = limit_set_truncated(shift_up_endo(), N, 101);
    expect(up_lim.survivors.empty(), "raw shift-up truncated limit should be empty");
    expect(!up_lim.caveat.empty(), "truncated verdicts must carry their caveat");

    PointwiseReport down = pointwise_nilpotency_probe(shift_down_endo(), N, 101);
    expect(down.verdict == "AllDieBy(101)", "shift-down must kill every basis vector");
    std::set<std::uint64_t> image;
    for (std::uint64_t m = 0; m <= N; ++m)
        if (auto v = shift_down_endo().rule(m)) image.insert(*v);
    bool covers = true;
    for (std::uint64_t m = 0; m + 1 <= N; ++m) covers = covers && image.count(m);
    expect(covers, "truncated shift-down must cover [0, N-1]");

    TruncatedLimitReport glued = limit_set_truncated(glued_chains_endo(), N, 20);
    expect(glued.survivors == std::vector<std::uint64_t>{0, 1},
           "glued chains should leave exactly the two glued vectors");
    expect(glued.image_of_survivors == std::vector<std::uint64_t>{0},
           "the surviving pair should map onto its first vector");
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criterion 10: preimage depth growth vs capped contrast

bool criterion_10() {
    ClosedImageDemoReport rep = closed_image_demo(ts::f2(), 32, 8, 3);
    for (std::size_t i = 1; i < rep.escape_depths.size(); ++i)
        expect(rep.escape_depths[i] > rep.escape_depths[i - 1],
               "uncapped preimage depths must grow strictly");
    expect(rep.unbounded_growth, "expected the escape-to-infinity flag");
    expect(rep.bounded_contrast, "expected the capped contrast flag");
    for (std::uint64_t d : rep.capped_depths)
        expect(d < 3, "capped preimage depth reached the cap");
    return failures == 0;
}

// ---------------------------------------------------------------------------
// criterion 11: restriction to 2Z preserves the window-scale picture

bool criterion_11() {
    std::mt19937_64 rng(1011);
    Field f = ts::f2();
    FiniteSubset even_pool =
        FiniteSubset::of(ts::z(), {ts::ge({-2}), ts::ge({0}), ts::ge({2})});
    CosetData cd = coset_data(ts::z(), {ts::ge({2})});
    FiniteSubset omega_g =
        FiniteSubset::of(ts::z(), {ts::ge({0}), ts::ge({2}), ts::ge({4})});
    FiniteSubset omega_h = ts::interval(0, 2);
    for (int it = 0; it < 30; ++it) {
        int dim = 1 + it % 2;
        GrMatrix m = (it % 3 == 2) ? strict_upper(f, ts::z(), 2, even_pool, rng)
                                   : sparse_rnd_mat(f, ts::z(), dim, even_pool, 2, rng);
        LinearCA t = LinearCA::from_matrix(std::move(m));
        LinearCA th = restrict_to_subgroup(t, cd);

        NilpotencyReport ng = is_nilpotent(t);
        NilpotencyReport nh = is_nilpotent(th);
        expect(ng.verdict == nh.verdict,
               "restriction changed the nilpotency verdict at instance " + std::to_string(it));
        if (ng.verdict == Verdict::Yes)
            expect(ng.index == nh.index, "restriction changed the nilpotency index");

        LimitReport lg = limit_set_window(SpaceTimeSystem::of(t), omega_g, 12, 4);
        LimitReport lh = limit_set_window(SpaceTimeSystem::of(th), omega_h, 12, 4);
        expect(lg.dims == lh.dims,
               "restriction changed the limit-window dims at instance " + std::to_string(it));
        expect(lg.stab_step == lh.stab_step,
               "restriction changed the stabilization step at instance " + std::to_string(it));
    }
    return failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <criterion 1..11>\n";
        return 1;
    }
    int n = std::atoi(argv[1]);
    bool ok = false;
    try {
        switch (n) {
            case 1: ok = criterion_1(); break;
            case 2: ok = criterion_2(); break;
            case 3: ok = criterion_3(); break;
            case 4: ok = criterion_4(); break;
            case 5: ok = criterion_5(); break;
            case 6: ok = criterion_6(); break;
            case 7: ok = criterion_7(); break;
            case 8: ok = criterion_8(); break;
            case 9: ok = criterion_9(); break;
            case 10: ok = criterion_10(); break;
            case 11: ok = criterion_11(); break;
            default:
                std::cerr << "criterion number must be 1..11\n";
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "  unexpected exception: " << e.what() << "\n";
        ok = false;
    }
    std::printf("criterion %d %s\n", n, ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
