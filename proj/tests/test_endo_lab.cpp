#include <algorithm>

#include "doctest.h"
#include "lsl/endo_lab.hpp"
#include "support.hpp"

using namespace lsl;

namespace {

std::vector<std::optional<std::uint64_t>> orbit_of(const BasisEndomorphism& f, std::uint64_t s,
                                                   int steps) {
    return iterate_basis(f, s, steps);
}

bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("basis orbits") {
    auto up = orbit_of(shift_up_endo(), 0, 4);
    REQUIRE(up.size() == 5);
    for (std::uint64_t k = 0; k <= 4; ++k) CHECK(up[k] == k);

    auto down = orbit_of(shift_down_endo(), 3, 5);
    REQUIRE(down.size() == 6);
    CHECK(down[0] == 3);
    CHECK(down[3] == 0);
    CHECK(!down[4].has_value());  // e_0 maps to zero...
    CHECK(!down[5].has_value());  // ...and zero stays zero

    // glued chains: walk down chain 3 = {3, 4}, jump to 1, land on the absorbing 0
    auto glued = orbit_of(glued_chains_endo(), 4, 4);
    CHECK(glued == std::vector<std::optional<std::uint64_t>>{4, 3, 1, 0, 0});
    auto longer = orbit_of(glued_chains_endo(), 7, 5);
    CHECK(longer == std::vector<std::optional<std::uint64_t>>{7, 6, 5, 1, 0, 0});
}

TEST_CASE("pointwise nilpotency probes") {
    PointwiseReport down = pointwise_nilpotency_probe(shift_down_endo(), 100, 101);
    CHECK(down.verdict == "AllDieBy(101)");
    REQUIRE(down.death_step.size() == 101);
    for (std::uint64_t w = 0; w <= 100; ++w) CHECK(down.death_step[w] == static_cast<int>(w) + 1);

    // one step short of the horizon the deepest start still lives
    PointwiseReport close_call = pointwise_nilpotency_probe(shift_down_endo(), 100, 100);
    CHECK(close_call.verdict == "Survivor(100, 100)");

    PointwiseReport up = pointwise_nilpotency_probe(shift_up_endo(), 10, 50);
    CHECK(up.verdict == "Survivor(0, 50)");
    for (const auto& d : up.death_step) CHECK(!d.has_value());

    // glued chains kill nothing pointwise: e_0 is a fixed basis vector
    PointwiseReport glued = pointwise_nilpotency_probe(glued_chains_endo(), 20, 40);
    CHECK(glued.verdict == "Survivor(0, 40)");
}

TEST_CASE("truncated limit sets") {
    TruncatedLimitReport glued = limit_set_truncated(glued_chains_endo(), 50, 60);
    CHECK(glued.survivors == std::vector<std::uint64_t>{0, 1});
    CHECK(glued.image_of_survivors == std::vector<std::uint64_t>{0});
    CHECK(glued.working >= glued.truncation);

    // pointwise everything survives vs. truncated limit runs empty: the two
    // probes measure genuinely different things
    TruncatedLimitReport up = limit_set_truncated(shift_up_endo(), 50, 60);
    CHECK(up.survivors.empty());
    CHECK(!up.caveat.empty());

    // and the mirror image: pointwise everything dies, yet the window stays full
    TruncatedLimitReport down = limit_set_truncated(shift_down_endo(), 50, 60);
    REQUIRE(down.survivors.size() == 51);
    for (std::uint64_t k = 0; k <= 50; ++k) CHECK(down.survivors[k] == k);
    REQUIRE(down.image_of_survivors.size() == 50);
    CHECK(down.image_of_survivors.front() == 0);
    CHECK(down.image_of_survivors.back() == 49);
}

TEST_CASE("visible sets only shrink") {
    for (const auto& f : {shift_up_endo(), shift_down_endo(), glued_chains_endo()}) {
        TruncatedLimitReport rep = limit_set_truncated(f, 30, 25);
        REQUIRE(rep.visible.size() == 26);
        for (std::size_t k = 1; k < rep.visible.size(); ++k)
            CHECK(subset_of(rep.visible[k], rep.visible[k - 1]));
        CHECK(rep.visible.front().size() == 31);
    }
}

TEST_CASE("deeper glued probes agree on the survivors") {
    for (int depth : {20, 35, 50}) {
        TruncatedLimitReport rep = limit_set_truncated(glued_chains_endo(), 24, depth);
        CHECK(rep.survivors == std::vector<std::uint64_t>{0, 1});
    }
}

TEST_CASE("preimage columns escape unless capped") {
    ClosedImageDemoReport rep = closed_image_demo(ts::f2());
    CHECK(rep.truncation == 32);
    CHECK(rep.max_window == 8);
    REQUIRE(rep.escape_depths.size() == 8);
    for (std::uint64_t w = 1; w <= 8; ++w) CHECK(rep.escape_depths[w - 1] == w - 1);
    CHECK(rep.unbounded_growth);
    CHECK(rep.bounded_contrast);
    for (auto d : rep.capped_depths) CHECK(d < 3);
    CHECK(!rep.note.empty());

    // the escape is a statement about coefficients, not about the field
    ClosedImageDemoReport rq = closed_image_demo(ts::qq(), 20, 6, 2);
    for (std::uint64_t w = 1; w <= 6; ++w) CHECK(rq.escape_depths[w - 1] == w - 1);
    for (auto d : rq.capped_depths) CHECK(d < 2);

    CHECK(ts::error_code_of([] { closed_image_demo(ts::f3(), 5, 8); }) == "RangeTooLarge");
}
