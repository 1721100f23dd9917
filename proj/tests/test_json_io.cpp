#include "doctest.h"
#include "lsl/json_io.hpp"
#include "support.hpp"

using namespace lsl;
using nlohmann::json;

TEST_CASE("field and group round trips") {
    for (const Field& f : {ts::f2(), ts::f5(), ts::qq()})
        CHECK(field_from_json(field_to_json(f)) == f);
    for (const GroupSpec& s : {ts::z(), ts::z2(), ts::fr2(), ts::c23()})
        CHECK(group_from_json(group_to_json(s)) == s);

    CHECK(field_to_json(ts::f5()) == json::parse(R"({"kind":"Fp","p":5})"));
    CHECK(field_to_json(ts::qq()) == json::parse(R"({"kind":"Q"})"));
    CHECK(group_to_json(ts::z2()) == json::parse(R"({"kind":"Zd","d":2})"));
    CHECK(group_to_json(ts::c23()) == json::parse(R"({"kind":"cyclic","orders":[2,3]})"));

    CHECK(ts::error_code_of([] { field_from_json(json::parse(R"({"kind":"R"})")); }) ==
          "ParseError");
    CHECK(ts::error_code_of([] { field_from_json(json::parse(R"({"kind":"Fp","p":6})")); }) ==
          "NotPrime");
    CHECK(ts::error_code_of([] { group_from_json(json::parse(R"({"kind":"weird"})")); }) ==
          "ParseError");
}

TEST_CASE("elements and subsets") {
    GroupElement g = ts::ge({-3, 7});
    CHECK(element_from_json(ts::z2(), element_to_json(g)) == g);

    // arbitrary listing order comes back canonical
    FiniteSubset e = subset_from_json(ts::z(), json::parse("[[3],[0],[-1]]"));
    CHECK(e.spec == ts::z());
    REQUIRE(e.size() == 3);
    CHECK(e.elems[0] == ts::ge({-1}));
    CHECK(e.elems[2] == ts::ge({3}));

    CHECK(ts::error_code_of([] { element_from_json(ts::z2(), json::parse("[1]")); }) ==
          "SpecMismatch");
    CHECK(ts::error_code_of([] { element_from_json(ts::fr2(), json::parse("[1,-1]")); }) ==
          "NonCanonical");
    CHECK(ts::error_code_of([] { element_from_json(ts::z(), json::parse(R"(["x"])")); }) ==
          "ParseError");
}

TEST_CASE("automaton round trip") {
    Field f = ts::f3();
    std::mt19937_64 rng(17);
    for (const GroupSpec& s : {ts::z(), ts::z2(), ts::c23()}) {
        FiniteSubset supp = ball(s, standard_generators(s), 1);
        GrMatrix m = ts::rnd_mat(f, s, 2, supp, rng);
        LinearCA t = LinearCA::from_matrix(m);
        LinearCA back = ca_from_json(ca_to_json(t));
        CHECK(back.matrix == t.matrix);
        CHECK(back.memory == t.memory);
    }

    // coefficients must travel as strings
    json bad = ca_to_json(ts::ca1(f, {{0, 1}}));
    bad["matrix"][0][0][0]["c"] = 1;
    CHECK(ts::error_code_of([&] { ca_from_json(bad); }) == "ParseError");

    json wrong_rows = ca_to_json(ts::ca1(f, {{0, 1}}));
    wrong_rows["dim"] = 2;
    CHECK(ts::error_code_of([&] { ca_from_json(wrong_rows); }) == "ParseError");

    json neg_dim = ca_to_json(ts::ca1(f, {{0, 1}}));
    neg_dim["dim"] = 0;
    CHECK(ts::error_code_of([&] { ca_from_json(neg_dim); }) == "ParseError");

    // scalar strings are reduced on the way in
    json big = json::parse(
        R"({"field":{"kind":"Fp","p":3},"group":{"kind":"Zd","d":1},"dim":1,
            "matrix":[[[{"g":[0],"c":"4"}]]]})");
    LinearCA t = ca_from_json(big);
    CHECK(t.matrix.at(0, 0).coefficient(ts::ge({0})) == Scalar::from_int(f, 1));
}

TEST_CASE("subshift round trip and canonical column order") {
    Field f = ts::f3();
    ScalarMatrix w(f, 1, 2);
    w.at(0, 0) = Scalar::from_int(f, 1);
    w.at(0, 1) = Scalar::from_int(f, 2);
    LinearSFT direct = LinearSFT::of(f, ts::z(), 1, ts::interval(0, 1), w);

    LinearSFT back = sft_from_json(sft_to_json(direct));
    CHECK(back.d_window == direct.d_window);
    CHECK(back.w_basis == direct.w_basis);
    CHECK(sft_to_json(back) == sft_to_json(direct));

    // the same subshift with D listed backwards and columns permuted to match
    json shuffled = json::parse(
        R"({"field":{"kind":"Fp","p":3},"group":{"kind":"Zd","d":1},"dim":1,
            "D":[[1],[0]],"W_basis":[["2","1"]]})");
    LinearSFT reordered = sft_from_json(shuffled);
    CHECK(reordered.d_window == direct.d_window);
    CHECK(reordered.w_basis == direct.w_basis);

    json dup = json::parse(
        R"({"field":{"kind":"Fp","p":3},"group":{"kind":"Zd","d":1},"dim":1,
            "D":[[0],[0]],"W_basis":[["1","1"]]})");
    CHECK(ts::error_code_of([&] { sft_from_json(dup); }) == "ParseError");

    json short_row = json::parse(
        R"({"field":{"kind":"Fp","p":3},"group":{"kind":"Zd","d":1},"dim":1,
            "D":[[0],[1]],"W_basis":[["1"]]})");
    CHECK(ts::error_code_of([&] { sft_from_json(short_row); }) == "ParseError");
}

TEST_CASE("config round trip") {
    Field f = ts::f5();
    std::mt19937_64 rng(23);
    FiniteConfig x = ts::rnd_config(f, ts::z2(), 2, ts::box2(-1, 1, 0, 1), rng);
    FiniteConfig back = config_from_json(f, ts::z2(), 2, config_to_json(x));
    CHECK(back == x);

    json short_cell = json::parse(R"({"cells":[{"g":[0,0],"v":["1"]}]})");
    CHECK(ts::error_code_of([&] { config_from_json(f, ts::z2(), 2, short_cell); }) ==
          "ParseError");
}

TEST_CASE("window data round trip") {
    Field f = ts::f2();
    WindowData y{ts::interval(0, 2), 1,
                 {Scalar::one(f), Scalar::zero(f), Scalar::one(f)}};
    WindowData back = window_data_from_json(f, ts::z(), 1, window_data_to_json(y));
    CHECK(back == y);

    // values follow their window cells through the canonical reordering
    json shuffled = json::parse(R"({"window":[[2],[0],[1]],"values":["1","1","0"]})");
    WindowData sorted = window_data_from_json(f, ts::z(), 1, shuffled);
    CHECK(sorted == y);

    json dup = json::parse(R"({"window":[[0],[0]],"values":["1","1"]})");
    CHECK(ts::error_code_of([&] { window_data_from_json(f, ts::z(), 1, dup); }) == "ParseError");

    json short_vals = json::parse(R"({"window":[[0],[1]],"values":["1"]})");
    CHECK(ts::error_code_of([&] { window_data_from_json(f, ts::z(), 1, short_vals); }) ==
          "ParseError");

    json numeric = json::parse(R"({"window":[[0]],"values":[1]})");
    CHECK(ts::error_code_of([&] { window_data_from_json(f, ts::z(), 1, numeric); }) ==
          "ParseError");
}

TEST_CASE("subspace serialization is canonical") {
    Field f = ts::f2();
    LinearCA t = ts::ca1(f, {{0, 1}, {1, 1}});
    LinearSFT k = kernel_sft(t);
    WindowLanguageReport lang = window_language(k, ts::interval(0, 3));
    json a = subspace_to_json(lang.language);
    json b = subspace_to_json(window_language(k, ts::interval(0, 3)).language);
    CHECK(a.dump() == b.dump());
    CHECK(a.contains("window"));
    CHECK(a.contains("basis"));
}

TEST_CASE("text and file parsing") {
    json ok = parse_json_text(R"({"a":[1,2]})");
    CHECK(ok["a"][1] == 2);

    try {
        parse_json_text("{\"a\": oops}");
        FAIL("expected a parse failure");
    } catch (const Error& e) {
        CHECK(e.code == "ParseError");
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }

    CHECK(ts::error_code_of([] { load_json_file("/nonexistent/path.json"); }) == "IoError");
}
