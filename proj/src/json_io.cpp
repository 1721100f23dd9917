#include "lsl/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lsl {

using nlohmann::json;

namespace {

const json& expect(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error("ParseError", std::string("missing key \"") + key + "\"");
    return *it;
}

std::int64_t expect_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw Error("ParseError", std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::string expect_string(const json& j, const char* what) {
    if (!j.is_string()) throw Error("ParseError", std::string(what) + " must be a string");
    return j.get<std::string>();
}

void expect_array(const json& j, const char* what) {
    if (!j.is_array()) throw Error("ParseError", std::string(what) + " must be an array");
}

std::vector<Scalar> scalars_from_json(const Field& f, const json& j, const char* what) {
    expect_array(j, what);
    std::vector<Scalar> v;
    v.reserve(j.size());
    for (const auto& c : j) v.push_back(Scalar::from_string(f, expect_string(c, "scalar")));
    return v;
}

json scalars_to_json(const std::vector<Scalar>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(c.to_string());
    return out;
}

}  // namespace

json field_to_json(const Field& f) {
    if (f.kind == FieldKind::Fp) return json{{"kind", "Fp"}, {"p", f.p}};
    return json{{"kind", "Q"}};
}

Field field_from_json(const json& j) {
    std::string kind = expect_string(expect(j, "kind"), "field kind");
    if (kind == "Q") return Field::rationals();
    if (kind == "Fp") return Field::fp(expect_int(expect(j, "p"), "p"));
    throw Error("ParseError", "field kind must be \"Fp\" or \"Q\"");
}

json group_to_json(const GroupSpec& s) {
    switch (s.kind) {
        case GroupKind::FreeAbelian:
            return json{{"kind", "Zd"}, {"d", s.rank}};
        case GroupKind::Free:
            return json{{"kind", "free"}, {"rank", s.rank}};
        case GroupKind::CyclicProduct:
            return json{{"kind", "cyclic"}, {"orders", s.orders}};
    }
    throw Error("Internal", "unhandled group kind");
}

GroupSpec group_from_json(const json& j) {
    std::string kind = expect_string(expect(j, "kind"), "group kind");
    if (kind == "Zd") return GroupSpec::free_abelian(static_cast<int>(expect_int(expect(j, "d"), "d")));
    if (kind == "free")
        return GroupSpec::free_group(static_cast<int>(expect_int(expect(j, "rank"), "rank")));
    if (kind == "cyclic") {
        const json& arr = expect(j, "orders");
        expect_array(arr, "orders");
        std::vector<std::int64_t> orders;
        for (const auto& o : arr) orders.push_back(expect_int(o, "order"));
        return GroupSpec::cyclic_product(std::move(orders));
    }
    throw Error("ParseError", "group kind must be \"Zd\", \"free\" or \"cyclic\"");
}

json element_to_json(const GroupElement& g) { return json(g.data); }

GroupElement element_from_json(const GroupSpec& s, const json& j) {
    expect_array(j, "group element");
    GroupElement g;
    for (const auto& c : j) g.data.push_back(expect_int(c, "element coordinate"));
    validate_element(s, g);
    return g;
}

json subset_to_json(const FiniteSubset& e) {
    json out = json::array();
    for (const auto& g : e.elems) out.push_back(element_to_json(g));
    return out;
}

FiniteSubset subset_from_json(const GroupSpec& s, const json& j) {
    expect_array(j, "subset");
    std::vector<GroupElement> elems;
    for (const auto& g : j) elems.push_back(element_from_json(s, g));
    return FiniteSubset::of(s, std::move(elems));
}

json ca_to_json(const LinearCA& t) {
    json matrix = json::array();
    for (int i = 0; i < t.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < t.dim; ++j) {
            json entry = json::array();
            for (const auto& [g, c] : t.matrix.at(i, j).terms)
                entry.push_back(json{{"g", element_to_json(g)}, {"c", c.to_string()}});
            row.push_back(std::move(entry));
        }
        matrix.push_back(std::move(row));
    }
    return json{{"field", field_to_json(t.field)},
                {"group", group_to_json(t.spec)},
                {"dim", t.dim},
                {"matrix", std::move(matrix)}};
}

LinearCA ca_from_json(const json& j) {
    Field f = field_from_json(expect(j, "field"));
    GroupSpec s = group_from_json(expect(j, "group"));
    int dim = static_cast<int>(expect_int(expect(j, "dim"), "dim"));
    if (dim <= 0) throw Error("ParseError", "dim must be positive");
    const json& matrix = expect(j, "matrix");
    expect_array(matrix, "matrix");
    if (static_cast<int>(matrix.size()) != dim)
        throw Error("ParseError", "matrix must have dim rows");
    GrMatrix m = GrMatrix::zero(f, s, dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = matrix[i];
        expect_array(row, "matrix row");
        if (static_cast<int>(row.size()) != dim)
            throw Error("ParseError", "matrix row must have dim entries");
        for (int k = 0; k < dim; ++k) {
            const json& entry = row[k];
            expect_array(entry, "matrix entry");
            std::vector<std::pair<GroupElement, Scalar>> terms;
            for (const auto& term : entry) {
                GroupElement g = element_from_json(s, expect(term, "g"));
                Scalar c = Scalar::from_string(f, expect_string(expect(term, "c"), "c"));
                terms.emplace_back(std::move(g), std::move(c));
            }
            m.at(i, k) = GroupRingElement::from_terms(f, s, std::move(terms));
        }
    }
    return LinearCA::from_matrix(std::move(m));
}

json sft_to_json(const LinearSFT& s) {
    json basis = json::array();
    for (std::size_t r = 0; r < s.w_basis.rows(); ++r) basis.push_back(scalars_to_json(s.w_basis.row(r)));
    return json{{"field", field_to_json(s.field)},
                {"group", group_to_json(s.spec)},
                {"dim", s.dim},
                {"D", subset_to_json(s.d_window)},
                {"W_basis", std::move(basis)}};
}

LinearSFT sft_from_json(const json& j) {
    Field f = field_from_json(expect(j, "field"));
    GroupSpec s = group_from_json(expect(j, "group"));
    int dim = static_cast<int>(expect_int(expect(j, "dim"), "dim"));
    if (dim <= 0) throw Error("ParseError", "dim must be positive");
    const json& d_arr = expect(j, "D");
    expect_array(d_arr, "D");
    if (d_arr.empty()) throw Error("ParseError", "D must be nonempty");
    // keep the file's column order, then reorder into canonical window order
    std::vector<std::pair<GroupElement, std::size_t>> listed;
    for (std::size_t i = 0; i < d_arr.size(); ++i)
        listed.emplace_back(element_from_json(s, d_arr[i]), i);
    std::vector<std::pair<GroupElement, std::size_t>> sorted = listed;
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& a, const auto& b) { return canonical_less(s, a.first, b.first); });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i].first == sorted[i + 1].first)
            throw Error("ParseError", "D lists an element twice");

    const json& w_arr = expect(j, "W_basis");
    expect_array(w_arr, "W_basis");
    ScalarMatrix w(f, w_arr.size(), listed.size() * dim);
    for (std::size_t r = 0; r < w_arr.size(); ++r) {
        std::vector<Scalar> row = scalars_from_json(f, w_arr[r], "W_basis row");
        if (row.size() != listed.size() * static_cast<std::size_t>(dim))
            throw Error("ParseError", "W_basis row length must be |D| * dim");
        w.set_row(r, row);
    }
    std::vector<GroupElement> elems;
    std::vector<std::size_t> sel;
    for (const auto& [g, oi] : sorted) {
        elems.push_back(g);
        for (int c = 0; c < dim; ++c) sel.push_back(oi * dim + c);
    }
    return LinearSFT::of(f, s, dim, FiniteSubset::of(s, std::move(elems)), w.select_columns(sel));
}

json config_to_json(const FiniteConfig& x) {
    json cells = json::array();
    for (const auto& [g, v] : x.cells)
        cells.push_back(json{{"g", element_to_json(g)}, {"v", scalars_to_json(v)}});
    return json{{"cells", std::move(cells)}};
}

FiniteConfig config_from_json(const Field& f, const GroupSpec& s, int dim, const json& j) {
    const json& cells = expect(j, "cells");
    expect_array(cells, "cells");
    std::vector<std::pair<GroupElement, std::vector<Scalar>>> out;
    for (const auto& cell : cells) {
        GroupElement g = element_from_json(s, expect(cell, "g"));
        std::vector<Scalar> v = scalars_from_json(f, expect(cell, "v"), "cell value");
        if (v.size() != static_cast<std::size_t>(dim))
            throw Error("ParseError", "cell value length must be dim");
        out.emplace_back(std::move(g), std::move(v));
    }
    return FiniteConfig::of(f, s, dim, std::move(out));
}

json window_data_to_json(const WindowData& w) {
    return json{{"window", subset_to_json(w.window)}, {"values", scalars_to_json(w.values)}};
}

WindowData window_data_from_json(const Field& f, const GroupSpec& s, int dim, const json& j) {
    const json& win = expect(j, "window");
    expect_array(win, "window");
    std::vector<std::pair<GroupElement, std::size_t>> listed;
    for (std::size_t i = 0; i < win.size(); ++i)
        listed.emplace_back(element_from_json(s, win[i]), i);
    std::vector<Scalar> values = scalars_from_json(f, expect(j, "values"), "values");
    if (values.size() != listed.size() * static_cast<std::size_t>(dim))
        throw Error("ParseError", "values length must be |window| * dim");
    std::sort(listed.begin(), listed.end(),
              [&](const auto& a, const auto& b) { return canonical_less(s, a.first, b.first); });
    for (std::size_t i = 0; i + 1 < listed.size(); ++i)
        if (listed[i].first == listed[i + 1].first)
            throw Error("ParseError", "window lists an element twice");
    std::vector<GroupElement> elems;
    std::vector<Scalar> sorted_values;
    for (const auto& [g, oi] : listed) {
        elems.push_back(g);
        for (int c = 0; c < dim; ++c) sorted_values.push_back(values[oi * dim + c]);
    }
    return WindowData{FiniteSubset::of(s, std::move(elems)), dim, std::move(sorted_values)};
}

json subspace_to_json(const WindowSubspace& v) {
    json basis = json::array();
    for (std::size_t r = 0; r < v.basis.rows(); ++r) basis.push_back(scalars_to_json(v.basis.row(r)));
    return json{{"window", subset_to_json(v.window)}, {"dim", v.dim}, {"basis", std::move(basis)}};
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("ParseError", e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

}  // namespace lsl
