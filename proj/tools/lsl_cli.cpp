#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lsl/endo_lab.hpp"
#include "lsl/json_io.hpp"
#include "lsl/spacetime.hpp"

namespace {

using nlohmann::json;

// parallelism cap knob; current pipelines run single-threaded, the variable is
// validated so scripts can set it uniformly across tool versions
int threads_cap() {
    const char* env = std::getenv("LSL_THREADS");
    if (!env) return 1;
    return std::clamp(std::atoi(env), 1, 64);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw lsl::Error("ParseError", "range must look like lo..hi: " + text);
    try {
        std::int64_t lo = std::stoll(text.substr(0, dots));
        std::int64_t hi = std::stoll(text.substr(dots + 2));
        if (hi < lo) throw lsl::Error("ParseError", "range is empty: " + text);
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw lsl::Error("ParseError", "range bounds must be integers: " + text);
    } catch (const std::out_of_range&) {
        throw lsl::Error("ParseError", "range bounds out of range: " + text);
    }
}

// box window "a..b[,c..d,...]", one interval per lattice coordinate
lsl::FiniteSubset parse_window(const lsl::GroupSpec& spec, const std::string& text) {
    if (spec.kind != lsl::GroupKind::FreeAbelian)
        throw lsl::Error("UnsupportedGroup", "--window boxes are defined over Zd only");
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        ranges.push_back(parse_range(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(ranges.size()) != spec.rank)
        throw lsl::Error("ParseError", "--window needs one interval per lattice coordinate");
    std::vector<lsl::GroupElement> elems;
    std::vector<std::int64_t> cur(ranges.size());
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
        if (i == ranges.size()) {
            elems.push_back(lsl::GroupElement{cur});
            return;
        }
        for (std::int64_t v = ranges[i].first; v <= ranges[i].second; ++v) {
            cur[i] = v;
            fill(i + 1);
        }
    };
    fill(0);
    return lsl::FiniteSubset::of(spec, std::move(elems));
}

// sublattice generators "1,1;0,2" (rows separated by ';')
std::vector<lsl::GroupElement> parse_gens(const lsl::GroupSpec& spec, const std::string& text) {
    std::vector<lsl::GroupElement> gens;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t semi = text.find(';', start);
        std::string part =
            semi == std::string::npos ? text.substr(start) : text.substr(start, semi - start);
        lsl::GroupElement g;
        std::size_t p = 0;
        while (p <= part.size()) {
            std::size_t comma = part.find(',', p);
            std::string num = comma == std::string::npos ? part.substr(p) : part.substr(p, comma - p);
            try {
                g.data.push_back(std::stoll(num));
            } catch (const std::exception&) {
                throw lsl::Error("ParseError", "generator coordinates must be integers: " + num);
            }
            if (comma == std::string::npos) break;
            p = comma + 1;
        }
        lsl::validate_element(spec, g);
        gens.push_back(std::move(g));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return gens;
}

std::string verdict_label(lsl::Verdict v, const char* yes, const char* no) {
    switch (v) {
        case lsl::Verdict::Yes: return yes;
        case lsl::Verdict::No: return no;
        case lsl::Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

void emit_text(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw lsl::Error("IoError", "cannot write " + out_path);
        f << text;
    }
}

void emit_report(json j, std::optional<std::int64_t> seed, const std::string& out_path) {
    if (seed) j["seed"] = *seed;
    emit_text(j.dump(2) + "\n", out_path);
}

json window_subspace_json(const lsl::WindowSubspace& v) { return lsl::subspace_to_json(v); }

json dcc_json(const lsl::DccReport& rep) {
    json steps = json::array();
    for (const auto& st : rep.steps)
        steps.push_back(json{{"n", st.n},
                             {"dim_n", st.dim_n},
                             {"dim_next", st.dim_next},
                             {"equal", st.equal},
                             {"certified", st.certified}});
    json j{{"steps", std::move(steps)}, {"verdict", rep.verdict}, {"notes", rep.notes}};
    j["stab_step"] = rep.stab_step ? json(*rep.stab_step) : json(nullptr);
    return j;
}

lsl::BasisEndomorphism endo_by_name(const std::string& name) {
    if (name == "shift_up") return lsl::shift_up_endo();
    if (name == "shift_down") return lsl::shift_down_endo();
    if (name == "glued_chains") return lsl::glued_chains_endo();
    throw lsl::Error("UnsupportedMode",
                     "--example must be shift_up, shift_down or glued_chains, got " + name);
}

}  // namespace

int main(int argc, char** argv) {
    (void)threads_cap();
    CLI::App app{"exact laboratory for linear shifts and their endomorphisms"};
    app.require_subcommand(1);

    std::string ca_path, sft_path, init_path, out_path;
    std::string mode = "auto", window_arg, range_arg, example, gens_arg, demo_kind;
    int bound = 0, radius = 2, patience = 3, max_steps = 64, steps = 32, depth = 6;
    int dcc_radius = 1, truncate = 32, horizon = 8;
    std::optional<std::int64_t> seed;

    auto add_seed_out = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "seed echoed into the report");
        cmd->add_option("--out", out_path, "duplicate the output into this file");
    };

    auto* nil = app.add_subcommand("nilpotent", "is some power of the automaton the zero map?");
    nil->add_option("--ca", ca_path, "automaton JSON")->required();
    nil->add_option("--mode", mode, "auto | charpoly | regular | power | limit_set");
    nil->add_option("--bound", bound, "power-mode search bound");
    nil->add_option("--max-steps", max_steps, "limit_set-mode step cap");
    add_seed_out(nil);

    auto* pre = app.add_subcommand("preinjective", "is the automaton injective on finite data?");
    pre->add_option("--ca", ca_path, "automaton JSON")->required();
    pre->add_option("--radius", radius, "search radius on free groups");
    add_seed_out(pre);

    auto* sur = app.add_subcommand("surjective", "is the automaton onto the full shift?");
    sur->add_option("--ca", ca_path, "automaton JSON")->required();
    add_seed_out(sur);

    auto* lim = app.add_subcommand("limit-set", "window dims of the forward-image chain");
    lim->add_option("--ca", ca_path, "automaton JSON")->required();
    lim->add_option("--sft", sft_path, "domain subshift JSON (default: full shift)");
    lim->add_option("--window", window_arg, "box window a..b[,c..d]")->required();
    lim->add_option("--max-steps", max_steps, "step cap");
    lim->add_option("--patience", patience, "plateau length before stopping");
    add_seed_out(lim);

    auto* stab = app.add_subcommand("stability", "does the image chain stop moving?");
    stab->add_option("--ca", ca_path, "automaton JSON")->required();
    stab->add_option("--sft", sft_path, "domain subshift JSON (default: full shift)");
    stab->add_option("--mode", mode, "auto | exact_Z | plateau");
    stab->add_option("--max-steps", horizon, "horizon");
    stab->add_option("--patience", patience, "plateau length (plateau mode)");
    add_seed_out(stab);

    auto* back = app.add_subcommand("backward", "solve a backward orbit segment under a target");
    back->add_option("--ca", ca_path, "automaton JSON")->required();
    back->add_option("--sft", sft_path, "domain subshift JSON (default: full shift)");
    back->add_option("--init", init_path, "target window data JSON")->required();
    back->add_option("--depth", depth, "backward depth");
    add_seed_out(back);

    auto* dcc = app.add_subcommand("dcc", "probe a built-in decreasing chain of subshifts");
    dcc->add_option("--sft", sft_path, "context subshift JSON (field/group/dim)")->required();
    dcc->add_option("--example", example, "constants | coset_constants")->required();
    dcc->add_option("--max-steps", max_steps, "number of comparison steps");
    dcc->add_option("--mode", mode, "window language mode");
    dcc->add_option("--radius", dcc_radius, "radius-mode radius");
    add_seed_out(dcc);

    auto* perp = app.add_subcommand("perp", "functionals annihilating a window language");
    perp->add_option("--sft", sft_path, "subshift JSON")->required();
    perp->add_option("--window", window_arg, "box window a..b[,c..d]")->required();
    perp->add_option("--mode", mode, "window language mode");
    perp->add_option("--radius", radius, "radius-mode radius");
    add_seed_out(perp);

    auto* wl = app.add_subcommand("window-lang", "restrictions of a subshift to a window");
    wl->add_option("--sft", sft_path, "subshift JSON")->required();
    wl->add_option("--window", window_arg, "box window a..b[,c..d]")->required();
    wl->add_option("--mode", mode, "auto | exact_Z | exact_finite | radius");
    wl->add_option("--radius", radius, "radius-mode radius");
    add_seed_out(wl);

    auto* res = app.add_subcommand("restrict", "view an automaton or subshift over a sublattice");
    res->add_option("--ca", ca_path, "automaton JSON");
    res->add_option("--sft", sft_path, "subshift JSON");
    res->add_option("--gens", gens_arg, "sublattice generators, rows 'a,b;c,d'")->required();
    add_seed_out(res);

    auto* ren = app.add_subcommand("render", "space-time diagram as an ASCII PGM");
    ren->add_option("--ca", ca_path, "automaton JSON")->required();
    ren->add_option("--init", init_path, "start configuration JSON")->required();
    ren->add_option("--steps", steps, "number of steps (rows - 1)");
    ren->add_option("--range", range_arg, "columns lo..hi")->required();
    add_seed_out(ren);

    auto* demo = app.add_subcommand("demo", "built-in endomorphism laboratory demos");
    demo->add_option("kind", demo_kind, "endo | closed-image")->required();
    demo->add_option("--example", example, "shift_up | shift_down | glued_chains");
    demo->add_option("--truncate", truncate, "visible truncation bound");
    demo->add_option("--depth", depth, "iteration depth for the truncated limit");
    demo->add_option("--max-steps", max_steps, "pointwise probe horizon");
    add_seed_out(demo);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(nil)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            lsl::NilpotencyReport rep =
                mode == "limit_set"
                    ? lsl::nilpotency_via_limit_set(t, max_steps)
                    : lsl::is_nilpotent(t, mode,
                                        bound > 0 ? std::optional<int>(bound) : std::nullopt);
            json j{{"verdict", verdict_label(rep.verdict, "Nilpotent", "NotNilpotent")},
                   {"mode", rep.mode},
                   {"witness", rep.witness},
                   {"bound_used", rep.bound_used}};
            j["index"] = rep.index ? json(*rep.index) : json(nullptr);
            emit_report(std::move(j), seed, out_path);
            return rep.verdict == lsl::Verdict::Unknown ? 2 : 0;
        }
        if (app.got_subcommand(pre)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            lsl::PreInjectivityReport rep = lsl::is_pre_injective(
                t, pre->count("--radius") ? std::optional<int>(radius) : std::nullopt);
            json j{{"verdict", verdict_label(rep.verdict, "PreInjective", "NotPreInjective")},
                   {"mode", rep.mode}};
            j["witness"] = rep.witness ? lsl::config_to_json(*rep.witness) : json(nullptr);
            j["radius"] = rep.radius ? json(*rep.radius) : json(nullptr);
            emit_report(std::move(j), seed, out_path);
            return rep.verdict == lsl::Verdict::Unknown ? 2 : 0;
        }
        if (app.got_subcommand(sur)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            lsl::SurjectivityReport rep = lsl::is_surjective(t);
            json j{{"verdict", verdict_label(rep.verdict, "Surjective", "NotSurjective")},
                   {"evidence", rep.evidence}};
            j["sofic_cross_check"] =
                rep.sofic_cross_check ? json(*rep.sofic_cross_check) : json(nullptr);
            emit_report(std::move(j), seed, out_path);
            return rep.verdict == lsl::Verdict::Unknown ? 2 : 0;
        }
        if (app.got_subcommand(lim)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            std::optional<lsl::LinearSFT> sigma;
            if (!sft_path.empty()) sigma = lsl::sft_from_json(lsl::load_json_file(sft_path));
            lsl::SpaceTimeSystem sys = lsl::SpaceTimeSystem::of(t, std::move(sigma));
            lsl::FiniteSubset omega = parse_window(t.spec, window_arg);
            lsl::LimitReport rep = lsl::limit_set_window(sys, omega, max_steps, patience);
            json j{{"window", lsl::subset_to_json(rep.window)},
                   {"dims", rep.dims},
                   {"certificate", rep.certificate}};
            j["stab_step"] = rep.stab_step ? json(*rep.stab_step) : json(nullptr);
            emit_report(std::move(j), seed, out_path);
            bool exact = rep.certificate == "zero_power" || rep.certificate == "exact_Z";
            return exact ? 0 : 2;
        }
        if (app.got_subcommand(stab)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            std::optional<lsl::LinearSFT> sigma;
            if (!sft_path.empty()) sigma = lsl::sft_from_json(lsl::load_json_file(sft_path));
            lsl::SpaceTimeSystem sys = lsl::SpaceTimeSystem::of(t, std::move(sigma));
            lsl::StabilityReport rep = lsl::is_stable(sys, mode, horizon, patience);
            json j{{"horizon", rep.horizon}, {"mode", rep.mode}, {"certified", rep.certified}};
            j["stable_at"] = rep.stable_at ? json(*rep.stable_at) : json(nullptr);
            emit_report(std::move(j), seed, out_path);
            return rep.stable_at && rep.certified ? 0 : 2;
        }
        if (app.got_subcommand(back)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            std::optional<lsl::LinearSFT> sigma;
            if (!sft_path.empty()) sigma = lsl::sft_from_json(lsl::load_json_file(sft_path));
            lsl::SpaceTimeSystem sys = lsl::SpaceTimeSystem::of(t, std::move(sigma));
            lsl::WindowData target =
                lsl::window_data_from_json(t.field, t.spec, t.dim, lsl::load_json_file(init_path));
            lsl::BackwardReport rep = lsl::backward_orbit_segment(sys, target, depth);
            json tower = json::array();
            for (const auto& w : rep.tower) tower.push_back(lsl::window_data_to_json(w));
            json j{{"feasible", rep.feasible}, {"tower", std::move(tower)}};
            j["failed_depth"] = rep.failed_depth ? json(*rep.failed_depth) : json(nullptr);
            emit_report(std::move(j), seed, out_path);
            return 0;
        }
        if (app.got_subcommand(dcc)) {
            lsl::LinearSFT ctx = lsl::sft_from_json(lsl::load_json_file(sft_path));
            std::vector<lsl::LinearSFT> chain;
            if (example == "constants") {
                chain = lsl::constants_chain(ctx.field, ctx.spec, ctx.dim, max_steps + 1);
            } else if (example == "coset_constants") {
                if (ctx.spec.kind != lsl::GroupKind::Free)
                    throw lsl::Error("UnsupportedGroup",
                                     "coset_constants needs a free-group context");
                chain = lsl::coset_constants_chain(ctx.field, ctx.spec.rank, max_steps);
            } else {
                throw lsl::Error("UnsupportedMode",
                                 "--example must be constants or coset_constants, got " + example);
            }
            lsl::DccReport rep = lsl::dcc_probe(chain, max_steps, mode, dcc_radius);
            emit_report(dcc_json(rep), seed, out_path);
            return rep.verdict == "Stabilized" ? 0 : 2;
        }
        if (app.got_subcommand(perp)) {
            lsl::LinearSFT s = lsl::sft_from_json(lsl::load_json_file(sft_path));
            lsl::FiniteSubset omega = parse_window(s.spec, window_arg);
            lsl::SigmaPerp rep = lsl::sigma_perp_window(s, omega, mode, radius);
            json maps = json::array();
            for (const auto& m : rep.maps) maps.push_back(lsl::ca_to_json(m));
            emit_report(json{{"annihilator", window_subspace_json(rep.annihilator)},
                             {"maps", std::move(maps)}},
                        seed, out_path);
            return 0;
        }
        if (app.got_subcommand(wl)) {
            lsl::LinearSFT s = lsl::sft_from_json(lsl::load_json_file(sft_path));
            lsl::FiniteSubset omega = parse_window(s.spec, window_arg);
            lsl::WindowLanguageReport rep = lsl::window_language(s, omega, mode, radius);
            emit_report(json{{"language", window_subspace_json(rep.language)},
                             {"mode", rep.mode},
                             {"certified", rep.certified},
                             {"radius_used", rep.radius_used}},
                        seed, out_path);
            return rep.certified ? 0 : 2;
        }
        if (app.got_subcommand(res)) {
            if (ca_path.empty() == sft_path.empty())
                throw lsl::Error("ParseError", "restrict needs exactly one of --ca or --sft");
            if (!ca_path.empty()) {
                lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
                lsl::CosetData cosets = lsl::coset_data(t.spec, parse_gens(t.spec, gens_arg));
                emit_report(lsl::ca_to_json(lsl::restrict_to_subgroup(t, cosets)), seed, out_path);
            } else {
                lsl::LinearSFT s = lsl::sft_from_json(lsl::load_json_file(sft_path));
                lsl::CosetData cosets = lsl::coset_data(s.spec, parse_gens(s.spec, gens_arg));
                emit_report(lsl::sft_to_json(lsl::restrict_sft(s, cosets)), seed, out_path);
            }
            return 0;
        }
        if (app.got_subcommand(ren)) {
            lsl::LinearCA t = lsl::ca_from_json(lsl::load_json_file(ca_path));
            lsl::FiniteConfig init =
                lsl::config_from_json(t.field, t.spec, t.dim, lsl::load_json_file(init_path));
            auto [lo, hi] = parse_range(range_arg);
            emit_text(lsl::render_spacetime(t, init, steps, lo, hi), out_path);
            return 0;
        }
        if (app.got_subcommand(demo)) {
            if (demo_kind == "endo") {
                if (example.empty())
                    throw lsl::Error("UnsupportedMode", "demo endo needs --example");
                lsl::BasisEndomorphism f = endo_by_name(example);
                lsl::PointwiseReport pw = lsl::pointwise_nilpotency_probe(
                    f, static_cast<std::uint64_t>(truncate), max_steps);
                lsl::TruncatedLimitReport tl =
                    lsl::limit_set_truncated(f, static_cast<std::uint64_t>(truncate), depth);
                json deaths = json::array();
                for (const auto& d : pw.death_step) deaths.push_back(d ? json(*d) : json(nullptr));
                json j{{"example", f.name},
                       {"pointwise", json{{"verdict", pw.verdict}, {"death_step", deaths}}},
                       {"limit", json{{"truncation", tl.truncation},
                                      {"working", tl.working},
                                      {"visible", tl.visible},
                                      {"survivors", tl.survivors},
                                      {"image_of_survivors", tl.image_of_survivors},
                                      {"caveat", tl.caveat}}}};
                emit_report(std::move(j), seed, out_path);
                return 0;
            }
            if (demo_kind == "closed-image") {
                lsl::ClosedImageDemoReport rep =
                    lsl::closed_image_demo(lsl::Field::fp(2), truncate);
                emit_report(json{{"truncation", rep.truncation},
                                 {"max_window", rep.max_window},
                                 {"nilpotent_cap", rep.nilpotent_cap},
                                 {"escape_depths", rep.escape_depths},
                                 {"capped_depths", rep.capped_depths},
                                 {"unbounded_growth", rep.unbounded_growth},
                                 {"bounded_contrast", rep.bounded_contrast},
                                 {"note", rep.note}},
                            seed, out_path);
                return 0;
            }
            throw lsl::Error("UnsupportedMode", "demo kind must be endo or closed-image");
        }
        throw lsl::Error("Internal", "no subcommand dispatched");
    } catch (const lsl::Error& e) {
        json err{{"error", e.code}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return e.code == "UncertifiedLanguage" ? 2 : 1;
    } catch (const std::exception& e) {
        json err{{"error", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    }
}
