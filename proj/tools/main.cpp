// Command line front door: build objects from JSON, run the verifications,
// emit census and report files.  Exit codes: 0 all checks pass, 1 a check
// failed, 2 a solver bound made a check inconclusive, 3 bad input.

#include <CLI11.hpp>

#include <omf/acceptance.hpp>
#include <omf/json_io.hpp>

#include <cstdio>

using nlohmann::json;

namespace {

int emit(const json& j, const std::string& out) {
    std::string text = omf::dump_json(j);
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) omf::write_text_file(out, text);
    return 0;
}

int report_exit(const omf::CheckReport& r) {
    if (r.status == "FAIL") return 1;
    if (r.status == "INCONCLUSIVE") return 2;
    return 0;
}

int emit_report(const omf::CheckReport& r, const std::string& out) {
    emit(omf::report_to_json(r), out);
    return report_exit(r);
}

int emit_cap_hit(const std::string& check, const std::string& what, const std::string& out) {
    omf::CheckReport r;
    r.check = check;
    r.inconclusive(what);
    return emit_report(r, out);
}

// Wall-clock stats vary run to run, so reports meant for byte comparison
// drop them.
json stripped_report(const omf::CheckReport& r) {
    omf::CheckReport c = r;
    c.stats.clear();
    for (const auto& [k, v] : r.stats)
        if (k.size() < 3 || k.compare(k.size() - 3, 3, "_ms") != 0) c.stats.push_back({k, v});
    return omf::report_to_json(c);
}

int run_poset_nerve(const std::string& path, int cutoff, const std::string& out) {
    omf::Poset E = omf::poset_from_json(omf::read_json_file(path));
    return emit(omf::sset_to_json(omf::nerve(E, cutoff).X), out);
}

int run_sd(const std::string& path, const std::string& out) {
    omf::SimplicialSet X = omf::sset_from_json(omf::read_json_file(path));
    omf::SdData D = omf::sd(X);
    return emit(omf::sset_to_json(D.sdx), out);
}

int run_q_functor_check(const std::string& path, const std::string& out) {
    omf::SimplicialSet X = omf::sset_from_json(omf::read_json_file(path));
    if (X.cutoff < 2) throw omf::JsonError("q-functor-check: input needs levels up to at least 2");
    omf::CheckReport r;
    r.check = "q-functor-check";
    auto q = omf::q_functor(X);
    const omf::SimplicialSet& R = q->result();
    for (const auto& n : R.count) r.add_stat("simplices", (long long)n);
    try {
        omf::CategoryClosure cl = omf::c1(R, 100000000);
        if (!cl.is_poset()) {
            r.fail("fundamental category is not a poset");
            return emit_report(r, out);
        }
        omf::Poset P = cl.to_poset();
        r.add_stat("elements", (long long)P.size());
        auto shaped = omf::nerve_shaped(omf::truncate_sset(R, R.cutoff - 1));
        if (!shaped)
            r.fail("replacement is not nerve shaped below the cutoff");
        else if (!omf::poset_isomorphism(P, *shaped))
            r.fail("fundamental poset differs from the vertex poset");
    } catch (const omf::ClosureBoundExceeded& e) {
        r.inconclusive(e.what());
    }
    return emit_report(r, out);
}

int run_sc_counit(const std::string& path, int cutoff, const std::string& out) {
    omf::Poset E = omf::poset_from_json(omf::read_json_file(path));
    omf::SimplicialComplex S = omf::from_poset(E);
    omf::Nerve N = omf::kappa_star(S, cutoff);
    omf::SimplicialComplex K = omf::kappa_shriek(N.X);
    omf::CheckReport r;
    r.check = "sc-counit";
    auto iso = omf::sc_isomorphism(K, S);
    r.add_stat("vertices", (long long)S.base.size());
    r.add_stat("faces", (long long)S.faces.size());
    if (!iso) r.fail("no isomorphism witness between the round trip and the original");
    json j = omf::report_to_json(r);
    if (iso) {
        json w = json::array();
        size_t i = 0;
        for (const auto& l : K.base.elements) {
            w.push_back(json::array({l.str(), S.base.elements[(*iso)[i]].str()}));
            ++i;
        }
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    emit(j, out);
    return report_exit(r);
}

int run_adc_check(const std::string& path, const std::string& out) {
    omf::Adc K = omf::adc_from_json(omf::read_json_file(path));
    omf::CheckReport r;
    r.check = "adc-check";
    for (int d = 0; d <= K.dim; ++d) r.add_stat("generators", (long long)K.gens[(size_t)d].size());
    if (!K.based) {
        r.fail("complex is not based, so the Steiner conditions do not apply");
        return emit_report(r, out);
    }
    bool u = omf::is_unital(K);
    bool l = omf::is_loop_free(K);
    bool s = omf::is_strongly_loop_free(K);
    r.add_stat("unital", u ? 1 : 0);
    r.add_stat("loop_free", l ? 1 : 0);
    r.add_stat("strongly_loop_free", s ? 1 : 0);
    if (!u) r.fail("not unital");
    if (!l) r.fail("not loop-free");
    if (!s) r.fail("not strongly loop-free");
    return emit_report(r, out);
}

int run_adc_truncate(const std::string& path, int n, const std::string& out) {
    omf::Adc K = omf::adc_from_json(omf::read_json_file(path));
    return emit(omf::adc_to_json(omf::truncate_adc(K, n)), out);
}

int run_oriental_census(int p, int max_dim, long long cap, const std::string& out) {
    if (max_dim < 0) max_dim = p;
    try {
        omf::OmegaPresentation P = omf::oriental(p, max_dim, omf::Int(cap));
        omf::CheckReport r;
        r.check = "oriental-census";
        for (int d = 0; d <= max_dim; ++d) {
            r.add_stat("cells_" + std::to_string(d), (long long)P.cells[(size_t)d].size());
            r.add_stat("nonidentity_" + std::to_string(d), (long long)P.count_nonidentity(d));
        }
        return emit_report(r, out);
    } catch (const omf::CapExceeded& e) {
        return emit_cap_hit("oriental-census", e.what(), out);
    }
}

int run_steiner_counit(const std::string& path, long long cap, const std::string& out) {
    omf::Adc K = omf::adc_from_json(omf::read_json_file(path));
    try {
        omf::OmegaPresentation P = omf::enumerate_cells(K, K.dim, omf::Int(cap));
        omf::CounitCheck c = omf::steiner_counit_check(P);
        omf::CheckReport r;
        r.check = "steiner-counit";
        for (int d = 0; d <= P.max_dim; ++d)
            r.add_stat("cells_" + std::to_string(d), (long long)P.cells[(size_t)d].size());
        for (size_t d = 0; d < c.degrees.size(); ++d)
            if (!c.degrees[d].iso())
                r.fail("linearized cells do not match the complex in degree " + std::to_string(d));
        if (!c.diff_compatible) r.fail("linearization does not commute with the differential");
        if (!c.aug_compatible) r.fail("linearization does not commute with the augmentation");
        if (!c.atoms_generate) r.fail("atoms do not generate the linearized complex");
        return emit_report(r, out);
    } catch (const omf::CapExceeded& e) {
        return emit_cap_hit("steiner-counit", e.what(), out);
    }
}

int run_street_nerve(const std::string& path, int n, int max_p, long long cap, const std::string& out) {
    omf::Poset E = omf::poset_from_json(omf::read_json_file(path));
    try {
        omf::StreetNerve S = omf::street_nerve(E, n, max_p, omf::Int(cap));
        return emit(omf::sset_to_json(S.X), out);
    } catch (const omf::CapExceeded& e) {
        return emit_cap_hit("street-nerve", e.what(), out);
    }
}

int run_homology(const std::string& path, int up_to, const std::string& out) {
    omf::SimplicialSet X = omf::sset_from_json(omf::read_json_file(path));
    if (up_to < 0) up_to = X.cutoff - 1;
    if (up_to < 0 || up_to >= X.cutoff)
        throw omf::JsonError("homology: degree bound must be below the level cutoff");
    json j;
    j["groups"] = omf::groups_to_json(omf::homology_sset(X, up_to));
    return emit(j, out);
}

int run_verify_retract(const std::string& path, int n, int max_p, long long cap, const std::string& out) {
    omf::Poset E = omf::poset_from_json(omf::read_json_file(path));
    try {
        omf::CheckReport r = omf::verify_retract(E, n, max_p, omf::Int(cap));
        return emit_report(r, out);
    } catch (const omf::CapExceeded& e) {
        return emit_cap_hit("verify-retract", e.what(), out);
    }
}

int run_all(const std::string& out) {
    auto reports = omf::acceptance_suite();
    omf::CheckReport top;
    top.check = "all";
    json list = json::array();
    for (const auto& r : reports) {
        list.push_back(stripped_report(r));
        top.add_stat("checks", 1);
        if (r.pass()) top.add_stat("passed", 1);
        if (r.status == "FAIL")
            top.fail(r.check + ": " + r.counterexample);
        else if (r.status == "INCONCLUSIVE")
            top.inconclusive(r.check + ": " + r.counterexample);
    }
    json j = omf::report_to_json(top);
    j["reports"] = list;
    emit(j, out);
    return report_exit(top);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for directed complexes, orientals, and poset nerves"};
    app.require_subcommand(1);

    std::string poset_path, sset_path, adc_path, out;
    int cutoff = 4, n = 1, p = 0, max_p = 3, max_dim = -1, up_to = -1;
    long long cap = 64;

    auto* c_nerve = app.add_subcommand("poset-nerve", "nerve of a poset as a simplicial set");
    c_nerve->add_option("--poset", poset_path, "poset JSON file")->required()->check(CLI::ExistingFile);
    c_nerve->add_option("--cutoff", cutoff, "top simplex level")->check(CLI::NonNegativeNumber);
    c_nerve->add_option("--out", out, "also write the JSON here");

    auto* c_sd = app.add_subcommand("sd", "subdivision of a simplicial set");
    c_sd->add_option("--sset", sset_path, "simplicial set JSON file")->required()->check(CLI::ExistingFile);
    c_sd->add_option("--out", out, "also write the JSON here");

    auto* c_q = app.add_subcommand("q-functor-check",
                                   "check that the double subdivision of the free filling is a poset nerve");
    c_q->add_option("--sset", sset_path, "simplicial set JSON file")->required()->check(CLI::ExistingFile);
    c_q->add_option("--out", out, "also write the report here");

    auto* c_sc = app.add_subcommand("sc-counit",
                                    "round trip a poset's flag complex through its nerve and back");
    c_sc->add_option("--poset", poset_path, "poset JSON file")->required()->check(CLI::ExistingFile);
    c_sc->add_option("--cutoff", cutoff, "top simplex level")->check(CLI::NonNegativeNumber);
    c_sc->add_option("--out", out, "also write the report here");

    auto* c_adc = app.add_subcommand("adc-check", "unital and loop-freeness conditions of a based complex");
    c_adc->add_option("--adc", adc_path, "directed complex JSON file")->required()->check(CLI::ExistingFile);
    c_adc->add_option("--out", out, "also write the report here");

    auto* c_trunc = app.add_subcommand("adc-truncate", "truncate a directed complex at a degree");
    c_trunc->add_option("--adc", adc_path, "directed complex JSON file")->required()->check(CLI::ExistingFile);
    c_trunc->add_option("--n", n, "truncation degree")->required()->check(CLI::NonNegativeNumber);
    c_trunc->add_option("--out", out, "also write the JSON here");

    auto* c_census = app.add_subcommand("oriental-census", "cell counts of an oriental by dimension");
    c_census->add_option("--p", p, "simplex dimension")->required()->check(CLI::NonNegativeNumber);
    c_census->add_option("--max-dim", max_dim, "top cell dimension, defaults to p");
    c_census->add_option("--cap", cap, "entry bound for the cell solver")->check(CLI::NonNegativeNumber);
    c_census->add_option("--out", out, "also write the report here");

    auto* c_counit = app.add_subcommand("steiner-counit",
                                        "compare a complex against the linearization of its cells");
    c_counit->add_option("--adc", adc_path, "directed complex JSON file")->required()->check(CLI::ExistingFile);
    c_counit->add_option("--cap", cap, "entry bound for the cell solver")->check(CLI::NonNegativeNumber);
    c_counit->add_option("--out", out, "also write the report here");

    auto* c_street = app.add_subcommand("street-nerve",
                                        "nerve of the truncated oriental of a poset as a simplicial set");
    c_street->add_option("--poset", poset_path, "poset JSON file")->required()->check(CLI::ExistingFile);
    c_street->add_option("--n", n, "truncation depth")->required()->check(CLI::PositiveNumber);
    c_street->add_option("--max-p", max_p, "top simplex level")->check(CLI::PositiveNumber);
    c_street->add_option("--cap", cap, "entry bound for the cell solver")->check(CLI::NonNegativeNumber);
    c_street->add_option("--out", out, "also write the JSON here");

    auto* c_hom = app.add_subcommand("homology", "integral homology of a simplicial set");
    c_hom->add_option("--sset", sset_path, "simplicial set JSON file")->required()->check(CLI::ExistingFile);
    c_hom->add_option("--up-to", up_to, "top homology degree, defaults to one below the cutoff");
    c_hom->add_option("--out", out, "also write the JSON here");

    auto* c_retract = app.add_subcommand("verify-retract",
                                         "machine check of the deformation retraction onto the poset nerve");
    c_retract->add_option("--poset", poset_path, "poset JSON file")->required()->check(CLI::ExistingFile);
    c_retract->add_option("--n", n, "truncation depth")->required()->check(CLI::PositiveNumber);
    c_retract->add_option("--max-p", max_p, "top simplex level")->check(CLI::PositiveNumber);
    c_retract->add_option("--cap", cap, "entry bound for the cell solver")->check(CLI::NonNegativeNumber);
    c_retract->add_option("--out", out, "also write the report here");

    auto* c_all = app.add_subcommand("all", "run the full verification suite");
    c_all->add_option("--out", out, "also write the summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (c_nerve->parsed()) return run_poset_nerve(poset_path, cutoff, out);
        if (c_sd->parsed()) return run_sd(sset_path, out);
        if (c_q->parsed()) return run_q_functor_check(sset_path, out);
        if (c_sc->parsed()) return run_sc_counit(poset_path, cutoff, out);
        if (c_adc->parsed()) return run_adc_check(adc_path, out);
        if (c_trunc->parsed()) return run_adc_truncate(adc_path, n, out);
        if (c_census->parsed()) return run_oriental_census(p, max_dim, cap, out);
        if (c_counit->parsed()) return run_steiner_counit(adc_path, cap, out);
        if (c_street->parsed()) return run_street_nerve(poset_path, n, max_p, cap, out);
        if (c_hom->parsed()) return run_homology(sset_path, up_to, out);
        if (c_retract->parsed()) return run_verify_retract(poset_path, n, max_p, cap, out);
        if (c_all->parsed()) return run_all(out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 3;
}
