#pragma once

// The end-to-end verification suite: nine numbered checks covering the
// deformation retraction, the linearization counit, the Steiner conditions,
// cell truncation, the poset replacement pipeline, the simplicial-complex
// counit, homology comparisons, the oriental census, and the axiom battery.
// Each check returns a CheckReport; the command line front end and the gate
// binary both run the same suite.

#include <chrono>
#include <functional>
#include <random>

#include "omf/cat.hpp"
#include "omf/homotopy.hpp"
#include "omf/omega.hpp"
#include "omf/scomplex.hpp"
#include "omf/sd.hpp"
#include "omf/semi.hpp"

namespace omf {

inline long long wall_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// The six reference posets every poset-level check runs over: the chains on
// one through four elements, the commuting square, and the face poset of a
// triangle boundary.
inline std::vector<std::pair<std::string, Poset>> fixture_posets() {
    std::vector<std::pair<std::string, Poset>> out;
    for (int n = 0; n <= 3; ++n) out.push_back({"chain" + std::to_string(n), chain_poset(n)});
    out.push_back({"grid", Poset::from_pairs({"00", "01", "10", "11"},
                                             {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}})});
    out.push_back({"circle", Poset::from_pairs({"v0", "v1", "v2", "e01", "e12", "e20"},
                                               {{"v0", "e01"}, {"v1", "e01"}, {"v1", "e12"},
                                                {"v2", "e12"}, {"v2", "e20"}, {"v0", "e20"}})});
    return out;
}

// Depths 1 through 3 plus the longest chain of the poset, deduplicated.
inline std::vector<int> fixture_depths(const Poset& E) {
    std::vector<int> out = {1, 2, 3, (int)longest_chain_size(E)};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline CheckReport criterion1() {
    CheckReport r;
    r.check = "retraction";
    long long worst = 0;
    for (const auto& [name, E] : fixture_posets())
        for (int n : fixture_depths(E)) {
            std::string tag = name + " depth " + std::to_string(n);
            long long t0 = wall_ms();
            CheckReport one = verify_retract(E, n, 3, Int(64));
            long long dt = wall_ms() - t0;
            worst = std::max(worst, dt);
            r.add_stat("pairs", 1);
            r.add_stat("components", one.stat("components"));
            r.add_stat("junction_equal", one.stat("junction_equal"));
            if (one.status == "INCONCLUSIVE")
                r.inconclusive(tag + ": " + one.counterexample);
            else if (!one.pass())
                r.fail(tag + ": " + one.counterexample);
            if (one.stat("notchainable") != 0) r.fail(tag + ": junction order violations");
            if (one.stat("cap_hits") != 0) r.fail(tag + ": solver cap hit");
            if (dt >= 60000) r.fail(tag + ": took " + std::to_string(dt) + "ms against a 60000ms budget");
        }
    r.add_stat("max_pair_ms", worst);
    return r;
}

struct NamedAdc {
    std::string name;
    Adc K;
};

// Chain complexes of the standard simplices and of the fixture nerves,
// together with every proper truncation of each.
inline std::vector<NamedAdc> counit_family() {
    std::vector<NamedAdc> out;
    for (int p = 0; p <= 3; ++p) out.push_back({"simplex" + std::to_string(p), simplex_adc(p)});
    for (const auto& [name, E] : fixture_posets()) out.push_back({"chains-" + name, chains_of_poset(E)});
    size_t bases = out.size();
    for (size_t i = 0; i < bases; ++i)
        for (int n = 0; n < out[i].K.dim; ++n)
            out.push_back({out[i].name + "-trunc" + std::to_string(n), truncate_adc(out[i].K, n)});
    return out;
}

inline CheckReport criterion2() {
    CheckReport r;
    r.check = "steiner-counit";
    long long t0 = wall_ms();
    for (const auto& [name, K] : counit_family()) {
        try {
            OmegaPresentation P = enumerate_cells(K, K.dim, Int(64));
            CounitCheck c = steiner_counit_check(P);
            r.add_stat("complexes", 1);
            for (const auto& v : P.cells) r.add_stat("cells", (long long)v.size());
            if (!c.ok()) r.fail(name + ": linearized cells do not present the complex");
        } catch (const CapExceeded& e) {
            r.inconclusive(name + ": " + e.what());
        }
    }
    long long dt = wall_ms() - t0;
    r.add_stat("total_ms", dt);
    if (dt >= 120000) r.fail("took " + std::to_string(dt) + "ms against a 120000ms budget");
    return r;
}

inline CheckReport criterion3() {
    CheckReport r;
    r.check = "strong-steiner";
    for (const auto& [name, E] : fixture_posets()) {
        Adc K = chains_of_poset(E);
        try {
            K.validate();
        } catch (const std::exception& e) {
            r.fail("chains-" + name + ": " + e.what());
            continue;
        }
        if (!is_unital(K)) r.fail("chains-" + name + ": not unital");
        if (!is_strongly_loop_free(K)) r.fail("chains-" + name + ": not strongly loop-free");
        if (!is_loop_free(K)) r.fail("chains-" + name + ": not loop-free");
        r.add_stat("fixture_complexes", 1);
    }
    for (const auto& [name, K] : counit_family()) {
        bool free_basis = true;  // the loop predicates read atoms, which need one
        for (int d = 0; d <= K.dim; ++d)
            if (K.presented(d)) free_basis = false;
        if (!free_basis) continue;
        if (is_strongly_loop_free(K) && !is_loop_free(K))
            r.fail(name + ": strongly loop-free complex with a loop");
        r.add_stat("implication_checks", 1);
    }
    return r;
}

inline CheckReport criterion4() {
    CheckReport r;
    r.check = "truncation-cells";
    for (int p = 1; p <= 3; ++p) {
        Adc K = simplex_adc(p);
        for (int n = 1; n <= p; ++n) {
            std::string tag = "simplex" + std::to_string(p) + " at depth " + std::to_string(n);
            try {
                TruncationBijection B = truncation_bijection(K, n, Int(64));
                r.add_stat("pairs", 1);
                r.add_stat("classes", (long long)B.rep_of_class.size());
                if (!B.bijective) r.fail(tag + ": cell classes and truncated cells do not match up");
                if (!B.compatible) r.fail(tag + ": bijection breaks a boundary, identity, or composite");
            } catch (const CapExceeded& e) {
                r.inconclusive(tag + ": " + e.what());
            }
        }
    }
    return r;
}

inline CheckReport criterion5() {
    CheckReport r;
    r.check = "poset-replacement";
    struct Case {
        std::string name;
        SimplicialSet X;
    };
    std::vector<Case> cases;
    cases.push_back({"segment", standard_simplex(1, 4)});
    cases.push_back({"triangle", standard_simplex(2, 4)});
    cases.push_back({"boundary", boundary_delta2(4)});
    long long t0 = wall_ms();
    for (const auto& c : cases) {
        auto q = q_functor(c.X);
        const SimplicialSet& R = q->result();
        for (const auto& n : R.count) r.add_stat("simplices", (long long)n);
        Poset P;
        try {
            CategoryClosure cl = c1(R, 100000000);
            if (!cl.is_poset()) {
                r.fail(c.name + ": fundamental category is not a poset");
                continue;
            }
            P = cl.to_poset();
        } catch (const ClosureBoundExceeded& e) {
            r.inconclusive(c.name + ": " + e.what());
            continue;
        }
        auto shaped = nerve_shaped(truncate_sset(R, 3));
        if (!shaped) {
            r.fail(c.name + ": replacement is not nerve shaped below the cutoff");
            continue;
        }
        if (!poset_isomorphism(P, *shaped))
            r.fail(c.name + ": fundamental poset differs from the vertex poset");
        r.add_stat("cases", 1);
    }
    long long dt = wall_ms() - t0;
    r.add_stat("total_ms", dt);
    if (dt >= 120000) r.fail("took " + std::to_string(dt) + "ms against a 120000ms budget");
    return r;
}

inline CheckReport criterion6() {
    CheckReport r;
    r.check = "flag-counit";
    for (const auto& [name, E] : fixture_posets()) {
        SimplicialComplex S = from_poset(E);
        Nerve N = kappa_star(S, 4);
        SimplicialComplex K = kappa_shriek(N.X);
        auto iso = sc_isomorphism(K, S);
        if (!iso) {
            r.fail(name + ": no isomorphism witness");
            continue;
        }
        r.add_stat("witnesses", 1);
        r.add_stat("vertices", (long long)iso->size());
    }
    return r;
}

inline CheckReport criterion7() {
    CheckReport r;
    r.check = "homology-shadow";
    GroupInfo z{1, {}}, zero{0, {}};
    try {
        Poset circle = fixture_posets()[5].second;
        StreetNerve S = street_nerve(circle, 2, 3, Int(64));
        auto H = homology_sset(S.X, 1);
        auto HN = homology_sset(nerve(circle, 3).X, 1);
        r.add_stat("groups", (long long)(H.size() + HN.size()));
        if (!(H.size() == 2 && H[0] == z && H[1] == z))
            r.fail("circle depth 2: homology of the categorical nerve is not (Z, Z)");
        if (!(H == HN)) r.fail("circle depth 2: categorical and poset nerve homology differ");
        for (int n = 1; n <= 4; ++n) {
            StreetNerve T = street_nerve(chain_poset(3), n, 3, Int(64));
            auto HT = homology_sset(T.X, 2);
            r.add_stat("groups", (long long)HT.size());
            if (!(HT.size() == 3 && HT[0] == z && HT[1] == zero && HT[2] == zero))
                r.fail("chain3 depth " + std::to_string(n) + ": homology is not that of a point");
        }
    } catch (const CapExceeded& e) {
        r.inconclusive(e.what());
    }
    return r;
}

// Brute-force count of strictly increasing vertex paths from i to j.
inline long long increasing_paths(int i, int j) {
    if (i >= j) return 0;
    long long total = 0;
    std::function<void(int)> walk = [&](int at) {
        if (at == j) {
            ++total;
            return;
        }
        for (int t = at + 1; t <= j; ++t) walk(t);
    };
    walk(i);
    return total;
}

inline CheckReport criterion8() {
    CheckReport r;
    r.check = "oriental-census";
    try {
        OmegaPresentation P2 = oriental(2, 2, Int(64));
        r.add_stat("cells", (long long)(P2.cells[0].size() + P2.cells[1].size() + P2.cells[2].size()));
        if (P2.cells[0].size() != 3) r.fail("second oriental: vertex count is not 3");
        if (P2.count_nonidentity(1) != 4) r.fail("second oriental: nonidentity arrow count is not 4");
        if (P2.count_nonidentity(2) != 1) r.fail("second oriental: nonidentity 2-cell count is not 1");
        OmegaPresentation P3 = oriental(3, 1, Int(64));
        r.add_stat("cells", (long long)(P3.cells[0].size() + P3.cells[1].size()));
        long long expect = 0;
        for (int i = 0; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j) expect += increasing_paths(i, j);
        if (expect != 11) r.fail("path enumeration oracle disagrees with the closed count 11");
        if ((long long)P3.count_nonidentity(1) != expect)
            r.fail("third oriental: nonidentity arrow count differs from the path count");
        r.add_stat("oracle_paths", expect);
    } catch (const CapExceeded& e) {
        r.inconclusive(e.what());
    }
    return r;
}

inline bool cells_composable(const Adc& K, const NuCell& x, const NuCell& y, int j) {
    return nu_canon(K, nu_target(x, j)) == nu_canon(K, nu_source(y, j));
}

inline void axiom_battery(const OmegaPresentation& P, const std::string& name, CheckReport& r) {
    const Adc& K = P.K;
    for (int d = 0; d <= P.max_dim; ++d)
        for (const auto& c : P.cells[(size_t)d]) {
            try {
                nu_check(K, c);
            } catch (const std::exception& e) {
                r.fail(name + ": invalid cell table: " + e.what());
                return;
            }
            for (int j = 0; j < d; ++j)
                for (int k = j + 1; k <= d; ++k) {
                    bool ok = nu_source(nu_source(c, k), j) == nu_source(c, j) &&
                              nu_source(nu_target(c, k), j) == nu_source(c, j) &&
                              nu_target(nu_source(c, k), j) == nu_target(c, j) &&
                              nu_target(nu_target(c, k), j) == nu_target(c, j);
                    r.add_stat("globularity_checks", 1);
                    if (!ok) {
                        r.fail(name + ": globularity fails at dimension " + std::to_string(d));
                        return;
                    }
                }
        }
    for (int d = 1; d <= P.max_dim; ++d)
        for (const auto& x : P.cells[(size_t)d]) {
            for (int j = 0; j < d; ++j) {
                NuCell lu = nu_compose(K, iterated_identity(nu_source(x, j), d), x, j);
                NuCell ru = nu_compose(K, x, iterated_identity(nu_target(x, j), d), j);
                r.add_stat("unit_checks", 2);
                if (!(lu == nu_canon(K, x) && ru == nu_canon(K, x))) {
                    r.fail(name + ": unit law fails at dimension " + std::to_string(d));
                    return;
                }
            }
            for (const auto& y : P.cells[(size_t)d])
                for (int j = 0; j < d; ++j)
                    if (cells_composable(K, x, y, j)) {
                        r.add_stat("closure_checks", 1);
                        if (!P.has(nu_compose(K, x, y, j))) {
                            r.fail(name + ": composite escapes the enumerated cells at dimension " +
                                   std::to_string(d));
                            return;
                        }
                    }
        }
    for (int d = 1; d <= P.max_dim; ++d) {
        const auto& cs = P.cells[(size_t)d];
        for (int j = 0; j < d; ++j)
            for (const auto& x : cs)
                for (const auto& y : cs) {
                    if (!cells_composable(K, x, y, j)) continue;
                    NuCell xy = nu_compose(K, x, y, j);
                    for (const auto& z : cs) {
                        if (!cells_composable(K, y, z, j)) continue;
                        r.add_stat("associativity_checks", 1);
                        if (!(nu_compose(K, xy, z, j) == nu_compose(K, x, nu_compose(K, y, z, j), j))) {
                            r.fail(name + ": associativity fails at dimension " + std::to_string(d));
                            return;
                        }
                    }
                }
    }
    for (int d = 2; d <= P.max_dim; ++d) {
        const auto& cs = P.cells[(size_t)d];
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k)
                for (const auto& x : cs)
                    for (const auto& y : cs) {
                        if (!cells_composable(K, x, y, j)) continue;
                        for (const auto& z : cs) {
                            if (!cells_composable(K, x, z, k)) continue;
                            for (const auto& w : cs) {
                                if (!cells_composable(K, z, w, j)) continue;
                                if (!cells_composable(K, y, w, k)) continue;
                                NuCell lhs = nu_compose(K, nu_compose(K, x, y, j), nu_compose(K, z, w, j), k);
                                NuCell rhs = nu_compose(K, nu_compose(K, x, z, k), nu_compose(K, y, w, k), j);
                                r.add_stat("interchange_checks", 1);
                                if (!(lhs == rhs)) {
                                    r.fail(name + ": interchange fails at dimension " + std::to_string(d));
                                    return;
                                }
                            }
                        }
                    }
    }
}

inline CheckReport criterion9() {
    CheckReport r;
    r.check = "axiom-suite";
    Poset grid = fixture_posets()[4].second;
    Poset circle = fixture_posets()[5].second;
    try {
        struct NamedPres {
            std::string name;
            OmegaPresentation P;
        };
        std::vector<NamedPres> pres;
        pres.push_back({"oriental2", oriental(2, 2, Int(32))});
        pres.push_back({"oriental3", oriental(3, 2, Int(64))});
        pres.push_back({"grid-depth1", oriental_of_poset(grid, 1, 2, Int(32))});
        pres.push_back({"chain2-depth1", oriental_of_poset(chain_poset(2), 1, 2, Int(32))});
        pres.push_back({"circle-depth2", oriental_of_poset(circle, 2, 2, Int(64))});
        for (const auto& np : pres) {
            axiom_battery(np.P, np.name, r);
            r.add_stat("presentations", 1);
        }
    } catch (const CapExceeded& e) {
        r.inconclusive(e.what());
    }
    for (const auto& [name, K] : counit_family()) {
        try {
            K.validate();
            r.add_stat("complexes_validated", 1);
        } catch (const std::exception& e) {
            r.fail(name + ": " + e.what());
        }
    }
    Adc K = simplex_adc(5);
    std::mt19937 rng(917001);
    auto rnd_chain = [&](int lo, int hi, int deg, int terms) {
        std::vector<int> pool;
        for (int v = lo; v <= hi; ++v) pool.push_back(v);
        ZVec out;
        for (int t = 0; t < terms; ++t) {
            std::vector<int> pick = pool;
            std::shuffle(pick.begin(), pick.end(), rng);
            pick.resize((size_t)deg + 1);
            std::sort(pick.begin(), pick.end());
            out.add(label_of_tuple(pick), Int((int)(rng() % 7) - 3));
        }
        return out;
    };
    ConcatStats st;
    long long leibniz_fails = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int s = (int)(rng() % 5);
        int ell = (int)(rng() % (unsigned)(s + 1));
        int db = (int)(rng() % (unsigned)(5 - s));
        ZVec a = rnd_chain(0, s, ell, 1 + (int)(rng() % 3));
        ZVec b = rnd_chain(s + 1, 5, db, 1 + (int)(rng() % 3));
        int m = ell + db + 1;
        ZVec ab = concat_product(K, ell, a, b, st);
        ZVec lhs = K.d_of(m, ab);
        ZVec t1 = ell == 0 ? b * K.e_of(a) : concat_product(K, ell - 1, K.d_of(ell, a), b, st);
        ZVec t2 = db == 0 ? a * K.e_of(b) : concat_product(K, ell, a, K.d_of(db, b), st);
        ZVec rhs = ell % 2 == 0 ? t1 - t2 : t1 + t2;
        if (!(lhs == rhs)) ++leibniz_fails;
        r.add_stat("leibniz_trials", 1);
    }
    if (leibniz_fails > 0)
        r.fail("product rule fails on " + std::to_string(leibniz_fails) + " of 1000 randomized inputs");
    return r;
}

inline std::vector<CheckReport> acceptance_suite() {
    std::vector<std::function<CheckReport()>> fns = {criterion1, criterion2, criterion3,
                                                     criterion4, criterion5, criterion6,
                                                     criterion7, criterion8, criterion9};
    std::vector<std::string> names = {"retraction",       "steiner-counit", "strong-steiner",
                                      "truncation-cells", "poset-replacement", "flag-counit",
                                      "homology-shadow",  "oriental-census", "axiom-suite"};
    std::vector<CheckReport> out;
    for (size_t i = 0; i < fns.size(); ++i) {
        try {
            out.push_back(fns[i]());
        } catch (const std::exception& e) {
            CheckReport r;
            r.check = names[i];
            r.fail(std::string("unexpected error: ") + e.what());
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace omf
