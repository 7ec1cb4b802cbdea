#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "omf/homotopy.hpp"

using namespace omf;

namespace {

Poset grid22() {
    return Poset::from_pairs({"00", "01", "10", "11"},
                             {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
}

Poset circle_faces() {
    return Poset::from_pairs({"v0", "v1", "v2", "e01", "e12", "e20"},
                             {{"v0", "e01"}, {"v1", "e01"}, {"v1", "e12"},
                              {"v2", "e12"}, {"v2", "e20"}, {"v0", "e20"}});
}

Label tup(std::initializer_list<std::string> parts) { return Label(std::vector<std::string>(parts)); }

ZVec unit(std::initializer_list<std::string> parts) { return ZVec::unit(tup(parts)); }

}  // namespace

TEST_CASE("juxtaposition concatenates strictly ordered chains") {
    Adc K = simplex_adc(3);
    ConcatStats st;

    ZVec ab = concat_product(K, 0, unit({"0"}), unit({"1", "2"}), st);
    REQUIRE(ab == unit({"0", "1", "2"}));
    REQUIRE(st.terms == 1);
    REQUIRE(st.junction_equal == 0);

    ZVec a = unit({"0"}) * Int(2) - unit({"1"});
    ZVec out = concat_product(K, 0, a, unit({"2", "3"}), st);
    ZVec want = unit({"0", "2", "3"}) * Int(2) - unit({"1", "2", "3"});
    REQUIRE(out == want);

    ZVec higher = concat_product(K, 1, unit({"0", "1"}), unit({"2", "3"}), st);
    REQUIRE(higher == unit({"0", "1", "2", "3"}));
}

TEST_CASE("coinciding junctions are counted and contribute nothing") {
    Adc K = simplex_adc(3);
    ConcatStats st;
    REQUIRE(concat_product(K, 0, unit({"0"}), unit({"0", "1"}), st).is_zero());
    REQUIRE(st.junction_equal == 1);
    REQUIRE(concat_product(K, 1, unit({"0", "1"}), unit({"1", "2"}), st).is_zero());
    REQUIRE(st.junction_equal == 2);

    // a mixed sum keeps its ordered terms while the degenerate one drops
    ZVec b = unit({"1", "2"}) + unit({"0", "2"});
    ZVec out = concat_product(K, 0, unit({"0"}), b, st);
    REQUIRE(out == unit({"0", "1", "2"}));
    REQUIRE(st.junction_equal == 3);
}

TEST_CASE("an out of order junction throws") {
    Adc K = simplex_adc(3);
    ConcatStats st;
    REQUIRE_THROWS_AS(concat_product(K, 0, unit({"1"}), unit({"0", "2"}), st), NotChainable);
    try {
        concat_product(K, 0, unit({"1"}), unit({"0", "2"}), st);
        FAIL("expected a throw");
    } catch (const NotChainable& e) {
        REQUIRE_FALSE(e.equality);
        REQUIRE(std::string(e.what()).find("junction") != std::string::npos);
    }

    Adc G = chains_of_poset(grid22());
    REQUIRE_THROWS_AS(concat_product(G, 0, unit({"01"}), unit({"10", "11"}), st), NotChainable);
}

TEST_CASE("products above the target dimension vanish") {
    Adc T = truncate_adc(simplex_adc(2), 1);
    ConcatStats st;
    ZVec out = concat_product(T, 0, unit({"0"}), unit({"1", "2"}), st);
    REQUIRE(out.is_zero());
    REQUIRE(st.terms == 0);
}

TEST_CASE("the juxtaposition differential satisfies the shifted Leibniz rule") {
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
    int fails = 0;
    ConcatStats st;
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
        if (!(lhs == rhs)) ++fails;
    }
    REQUIRE(fails == 0);
    // split tuples never meet, so no junction ever coincides here
    REQUIRE(st.junction_equal == 0);
}

TEST_CASE("monotone map enumeration matches the simplicial census") {
    REQUIRE(monotone_maps(0, 0).size() == 1);
    REQUIRE(monotone_maps(1, 1).size() == 3);
    REQUIRE(monotone_maps(1, 2).size() == 6);
    REQUIRE(monotone_maps(2, 1).size() == 4);
    REQUIRE(monotone_maps(3, 3).size() == 35);
    auto maps = monotone_maps(2, 2);
    REQUIRE(std::find(maps.begin(), maps.end(), std::vector<int>{0, 1, 2}) != maps.end());
    for (const auto& m : maps)
        REQUIRE(std::is_sorted(m.begin(), m.end()));
}

TEST_CASE("the retraction endomorphism fixes the segment") {
    Poset E = chain_poset(1);
    StreetNerve S = street_nerve(E, 1, 3, 64);
    NerveEndo f = retraction_endo(S);
    for (int p = 0; p <= 3; ++p)
        for (size_t i = 0; i < S.simplices[(size_t)p].size(); ++i) REQUIRE(f.map[(size_t)p][i] == i);
    REQUIRE(endo_is_natural(f));
    REQUIRE(endo_leq_on_vertices(f, identity_endo(S)));
}

TEST_CASE("a degenerate simplex produces a vanishing junction term") {
    Poset E = chain_poset(1);
    StreetNerve S = street_nerve(E, 1, 3, 64);
    NerveEndo g = identity_endo(S);
    NerveEndo f = retraction_endo(S);
    HomotopyH H = build_homotopy(S, f, g);
    REQUIRE(H.notchainable == 0);
    REQUIRE(H.stats.junction_equal >= 1);

    size_t i00 = S.index_of(1, eta_simplex(S, {0, 0}));
    size_t i01 = S.index_of(1, eta_simplex(S, {0, 1}));
    // collapsed edge: both halves land on the same vertex, the product dies
    REQUIRE(H.at(1, i00, 1).of(1, tup({"0", "1"})).is_zero());
    // genuine edge: the halves juxtapose back to the edge itself
    REQUIRE(H.at(1, i01, 1).of(1, tup({"0", "1"})) == unit({"0", "1"}));
}

TEST_CASE("every homotopy component on the triangle is a verified morphism") {
    Poset E = chain_poset(2);
    for (int n : {1, 2}) {
        StreetNerve S = street_nerve(E, n, 3, 64);
        NerveEndo g = identity_endo(S);
        NerveEndo f = retraction_endo(S);
        HomotopyH H = build_homotopy(S, f, g);
        CheckReport comp = verify_components(H);
        INFO("depth " << n << ": " << comp.counterexample);
        REQUIRE(comp.pass());
        REQUIRE(comp.stat("notchainable") == 0);
        REQUIRE(comp.stat("components") > 0);
        CheckReport simp = verify_simplicial(H);
        INFO("depth " << n << ": " << simp.counterexample);
        REQUIRE(simp.pass());
        REQUIRE(simp.stat("junction_equal") > 0);
    }
}

TEST_CASE("a corrupted component fails verification") {
    Poset E = chain_poset(2);
    StreetNerve S = street_nerve(E, 2, 3, 64);
    NerveEndo g = identity_endo(S);
    NerveEndo f = retraction_endo(S);
    HomotopyH H = build_homotopy(S, f, g);
    AdcMorphism h = H.at(1, 0, 1);
    REQUIRE(verify_adc_morphism(h).pass());
    h.img[1][0] += unit({"0", "1"});
    CheckReport r = verify_adc_morphism(h);
    REQUIRE(r.status == "FAIL");
    REQUIRE_FALSE(r.counterexample.empty());
}

TEST_CASE("naturality detects a corrupted endomorphism") {
    Poset E = chain_poset(1);
    StreetNerve S = street_nerve(E, 1, 3, 64);
    NerveEndo f = identity_endo(S);
    size_t i00 = S.index_of(1, eta_simplex(S, {0, 0}));
    size_t i11 = S.index_of(1, eta_simplex(S, {1, 1}));
    f.map[1][i00] = i11;
    REQUIRE_FALSE(endo_is_natural(f));
}

TEST_CASE("the retraction verifies on every fixture at every depth") {
    std::vector<Poset> fixtures = {chain_poset(0), chain_poset(1), chain_poset(2), chain_poset(3),
                                   grid22(), circle_faces()};
    long long junction_total = 0;
    for (const auto& E : fixtures) {
        std::vector<int> depths = {1, 2, 3, longest_chain_size(E)};
        std::sort(depths.begin(), depths.end());
        depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
        for (int n : depths) {
            CheckReport r = verify_retract(E, n, 3, 64);
            INFO("poset of size " << E.size() << " at depth " << n << ": " << r.counterexample);
            REQUIRE(r.pass());
            REQUIRE(r.stat("notchainable") == 0);
            REQUIRE(r.stat("cap_hits") == 0);
            REQUIRE(r.stat("components") > 0);
            REQUIRE(r.stat("naturality_checks") > 0);
            junction_total += r.stat("junction_equal");
        }
    }
    REQUIRE(junction_total > 0);
}

TEST_CASE("a starved solver cap is reported as inconclusive") {
    CheckReport r = verify_retract(grid22(), 1, 3, Int(0));
    REQUIRE(r.status == "INCONCLUSIVE");
    REQUIRE(r.stat("cap_hits") == 1);
    REQUIRE_FALSE(r.pass());
}

TEST_CASE("the circle keeps its homology through the retraction target") {
    Poset E = circle_faces();
    StreetNerve S = street_nerve(E, 2, 3, 64);
    auto h = homology_sset(S.X, 1);
    REQUIRE(h.size() == 2);
    REQUIRE(h[0].rank == 1);
    REQUIRE(h[0].torsion.empty());
    REQUIRE(h[1].rank == 1);
    REQUIRE(h[1].torsion.empty());
    auto hn = homology_sset(nerve(E, 3).X, 1);
    REQUIRE(h[0] == hn[0]);
    REQUIRE(h[1] == hn[1]);
}

TEST_CASE("the tetrahedron street nerve is contractible at every depth") {
    Poset E = chain_poset(3);
    for (int n : {1, 2, 3}) {
        StreetNerve S = street_nerve(E, n, 3, 64);
        auto h = homology_sset(S.X, 2);
        REQUIRE(h.size() == 3);
        REQUIRE(h[0].rank == 1);
        REQUIRE(h[0].torsion.empty());
        REQUIRE(h[1].rank == 0);
        REQUIRE(h[1].torsion.empty());
        REQUIRE(h[2].rank == 0);
        REQUIRE(h[2].torsion.empty());
    }
}

TEST_CASE("check reports keep the first failure and accumulate stats") {
    CheckReport r;
    r.check = "demo";
    REQUIRE(r.pass());
    r.add_stat("k", 2);
    r.add_stat("k", 3);
    REQUIRE(r.stat("k") == 5);
    REQUIRE(r.stat("missing") == 0);
    r.inconclusive("soft");
    REQUIRE(r.status == "INCONCLUSIVE");
    REQUIRE(r.counterexample == "soft");
    r.fail("first");
    r.fail("second");
    REQUIRE(r.status == "FAIL");
    REQUIRE(r.counterexample == "first");
    r.inconclusive("late");
    REQUIRE(r.status == "FAIL");
}
