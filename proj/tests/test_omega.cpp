#include <catch2/catch_amalgamated.hpp>

#include "omf/omega.hpp"

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

Adc pq_cycle() {
    Adc K;
    K.dim = 1;
    K.gens = {{Label("p"), Label("q")}, {Label("a"), Label("b")}};
    K.aug = {Int(1), Int(1)};
    K.diff.resize(2);
    K.diff[1] = {ZVec::unit(Label("q")) - ZVec::unit(Label("p")),
                 ZVec::unit(Label("p")) - ZVec::unit(Label("q"))};
    K.finalize();
    K.validate();
    return K;
}

bool composable(const Adc& K, const NuCell& x, const NuCell& y, int j) {
    return nu_canon(K, nu_target(x, j)) == nu_canon(K, nu_source(y, j));
}

// number of strictly increasing vertex paths from i to j, the free choice of
// intermediate stops
long paths_between(int i, int j) { return i < j ? 1L << (j - i - 1) : 0; }

void check_axioms(const OmegaPresentation& P) {
    const Adc& K = P.K;
    for (int d = 0; d <= P.max_dim; ++d)
        for (const auto& c : P.cells[(size_t)d]) {
            REQUIRE_NOTHROW(nu_check(K, c));
            for (int j = 0; j < d; ++j)
                for (int k = j + 1; k <= d; ++k) {
                    REQUIRE(nu_source(nu_source(c, k), j) == nu_source(c, j));
                    REQUIRE(nu_source(nu_target(c, k), j) == nu_source(c, j));
                    REQUIRE(nu_target(nu_source(c, k), j) == nu_target(c, j));
                    REQUIRE(nu_target(nu_target(c, k), j) == nu_target(c, j));
                }
        }
    // closure and unit laws
    for (int d = 1; d <= P.max_dim; ++d)
        for (const auto& x : P.cells[(size_t)d]) {
            for (int j = 0; j < d; ++j) {
                NuCell lu = nu_compose(K, iterated_identity(nu_source(x, j), d), x, j);
                NuCell ru = nu_compose(K, x, iterated_identity(nu_target(x, j), d), j);
                REQUIRE(lu == nu_canon(K, x));
                REQUIRE(ru == nu_canon(K, x));
            }
            for (const auto& y : P.cells[(size_t)d])
                for (int j = 0; j < d; ++j)
                    if (composable(K, x, y, j)) REQUIRE(P.has(nu_compose(K, x, y, j)));
        }
    // associativity
    for (int d = 1; d <= P.max_dim; ++d) {
        const auto& cs = P.cells[(size_t)d];
        for (int j = 0; j < d; ++j)
            for (const auto& x : cs)
                for (const auto& y : cs) {
                    if (!composable(K, x, y, j)) continue;
                    NuCell xy = nu_compose(K, x, y, j);
                    for (const auto& z : cs) {
                        if (!composable(K, y, z, j)) continue;
                        REQUIRE(nu_compose(K, xy, z, j) ==
                                nu_compose(K, x, nu_compose(K, y, z, j), j));
                    }
                }
    }
    // interchange of two composition levels
    for (int d = 2; d <= P.max_dim; ++d) {
        const auto& cs = P.cells[(size_t)d];
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                size_t tried = 0;
                for (const auto& x : cs)
                    for (const auto& y : cs) {
                        if (!composable(K, x, y, j)) continue;
                        for (const auto& z : cs) {
                            if (!composable(K, x, z, k)) continue;
                            for (const auto& w : cs) {
                                if (!composable(K, z, w, j)) continue;
                                if (!composable(K, y, w, k)) continue;
                                NuCell lhs = nu_compose(K, nu_compose(K, x, y, j),
                                                        nu_compose(K, z, w, j), k);
                                NuCell rhs = nu_compose(K, nu_compose(K, x, z, k),
                                                        nu_compose(K, y, w, k), j);
                                REQUIRE(lhs == rhs);
                                ++tried;
                            }
                        }
                    }
                REQUIRE(tried > 0);
            }
    }
}

}  // namespace

TEST_CASE("boundaries of the triangle atom are the two paths") {
    Adc K = simplex_adc(2);
    NuCell c = atom(K, tup({"0", "1", "2"}));
    REQUIRE(nu_source(c, 1) == atom(K, tup({"0", "2"})));
    NuCell t = nu_target(c, 1);
    REQUIRE(t.rows[1][0] == unit({"0", "1"}) + unit({"1", "2"}));
    REQUIRE(t == nu_compose(K, atom(K, tup({"0", "1"})), atom(K, tup({"1", "2"})), 0));
    REQUIRE(nu_source(c, 0) == atom(K, tup({"0"})));
    REQUIRE(nu_target(c, 0) == atom(K, tup({"2"})));
}

TEST_CASE("the identity on a vertex has a zero top row") {
    Adc K = simplex_adc(2);
    NuCell i = nu_identity(atom(K, tup({"0"})));
    REQUIRE(i.dim == 1);
    REQUIRE(i.rows[0][0] == unit({"0"}));
    REQUIRE(i.rows[0][1] == unit({"0"}));
    REQUIRE(i.rows[1][0].is_zero());
    REQUIRE(i.rows[1][1].is_zero());
    REQUIRE(is_identity_cell(K, i));
    REQUIRE_FALSE(is_identity_cell(K, atom(K, tup({"0", "1"}))));
}

TEST_CASE("cell census of the second oriental") {
    OmegaPresentation P = oriental(2, 2, 32);
    REQUIRE(P.cells[0].size() == 3);
    REQUIRE(P.cells[1].size() == 7);
    REQUIRE(P.count_nonidentity(1) == 4);
    REQUIRE(P.count_nonidentity(2) == 1);
    REQUIRE(P.cells[2].size() == 8);
}

TEST_CASE("the zeroth oriental is terminal") {
    OmegaPresentation P = oriental(0, 3, 8);
    for (int d = 0; d <= 3; ++d) REQUIRE(P.cells[(size_t)d].size() == 1);
    for (int d = 1; d <= 3; ++d) REQUIRE(is_identity_cell(P.K, P.cells[(size_t)d][0]));
}

TEST_CASE("one cell counts of orientals match the path count") {
    for (int p = 1; p <= 3; ++p) {
        OmegaPresentation P = oriental(p, 1, 64);
        REQUIRE(P.cells[0].size() == (size_t)p + 1);
        long expect = 0;
        for (int i = 0; i <= p; ++i)
            for (int j = i + 1; j <= p; ++j) expect += paths_between(i, j);
        REQUIRE(P.count_nonidentity(1) == (size_t)expect);
        REQUIRE(P.cells[1].size() == (size_t)(expect + p + 1));
    }
}

TEST_CASE("category axioms hold on enumerated cells") {
    check_axioms(oriental(2, 2, 32));
    check_axioms(oriental(3, 2, 64));
    check_axioms(oriental_of_poset(grid22(), 1, 2, 32));
}

TEST_CASE("axioms hold for the truncated oriental of the triangle") {
    OmegaPresentation P = oriental_of_poset(chain_poset(2), 1, 2, 32);
    check_axioms(P);
    // every 2 cell over a depth one truncation is an identity
    REQUIRE(P.count_nonidentity(2) == 0);
}

TEST_CASE("cell enumeration hits the cap on a complex with a positive loop") {
    Adc K = pq_cycle();
    REQUIRE_THROWS_AS(enumerate_cells(K, 1, 8), CapExceeded);
}

TEST_CASE("linearization in degree zero is free on the objects") {
    OmegaPresentation P = oriental(2, 2, 32);
    Adc L = lambda_of_nu(P);
    REQUIRE(L.gens[0].size() == 3);
    REQUIRE(L.relations[0].empty());
    REQUIRE(L.groups[0].rank == 3);
}

TEST_CASE("the counit is an isomorphism for simplex chains") {
    for (int p = 0; p <= 3; ++p) {
        Adc K = simplex_adc(p);
        OmegaPresentation P = enumerate_cells(K, K.dim, 64);
        CounitCheck C = steiner_counit_check(P);
        for (const auto& g : C.degrees) {
            REQUIRE(g.well_defined);
            REQUIRE(g.surjective);
            REQUIRE(g.injective);
        }
        REQUIRE(C.diff_compatible);
        REQUIRE(C.aug_compatible);
        REQUIRE(C.atoms_generate);
        REQUIRE(C.ok());
    }
}

TEST_CASE("the counit is an isomorphism for chains of poset nerves") {
    for (const auto& E : {grid22(), circle_faces()}) {
        Adc K = chains_of_poset(E);
        OmegaPresentation P = enumerate_cells(K, K.dim, 64);
        REQUIRE(steiner_counit_check(P).ok());
    }
}

TEST_CASE("the counit is an isomorphism for a truncated oriental") {
    Adc T = truncate_adc(simplex_adc(2), 1);
    OmegaPresentation P = enumerate_cells(T, 1, 32);
    CounitCheck C = steiner_counit_check(P);
    REQUIRE(C.ok());
    REQUIRE(C.degrees[1].iso());
    Adc L = lambda_of_nu(P);
    REQUIRE(L.groups[1].rank == 2);
}

TEST_CASE("incidence count of one cells over the circle") {
    Adc K = chains_of_poset(circle_faces());
    OmegaPresentation P = enumerate_cells(K, 1, 32);
    REQUIRE(P.cells[0].size() == 6);
    REQUIRE(P.count_nonidentity(1) == 6);
}

TEST_CASE("truncation bijection for the triangle at degree one") {
    Adc K = simplex_adc(2);
    TruncationBijection B = truncation_bijection(K, 1, 32);
    REQUIRE(B.full.cells[1].size() == 7);
    REQUIRE(B.rep_of_class.size() == 6);
    REQUIRE(B.truncated.cells[1].size() == 6);
    REQUIRE(B.bijective);
    REQUIRE(B.compatible);
    // the merged pair is exactly the two paths from 0 to 2
    NuCell a = atom(K, tup({"0", "2"}));
    NuCell b = nu_compose(K, atom(K, tup({"0", "1"})), atom(K, tup({"1", "2"})), 0);
    REQUIRE(B.class_of[B.full.find(a)] == B.class_of[B.full.find(b)]);
    NuCell direct = atom(K, tup({"0", "1"}));
    REQUIRE(B.class_of[B.full.find(a)] != B.class_of[B.full.find(direct)]);
}

TEST_CASE("truncation bijection at the top dimension is the identity") {
    Adc K = simplex_adc(2);
    TruncationBijection B = truncation_bijection(K, 2, 32);
    REQUIRE(B.rep_of_class.size() == B.full.cells[2].size());
    REQUIRE(B.truncated.cells[2].size() == B.full.cells[2].size());
    REQUIRE(B.bijective);
    REQUIRE(B.compatible);
}

TEST_CASE("truncation bijection over the grid matches the order relation") {
    Poset E = grid22();
    Adc K = chains_of_poset(E);
    TruncationBijection B = truncation_bijection(K, 1, 32);
    size_t leq_pairs = 0;
    for (size_t a = 0; a < E.size(); ++a)
        for (size_t b = 0; b < E.size(); ++b)
            if (E.leq(a, b)) ++leq_pairs;
    REQUIRE(B.rep_of_class.size() == leq_pairs);
    REQUIRE(B.bijective);
    REQUIRE(B.compatible);
}

TEST_CASE("the depth one oriental of a poset is the poset as a category") {
    for (const auto& E : {chain_poset(2), grid22(), circle_faces()}) {
        OmegaPresentation P = oriental_of_poset(E, 1, 1, 32);
        REQUIRE(P.cells[0].size() == E.size());
        std::set<std::pair<size_t, size_t>> seen;
        for (const auto& c : P.cells[1]) {
            auto s = c.rows[0][0].support();
            auto t = c.rows[0][1].support();
            REQUIRE(s.size() == 1);
            REQUIRE(t.size() == 1);
            size_t a = E.index(Label(s[0].parts[0]));
            size_t b = E.index(Label(t[0].parts[0]));
            REQUIRE(E.leq(a, b));
            REQUIRE(seen.insert({a, b}).second);
        }
        size_t leq_pairs = 0;
        for (size_t a = 0; a < E.size(); ++a)
            for (size_t b = 0; b < E.size(); ++b)
                if (E.leq(a, b)) ++leq_pairs;
        REQUIRE(P.cells[1].size() == leq_pairs);
        // composition realizes transitivity
        for (const auto& x : P.cells[1])
            for (const auto& y : P.cells[1])
                if (composable(P.K, x, y, 0)) REQUIRE(P.has(nu_compose(P.K, x, y, 0)));
    }
}

TEST_CASE("the simplex set of a depth one oriental matches the nerve") {
    for (const auto& E : {chain_poset(2), grid22(), circle_faces()}) {
        StreetNerve S = street_nerve(E, 1, 3, 32);
        S.X.validate();
        Nerve N = nerve(E, 3);
        for (int p = 0; p <= 3; ++p) REQUIRE(S.X.count[(size_t)p] == N.X.count[(size_t)p]);
    }
}

TEST_CASE("the simplex set over the edge poset is the standard edge") {
    for (int n = 1; n <= 2; ++n) {
        StreetNerve S = street_nerve(chain_poset(1), n, 3, 32);
        S.X.validate();
        SimplicialSet std1 = standard_simplex(1, 3);
        for (int p = 0; p <= 3; ++p) REQUIRE(S.X.count[(size_t)p] == std1.count[(size_t)p]);
    }
}

TEST_CASE("the simplex set over a point is terminal") {
    StreetNerve S = street_nerve(chain_poset(0), 2, 3, 32);
    S.X.validate();
    for (int p = 0; p <= 3; ++p) REQUIRE(S.X.count[(size_t)p] == 1);
}

TEST_CASE("the simplex set of the full second oriental is contractible") {
    StreetNerve S = street_nerve(chain_poset(2), 2, 3, 64);
    S.X.validate();
    auto H = homology_sset(S.X, 2);
    REQUIRE(H[0].rank == 1);
    REQUIRE(H[0].torsion.empty());
    REQUIRE(H[1].rank == 0);
    REQUIRE(H[1].torsion.empty());
    REQUIRE(H[2].rank == 0);
    REQUIRE(H[2].torsion.empty());
}

TEST_CASE("degenerate simplices are exactly the operator images") {
    StreetNerve S = street_nerve(chain_poset(2), 2, 2, 64);
    for (int p = 1; p <= 2; ++p) {
        std::set<size_t> degen_image;
        for (size_t s = 0; s < S.X.count[(size_t)p - 1]; ++s)
            for (int i = 0; i <= p - 1; ++i) degen_image.insert((size_t)S.X.degen[(size_t)p - 1][s][i]);
        for (size_t s = 0; s < S.X.count[(size_t)p]; ++s)
            REQUIRE(is_degenerate(S.X, p, (int32_t)s) == (degen_image.count(s) > 0));
    }
}

TEST_CASE("unit simplices land in the nerve and split the counit") {
    for (const auto& E : {chain_poset(2), grid22(), circle_faces()}) {
        for (int n = 1; n <= 2; ++n) {
            StreetNerve S = street_nerve(E, n, 2, 32);
            for (int p = 0; p <= 2; ++p)
                for (const auto& chain : weak_chains_ix(E, p)) {
                    AdcMorphism f = eta_simplex(S, chain);
                    REQUIRE_NOTHROW(f.validate());
                    REQUIRE_NOTHROW(S.index_of(p, f));
                    REQUIRE(eps_simplex(S, f) == chain);
                }
        }
    }
}

TEST_CASE("unit simplices commute with the simplicial operators") {
    Poset E = grid22();
    StreetNerve S = street_nerve(E, 2, 2, 32);
    std::vector<std::pair<int, std::vector<int>>> ops = {
        {2, {0, 1}}, {2, {0, 2}}, {2, {1, 2}},          // faces of a 2 simplex
        {1, {0, 0}}, {1, {1, 1}},                        // degeneracies into level 1
        {1, {0, 0, 1}}, {1, {0, 1, 1}},                  // degeneracies from level 1
        {2, {0, 0, 1, 2}}, {2, {2, 2, 2}},               // mixed shapes
    };
    for (const auto& [p, psi] : ops) {
        int q = (int)psi.size() - 1;
        if (q > S.cutoff) continue;
        for (const auto& chain : weak_chains_ix(E, p)) {
            std::vector<size_t> pulled;
            for (int v : psi) pulled.push_back(chain[(size_t)v]);
            AdcMorphism lhs = eta_simplex(S, pulled);
            AdcMorphism rhs = precompose_simplex_op(eta_simplex(S, chain), *S.sources[(size_t)q], psi);
            REQUIRE(lhs.key() == rhs.key());
        }
    }
}

TEST_CASE("counit chains commute with the simplicial operators") {
    Poset E = grid22();
    StreetNerve S = street_nerve(E, 1, 2, 32);
    for (int p = 1; p <= 2; ++p)
        for (const auto& f : S.simplices[(size_t)p])
            for (int i = 0; i <= p; ++i) {
                std::vector<int> delta;
                for (int v = 0; v <= p; ++v)
                    if (v != i) delta.push_back(v);
                auto whole = eps_simplex(S, f);
                std::vector<size_t> expect;
                for (int v : delta) expect.push_back(whole[(size_t)v]);
                REQUIRE(eps_simplex(S, precompose_simplex_op(f, *S.sources[(size_t)p - 1], delta)) ==
                        expect);
            }
}
