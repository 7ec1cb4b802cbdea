#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "omf/scomplex.hpp"

using namespace omf;

namespace {

Poset three_chain() { return chain_poset(2); }

Poset grid22() {
    return Poset::from_pairs({"00", "01", "10", "11"},
                             {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
}

Poset circle_faces() {
    return Poset::from_pairs({"v0", "v1", "v2", "e01", "e12", "e20"},
                             {{"v0", "e01"}, {"v1", "e01"}, {"v1", "e12"},
                              {"v2", "e12"}, {"v2", "e20"}, {"v0", "e20"}});
}

std::vector<Label> face(std::initializer_list<std::string> parts) {
    std::vector<Label> f;
    for (const auto& p : parts) f.push_back(Label(p));
    std::sort(f.begin(), f.end());
    return f;
}

SimplicialComplex edge_complex() { return from_poset(chain_poset(1)); }

SimplicialComplex point_complex(const std::string& name) {
    SimplicialComplex P;
    P.base = Poset::from_pairs({name}, std::vector<std::pair<std::string, std::string>>{});
    P.faces.insert(face({name}));
    return P;
}

bool sset_iso_by_counts_and_homology(const SimplicialSet& A, const SimplicialSet& B) {
    if (A.cutoff != B.cutoff) return false;
    for (int k = 0; k <= A.cutoff; ++k)
        if (A.count[k] != B.count[k]) return false;
    auto na = nondeg_counts(A), nb = nondeg_counts(B);
    return na == nb;
}

}  // namespace

TEST_CASE("from_poset on an edge lists both endpoints and the edge") {
    auto S = from_poset(chain_poset(1));
    S.validate();
    REQUIRE(S.faces.size() == 3);
    REQUIRE(S.faces.count(face({"0"})) == 1);
    REQUIRE(S.faces.count(face({"1"})) == 1);
    REQUIRE(S.faces.count(face({"0", "1"})) == 1);
}

TEST_CASE("from_poset on an antichain keeps only singletons") {
    auto E = Poset::from_pairs({"a", "b"}, std::vector<std::pair<std::string, std::string>>{});
    auto S = from_poset(E);
    S.validate();
    REQUIRE(S.faces.size() == 2);
    REQUIRE(S.faces.count(face({"a"})) == 1);
    REQUIRE(S.faces.count(face({"b"})) == 1);
}

TEST_CASE("from_poset on the three chain has seven faces") {
    auto S = from_poset(three_chain());
    S.validate();
    REQUIRE(S.faces.size() == 7);
    REQUIRE(S.faces.count(face({"0", "1", "2"})) == 1);
}

TEST_CASE("from_poset validates on assorted posets") {
    for (const auto& E : {three_chain(), grid22(), circle_faces()}) {
        auto S = from_poset(E);
        REQUIRE_NOTHROW(S.validate());
        for (size_t e = 0; e < E.size(); ++e) REQUIRE(S.faces.count({E.elements[e]}) == 1);
    }
}

TEST_CASE("from_poset validates on random posets") {
    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 25; ++trial) {
        size_t n = 2 + rng() % 5;
        std::vector<std::string> names;
        for (size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
        std::vector<std::pair<std::string, std::string>> rel;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (rng() % 3 == 0) rel.emplace_back(names[i], names[j]);
        auto E = Poset::from_pairs(names, rel);
        auto S = from_poset(E);
        REQUIRE_NOTHROW(S.validate());
        // every face of a chain complex really is a chain
        for (const auto& f : S.faces) {
            std::vector<size_t> ix;
            for (const auto& l : f) ix.push_back(E.index(l));
            for (size_t a : ix)
                for (size_t b : ix) REQUIRE((E.leq(a, b) || E.leq(b, a)));
        }
    }
}

TEST_CASE("validate rejects broken complexes") {
    auto S = from_poset(chain_poset(1));
    SECTION("missing singleton") {
        S.faces.erase(face({"0"}));
        REQUIRE_THROWS_WITH(S.validate(), Catch::Matchers::ContainsSubstring("singleton"));
    }
    SECTION("missing subset") {
        SimplicialComplex T;
        T.base = chain_poset(2);
        for (int i = 0; i <= 2; ++i) T.faces.insert(face({std::to_string(i)}));
        T.faces.insert(face({"0", "1", "2"}));
        REQUIRE_THROWS_WITH(T.validate(), Catch::Matchers::ContainsSubstring("closed under subsets"));
    }
    SECTION("incomparable face") {
        SimplicialComplex T;
        T.base = Poset::from_pairs({"a", "b"}, std::vector<std::pair<std::string, std::string>>{});
        T.faces.insert(face({"a"}));
        T.faces.insert(face({"b"}));
        T.faces.insert(face({"a", "b"}));
        REQUIRE_THROWS_WITH(T.validate(), Catch::Matchers::ContainsSubstring("linearly ordered"));
    }
}

TEST_CASE("kappa_star of a full chain complex matches the nerve") {
    for (const auto& E : {three_chain(), grid22(), circle_faces()}) {
        auto N = nerve(E, 3);
        auto K = kappa_star(from_poset(E), 3);
        REQUIRE(K.X.count == N.X.count);
        REQUIRE_NOTHROW(K.X.validate());
        for (int k = 0; k <= 3; ++k) REQUIRE(K.tuples[k] == N.tuples[k]);
    }
}

TEST_CASE("kappa_star with the top face removed gives the boundary pattern") {
    SimplicialComplex S = from_poset(three_chain());
    S.faces.erase(face({"0", "1", "2"}));
    S.validate();
    auto K = kappa_star(S, 3);
    REQUIRE_NOTHROW(K.X.validate());
    auto B = boundary_delta2(3);
    REQUIRE(K.X.count == B.count);
    REQUIRE(nondeg_counts(K.X) == nondeg_counts(B));
}

TEST_CASE("kappa_star of a point is the point") {
    auto K = kappa_star(point_complex("p"), 2);
    REQUIRE_NOTHROW(K.X.validate());
    for (int k = 0; k <= 2; ++k) REQUIRE(K.X.count[k] == 1);
    REQUIRE(nondeg_counts(K.X) == std::vector<size_t>{1, 0, 0});
}

TEST_CASE("colimit of a single object returns that object up to isomorphism") {
    auto S = from_poset(grid22());
    SCDiagram d;
    d.objects.push_back(&S);
    auto C = colimit_sc(d);
    REQUIRE_NOTHROW(C.validate());
    auto iso = sc_isomorphism(S, C);
    REQUIRE(iso.has_value());
}

TEST_CASE("pushout of two edges along a shared endpoint") {
    auto P = point_complex("p");
    auto B = edge_complex(), C = edge_complex();
    SCDiagram d;
    d.objects = {&P, &B, &C};
    d.arrows.push_back({0, 1, {1}});  // p lands on the top of the first edge
    d.arrows.push_back({0, 2, {0}});  // and on the bottom of the second
    auto X = colimit_sc(d);
    REQUIRE_NOTHROW(X.validate());
    REQUIRE(X.base.size() == 3);
    size_t nontrivial = 0;
    for (const auto& f : X.faces)
        if (f.size() > 1) ++nontrivial;
    REQUIRE(nontrivial == 2);
    // the glued middle vertex lies between the two outer ones, but the long
    // edge and the triple are absent, unlike the full chain complex
    REQUIRE(poset_isomorphism(X.base, chain_poset(2)).has_value());
    REQUIRE(X.faces.size() == 5);
    REQUIRE_FALSE(sc_isomorphism(X, from_poset(chain_poset(2))).has_value());
}

TEST_CASE("coequalizer collapsing the endpoints of an edge leaves one point") {
    auto P = point_complex("p");
    auto D = edge_complex();
    SCDiagram d;
    d.objects = {&P, &D};
    d.arrows.push_back({0, 1, {0}});
    d.arrows.push_back({0, 1, {1}});
    auto X = colimit_sc(d);
    REQUIRE_NOTHROW(X.validate());
    REQUIRE(X.base.size() == 1);
    REQUIRE(X.faces.size() == 1);
    REQUIRE(X.faces.begin()->size() == 1);
}

TEST_CASE("antisymmetrization merges mutually comparable classes") {
    // glue two edges head to tail in a cycle; the preorder closure makes all
    // four endpoints mutually comparable, so the base collapses to a point
    auto A = edge_complex(), B = edge_complex();
    auto P = point_complex("p"), Q = point_complex("q");
    SCDiagram d;
    d.objects = {&P, &Q, &A, &B};
    d.arrows.push_back({0, 2, {1}});  // p = top of A
    d.arrows.push_back({0, 3, {0}});  // p = bottom of B
    d.arrows.push_back({1, 3, {1}});  // q = top of B
    d.arrows.push_back({1, 2, {0}});  // q = bottom of A
    auto X = colimit_sc(d);
    REQUIRE_NOTHROW(X.validate());
    REQUIRE(X.base.size() == 1);
    REQUIRE(X.faces.size() == 1);
}

TEST_CASE("kappa_shriek of a nerve recovers the chain complex of the poset") {
    for (const auto& E : {chain_poset(1), three_chain(), grid22()}) {
        int D = (int)longest_chain_size(E) - 1;
        auto N = nerve(E, D);
        auto K = kappa_shriek(N.X);
        REQUIRE_NOTHROW(K.validate());
        auto iso = sc_isomorphism(K, from_poset(E));
        REQUIRE(iso.has_value());
    }
}

TEST_CASE("kappa_shriek of the point with degenerate levels is the point") {
    auto X = standard_simplex(0, 2);
    auto K = kappa_shriek(X);
    REQUIRE_NOTHROW(K.validate());
    REQUIRE(K.base.size() == 1);
    REQUIRE(K.faces.size() == 1);
}

TEST_CASE("kappa_shriek of the standard 2 simplex keeps the top face") {
    auto X = standard_simplex(2, 2);
    auto K = kappa_shriek(X);
    REQUIRE_NOTHROW(K.validate());
    REQUIRE(K.base.size() == 3);
    bool top = false;
    for (const auto& f : K.faces)
        if (f.size() == 3) top = true;
    REQUIRE(top);
    REQUIRE(sc_isomorphism(K, from_poset(three_chain())).has_value());
}

TEST_CASE("counit round trip is the identity up to explicit isomorphism") {
    for (const auto& E : {chain_poset(0), chain_poset(2), grid22(), circle_faces()}) {
        int D = std::max(1, (int)longest_chain_size(E) - 1);
        auto S = from_poset(E);
        auto K = kappa_star(S, D);
        auto R = kappa_shriek(K.X);
        REQUIRE_NOTHROW(R.validate());
        auto iso = sc_isomorphism(R, S);
        REQUIRE(iso.has_value());
        // spot check the witness: it maps faces onto faces bijectively
        std::set<std::vector<Label>> mapped;
        for (const auto& f : R.faces) {
            std::set<Label> m;
            for (const auto& l : f) m.insert(S.base.elements[(*iso)[R.base.index(l)]]);
            mapped.insert(std::vector<Label>(m.begin(), m.end()));
        }
        REQUIRE(mapped == S.faces);
    }
}

TEST_CASE("kappa_star sends injective morphisms to levelwise injections") {
    auto Swhole = from_poset(three_chain());
    SimplicialComplex Sbdry = Swhole;
    Sbdry.faces.erase(face({"0", "1", "2"}));
    SCMorphism inc{&Sbdry, &Swhole, {0, 1, 2}};
    REQUIRE_NOTHROW(inc.validate());
    auto KA = kappa_star(Sbdry, 3);
    auto KB = kappa_star(Swhole, 3);
    auto f = nerve_map(KA, KB, {0, 1, 2});
    REQUIRE_NOTHROW(f.validate());
    for (int k = 0; k <= 3; ++k) {
        std::set<int32_t> seen(f.map[k].begin(), f.map[k].end());
        REQUIRE(seen.size() == f.map[k].size());
    }
}

TEST_CASE("morphism validation rejects a map that breaks a face") {
    auto A = from_poset(chain_poset(1));
    // same base, but only the singleton faces: the identity is monotone yet
    // has nowhere to send the edge
    SimplicialComplex B;
    B.base = chain_poset(1);
    B.faces.insert(face({"0"}));
    B.faces.insert(face({"1"}));
    B.validate();
    SCMorphism f{&A, &B, {0, 1}};
    REQUIRE_THROWS_WITH(f.validate(), Catch::Matchers::ContainsSubstring("face image"));
}

TEST_CASE("kappa star and nerve agree when composed with kappa shriek twice") {
    // idempotence: applying the round trip twice changes nothing further
    auto E = grid22();
    auto S = from_poset(E);
    auto R1 = kappa_shriek(kappa_star(S, 2).X);
    auto R2 = kappa_shriek(kappa_star(R1, 2).X);
    REQUIRE(sc_isomorphism(R1, R2).has_value());
    REQUIRE(sset_iso_by_counts_and_homology(kappa_star(R1, 2).X, kappa_star(R2, 2).X));
}
