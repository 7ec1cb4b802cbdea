#include <catch2/catch_amalgamated.hpp>

#include "omf/poset.hpp"

using namespace omf;

namespace {

Poset chain3() { return chain_poset(2); }

// Face poset of the boundary of the triangle: three vertices, three edges,
// ordered by inclusion.
Poset circle_faces() {
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"v0", "e01"}, {"v1", "e01"}, {"v1", "e12"},
        {"v2", "e12"}, {"v0", "e02"}, {"v2", "e02"},
    };
    return Poset::from_pairs({"v0", "v1", "v2", "e01", "e12", "e02"}, pairs);
}

}  // namespace

TEST_CASE("strict chains of a 3-chain") {
    auto E = chain3();
    auto c1 = chains_str(E, 1);
    std::vector<std::vector<std::string>> expect = {{"0", "1"}, {"0", "2"}, {"1", "2"}};
    REQUIRE(c1 == expect);
    auto c2 = chains_str(E, 2);
    REQUIRE(c2 == std::vector<std::vector<std::string>>{{"0", "1", "2"}});
    REQUIRE(chains(E, 0).size() == 3);
}

TEST_CASE("antichain has no nontrivial chains") {
    Poset A = Poset::from_pairs({"a", "b", "c"}, {});
    REQUIRE(chains(A, 0).size() == 3);
    REQUIRE(chains(A, 1).empty());
    REQUIRE(longest_chain_size(A) == 1);
}

TEST_CASE("face poset of the triangle boundary") {
    auto E = circle_faces();
    auto c1 = chains_str(E, 1);
    REQUIRE(c1.size() == 6);
    for (const auto& t : c1) {
        REQUIRE(t[0][0] == 'v');
        REQUIRE(t[1][0] == 'e');
    }
    REQUIRE(chains(E, 2).empty());
    REQUIRE(longest_chain_size(E) == 2);
}

TEST_CASE("chains longer than the ground set are empty") {
    auto E = chain3();
    REQUIRE(chains(E, 3).empty());
    REQUIRE(chains(E, 7).empty());
}

TEST_CASE("from_pairs closes transitively") {
    Poset E = Poset::from_pairs({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    size_t x = E.index(Label("x")), z = E.index(Label("z"));
    REQUIRE(E.leq(x, z));
    REQUIRE(!E.leq(z, x));
    // the closure shows up as a strict chain of length 3
    REQUIRE(chains(E, 2).size() == 1);
}

TEST_CASE("from_pairs rejects cycles with a diagnostic") {
    REQUIRE_THROWS_WITH(
        Poset::from_pairs({"p", "q"}, {{"p", "q"}, {"q", "p"}}),
        Catch::Matchers::ContainsSubstring("p") && Catch::Matchers::ContainsSubstring("q"));
}

TEST_CASE("reflexivity and antisymmetry hold after closure") {
    auto E = circle_faces();
    for (size_t i = 0; i < E.size(); ++i) {
        REQUIRE(E.leq(i, i));
        for (size_t j = 0; j < E.size(); ++j)
            if (i != j) REQUIRE(!(E.leq(i, j) && E.leq(j, i)));
    }
}

TEST_CASE("hasse diagram of a chain keeps only covers") {
    auto E = chain3();
    auto h = E.hasse();
    std::vector<std::pair<size_t, size_t>> expect = {{0, 1}, {1, 2}};
    REQUIRE(h == expect);
}

TEST_CASE("poset isomorphism finds a relabeling") {
    Poset A = Poset::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
    Poset B = Poset::from_pairs({"r", "s", "t"}, {{"t", "r"}, {"t", "s"}});
    auto iso = poset_isomorphism(A, B);
    REQUIRE(iso.has_value());
    // "a" is the unique bottom, so it must land on "t"
    REQUIRE(B.elements[(*iso)[A.index(Label("a"))]] == Label("t"));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A.size(); ++j)
            REQUIRE(A.leq(i, j) == B.leq((*iso)[i], (*iso)[j]));
}

TEST_CASE("poset isomorphism rejects different shapes") {
    Poset A = Poset::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
    Poset chain = chain3();
    REQUIRE(!poset_isomorphism(A, chain).has_value());
    Poset small = Poset::from_pairs({"a", "b"}, {{"a", "b"}});
    REQUIRE(!poset_isomorphism(A, small).has_value());
}

TEST_CASE("monotone map validation") {
    auto E = chain3();
    Poset F = Poset::from_pairs({"lo", "hi"}, {{"lo", "hi"}});
    size_t lo = F.index(Label("lo")), hi = F.index(Label("hi"));
    MonotoneMap ok{&E, &F, {lo, lo, hi}};
    REQUIRE_NOTHROW(ok.validate());
    MonotoneMap bad{&E, &F, {hi, lo, lo}};
    REQUIRE_THROWS(bad.validate());
}

TEST_CASE("elements are sorted and indexed by label") {
    Poset E = Poset::from_pairs({"zz", "mm", "aa"}, {{"aa", "zz"}});
    REQUIRE(E.elements[0] == Label("aa"));
    REQUIRE(E.elements[2] == Label("zz"));
    REQUIRE(E.index(Label("mm")) == 1);
    REQUIRE(E.leq(E.index(Label("aa")), E.index(Label("zz"))));
}
