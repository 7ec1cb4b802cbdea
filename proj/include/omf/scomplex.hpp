#pragma once

// Simplicial complexes over posets: a base poset with a downward-closed set
// of linearly ordered faces.  Bridges to simplicial sets in both directions
// and computes finite colimits, where the base is glued as a preorder and
// then antisymmetrized.

#include <set>

#include "omf/poset.hpp"
#include "omf/sset.hpp"

namespace omf {

struct SimplicialComplex {
    Poset base;
    std::set<std::vector<Label>> faces;  // each face sorted by label

    void validate() const {
        for (size_t e = 0; e < base.size(); ++e)
            if (!faces.count({base.elements[e]}))
                throw std::runtime_error("scomplex: missing singleton " + base.elements[e].str());
        for (const auto& f : faces) {
            if (f.empty()) throw std::runtime_error("scomplex: empty face");
            if (!std::is_sorted(f.begin(), f.end()) ||
                std::adjacent_find(f.begin(), f.end()) != f.end())
                throw std::runtime_error("scomplex: face not in canonical form");
            for (size_t i = 0; i < f.size(); ++i)
                for (size_t j = 0; j < f.size(); ++j) {
                    if (i == j) continue;
                    size_t a = base.index(f[i]), b = base.index(f[j]);
                    if (!base.leq(a, b) && !base.leq(b, a))
                        throw std::runtime_error("scomplex: face " + f[i].str() + "," + f[j].str() +
                                                 " not linearly ordered");
                }
            if (f.size() > 1)
                for (size_t skip = 0; skip < f.size(); ++skip) {
                    auto sub = f;
                    sub.erase(sub.begin() + skip);
                    if (!faces.count(sub)) throw std::runtime_error("scomplex: not closed under subsets");
                }
        }
    }
};

inline SimplicialComplex from_poset(const Poset& E) {
    SimplicialComplex S;
    S.base = E;
    for (int p = 0; p < (int)E.size(); ++p) {
        auto cs = chains(E, p);
        if (cs.empty()) break;
        for (auto& c : cs) {
            std::sort(c.begin(), c.end());
            S.faces.insert(c);
        }
    }
    return S;
}

struct SCMorphism {
    const SimplicialComplex* src = nullptr;
    const SimplicialComplex* dst = nullptr;
    std::vector<size_t> map;  // by source element index

    void validate() const {
        MonotoneMap{&src->base, &dst->base, map}.validate();
        for (const auto& f : src->faces) {
            std::set<Label> img;
            for (const auto& l : f) img.insert(dst->base.elements[map[src->base.index(l)]]);
            if (!dst->faces.count(std::vector<Label>(img.begin(), img.end())))
                throw std::runtime_error("scomplex morphism: face image missing");
        }
    }
};

// Simplices are the weakly increasing tuples spanning a face; the result
// carries its tuples, so nerve machinery applies to it directly.
inline Nerve kappa_star(const SimplicialComplex& S, int cutoff) {
    Nerve N;
    N.E = S.base;
    N.X.cutoff = cutoff;
    N.X.count.resize(cutoff + 1);
    N.X.faces.resize(cutoff + 1);
    N.X.degen.resize(cutoff + 1);
    N.X.names.resize(cutoff + 1);
    N.tuples.resize(cutoff + 1);
    std::vector<std::map<std::vector<size_t>, int32_t>> index(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        for (const auto& t : weak_chains_ix(S.base, k)) {
            std::set<Label> used;
            for (size_t e : t) used.insert(S.base.elements[e]);
            if (!S.faces.count(std::vector<Label>(used.begin(), used.end()))) continue;
            index[k][t] = (int32_t)N.tuples[k].size();
            N.tuples[k].push_back(t);
            std::vector<std::string> parts;
            for (size_t e : t) parts.push_back(S.base.elements[e].str());
            N.X.names[k].push_back(Label(parts));
        }
        N.X.count[k] = N.tuples[k].size();
    }
    for (int k = 1; k <= cutoff; ++k) {
        N.X.faces[k].resize(N.X.count[k]);
        for (size_t s = 0; s < N.X.count[k]; ++s)
            for (int i = 0; i <= k; ++i) {
                auto t = N.tuples[k][s];
                t.erase(t.begin() + i);
                N.X.faces[k][s].push_back(index[k - 1].at(t));
            }
    }
    for (int k = 0; k < cutoff; ++k) {
        N.X.degen[k].resize(N.X.count[k]);
        for (size_t s = 0; s < N.X.count[k]; ++s)
            for (int i = 0; i <= k; ++i) {
                auto t = N.tuples[k][s];
                t.insert(t.begin() + i, t[i]);
                N.X.degen[k][s].push_back(index[k + 1].at(t));
            }
    }
    return N;
}

struct SCDiagram {
    std::vector<const SimplicialComplex*> objects;
    struct Arrow {
        size_t from = 0, to = 0;
        std::vector<size_t> map;  // element index map
    };
    std::vector<Arrow> arrows;
};

// Base: set colimit, then the preorder generated by the legs, then the
// quotient by mutual comparability.  Faces: images of leg faces.  Class
// labels list their members as object.element so gluing stays visible.
inline SimplicialComplex colimit_sc(const SCDiagram& d) {
    std::vector<size_t> offset;
    size_t total = 0;
    for (const auto* o : d.objects) {
        offset.push_back(total);
        total += o->base.size();
    }
    std::vector<size_t> uf(total);
    std::iota(uf.begin(), uf.end(), 0);
    auto root = [&](size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (const auto& a : d.arrows) {
        if (a.map.size() != d.objects[a.from]->base.size())
            throw std::runtime_error("colimit_sc: arrow map has wrong length");
        for (size_t e = 0; e < a.map.size(); ++e)
            uf[root(offset[a.from] + e)] = root(offset[a.to] + a.map[e]);
    }
    // mutual comparability collapses further, so iterate: close the preorder,
    // merge x <= y <= x, repeat until stable
    for (;;) {
        std::map<size_t, std::vector<size_t>> members;
        for (size_t x = 0; x < total; ++x) members[root(x)].push_back(x);
        std::vector<size_t> roots;
        std::map<size_t, size_t> rix;
        for (auto& [r, _] : members) {
            rix[r] = roots.size();
            roots.push_back(r);
        }
        size_t n = roots.size();
        std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) rel[i][i] = true;
        for (size_t o = 0; o < d.objects.size(); ++o) {
            const Poset& E = d.objects[o]->base;
            for (size_t a = 0; a < E.size(); ++a)
                for (size_t b = 0; b < E.size(); ++b)
                    if (E.leq(a, b)) rel[rix[root(offset[o] + a)]][rix[root(offset[o] + b)]] = true;
        }
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i)
                if (rel[i][k])
                    for (size_t j = 0; j < n; ++j)
                        if (rel[k][j]) rel[i][j] = true;
        bool merged = false;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (rel[i][j] && rel[j][i]) {
                    uf[root(roots[i])] = root(roots[j]);
                    merged = true;
                }
        if (merged) continue;
        // stable: build the labeled poset and the faces
        auto label_of = [&](size_t r) {
            std::vector<std::string> parts;
            for (size_t x : members[r]) {
                size_t o = 0;
                while (o + 1 < d.objects.size() && offset[o + 1] <= x) ++o;
                parts.push_back(std::to_string(o) + "." +
                                d.objects[o]->base.elements[x - offset[o]].str());
            }
            std::sort(parts.begin(), parts.end());
            return Label(parts);
        };
        std::vector<Label> els;
        for (size_t r : roots) els.push_back(label_of(r));
        std::vector<std::pair<Label, Label>> pairs;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (rel[i][j]) pairs.emplace_back(els[i], els[j]);
        SimplicialComplex out;
        out.base = Poset::from_pairs(els, pairs);
        for (size_t o = 0; o < d.objects.size(); ++o)
            for (const auto& f : d.objects[o]->faces) {
                std::set<Label> img;
                for (const auto& l : f)
                    img.insert(els[rix[root(offset[o] + d.objects[o]->base.index(l))]]);
                out.faces.insert(std::vector<Label>(img.begin(), img.end()));
            }
        return out;
    }
}

// Colimit over the simplex category of X of the full chain complexes on its
// simplices, glued along face and degeneracy arrows.
inline SimplicialComplex kappa_shriek(const SimplicialSet& X) {
    std::vector<SimplicialComplex> standards;
    for (int p = 0; p <= X.cutoff; ++p) standards.push_back(from_poset(chain_poset(p)));
    SCDiagram d;
    std::vector<std::vector<size_t>> object_of(X.cutoff + 1);
    for (int p = 0; p <= X.cutoff; ++p)
        for (size_t s = 0; s < X.count[p]; ++s) {
            object_of[p].push_back(d.objects.size());
            d.objects.push_back(&standards[p]);
        }
    // chain poset elements sort as labels "0".."p", so index order is vertex
    // order up to p = 9; cutoffs here stay far below that
    for (int p = 1; p <= X.cutoff; ++p)
        for (size_t s = 0; s < X.count[p]; ++s)
            for (int i = 0; i <= p; ++i) {
                SCDiagram::Arrow a;
                a.from = object_of[p - 1][X.faces[p][s][i]];
                a.to = object_of[p][s];
                for (int j = 0; j < p; ++j) a.map.push_back(j < i ? j : j + 1);
                d.arrows.push_back(std::move(a));
            }
    for (int p = 0; p < X.cutoff; ++p)
        for (size_t s = 0; s < X.count[p]; ++s)
            for (int i = 0; i <= p; ++i) {
                SCDiagram::Arrow a;
                a.from = object_of[p + 1][X.degen[p][s][i]];
                a.to = object_of[p][s];
                for (int j = 0; j <= p + 1; ++j) a.map.push_back(j <= i ? j : j - 1);
                d.arrows.push_back(std::move(a));
            }
    return colimit_sc(d);
}

// Isomorphism search over base bijections that also match the face sets.
inline std::optional<std::vector<size_t>> sc_isomorphism(const SimplicialComplex& A,
                                                         const SimplicialComplex& B) {
    size_t n = A.base.size();
    if (n != B.base.size() || A.faces.size() != B.faces.size()) return std::nullopt;
    auto profile = [](const SimplicialComplex& S, size_t i) {
        int below = 0, above = 0, infaces = 0;
        for (size_t j = 0; j < S.base.size(); ++j) {
            if (S.base.lt(j, i)) ++below;
            if (S.base.lt(i, j)) ++above;
        }
        for (const auto& f : S.faces)
            if (std::find(f.begin(), f.end(), S.base.elements[i]) != f.end()) ++infaces;
        return std::tuple(below, above, infaces);
    };
    std::vector<size_t> img(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto face_ok = [&]() {
        for (const auto& f : A.faces) {
            std::set<Label> m;
            for (const auto& l : f) m.insert(B.base.elements[img[A.base.index(l)]]);
            if (!B.faces.count(std::vector<Label>(m.begin(), m.end()))) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == n) return face_ok();
        for (size_t c = 0; c < n; ++c) {
            if (used[c] || profile(A, i) != profile(B, c)) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) {
                if (A.base.rel[i][j] != B.base.rel[c][img[j]]) ok = false;
                if (A.base.rel[j][i] != B.base.rel[img[j]][c]) ok = false;
            }
            if (!ok) continue;
            img[i] = c;
            used[c] = true;
            if (self(self, i + 1)) return true;
            used[c] = false;
            img[i] = SIZE_MAX;
        }
        return false;
    };
    if (rec(rec, 0)) return img;
    return std::nullopt;
}

}  // namespace omf
