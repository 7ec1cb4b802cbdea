#pragma once

// Augmented directed complexes: graded abelian groups with a positivity
// submonoid per degree, a differential, and an augmentation.  Degrees are
// free on labeled generators unless a truncation has introduced relations;
// presented degrees carry canonical forms through quotient groups.  Also
// here: atoms, the unitality and loop-freeness conditions, truncation, the
// chains functor on simplicial sets and posets, and bounded enumeration of
// morphisms out of a simplex chain complex.

#include "omf/poset.hpp"
#include "omf/sset.hpp"
#include "omf/zmod.hpp"

namespace omf {

struct NotUnital : std::runtime_error {
    explicit NotUnital(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Adc {
    int dim = 0;         // degrees above dim are zero
    bool based = true;   // every degree free with generators spanning positivity
    std::vector<std::vector<Label>> gens;      // per degree 0..dim
    std::vector<std::vector<ZVec>> diff;       // diff[k][j] = d of gens[k][j], k >= 1
    std::vector<Int> aug;                      // e on degree-0 generators
    std::vector<std::vector<ZVec>> relations;  // per degree; empty means free
    std::vector<AbelianGroup> groups;          // canonical forms per degree

    const std::vector<Label>& degree_gens(int k) const {
        static const std::vector<Label> none;
        return (k >= 0 && k <= dim) ? gens[k] : none;
    }

    size_t gindex(int k, const Label& l) const {
        const auto& g = gens[k];
        auto it = std::find(g.begin(), g.end(), l);
        if (it == g.end()) throw std::runtime_error("adc: unknown generator " + l.str());
        return (size_t)(it - g.begin());
    }

    bool has_gen(int k, const Label& l) const {
        if (k < 0 || k > dim) return false;
        const auto& g = gens[k];
        return std::find(g.begin(), g.end(), l) != g.end();
    }

    ZVec d_of(int k, const ZVec& x) const {
        ZVec out;
        if (k < 1 || k > dim) return out;
        for (const auto& [l, v] : x.c) out += diff[k][gindex(k, l)] * v;
        return out;
    }

    Int e_of(const ZVec& x) const {
        Int s = 0;
        for (const auto& [l, v] : x.c) s += aug[gindex(0, l)] * v;
        return s;
    }

    ZMatrix d_matrix(int k) const {
        ZMatrix m(gens[k - 1], gens[k]);
        for (size_t j = 0; j < gens[k].size(); ++j)
            for (const auto& [l, v] : diff[k][j].c) m.a[gindex(k - 1, l)][j] = v;
        return m;
    }

    bool presented(int k) const { return k <= dim && !relations[k].empty(); }

    // canonical coset representative; the identity in free degrees
    ZVec canon(int k, const ZVec& x) const {
        if (!presented(k)) return x;
        return groups[k].normal_form(x);
    }

    bool same(int k, const ZVec& x, const ZVec& y) const {
        if (!presented(k)) return x == y;
        return groups[k].equal(x, y);
    }

    void finalize() {
        gens.resize(dim + 1);
        diff.resize(dim + 1);
        relations.resize(dim + 1);
        for (int k = 0; k <= dim; ++k) diff[k].resize(gens[k].size());
        groups.clear();
        for (int k = 0; k <= dim; ++k) groups.push_back(quotient_group(gens[k], relations[k]));
    }

    void validate() const {
        if ((int)gens.size() != dim + 1 || (int)diff.size() != dim + 1 ||
            (int)relations.size() != dim + 1 || (int)groups.size() != dim + 1)
            throw std::runtime_error("adc: finalize before validate");
        if (aug.size() != gens[0].size()) throw std::runtime_error("adc: augmentation size");
        for (int k = 0; k <= dim; ++k) {
            std::set<Label> seen(gens[k].begin(), gens[k].end());
            if (seen.size() != gens[k].size())
                throw std::runtime_error("adc: duplicate generator label in degree " + std::to_string(k));
            if (k >= 1 && diff[k].size() != gens[k].size())
                throw std::runtime_error("adc: differential size in degree " + std::to_string(k));
        }
        for (int k = 2; k <= dim; ++k)
            for (size_t j = 0; j < gens[k].size(); ++j) {
                ZVec dd = d_of(k - 1, diff[k][j]);
                if (!(presented(k - 2) ? groups[k - 2].is_zero(dd) : dd.is_zero()))
                    throw std::runtime_error("adc: d after d is nonzero at " + gens[k][j].str());
            }
        if (dim >= 1)
            for (size_t j = 0; j < gens[1].size(); ++j) {
                ZVec b = diff[1][j];
                if (presented(0)) b = groups[0].normal_form(b);
                if (e_of(b) != 0)
                    throw std::runtime_error("adc: augmentation of d is nonzero at " + gens[1][j].str());
            }
        for (int k = 0; k <= dim; ++k)
            for (const auto& r : relations[k]) {
                if (based) throw std::runtime_error("adc: based complex carries relations");
                if (k >= 1 && !same(k - 1, d_of(k, r), ZVec{}))
                    throw std::runtime_error("adc: relation with nonzero boundary in degree " + std::to_string(k));
                if (k == 0 && e_of(r) != 0)
                    throw std::runtime_error("adc: relation with nonzero augmentation");
            }
    }
};

// Positivity membership: in a free degree the coordinates decide; in a
// presented degree search for a nonnegative representative in the coset.
// Returns 1 yes, 0 no, -1 inconclusive at the cap.
inline int pos_member(const Adc& K, int k, const ZVec& x, const Int& cap) {
    if (k > K.dim) return x.is_zero() ? 1 : 0;
    if (is_nonneg(x)) return 1;
    if (!K.presented(k)) return 0;
    if (is_nonneg(K.canon(k, x))) return 1;
    const auto& rels = K.relations[k];
    ZVec cur = x;
    auto rec = [&](auto&& self, size_t j) -> bool {
        if (j == rels.size()) return is_nonneg(cur);
        ZVec save = cur;
        cur += rels[j] * Int(-cap);
        for (Int t = -cap; t <= cap; ++t) {
            if (self(self, j + 1)) return true;
            cur += rels[j];
        }
        cur = save;
        return false;
    };
    if (rec(rec, 0)) return 1;
    // without a certificate of emptiness a failed bounded search stays open
    return rels.empty() ? 0 : -1;
}

// Cell table of the associated omega category: two positive chains per
// level, boundaries linking consecutive levels, matching top rows.
struct NuCell {
    int dim = -1;
    std::vector<std::array<ZVec, 2>> rows;

    bool operator==(const NuCell& o) const { return dim == o.dim && rows == o.rows; }
    bool operator<(const NuCell& o) const {
        if (dim != o.dim) return dim < o.dim;
        for (size_t k = 0; k < rows.size(); ++k) {
            if (rows[k][0] != o.rows[k][0]) return rows[k][0] < o.rows[k][0];
            if (rows[k][1] != o.rows[k][1]) return rows[k][1] < o.rows[k][1];
        }
        return false;
    }

    const ZVec& top() const { return rows[dim][0]; }

    std::string str() const {
        std::string s;
        for (int k = dim; k >= 0; --k)
            s += "[" + rows[k][0].str() + " | " + rows[k][1].str() + "]";
        return s;
    }
};

// Degreewise canonical form, for equality of cells over presented degrees.
inline NuCell nu_canon(const Adc& K, const NuCell& c) {
    NuCell out = c;
    for (int k = 0; k <= c.dim; ++k)
        for (int eps = 0; eps < 2; ++eps) out.rows[k][eps] = K.canon(k, c.rows[k][eps]);
    return out;
}

inline void nu_check(const Adc& K, const NuCell& c, const Int& cap = 16) {
    if (c.dim < 0 || (int)c.rows.size() != c.dim + 1) throw std::runtime_error("cell: bad table shape");
    for (int k = 0; k <= c.dim; ++k)
        for (int eps = 0; eps < 2; ++eps)
            if (pos_member(K, k, c.rows[k][eps], cap) != 1)
                throw std::runtime_error("cell: entry not positive at level " + std::to_string(k));
    for (int k = 1; k <= c.dim; ++k)
        for (int eps = 0; eps < 2; ++eps) {
            ZVec want = c.rows[k - 1][1] - c.rows[k - 1][0];
            if (!K.same(k - 1, K.d_of(k, c.rows[k][eps]), want))
                throw std::runtime_error("cell: boundary mismatch at level " + std::to_string(k));
        }
    for (int eps = 0; eps < 2; ++eps)
        if (K.e_of(K.canon(0, c.rows[0][eps])) != 1)
            throw std::runtime_error("cell: augmentation of level 0 is not 1");
    if (!K.same(c.dim, c.rows[c.dim][0], c.rows[c.dim][1]))
        throw std::runtime_error("cell: top rows differ");
}

// The atom of a basis element: top rows equal to the element, lower rows the
// negative (left column) and positive (right column) parts of boundaries.
// The construction needs a genuine basis through the element's degree, so it
// is refused from any presented degree downward.
inline NuCell atom(const Adc& K, const Label& b) {
    int deg = -1;
    for (int k = 0; k <= K.dim && deg < 0; ++k)
        if (K.has_gen(k, b)) deg = k;
    if (deg < 0) throw std::runtime_error("atom: unknown basis element " + b.str());
    for (int k = 0; k <= deg; ++k)
        if (K.presented(k))
            throw std::runtime_error("atom: degree " + std::to_string(k) + " is presented");
    NuCell c;
    c.dim = deg;
    c.rows.resize(deg + 1);
    c.rows[deg][0] = c.rows[deg][1] = ZVec::unit(b);
    for (int k = deg; k >= 1; --k) {
        c.rows[k - 1][0] = pos_decompose(K.d_of(k, c.rows[k][0])).minus;
        c.rows[k - 1][1] = pos_decompose(K.d_of(k, c.rows[k][1])).plus;
    }
    if (K.e_of(c.rows[0][0]) != 1 || K.e_of(c.rows[0][1]) != 1)
        throw NotUnital("atom: augmentation corner of " + b.str() + " is not 1");
    nu_check(K, c);
    return c;
}

inline bool is_unital(const Adc& K) {
    if (!K.based) return false;
    for (int k = 0; k <= K.dim; ++k)
        for (const auto& b : K.gens[k]) {
            NuCell c;
            c.dim = k;
            c.rows.resize(k + 1);
            c.rows[k][0] = c.rows[k][1] = ZVec::unit(b);
            for (int j = k; j >= 1; --j) {
                c.rows[j - 1][0] = pos_decompose(K.d_of(j, c.rows[j][0])).minus;
                c.rows[j - 1][1] = pos_decompose(K.d_of(j, c.rows[j][1])).plus;
            }
            if (K.e_of(c.rows[0][0]) != 1 || K.e_of(c.rows[0][1]) != 1) return false;
        }
    return true;
}

// A preorder on the whole graded basis: elements tagged with their degree,
// relation given as a closed boolean matrix.
struct BasisPreorder {
    std::vector<std::pair<int, Label>> elems;
    std::vector<std::vector<bool>> rel;

    size_t index(int k, const Label& l) const {
        for (size_t i = 0; i < elems.size(); ++i)
            if (elems[i].first == k && elems[i].second == l) return i;
        throw std::runtime_error("basis preorder: unknown element " + l.str());
    }

    bool antisymmetric() const {
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = i + 1; j < elems.size(); ++j)
                if (rel[i][j] && rel[j][i]) return false;
        return true;
    }

    void close() {
        size_t n = elems.size();
        for (size_t i = 0; i < n; ++i) rel[i][i] = true;
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i)
                if (rel[i][k])
                    for (size_t j = 0; j < n; ++j)
                        if (rel[k][j]) rel[i][j] = true;
    }
};

inline BasisPreorder empty_basis_preorder(const Adc& K) {
    BasisPreorder P;
    for (int k = 0; k <= K.dim; ++k)
        for (const auto& b : K.gens[k]) P.elems.emplace_back(k, b);
    P.rel.assign(P.elems.size(), std::vector<bool>(P.elems.size(), false));
    return P;
}

// x below y when the upper i-row of the atom of x meets the lower i-row of
// the atom of y; only elements of degree above i take part.
inline BasisPreorder loop_order(const Adc& K, int i) {
    BasisPreorder P = empty_basis_preorder(K);
    std::map<size_t, NuCell> atoms;
    for (size_t a = 0; a < P.elems.size(); ++a)
        if (P.elems[a].first > i) atoms[a] = atom(K, P.elems[a].second);
    for (const auto& [a, ca] : atoms)
        for (const auto& [b, cb] : atoms) {
            const ZVec& up = ca.rows[i][1];
            const ZVec& down = cb.rows[i][0];
            bool meet = false;
            for (const auto& [l, v] : up.c)
                if (v != 0 && down.get(l) != 0) meet = true;
            if (meet) P.rel[a][b] = true;
        }
    P.close();
    return P;
}

inline bool is_loop_free(const Adc& K) {
    for (int i = 0; i < K.dim; ++i)
        if (!loop_order(K, i).antisymmetric()) return false;
    return true;
}

// x below y when x appears in the negative boundary of y or y appears in the
// positive boundary of x; degree-0 elements have zero boundary.
inline BasisPreorder strong_order(const Adc& K) {
    BasisPreorder P = empty_basis_preorder(K);
    for (size_t a = 0; a < P.elems.size(); ++a) {
        auto [k, b] = P.elems[a];
        if (k == 0) continue;
        auto parts = pos_decompose(K.d_of(k, ZVec::unit(b)));
        for (const auto& [l, v] : parts.minus.c)
            if (v != 0) P.rel[P.index(k - 1, l)][a] = true;
        for (const auto& [l, v] : parts.plus.c)
            if (v != 0) P.rel[a][P.index(k - 1, l)] = true;
    }
    P.close();
    return P;
}

inline bool is_strongly_loop_free(const Adc& K) { return strong_order(K).antisymmetric(); }

// Degrees below n survive, degree n becomes the quotient by boundaries from
// above, higher degrees vanish.  The identity when n already bounds the
// dimension.
inline Adc truncate_adc(const Adc& K, int n) {
    if (n >= K.dim) return K;
    if (n < 0) throw std::runtime_error("truncate: negative degree");
    Adc T;
    T.dim = n;
    T.based = false;
    T.gens.assign(K.gens.begin(), K.gens.begin() + n + 1);
    T.diff.assign(K.diff.begin(), K.diff.begin() + n + 1);
    T.aug = K.aug;
    T.relations.assign(K.relations.begin(), K.relations.begin() + n + 1);
    for (const auto& dnext : K.diff[n + 1])
        if (!dnext.is_zero()) T.relations[n].push_back(dnext);
    T.finalize();
    return T;
}

// Chains of a simplicial set: one generator per nondegenerate simplex,
// alternating face sum with degenerate faces dropped, augmentation 1.
inline Adc chains_functor(const SimplicialSet& X) {
    std::vector<std::vector<size_t>> nd(X.cutoff + 1);
    std::vector<std::map<size_t, Label>> names(X.cutoff + 1);
    int top = 0;
    for (int k = 0; k <= X.cutoff; ++k)
        for (size_t s = 0; s < X.count[k]; ++s)
            if (!is_degenerate(X, k, s)) {
                nd[k].push_back(s);
                names[k][s] = Label(X.name_of(k, s));
                if (k > top) top = k;
            }
    Adc K;
    K.dim = top;
    K.gens.resize(top + 1);
    K.diff.resize(top + 1);
    for (int k = 0; k <= top; ++k)
        for (size_t s : nd[k]) K.gens[k].push_back(names[k].at(s));
    K.aug.assign(K.gens[0].size(), Int(1));
    for (int k = 1; k <= top; ++k)
        for (size_t s : nd[k]) {
            ZVec d;
            for (int i = 0; i <= k; ++i) {
                int32_t f = X.faces[k][s][i];
                if (is_degenerate(X, k - 1, (size_t)f)) continue;
                d.add(names[k - 1].at((size_t)f), (i % 2 == 0) ? Int(1) : Int(-1));
            }
            K.diff[k].push_back(std::move(d));
        }
    K.finalize();
    K.validate();
    return K;
}

// Chains of the nerve of a poset, built directly from strict chains: the
// generator labels are the chain tuples and every face of a strict chain is
// again strict, so the boundary is a full alternating sum.
inline Adc chains_of_poset(const Poset& E) {
    Adc K;
    K.dim = std::max(0, longest_chain_size(E) - 1);
    K.gens.resize(K.dim + 1);
    K.diff.resize(K.dim + 1);
    std::vector<std::vector<std::vector<Label>>> tuples(K.dim + 1);
    for (int p = 0; p <= K.dim; ++p) {
        tuples[p] = chains(E, p);
        for (const auto& t : tuples[p]) {
            std::vector<std::string> parts;
            for (const auto& l : t) parts.push_back(l.str());
            K.gens[p].push_back(Label(parts));
        }
    }
    K.aug.assign(K.gens[0].size(), Int(1));
    for (int p = 1; p <= K.dim; ++p)
        for (const auto& t : tuples[p]) {
            ZVec d;
            for (size_t i = 0; i < t.size(); ++i) {
                std::vector<std::string> parts;
                for (size_t j = 0; j < t.size(); ++j)
                    if (j != i) parts.push_back(t[j].str());
                d.add(Label(parts), (i % 2 == 0) ? Int(1) : Int(-1));
            }
            K.diff[p].push_back(std::move(d));
        }
    K.finalize();
    K.validate();
    return K;
}

inline Adc simplex_adc(int p) { return chains_of_poset(chain_poset(p)); }

inline std::vector<int> tuple_of_label(const Label& l) {
    std::vector<int> t;
    for (const auto& s : l.parts) t.push_back(std::stoi(s));
    return t;
}

inline Label label_of_tuple(const std::vector<int>& t) {
    std::vector<std::string> parts;
    for (int v : t) parts.push_back(std::to_string(v));
    return Label(parts);
}

struct AdcMorphism {
    const Adc* src = nullptr;
    const Adc* dst = nullptr;
    std::vector<std::vector<ZVec>> img;  // per source degree, per generator

    // canonical image table: the comparison key for equality and ordering
    std::vector<std::vector<ZVec>> key() const {
        std::vector<std::vector<ZVec>> k = img;
        for (int d = 0; d < (int)k.size(); ++d)
            if (d <= dst->dim)
                for (auto& v : k[d]) v = dst->canon(d, v);
        return k;
    }

    bool operator==(const AdcMorphism& o) const { return key() == o.key(); }

    const ZVec& of(int k, const Label& l) const { return img[k][src->gindex(k, l)]; }

    ZVec apply(int k, const ZVec& x) const {
        ZVec out;
        if (k > src->dim) return out;
        for (const auto& [l, v] : x.c) out += of(k, l) * v;
        return out;
    }

    void validate(const Int& cap = 16) const {
        if ((int)img.size() != src->dim + 1) throw std::runtime_error("adc morphism: image table shape");
        for (int k = 0; k <= src->dim; ++k) {
            if (img[k].size() != src->gens[k].size())
                throw std::runtime_error("adc morphism: image count in degree " + std::to_string(k));
            for (const auto& v : img[k]) {
                if (k > dst->dim) {
                    if (!v.is_zero()) throw std::runtime_error("adc morphism: nonzero image above target dimension");
                    continue;
                }
                int pm = pos_member(*dst, k, v, cap);
                if (pm == 0) throw std::runtime_error("adc morphism: image not positive in degree " + std::to_string(k));
                if (pm == -1) throw CapExceeded("adc morphism: positivity test inconclusive");
            }
        }
        for (size_t j = 0; j < src->gens[0].size(); ++j) {
            ZVec v = dst->presented(0) ? dst->groups[0].normal_form(img[0][j]) : img[0][j];
            if (dst->e_of(v) != src->aug[j])
                throw std::runtime_error("adc morphism: augmentation broken at " + src->gens[0][j].str());
        }
        for (int k = 1; k <= src->dim; ++k)
            for (size_t j = 0; j < src->gens[k].size(); ++j) {
                ZVec lhs = (k <= dst->dim) ? dst->d_of(k, img[k][j]) : ZVec{};
                ZVec rhs = apply(k - 1, src->diff[k][j]);
                int cmp_deg = k - 1;
                bool ok = (cmp_deg <= dst->dim) ? dst->same(cmp_deg, lhs, rhs)
                                                : (lhs.is_zero() && rhs.is_zero());
                if (!ok)
                    throw std::runtime_error("adc morphism: differential broken at " + src->gens[k][j].str());
            }
        // relations of a presented source must die in the target
        for (int k = 0; k <= src->dim; ++k)
            for (const auto& r : src->relations[k]) {
                ZVec v = apply(k, r);
                bool ok = (k <= dst->dim) ? dst->same(k, v, ZVec{}) : v.is_zero();
                if (!ok) throw std::runtime_error("adc morphism: source relation not killed");
            }
    }
};

// Precompose a morphism out of a simplex chain complex with the chain map of
// a monotone vertex map psi; tuples that collapse go to zero.
inline AdcMorphism precompose_simplex_op(const AdcMorphism& f, const Adc& src_small,
                                         const std::vector<int>& psi) {
    AdcMorphism g;
    g.src = &src_small;
    g.dst = f.dst;
    g.img.resize(src_small.dim + 1);
    for (int k = 0; k <= src_small.dim; ++k)
        for (const auto& l : src_small.gens[k]) {
            auto t = tuple_of_label(l);
            std::vector<int> it;
            for (int v : t) it.push_back(psi[(size_t)v]);
            bool strict = true;
            for (size_t i = 0; i + 1 < it.size(); ++i)
                if (it[i] >= it[i + 1]) strict = false;
            if (strict && k <= f.src->dim)
                g.img[k].push_back(f.of(k, label_of_tuple(it)));
            else
                g.img[k].push_back(ZVec{});
        }
    return g;
}

// All morphisms from a based source into the target, by backtracking degree
// by degree: degree 0 images solve the augmentation constraint, higher
// degrees solve the boundary constraint, everything nonnegative.  Images in
// a presented top degree are enumerated on representatives and deduplicated
// by canonical form; degrees above the target dimension force zero images
// whose boundary constraint prunes the tree.
inline std::vector<AdcMorphism> enumerate_morphisms(const Adc& source, const Adc& target,
                                                    const Int& cap) {
    if (!source.based) throw std::runtime_error("enumerate_morphisms: source must be based");
    std::vector<AdcMorphism> out;
    int top = std::min(source.dim, target.dim);

    ZMatrix aug_row({Label("e")}, target.gens[0]);
    for (size_t j = 0; j < target.gens[0].size(); ++j) aug_row.a[0][j] = target.aug[j];
    std::vector<ZMatrix> dmat(top + 1);
    for (int k = 1; k <= top; ++k) dmat[k] = target.d_matrix(k);

    AdcMorphism f;
    f.src = &source;
    f.dst = &target;
    f.img.resize(source.dim + 1);
    for (int k = 0; k <= source.dim; ++k) f.img[k].resize(source.gens[k].size());

    auto pass_above = [&](const AdcMorphism& m) {
        // a generator just above the target dimension needs its boundary image
        // to vanish in the truncated top degree
        if (source.dim <= target.dim) return true;
        int k = target.dim + 1;
        for (size_t j = 0; j < source.gens[k].size(); ++j) {
            ZVec v = m.apply(k - 1, source.diff[k][j]);
            if (!target.same(k - 1, v, ZVec{})) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int k, size_t j) -> void {
        if (k > top) {
            if (pass_above(f)) out.push_back(f);
            return;
        }
        if (j == source.gens[k].size()) {
            self(self, k + 1, 0);
            return;
        }
        SolveResult sols;
        if (k == 0) {
            ZVec b;
            b.set(Label("e"), source.aug[j]);
            sols = solve_nonneg(aug_row, b, cap);
        } else {
            sols = solve_nonneg(dmat[k], f.apply(k - 1, source.diff[k][j]), cap);
        }
        if (sols.cap_hit) throw CapExceeded("enumerate_morphisms: solver cap hit");
        for (const auto& z : sols.solutions) {
            f.img[k][j] = z;
            self(self, k, j + 1);
        }
        f.img[k][j] = ZVec{};
    };
    rec(rec, 0, 0);

    std::sort(out.begin(), out.end(),
              [](const AdcMorphism& a, const AdcMorphism& b) { return a.key() < b.key(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace omf
