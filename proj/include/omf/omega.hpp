#pragma once

// Higher categories presented by augmented directed complexes.
//
// Cells are the tables of NuCell (adc.hpp); this header adds the structure
// maps on cells, exhaustive cell enumeration at small scale, the linearization
// of a cell presentation back to a complex, the counit comparison, the
// truncation bijection in the top degree, orientals, and the simplex sets of
// truncated orientals together with their unit and counit simplices.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "omf/adc.hpp"
#include "omf/sset.hpp"

namespace omf {

struct NotComposable : std::runtime_error {
    explicit NotComposable(const std::string& m) : std::runtime_error("not composable: " + m) {}
};

// ---------------------------------------------------------------------------
// Structure maps on cells
// ---------------------------------------------------------------------------

inline NuCell nu_source(const NuCell& c, int j) {
    if (j >= c.dim) return c;
    NuCell r;
    r.dim = j;
    r.rows.assign(c.rows.begin(), c.rows.begin() + j + 1);
    r.rows[(size_t)j][1] = r.rows[(size_t)j][0];
    return r;
}

inline NuCell nu_target(const NuCell& c, int j) {
    if (j >= c.dim) return c;
    NuCell r;
    r.dim = j;
    r.rows.assign(c.rows.begin(), c.rows.begin() + j + 1);
    r.rows[(size_t)j][0] = r.rows[(size_t)j][1];
    return r;
}

inline NuCell nu_identity(const NuCell& c) {
    NuCell r = c;
    r.dim = c.dim + 1;
    r.rows.push_back({ZVec{}, ZVec{}});
    return r;
}

inline NuCell iterated_identity(const NuCell& c, int dim) {
    NuCell r = c;
    while (r.dim < dim) r = nu_identity(r);
    return r;
}

// A cell is an identity exactly when its top row vanishes; in a presented
// top degree the test is on canonical forms.
inline bool is_identity_cell(const Adc& K, const NuCell& c) {
    if (c.dim == 0) return false;
    return K.same(c.dim, c.rows[(size_t)c.dim][0], ZVec{}) &&
           K.same(c.dim, c.rows[(size_t)c.dim][1], ZVec{});
}

inline NuCell nu_compose(const Adc& K, const NuCell& x, const NuCell& y, int j) {
    NuCell tx = nu_canon(K, nu_target(x, j));
    NuCell sy = nu_canon(K, nu_source(y, j));
    if (!(tx == sy)) throw NotComposable("boundary mismatch at level " + std::to_string(j));
    int m = std::max(x.dim, y.dim);
    auto row = [](const NuCell& c, int k) -> std::array<ZVec, 2> {
        if (k <= c.dim) return c.rows[(size_t)k];
        return {ZVec{}, ZVec{}};
    };
    NuCell r;
    r.dim = m;
    r.rows.resize((size_t)m + 1);
    for (int k = 0; k <= m; ++k) {
        if (k <= j) {
            r.rows[(size_t)k][0] = row(x, k)[0];
            r.rows[(size_t)k][1] = row(y, k)[1];
        } else {
            r.rows[(size_t)k][0] = row(x, k)[0] + row(y, k)[0];
            r.rows[(size_t)k][1] = row(x, k)[1] + row(y, k)[1];
        }
    }
    return nu_canon(K, r);
}

// ---------------------------------------------------------------------------
// Cell enumeration
// ---------------------------------------------------------------------------

struct OmegaPresentation {
    Adc K;
    int max_dim = 0;
    std::vector<std::vector<NuCell>> cells;  // per dimension, canonical, sorted

    bool has(const NuCell& c) const {
        if (c.dim > max_dim) return false;
        const auto& v = cells[(size_t)c.dim];
        NuCell n = nu_canon(K, c);
        return std::binary_search(v.begin(), v.end(), n);
    }

    size_t find(const NuCell& c) const {
        if (c.dim > max_dim) throw std::runtime_error("cell above enumerated dimension");
        const auto& v = cells[(size_t)c.dim];
        NuCell n = nu_canon(K, c);
        auto it = std::lower_bound(v.begin(), v.end(), n);
        if (it == v.end() || !(*it == n)) throw std::runtime_error("cell not enumerated");
        return (size_t)(it - v.begin());
    }

    size_t count_nonidentity(int d) const {
        size_t c = 0;
        for (const auto& cell : cells[(size_t)d])
            if (d == 0 || !is_identity_cell(K, cell)) ++c;
        return c;
    }
};

// Every cell of every dimension up to max_dim, by stacking: level-0 rows
// solve the augmentation constraint, level k rows solve d z = upper - lower
// of the level below, a cell closes with an equal pair.  Solution sets are
// memoized per right hand side.  Levels above the complex dimension carry
// zero rows and exist exactly over tables whose top entries agree.
inline OmegaPresentation enumerate_cells(const Adc& K, int max_dim, const Int& cap) {
    OmegaPresentation P;
    P.K = K;
    P.max_dim = max_dim;
    P.cells.assign((size_t)max_dim + 1, {});

    ZMatrix aug_row({Label("e")}, K.gens[0]);
    for (size_t j = 0; j < K.gens[0].size(); ++j) aug_row.a[0][j] = K.aug[j];
    std::vector<ZMatrix> dmat((size_t)std::min(max_dim, K.dim) + 1);
    for (int k = 1; k <= std::min(max_dim, K.dim); ++k) dmat[(size_t)k] = K.d_matrix(k);

    std::vector<std::map<ZVec, std::vector<ZVec>>> memo((size_t)max_dim + 1);
    auto solved = [&](int k, const ZVec& r) -> const std::vector<ZVec>& {
        auto it = memo[(size_t)k].find(r);
        if (it != memo[(size_t)k].end()) return it->second;
        std::vector<ZVec> sols;
        if (k > K.dim) {
            if (K.same(k - 1, r, ZVec{})) sols.push_back(ZVec{});
        } else {
            auto res = solve_nonneg(dmat[(size_t)k], r, cap);
            if (res.cap_hit) throw CapExceeded("cell enumeration at level " + std::to_string(k));
            sols = std::move(res.solutions);
        }
        return memo[(size_t)k].emplace(r, std::move(sols)).first->second;
    };

    NuCell work;
    auto extend = [&](auto&& self, int k) -> void {
        const auto& below = work.rows[(size_t)k - 1];
        ZVec r = below[1] - below[0];
        const auto& sols = solved(k, r);
        for (const auto& z : sols) {
            work.dim = k;
            work.rows.push_back({z, z});
            P.cells[(size_t)k].push_back(work);
            work.rows.pop_back();
        }
        if (k < max_dim)
            for (const auto& z0 : sols)
                for (const auto& z1 : sols) {
                    work.rows.push_back({z0, z1});
                    self(self, k + 1);
                    work.rows.pop_back();
                }
    };

    auto aug_res = solve_nonneg(aug_row, ZVec::unit(Label("e")), cap);
    if (aug_res.cap_hit) throw CapExceeded("cell enumeration at level 0");
    for (const auto& a : aug_res.solutions) {
        work.dim = 0;
        work.rows = {{a, a}};
        P.cells[0].push_back(work);
        work.rows.clear();
    }
    if (max_dim >= 1)
        for (const auto& a : aug_res.solutions)
            for (const auto& b : aug_res.solutions) {
                work.rows = {{a, b}};
                extend(extend, 1);
                work.rows.clear();
            }

    for (auto& v : P.cells) {
        for (auto& c : v) c = nu_canon(K, c);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return P;
}

// ---------------------------------------------------------------------------
// Linearization and the counit
// ---------------------------------------------------------------------------

inline Label cell_label(const NuCell& c) { return Label(c.str()); }

// The complex generated by one element per cell, modulo the relation
// [x * y] = [x] + [y] over every composable pair, with d[x] = [t(x)] - [s(x)]
// and augmentation 1 on every object.
inline Adc lambda_of_nu(const OmegaPresentation& P) {
    Adc L;
    L.dim = P.max_dim;
    L.based = false;
    L.gens.resize((size_t)P.max_dim + 1);
    L.diff.resize((size_t)P.max_dim + 1);
    L.aug.clear();
    L.relations.resize((size_t)P.max_dim + 1);
    for (int d = 0; d <= P.max_dim; ++d)
        for (const auto& c : P.cells[(size_t)d]) L.gens[(size_t)d].push_back(cell_label(c));
    L.aug.assign(P.cells[0].size(), Int(1));
    for (int d = 1; d <= P.max_dim; ++d)
        for (const auto& c : P.cells[(size_t)d])
            L.diff[(size_t)d].push_back(ZVec::unit(cell_label(nu_canon(P.K, nu_target(c, d - 1)))) -
                                        ZVec::unit(cell_label(nu_canon(P.K, nu_source(c, d - 1)))));
    for (int d = 1; d <= P.max_dim; ++d)
        for (const auto& x : P.cells[(size_t)d])
            for (const auto& y : P.cells[(size_t)d])
                for (int j = 0; j < d; ++j) {
                    NuCell tx = nu_canon(P.K, nu_target(x, j));
                    NuCell sy = nu_canon(P.K, nu_source(y, j));
                    if (!(tx == sy)) continue;
                    NuCell z = nu_compose(P.K, x, y, j);
                    size_t zi = P.find(z);
                    L.relations[(size_t)d].push_back(
                        ZVec::unit(cell_label(P.cells[(size_t)d][zi])) - ZVec::unit(cell_label(x)) -
                        ZVec::unit(cell_label(y)));
                }
    L.finalize();
    L.validate();
    return L;
}

// The map [cell] -> top row, checked degreewise as a group isomorphism onto
// the ambient complex, together with differential and augmentation
// compatibility and the atom witnesses for surjectivity.
struct CounitCheck {
    std::vector<GroupMapCheck> degrees;
    bool diff_compatible = true;
    bool aug_compatible = true;
    bool atoms_generate = true;

    bool ok() const {
        for (const auto& g : degrees)
            if (!g.iso()) return false;
        return diff_compatible && aug_compatible && atoms_generate;
    }
};

inline CounitCheck steiner_counit_check(const OmegaPresentation& P) {
    const Adc& K = P.K;
    Adc L = lambda_of_nu(P);
    CounitCheck R;
    int top = std::max(P.max_dim, K.dim);
    AbelianGroup trivial = quotient_group({}, {});
    for (int d = 0; d <= top; ++d) {
        const AbelianGroup& A = d <= L.dim ? L.groups[(size_t)d] : trivial;
        const AbelianGroup& B = d <= K.dim ? K.groups[(size_t)d] : trivial;
        std::vector<ZVec> a_rels = d <= L.dim ? L.relations[(size_t)d] : std::vector<ZVec>{};
        std::vector<ZVec> b_rels = d <= K.dim ? K.relations[(size_t)d] : std::vector<ZVec>{};
        std::map<Label, ZVec> images;
        if (d <= P.max_dim)
            for (const auto& c : P.cells[(size_t)d]) images[cell_label(c)] = c.top();
        R.degrees.push_back(check_group_map(A, a_rels, B, b_rels, images));
    }
    for (int d = 1; d <= P.max_dim && d <= K.dim; ++d)
        for (const auto& c : P.cells[(size_t)d]) {
            ZVec want = c.rows[(size_t)d - 1][1] - c.rows[(size_t)d - 1][0];
            if (!K.same(d - 1, K.d_of(d, c.top()), want)) R.diff_compatible = false;
        }
    for (const auto& c : P.cells[0])
        if (K.e_of(c.top()) != 1) R.aug_compatible = false;
    bool free_so_far = true;
    for (int d = 0; d <= K.dim && d <= P.max_dim; ++d) {
        free_so_far = free_so_far && !K.presented(d);
        if (!free_so_far) break;
        for (const auto& b : K.gens[(size_t)d]) {
            NuCell a = atom(K, b);
            if (!P.has(a)) R.atoms_generate = false;
        }
    }
    return R;
}

// ---------------------------------------------------------------------------
// The truncation bijection in the top degree
// ---------------------------------------------------------------------------

// Top-degree cells of the full complex, identified when their lower rows
// agree and their top rows differ by a boundary from one degree up; the
// classes are matched one to one with the top-degree cells over the
// truncated complex.
struct TruncationBijection {
    OmegaPresentation full;       // cells of the ambient complex up to n
    OmegaPresentation truncated;  // cells of the degree-n truncation up to n
    std::vector<size_t> class_of;       // per full n-cell: class id
    std::vector<size_t> rep_of_class;   // class id -> a full n-cell index
    std::vector<size_t> cell_of_class;  // class id -> truncated n-cell index
    bool bijective = true;
    bool compatible = true;
};

inline TruncationBijection truncation_bijection(const Adc& K, int n, const Int& cap) {
    if (!K.based) throw std::runtime_error("truncation_bijection: complex must be based");
    TruncationBijection B;
    B.full = enumerate_cells(K, n, cap);
    Adc T = truncate_adc(K, n);
    B.truncated = enumerate_cells(T, n, cap);

    std::vector<ZVec> bd;
    if (n + 1 <= K.dim)
        for (const auto& v : K.diff[(size_t)n + 1]) bd.push_back(v);
    AbelianGroup G = quotient_group(K.gens[(size_t)std::min(n, K.dim)], bd);

    const auto& full_n = B.full.cells[(size_t)n];
    auto equivalent = [&](const NuCell& x, const NuCell& y) {
        for (int k = 0; k < n; ++k)
            if (!(x.rows[(size_t)k] == y.rows[(size_t)k])) return false;
        return G.is_zero(y.top() - x.top());
    };

    B.class_of.assign(full_n.size(), SIZE_MAX);
    for (size_t i = 0; i < full_n.size(); ++i) {
        if (B.class_of[i] != SIZE_MAX) continue;
        size_t id = B.rep_of_class.size();
        B.class_of[i] = id;
        B.rep_of_class.push_back(i);
        for (size_t j = i + 1; j < full_n.size(); ++j)
            if (B.class_of[j] == SIZE_MAX && equivalent(full_n[i], full_n[j])) B.class_of[j] = id;
    }

    // transitivity sanity: members of one class are pairwise equivalent
    for (size_t i = 0; i < full_n.size(); ++i)
        for (size_t j = i + 1; j < full_n.size(); ++j)
            if ((B.class_of[i] == B.class_of[j]) != equivalent(full_n[i], full_n[j]))
                B.bijective = false;

    std::vector<size_t> hits(B.truncated.cells[(size_t)n].size(), 0);
    for (size_t id = 0; id < B.rep_of_class.size(); ++id) {
        const NuCell& rep = full_n[B.rep_of_class[id]];
        NuCell img = rep;
        img.rows[(size_t)n][0] = T.canon(n, img.rows[(size_t)n][0]);
        img.rows[(size_t)n][1] = img.rows[(size_t)n][0];
        if (!B.truncated.has(img)) {
            B.bijective = false;
            B.cell_of_class.push_back(SIZE_MAX);
            continue;
        }
        size_t ix = B.truncated.find(img);
        ++hits[ix];
        B.cell_of_class.push_back(ix);
    }
    for (size_t h : hits)
        if (h != 1) B.bijective = false;

    // compatibility with the structure maps
    auto image_of = [&](const NuCell& c) -> NuCell {
        if (c.dim < n) return c;
        return B.truncated.cells[(size_t)n][B.cell_of_class[B.class_of[B.full.find(c)]]];
    };
    for (const auto& c : full_n) {
        for (int j = 0; j < n; ++j) {
            if (!(nu_source(c, j) == nu_source(image_of(c), j))) B.compatible = false;
            if (!(nu_target(c, j) == nu_target(image_of(c), j))) B.compatible = false;
        }
    }
    if (n >= 1)
        for (const auto& c : B.full.cells[(size_t)n - 1]) {
            NuCell lhs = image_of(nu_identity(c));
            NuCell rhs = nu_canon(T, nu_identity(c));
            if (!(lhs == rhs)) B.compatible = false;
        }
    for (const auto& x : full_n)
        for (const auto& y : full_n)
            for (int j = 0; j < n; ++j) {
                NuCell tx = nu_canon(K, nu_target(x, j));
                NuCell sy = nu_canon(K, nu_source(y, j));
                if (!(tx == sy)) continue;
                NuCell lhs = image_of(nu_compose(K, x, y, j));
                NuCell rhs = nu_compose(T, image_of(x), image_of(y), j);
                if (!(lhs == rhs)) B.compatible = false;
            }
    return B;
}

// ---------------------------------------------------------------------------
// Orientals
// ---------------------------------------------------------------------------

inline OmegaPresentation oriental(int p, int max_dim, const Int& cap) {
    return enumerate_cells(simplex_adc(p), max_dim, cap);
}

inline OmegaPresentation oriental_of_poset(const Poset& E, int n, int max_dim, const Int& cap) {
    return enumerate_cells(truncate_adc(chains_of_poset(E), n), max_dim, cap);
}

// ---------------------------------------------------------------------------
// Simplex sets of truncated orientals
// ---------------------------------------------------------------------------

// Simplices at level p are the morphisms from the chains of the standard
// p-simplex into the truncated chains of the nerve of E; the simplicial
// operators act by precomposition.  The endpoint complexes are owned by
// shared pointers so the structure can be moved and copied freely.
struct StreetNerve {
    Poset E;
    int n = 1;
    int cutoff = 0;
    std::shared_ptr<Adc> target;
    std::vector<std::shared_ptr<Adc>> sources;     // chains of the p-simplex
    std::vector<std::vector<AdcMorphism>> simplices;  // per level, sorted by key
    SimplicialSet X;

    size_t index_of(int p, const AdcMorphism& f) const {
        const auto& v = simplices[(size_t)p];
        auto key = f.key();
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i].key() == key) return i;
        throw std::runtime_error("street nerve: simplex not found");
    }
};

inline StreetNerve street_nerve(const Poset& E, int n, int cutoff, const Int& cap) {
    StreetNerve S;
    S.E = E;
    S.n = n;
    S.cutoff = cutoff;
    S.target = std::make_shared<Adc>(truncate_adc(chains_of_poset(E), n));
    for (int p = 0; p <= cutoff; ++p) S.sources.push_back(std::make_shared<Adc>(simplex_adc(p)));
    S.simplices.resize((size_t)cutoff + 1);
    for (int p = 0; p <= cutoff; ++p) {
        S.simplices[(size_t)p] = enumerate_morphisms(*S.sources[(size_t)p], *S.target, cap);
        std::sort(S.simplices[(size_t)p].begin(), S.simplices[(size_t)p].end(),
                  [](const AdcMorphism& a, const AdcMorphism& b) { return a.key() < b.key(); });
    }

    S.X.cutoff = cutoff;
    S.X.count.resize((size_t)cutoff + 1);
    S.X.faces.resize((size_t)cutoff + 1);
    S.X.degen.resize((size_t)cutoff + 1);
    S.X.names.resize((size_t)cutoff + 1);
    for (int p = 0; p <= cutoff; ++p) {
        S.X.count[(size_t)p] = S.simplices[(size_t)p].size();
        for (size_t i = 0; i < S.simplices[(size_t)p].size(); ++i)
            S.X.names[(size_t)p].push_back(Label("n" + std::to_string(p) + "." + std::to_string(i)));
    }
    for (int p = 1; p <= cutoff; ++p)
        for (const auto& f : S.simplices[(size_t)p]) {
            std::vector<int32_t> row;
            for (int i = 0; i <= p; ++i) {
                std::vector<int> delta;
                for (int v = 0; v <= p; ++v)
                    if (v != i) delta.push_back(v);
                row.push_back(
                    (int32_t)S.index_of(p - 1, precompose_simplex_op(f, *S.sources[(size_t)p - 1], delta)));
            }
            S.X.faces[(size_t)p].push_back(row);
        }
    for (int p = 0; p < cutoff; ++p)
        for (const auto& f : S.simplices[(size_t)p]) {
            std::vector<int32_t> row;
            for (int i = 0; i <= p; ++i) {
                std::vector<int> sigma;
                for (int v = 0; v <= p + 1; ++v) sigma.push_back(v <= i ? v : v - 1);
                row.push_back(
                    (int32_t)S.index_of(p + 1, precompose_simplex_op(f, *S.sources[(size_t)p + 1], sigma)));
            }
            S.X.degen[(size_t)p].push_back(row);
        }
    return S;
}

// The unit simplex over a weak chain of E: each strict tuple of simplex
// vertices maps to the corresponding tuple of chain values, zero when values
// repeat.
inline AdcMorphism eta_simplex(const StreetNerve& S, const std::vector<size_t>& chain) {
    int p = (int)chain.size() - 1;
    const Adc& src = *S.sources[(size_t)p];
    const Adc& dst = *S.target;
    AdcMorphism f;
    f.src = &src;
    f.dst = &dst;
    f.img.resize((size_t)src.dim + 1);
    for (int k = 0; k <= src.dim; ++k)
        for (const auto& l : src.gens[(size_t)k]) {
            auto t = tuple_of_label(l);
            std::vector<std::string> parts;
            bool strict = true;
            for (size_t j = 0; j < t.size(); ++j) {
                size_t v = chain[(size_t)t[j]];
                if (j > 0 && chain[(size_t)t[j - 1]] == v) strict = false;
                parts.push_back(S.E.elements[v].parts[0]);
            }
            ZVec img;
            if (strict && k <= dst.dim) {
                img = ZVec::unit(Label(parts));
                if (dst.presented(k)) img = dst.canon(k, img);
            }
            f.img[(size_t)k].push_back(img);
        }
    return f;
}

// The counit chain of a simplex: its vertex images, read off degree zero.
inline std::vector<size_t> eps_simplex(const StreetNerve& S, const AdcMorphism& f) {
    int p = f.src->dim;
    std::vector<size_t> chain;
    for (int i = 0; i <= p; ++i) {
        ZVec v = f.of(0, Label(std::vector<std::string>{std::to_string(i)}));
        auto supp = v.support();
        if (supp.size() != 1 || v.get(supp[0]) != 1)
            throw std::runtime_error("counit chain: vertex image is not a single point");
        chain.push_back(S.E.index(Label(supp[0].parts[0])));
    }
    return chain;
}

}  // namespace omf
