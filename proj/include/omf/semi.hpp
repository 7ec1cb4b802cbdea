#pragma once

// Semi-simplicial sets and the free/forget adjunction.
//
// The free simplicial set on face-level data is materialized through unique
// degenerate presentations: every simplex is one pair (monotone surjection,
// declared cell), with the surjection stored as its gap bitmask.  Declared
// faces may themselves point at degenerate pairs, so this also builds small
// hand-specified fixtures, not just images of semi-simplicial sets.

#include <bit>
#include <cstdint>
#include <map>
#include <memory>

#include "omf/sd.hpp"
#include "omf/sset.hpp"

namespace omf {

struct SemiSimplicialSet {
    int cutoff = 0;
    std::vector<size_t> count;
    std::vector<std::vector<std::vector<int32_t>>> faces;
    std::vector<std::vector<Label>> names;

    void validate() const {
        for (int k = 2; k <= cutoff; ++k)
            for (size_t s = 0; s < count[k]; ++s)
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j <= k; ++j)
                        if (faces[k - 1][faces[k][s][j]][i] != faces[k - 1][faces[k][s][i]][j - 1])
                            throw std::runtime_error("semi-simplicial identity failed");
    }
};

inline SemiSimplicialSet semi_forget(const SimplicialSet& X) {
    SemiSimplicialSet Z;
    Z.cutoff = X.cutoff;
    Z.count = X.count;
    Z.faces = X.faces;
    Z.names = X.names;
    return Z;
}

namespace surj {

// A monotone surjection [k] ->> [k - popcount(mask)] is stored by its gaps:
// bit j set means positions j and j+1 collapse.
inline std::vector<int> values(uint32_t mask, int k) {
    std::vector<int> v(k + 1);
    int cur = 0;
    for (int j = 0; j <= k; ++j) {
        v[j] = cur;
        if (j < k && !(mask >> j & 1)) ++cur;
    }
    return v;
}

inline uint32_t gaps(const std::vector<int>& vals) {
    uint32_t m = 0;
    for (size_t j = 0; j + 1 < vals.size(); ++j)
        if (vals[j] == vals[j + 1]) m |= 1u << j;
    return m;
}

}  // namespace surj

// Cells with faces that may land on degenerate pairs.
struct CellPresentation {
    std::vector<size_t> cells;  // count per level
    // faces[k][c][i] = (gap mask of a surjection [k-1] ->> [m], cell at level m)
    std::vector<std::vector<std::vector<std::pair<uint32_t, int32_t>>>> faces;
    std::vector<std::vector<Label>> names;

    int top() const { return (int)cells.size() - 1; }

    // The action of an arbitrary monotone op on a declared cell, resolved to
    // a pair.  Missing vertices are peeled through declared faces from the
    // top; a surjective op is absorbed into the mask.
    std::pair<uint32_t, int32_t> resolve(int level, int32_t cell, std::vector<int> op) const {
        for (;;) {
            std::vector<bool> hit(level + 1, false);
            for (int v : op) hit[v] = true;
            int miss = -1;
            for (int j = level; j >= 0; --j)
                if (!hit[j]) {
                    miss = j;
                    break;
                }
            if (miss < 0) return {surj::gaps(op), cell};
            auto [fmask, fcell] = faces[level][cell][miss];
            int flev = level - 1 - std::popcount(fmask);
            auto fvals = surj::values(fmask, level - 1);
            for (int& v : op) v = fvals[v > miss ? v - 1 : v];
            level = flev;
            cell = fcell;
        }
    }
};

struct Materialized {
    SimplicialSet X;
    std::vector<std::vector<std::pair<uint32_t, int32_t>>> elems;  // per level, sorted
    std::vector<std::map<std::pair<uint32_t, int32_t>, int32_t>> index;
};

inline Materialized materialize(const CellPresentation& P, int cutoff) {
    Materialized M;
    M.X.cutoff = cutoff;
    M.X.count.resize(cutoff + 1);
    M.X.faces.resize(cutoff + 1);
    M.X.degen.resize(cutoff + 1);
    M.X.names.resize(cutoff + 1);
    M.elems.resize(cutoff + 1);
    M.index.resize(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        for (uint32_t mask = 0; mask < (1u << std::max(k, 0)); ++mask) {
            int m = k - std::popcount(mask);
            if (m < 0 || m > P.top()) continue;
            for (int32_t c = 0; c < (int32_t)P.cells[m]; ++c) M.elems[k].emplace_back(mask, c);
        }
        std::sort(M.elems[k].begin(), M.elems[k].end());
        M.X.count[k] = M.elems[k].size();
        for (int32_t i = 0; i < (int32_t)M.elems[k].size(); ++i) {
            M.index[k][M.elems[k][i]] = i;
            auto [mask, c] = M.elems[k][i];
            int m = k - std::popcount(mask);
            if (m < (int)P.names.size() && c < (int32_t)P.names[m].size()) {
                Label l = P.names[m][c];
                if (mask != 0) l.parts.push_back("^" + std::to_string(mask));
                M.X.names[k].push_back(l);
            }
        }
        if (!M.X.names[k].empty() && M.X.names[k].size() != M.X.count[k])
            throw std::runtime_error("materialize: partial naming");
    }
    for (int k = 1; k <= cutoff; ++k) {
        M.X.faces[k].resize(M.X.count[k]);
        for (size_t s = 0; s < M.X.count[k]; ++s) {
            auto [mask, c] = M.elems[k][s];
            int m = k - std::popcount(mask);
            auto vals = surj::values(mask, k);
            for (int i = 0; i <= k; ++i) {
                std::vector<int> op(k);
                for (int x = 0; x < k; ++x) op[x] = vals[x < i ? x : x + 1];
                M.X.faces[k][s].push_back(M.index[k - 1].at(P.resolve(m, c, std::move(op))));
            }
        }
    }
    for (int k = 0; k < cutoff; ++k) {
        M.X.degen[k].resize(M.X.count[k]);
        for (size_t s = 0; s < M.X.count[k]; ++s) {
            auto [mask, c] = M.elems[k][s];
            auto vals = surj::values(mask, k);
            for (int i = 0; i <= k; ++i) {
                std::vector<int> comp(k + 2);
                for (int x = 0; x <= k + 1; ++x) comp[x] = vals[x <= i ? x : x - 1];
                M.X.degen[k][s].push_back(M.index[k + 1].at({surj::gaps(comp), c}));
            }
        }
    }
    return M;
}

inline CellPresentation presentation_of(const SemiSimplicialSet& Z) {
    CellPresentation P;
    P.cells.resize(Z.cutoff + 1);
    P.faces.resize(Z.cutoff + 1);
    P.names = Z.names;
    for (int k = 0; k <= Z.cutoff; ++k) {
        P.cells[k] = Z.count[k];
        if (k == 0) continue;
        P.faces[k].resize(Z.count[k]);
        for (size_t s = 0; s < Z.count[k]; ++s)
            for (int i = 0; i <= k; ++i) P.faces[k][s].emplace_back(0u, Z.faces[k][s][i]);
    }
    return P;
}

inline Materialized semi_free(const SemiSimplicialSet& Z, int cutoff) {
    return materialize(presentation_of(Z), cutoff);
}

// Counit of the adjunction on a roundtrip through forget: a pair becomes the
// actual degeneracy applied in X.
inline SMorphism semi_counit(const Materialized& M, const SimplicialSet& X) {
    SMorphism e;
    e.src = &M.X;
    e.dst = &X;
    e.map.resize(M.elems.size());
    for (size_t k = 0; k < M.elems.size(); ++k) {
        e.map[k].reserve(M.elems[k].size());
        for (auto [mask, c] : M.elems[k]) {
            int m = (int)k - std::popcount(mask);
            auto [lev, img] = apply_op(X, m, c, surj::values(mask, (int)k));
            if (lev != (int)k) throw std::runtime_error("semi_counit: level mismatch");
            e.map[k].push_back(img);
        }
    }
    return e;
}

// The composite endofunctor: double subdivision of the free filling of the
// underlying semi-simplicial set, with its comparison map back to X.
struct QFunctor {
    const SimplicialSet* X = nullptr;
    Materialized free;   // i_! i^* X
    SdData sd1;          // sd of free.X
    SdData sd2;          // the result object lives here as sd2.sdx
    SdData sdX;
    SdData sd2X;
    SMorphism counit;    // free.X -> X
    SMorphism gamma;     // sd2.sdx -> X

    QFunctor() = default;
    QFunctor(const QFunctor&) = delete;
    QFunctor& operator=(const QFunctor&) = delete;

    const SimplicialSet& result() const { return sd2.sdx; }
};

inline std::unique_ptr<QFunctor> q_functor(const SimplicialSet& X) {
    auto Q = std::make_unique<QFunctor>();
    Q->X = &X;
    Q->free = semi_free(semi_forget(X), X.cutoff);
    Q->sd1 = sd(Q->free.X);
    Q->sd2 = sd(Q->sd1.sdx);
    Q->sdX = sd(X);
    Q->sd2X = sd(Q->sdX.sdx);
    Q->counit = semi_counit(Q->free, X);
    SMorphism sd_eps = sd_map(Q->counit, Q->sd1, Q->sdX);
    SMorphism sd2_eps = sd_map(sd_eps, Q->sd2, Q->sd2X);
    SMorphism aX = last_vertex(Q->sdX);
    SMorphism sd_aX = sd_map(aX, Q->sd2X, Q->sdX);
    Q->gamma = compose(aX, compose(sd_aX, sd2_eps));
    return Q;
}

// Path components through level-1 gluing.
inline std::vector<int> pi0(const SimplicialSet& X) {
    std::vector<int> comp(X.count[0]);
    std::iota(comp.begin(), comp.end(), 0);
    auto root = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    if (X.cutoff >= 1)
        for (size_t e = 0; e < X.count[1]; ++e)
            comp[root(X.faces[1][e][0])] = root(X.faces[1][e][1]);
    for (size_t v = 0; v < X.count[0]; ++v) comp[v] = root((int)v);
    return comp;
}

}  // namespace omf
