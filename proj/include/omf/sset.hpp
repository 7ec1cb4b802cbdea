#pragma once

// Dimension-truncated simplicial sets.
//
// A simplicial set is stored as a truncated presheaf: every simplex up to the
// cutoff, including degenerate ones, with dense per-level indices and full
// face/degeneracy tables.  Quotients and colimits can turn nondegenerate
// simplices degenerate, so the nondegenerate view is always derived, never
// primary.  Simplex names are optional; constructions that care (nerves)
// fill them in, large computed objects leave them empty.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "omf/poset.hpp"
#include "omf/zmod.hpp"

namespace omf {

struct SimplicialSet {
    int cutoff = 0;
    std::vector<size_t> count;                                // per level 0..cutoff
    std::vector<std::vector<std::vector<int32_t>>> faces;     // faces[k][s][i], k >= 1
    std::vector<std::vector<std::vector<int32_t>>> degen;     // degen[k][s][i], k < cutoff
    std::vector<std::vector<Label>> names;                    // optional per level

    size_t levels() const { return count.size(); }

    Label name_of(int k, int32_t s) const {
        if (k < (int)names.size() && s < (int32_t)names[k].size()) return names[k][s];
        return Label(std::to_string(k) + "#" + std::to_string(s));
    }

    int32_t face(int k, int32_t s, int i) const { return faces[k][s][i]; }
    int32_t degeneracy(int k, int32_t s, int i) const { return degen[k][s][i]; }

    // Checks every simplicial identity that fits under the cutoff.
    void validate() const {
        for (int k = 2; k <= cutoff; ++k)
            for (size_t s = 0; s < count[k]; ++s)
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j <= k; ++j)
                        if (faces[k - 1][faces[k][s][j]][i] != faces[k - 1][faces[k][s][i]][j - 1])
                            throw std::runtime_error("simplicial identity d_i d_j failed");
        for (int k = 0; k + 2 <= cutoff; ++k)
            for (size_t s = 0; s < count[k]; ++s)
                for (int i = 0; i <= k; ++i)
                    for (int j = i; j <= k; ++j)
                        if (degen[k + 1][degen[k][s][i]][j + 1] != degen[k + 1][degen[k][s][j]][i])
                            throw std::runtime_error("simplicial identity s_i s_j failed");
        for (int k = 0; k + 1 <= cutoff; ++k)
            for (size_t s = 0; s < count[k]; ++s)
                for (int j = 0; j <= k; ++j) {
                    int32_t sj = degen[k][s][j];
                    for (int i = 0; i <= k + 1; ++i) {
                        int32_t got = faces[k + 1][sj][i];
                        if (i == j || i == j + 1) {
                            if (got != (int32_t)s) throw std::runtime_error("identity d_i s_j = id failed");
                        } else if (k >= 1) {
                            int32_t expect = (i < j) ? degen[k - 1][faces[k][s][i]][j - 1]
                                                     : degen[k - 1][faces[k][s][i - 1]][j];
                            if (got != expect) throw std::runtime_error("identity d_i s_j mixed case failed");
                        }
                    }
                }
    }
};

// ---------------------------------------------------------------------------
// Operator application and Eilenberg-Zilber normal form
// ---------------------------------------------------------------------------

// Applies the contravariant action of a monotone map op: [m] -> [k] to a
// k-simplex: first the face part (restrict to the image), then the
// degeneracy part (one s_g per gap, ascending).
inline std::pair<int, int32_t> apply_op(const SimplicialSet& X, int k, int32_t s,
                                        const std::vector<int>& op) {
    int m = (int)op.size() - 1;
    for (int j = 0; j < m; ++j)
        if (op[j] > op[j + 1]) throw std::runtime_error("apply_op: map not monotone");
    std::vector<bool> in_image(k + 1, false);
    for (int v : op) {
        if (v < 0 || v > k) throw std::runtime_error("apply_op: value out of range");
        in_image[v] = true;
    }
    int lev = k;
    int32_t cur = s;
    for (int j = k; j >= 0; --j)
        if (!in_image[j]) {
            cur = X.faces[lev][cur][j];
            --lev;
        }
    // One s_g per gap, ascending; the gap position in the target domain is a
    // valid degeneracy index at the level reached when its turn comes.
    for (int j = 0; j < m; ++j)
        if (op[j] == op[j + 1]) {
            cur = X.degen[lev][cur][j];
            ++lev;
        }
    return {lev, cur};
}

inline bool is_degenerate(const SimplicialSet& X, int k, int32_t s) {
    for (int i = 0; i < k; ++i)
        if (X.degen[k - 1][X.faces[k][s][i]][i] == s) return true;
    return false;
}

// x = X(eta)(core) with eta a monotone surjection (stored as its value list)
// and the core nondegenerate; the pair is unique.
struct EzForm {
    int level = 0;
    int32_t idx = 0;
    std::vector<int> eta;  // values of [k] ->> [level]
};

inline EzForm ez_core(const SimplicialSet& X, int k, int32_t s) {
    EzForm f;
    f.level = k;
    f.idx = s;
    f.eta.resize(k + 1);
    std::iota(f.eta.begin(), f.eta.end(), 0);
    bool peeled = true;
    while (peeled && f.level > 0) {
        peeled = false;
        for (int i = 0; i < f.level; ++i) {
            int32_t di = X.faces[f.level][f.idx][i];
            if (X.degen[f.level - 1][di][i] == f.idx) {
                // strip one s_i: values above i shift down
                for (auto& v : f.eta)
                    if (v > i) --v;
                f.idx = di;
                --f.level;
                peeled = true;
                break;
            }
        }
    }
    return f;
}

inline int32_t vertex_of(const SimplicialSet& X, int k, int32_t s, int j) {
    int lev = k;
    int32_t cur = s;
    for (int i = k; i >= 0; --i)
        if (i != j) {
            cur = X.faces[lev][cur][i];
            --lev;
        }
    return cur;
}

// ---------------------------------------------------------------------------
// Nerves and standard simplices
// ---------------------------------------------------------------------------

// Simplicial nerve: k-simplices are the weakly increasing (k+1)-tuples of E.
// Simplices are named by their tuples, so chain bases read off the elements.
struct Nerve {
    SimplicialSet X;
    Poset E;
    std::vector<std::vector<std::vector<size_t>>> tuples;  // per level, element indices
};

inline std::vector<std::vector<size_t>> weak_chains_ix(const Poset& E, int p) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    auto rec = [&](auto&& self) -> void {
        if ((int)cur.size() == p + 1) {
            out.push_back(cur);
            return;
        }
        for (size_t i = 0; i < E.size(); ++i) {
            if (!cur.empty() && !E.leq(cur.back(), i)) continue;
            cur.push_back(i);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

inline Nerve nerve(const Poset& E, int cutoff) {
    Nerve N;
    N.E = E;
    N.X.cutoff = cutoff;
    N.X.count.resize(cutoff + 1);
    N.X.faces.resize(cutoff + 1);
    N.X.degen.resize(cutoff + 1);
    N.X.names.resize(cutoff + 1);
    N.tuples.resize(cutoff + 1);
    std::vector<std::map<std::vector<size_t>, int32_t>> index(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        N.tuples[k] = weak_chains_ix(E, k);
        N.X.count[k] = N.tuples[k].size();
        for (int32_t i = 0; i < (int32_t)N.tuples[k].size(); ++i) {
            index[k][N.tuples[k][i]] = i;
            std::vector<std::string> parts;
            for (size_t e : N.tuples[k][i]) parts.push_back(E.elements[e].str());
            N.X.names[k].push_back(Label(parts));
        }
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

inline SimplicialSet standard_simplex(int n, int cutoff) { return nerve(chain_poset(n), cutoff).X; }

// Forgets the levels above a lower cutoff.
inline SimplicialSet truncate_sset(const SimplicialSet& X, int cutoff) {
    if (cutoff < 0 || cutoff > X.cutoff) throw std::runtime_error("truncate_sset: bad cutoff");
    SimplicialSet Y;
    Y.cutoff = cutoff;
    Y.count.assign(X.count.begin(), X.count.begin() + cutoff + 1);
    Y.faces.assign(X.faces.begin(), X.faces.begin() + cutoff + 1);
    Y.degen.assign(X.degen.begin(), X.degen.begin() + cutoff + 1);
    if (!Y.degen.empty()) Y.degen[(size_t)cutoff].clear();
    for (int k = 0; k <= cutoff && k < (int)X.names.size(); ++k) Y.names.push_back(X.names[(size_t)k]);
    return Y;
}

// The boundary of the triangle: the nerve of the 3-chain with the single
// nondegenerate 2-simplex (and everything it generates above) removed, i.e.
// only tuples that skip at least one of 0,1,2.
inline SimplicialSet boundary_delta2(int cutoff) {
    Poset E = chain_poset(2);
    SimplicialSet X;
    X.cutoff = cutoff;
    X.count.resize(cutoff + 1);
    X.faces.resize(cutoff + 1);
    X.degen.resize(cutoff + 1);
    X.names.resize(cutoff + 1);
    std::vector<std::vector<std::vector<size_t>>> tuples(cutoff + 1);
    std::vector<std::map<std::vector<size_t>, int32_t>> index(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        for (const auto& t : weak_chains_ix(E, k)) {
            std::vector<bool> hit(3, false);
            for (size_t v : t) hit[v] = true;
            if (hit[0] && hit[1] && hit[2]) continue;  // interior of the triangle
            index[k][t] = (int32_t)tuples[k].size();
            tuples[k].push_back(t);
            std::vector<std::string> parts;
            for (size_t e : t) parts.push_back(E.elements[e].str());
            X.names[k].push_back(Label(parts));
        }
        X.count[k] = tuples[k].size();
    }
    for (int k = 1; k <= cutoff; ++k) {
        X.faces[k].resize(X.count[k]);
        for (size_t s = 0; s < X.count[k]; ++s)
            for (int i = 0; i <= k; ++i) {
                auto t = tuples[k][s];
                t.erase(t.begin() + i);
                X.faces[k][s].push_back(index[k - 1].at(t));
            }
    }
    for (int k = 0; k < cutoff; ++k) {
        X.degen[k].resize(X.count[k]);
        for (size_t s = 0; s < X.count[k]; ++s)
            for (int i = 0; i <= k; ++i) {
                auto t = tuples[k][s];
                t.insert(t.begin() + i, t[i]);
                X.degen[k][s].push_back(index[k + 1].at(t));
            }
    }
    return X;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

struct SMorphism {
    const SimplicialSet* src = nullptr;
    const SimplicialSet* dst = nullptr;
    std::vector<std::vector<int32_t>> map;  // per level

    void validate() const {
        int top = std::min(src->cutoff, dst->cutoff);
        for (int k = 1; k <= top; ++k)
            for (size_t s = 0; s < src->count[k]; ++s)
                for (int i = 0; i <= k; ++i)
                    if (dst->faces[k][map[k][s]][i] != map[k - 1][src->faces[k][s][i]])
                        throw std::runtime_error("smorphism: face compatibility failed");
        for (int k = 0; k < top; ++k)
            for (size_t s = 0; s < src->count[k]; ++s)
                for (int i = 0; i <= k; ++i)
                    if (dst->degen[k][map[k][s]][i] != map[k + 1][src->degen[k][s][i]])
                        throw std::runtime_error("smorphism: degeneracy compatibility failed");
    }
};

inline SMorphism compose(const SMorphism& g, const SMorphism& f) {
    if (f.dst != g.src) throw std::runtime_error("smorphism compose: middle object mismatch");
    SMorphism h;
    h.src = f.src;
    h.dst = g.dst;
    h.map.resize(f.map.size());
    for (size_t k = 0; k < f.map.size() && k < g.map.size(); ++k) {
        h.map[k].reserve(f.map[k].size());
        for (int32_t v : f.map[k]) h.map[k].push_back(g.map[k][v]);
    }
    return h;
}

inline SMorphism identity_morphism(const SimplicialSet& X) {
    SMorphism id;
    id.src = &X;
    id.dst = &X;
    id.map.resize(X.levels());
    for (size_t k = 0; k < X.levels(); ++k) {
        id.map[k].resize(X.count[k]);
        std::iota(id.map[k].begin(), id.map[k].end(), 0);
    }
    return id;
}

inline std::vector<size_t> nondeg_counts(const SimplicialSet& X) {
    std::vector<size_t> out(X.levels(), 0);
    for (int k = 0; k <= X.cutoff; ++k)
        for (int32_t s = 0; s < (int32_t)X.count[k]; ++s)
            if (k == 0 || !is_degenerate(X, k, s)) ++out[k];
    return out;
}

// Morphism of nerves induced by a map of element indices; monotonicity is
// implied by successful tuple lookups.
inline SMorphism nerve_map(const Nerve& A, const Nerve& B, const std::vector<size_t>& vmap) {
    SMorphism f;
    f.src = &A.X;
    f.dst = &B.X;
    f.map.resize(A.tuples.size());
    for (size_t k = 0; k < A.tuples.size(); ++k) {
        std::map<std::vector<size_t>, int32_t> index;
        for (int32_t i = 0; i < (int32_t)B.tuples[k].size(); ++i) index[B.tuples[k][i]] = i;
        for (const auto& t : A.tuples[k]) {
            std::vector<size_t> img;
            for (size_t e : t) img.push_back(vmap[e]);
            auto it = index.find(img);
            if (it == index.end()) throw std::runtime_error("nerve_map: image tuple missing");
            f.map[k].push_back(it->second);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Normalized chains and homology
// ---------------------------------------------------------------------------

// Boundary matrices of the normalized chain complex: one generator per
// nondegenerate simplex, alternating face sum, degenerate faces dropped.
// Returns d_1 .. d_top, where d_k has rows the (k-1)-generators.
struct NormalizedChains {
    std::vector<std::vector<int32_t>> nd;         // per level: nondegenerate indices
    std::vector<std::vector<int32_t>> nd_pos;     // per level: index -> position or -1
    std::vector<std::vector<Label>> labels;       // per level, for the generators
    std::vector<ZMatrix> d;                       // d[k-1] : level k -> level k-1
};

inline NormalizedChains normalized_chains(const SimplicialSet& X, int top) {
    if (top > X.cutoff) throw std::runtime_error("normalized_chains: top beyond cutoff");
    NormalizedChains out;
    out.nd.resize(top + 1);
    out.nd_pos.resize(top + 1);
    out.labels.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        out.nd_pos[k].assign(X.count[k], -1);
        for (int32_t s = 0; s < (int32_t)X.count[k]; ++s) {
            if (k > 0 && is_degenerate(X, k, s)) continue;
            out.nd_pos[k][s] = (int32_t)out.nd[k].size();
            out.nd[k].push_back(s);
            out.labels[k].push_back(X.name_of(k, s));
        }
    }
    for (int k = 1; k <= top; ++k) {
        std::map<Label, ZVec> img;
        for (size_t p = 0; p < out.nd[k].size(); ++p) {
            int32_t s = out.nd[k][p];
            ZVec b;
            for (int i = 0; i <= k; ++i) {
                int32_t f = X.faces[k][s][i];
                if (out.nd_pos[k - 1][f] < 0) continue;  // degenerate face contributes zero
                b.add(out.labels[k - 1][out.nd_pos[k - 1][f]], (i % 2 == 0) ? Int(1) : Int(-1));
            }
            img[out.labels[k][p]] = b;
        }
        out.d.push_back(ZMatrix::from_columns(out.labels[k - 1], out.labels[k], img));
    }
    return out;
}

// Matrices of a simplicial map on normalized chains: degenerate images die.
inline std::vector<ZMatrix> chain_map_matrices(const SMorphism& f, const NormalizedChains& ncX,
                                               const NormalizedChains& ncY, int top) {
    std::vector<ZMatrix> out;
    for (int k = 0; k <= top; ++k) {
        std::map<Label, ZVec> cols;
        for (size_t p = 0; p < ncX.nd[k].size(); ++p) {
            int32_t img = f.map[k][ncX.nd[k][p]];
            ZVec v;
            if (ncY.nd_pos[k][img] >= 0) v = ZVec::unit(ncY.labels[k][ncY.nd_pos[k][img]]);
            cols[ncX.labels[k][p]] = v;
        }
        out.push_back(ZMatrix::from_columns(ncY.labels[k], ncX.labels[k], cols));
    }
    return out;
}

// Homology in degrees 0..up_to; requires up_to < cutoff so that the boundary
// entering degree up_to is visible.
inline std::vector<GroupInfo> homology_sset(const SimplicialSet& X, int up_to) {
    if (up_to >= X.cutoff && X.cutoff > 0)
        throw std::runtime_error("homology_sset: degrees >= cutoff are unreliable");
    if (up_to > X.cutoff) throw std::runtime_error("homology_sset: cutoff too small");
    auto nc = normalized_chains(X, std::min(up_to + 1, X.cutoff));
    std::vector<ZMatrix> d(nc.d.begin(), nc.d.begin() + std::min<size_t>(nc.d.size(), up_to + 1));
    // ensure a trailing zero map if the complex is shorter than requested
    while (d.size() < (size_t)up_to + 1) {
        const auto& rows = d.empty() ? nc.labels[0] : d.back().cols;
        d.push_back(ZMatrix(rows, {}));
    }
    auto h = homology(d);
    h.resize(up_to + 1);
    return h;
}

}  // namespace omf
