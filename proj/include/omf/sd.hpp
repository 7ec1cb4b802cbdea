#pragma once

// Subdivision via canonical forms.
//
// Every simplex of sd(X) is written uniquely as a pair: a nondegenerate
// simplex z of X together with a weak flag of nonempty vertex subsets of z
// whose last entry is the full vertex set.  Strict flags are the
// nondegenerate simplices.  A face deletes one flag entry; if that exposes a
// proper subset on top, the base is restricted to it and squeezed back to
// normal form.  A degeneracy repeats an entry.  The last-vertex map reads the
// maxima of the flag.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "omf/sset.hpp"

namespace omf {

struct SdElem {
    int32_t nd = 0;                  // base cell id
    std::vector<uint32_t> flag;      // subset masks, last entry = full set

    bool operator==(const SdElem& o) const { return nd == o.nd && flag == o.flag; }
    bool operator<(const SdElem& o) const {
        if (nd != o.nd) return nd < o.nd;
        return flag < o.flag;
    }
};

struct SdData {
    const SimplicialSet* base = nullptr;
    std::vector<std::pair<int, int32_t>> nd;    // cell id -> (level, index in base)
    std::vector<std::vector<int32_t>> nd_id;    // per level: base index -> cell id or -1
    std::vector<std::vector<SdElem>> elems;     // per subdivision level, sorted
    std::vector<std::map<SdElem, int32_t>> index;
    SimplicialSet sdx;

    int32_t cell_of(int level, int32_t idx) const {
        int32_t c = nd_id[level][idx];
        if (c < 0) throw std::runtime_error("sd: not a nondegenerate cell");
        return c;
    }
};

namespace detail {

inline uint32_t full_mask(int level) { return (level >= 31) ? 0 : ((1u << (level + 1)) - 1); }

inline uint32_t image_mask(uint32_t S, const std::vector<int>& eta) {
    uint32_t out = 0;
    for (int v = 0; v < (int)eta.size(); ++v)
        if (S >> v & 1) out |= 1u << eta[v];
    return out;
}

inline uint32_t reindex_mask(uint32_t S, uint32_t within) {
    uint32_t out = 0;
    for (int v = 0; v < 32; ++v)
        if (S >> v & 1) out |= 1u << std::popcount(within & ((1u << v) - 1));
    return out;
}

}  // namespace detail

// Normal form of a flag over an arbitrary simplex: squeeze the base through
// its Eilenberg-Zilber surjection, then restrict to the top entry while it is
// proper; each restriction strictly lowers the base level, so this stops.
inline SdElem sd_normal_form(const SimplicialSet& X, const std::vector<std::vector<int32_t>>& nd_id,
                             int level, int32_t idx, std::vector<uint32_t> flag) {
    for (;;) {
        EzForm f = ez_core(X, level, idx);
        if (f.level != level)
            for (auto& S : flag) S = detail::image_mask(S, f.eta);
        level = f.level;
        idx = f.idx;
        uint32_t full = detail::full_mask(level);
        if (flag.back() == full) break;
        uint32_t T = flag.back();
        int lev = level;
        int32_t cur = idx;
        for (int j = level; j >= 0; --j)
            if (!(T >> j & 1)) {
                cur = X.faces[lev][cur][j];
                --lev;
            }
        for (auto& S : flag) S = detail::reindex_mask(S, T);
        level = lev;
        idx = cur;
    }
    SdElem e;
    e.nd = nd_id[level][idx];
    if (e.nd < 0) throw std::runtime_error("sd_normal_form: core not registered");
    e.flag = std::move(flag);
    return e;
}

inline SdData sd(const SimplicialSet& X) {
    SdData D;
    D.base = &X;
    D.nd_id.resize(X.cutoff + 1);
    for (int k = 0; k <= X.cutoff; ++k) {
        D.nd_id[k].assign(X.count[k], -1);
        for (int32_t s = 0; s < (int32_t)X.count[k]; ++s)
            if (k == 0 || !is_degenerate(X, k, s)) {
                D.nd_id[k][s] = (int32_t)D.nd.size();
                D.nd.emplace_back(k, s);
            }
    }
    int top = X.cutoff;
    D.elems.resize(top + 1);
    D.index.resize(top + 1);
    for (int j = 0; j <= top; ++j) {
        for (int32_t c = 0; c < (int32_t)D.nd.size(); ++c) {
            int p = D.nd[c].first;
            uint32_t full = detail::full_mask(p);
            // weak chains built from the top: entry j is full, each earlier
            // entry is a nonempty subset of its successor
            std::vector<uint32_t> flag(j + 1);
            flag[j] = full;
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos < 0) {
                    D.elems[j].push_back({c, flag});
                    return;
                }
                uint32_t sup = flag[pos + 1];
                for (uint32_t S = sup; S; S = (S - 1) & sup) {
                    flag[pos] = S;
                    self(self, pos - 1);
                }
            };
            if (j == 0)
                D.elems[j].push_back({c, flag});
            else
                rec(rec, j - 1);
        }
        std::sort(D.elems[j].begin(), D.elems[j].end());
        for (int32_t i = 0; i < (int32_t)D.elems[j].size(); ++i) D.index[j][D.elems[j][i]] = i;
    }
    D.sdx.cutoff = top;
    D.sdx.count.resize(top + 1);
    D.sdx.faces.resize(top + 1);
    D.sdx.degen.resize(top + 1);
    D.sdx.names.resize(top + 1);
    for (int j = 0; j <= top; ++j) D.sdx.count[j] = D.elems[j].size();
    for (int j = 1; j <= top; ++j) {
        D.sdx.faces[j].resize(D.sdx.count[j]);
        for (size_t s = 0; s < D.sdx.count[j]; ++s) {
            const SdElem& e = D.elems[j][s];
            for (int i = 0; i <= j; ++i) {
                std::vector<uint32_t> flag = e.flag;
                flag.erase(flag.begin() + i);
                SdElem fe;
                if (i < j) {
                    fe = {e.nd, std::move(flag)};  // still ends at the full set
                } else {
                    auto [p, idx] = D.nd[e.nd];
                    fe = sd_normal_form(X, D.nd_id, p, idx, std::move(flag));
                }
                D.sdx.faces[j][s].push_back(D.index[j - 1].at(fe));
            }
        }
    }
    for (int j = 0; j < top; ++j) {
        D.sdx.degen[j].resize(D.sdx.count[j]);
        for (size_t s = 0; s < D.sdx.count[j]; ++s) {
            const SdElem& e = D.elems[j][s];
            for (int i = 0; i <= j; ++i) {
                std::vector<uint32_t> flag = e.flag;
                flag.insert(flag.begin() + i, flag[i]);
                D.sdx.degen[j][s].push_back(D.index[j + 1].at({e.nd, std::move(flag)}));
            }
        }
    }
    return D;
}

// Last-vertex comparison map sd(X) -> X: a flag goes to the simplex spanned
// by the maxima of its entries.
inline SMorphism last_vertex(const SdData& D) {
    const SimplicialSet& X = *D.base;
    SMorphism a;
    a.src = &D.sdx;
    a.dst = &X;
    a.map.resize(D.elems.size());
    for (size_t j = 0; j < D.elems.size(); ++j) {
        a.map[j].reserve(D.elems[j].size());
        for (const SdElem& e : D.elems[j]) {
            auto [p, idx] = D.nd[e.nd];
            std::vector<int> op;
            for (uint32_t S : e.flag) op.push_back(31 - std::countl_zero(S));
            auto [lev, img] = apply_op(X, p, idx, op);
            if (lev != (int)j) throw std::runtime_error("last_vertex: level mismatch");
            a.map[j].push_back(img);
        }
    }
    return a;
}

// Functorial action on morphisms: push the base through f, renormalize.
inline SMorphism sd_map(const SMorphism& f, const SdData& DX, const SdData& DY) {
    if (f.src != DX.base || f.dst != DY.base)
        throw std::runtime_error("sd_map: subdivision data does not match morphism");
    SMorphism g;
    g.src = &DX.sdx;
    g.dst = &DY.sdx;
    g.map.resize(DX.elems.size());
    for (size_t j = 0; j < DX.elems.size(); ++j) {
        g.map[j].reserve(DX.elems[j].size());
        for (const SdElem& e : DX.elems[j]) {
            auto [p, idx] = DX.nd[e.nd];
            SdElem im = sd_normal_form(*DY.base, DY.nd_id, p, f.map[p][idx], e.flag);
            g.map[j].push_back(DY.index[j].at(im));
        }
    }
    return g;
}

// Recognizes a nerve: vertices with the edge relation must form a poset and
// every level must biject onto its weak chains through the vertex tuples.
inline std::optional<Poset> nerve_shaped(const SimplicialSet& X) {
    size_t n = X.count.empty() ? 0 : X.count[0];
    size_t words = (n + 63) / 64;
    std::vector<std::vector<uint64_t>> up(n, std::vector<uint64_t>(words, 0));
    auto set_bit = [&](size_t i, size_t j) { up[i][j >> 6] |= uint64_t(1) << (j & 63); };
    auto has_bit = [&](size_t i, size_t j) { return (up[i][j >> 6] >> (j & 63)) & 1; };
    for (size_t i = 0; i < n; ++i) set_bit(i, i);
    if (X.cutoff >= 1)
        for (size_t e = 0; e < X.count[1]; ++e)
            set_bit((size_t)X.faces[1][e][1], (size_t)X.faces[1][e][0]);
    for (size_t i = 0; i < n; ++i)
        for (size_t w = 0; w < words; ++w)
            for (uint64_t bits = up[i][w]; bits; bits &= bits - 1) {
                size_t j = (w << 6) + (size_t)std::countr_zero(bits);
                if (j != i && has_bit(j, i)) return std::nullopt;
                for (size_t v = 0; v < words; ++v)  // nerves have composite edges present
                    if (up[j][v] & ~up[i][v]) return std::nullopt;
            }
    std::vector<unsigned long long> cnt(n, 1);  // weak chains ending at each vertex
    for (int k = 1; k <= X.cutoff; ++k) {
        std::vector<unsigned long long> next(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t w = 0; w < words; ++w)
                for (uint64_t bits = up[i][w]; bits; bits &= bits - 1)
                    next[(w << 6) + (size_t)std::countr_zero(bits)] += cnt[i];
        cnt.swap(next);
        unsigned long long chains = 0;
        for (auto c : cnt) chains += c;
        if ((unsigned long long)X.count[k] != chains) return std::nullopt;
        std::vector<uint32_t> tup((size_t)k + 1);
        size_t bits_per = n < 2 ? 1 : (size_t)std::bit_width(n - 1);
        bool packable = (size_t)(k + 1) * bits_per <= 64;
        std::vector<uint64_t> packed;
        std::vector<uint32_t> flat;
        for (size_t s = 0; s < X.count[k]; ++s) {
            for (int j = 0; j <= k; ++j) tup[(size_t)j] = (uint32_t)vertex_of(X, k, (int32_t)s, j);
            for (int j = 0; j < k; ++j)
                if (!has_bit(tup[(size_t)j], tup[(size_t)j + 1])) return std::nullopt;
            if (packable) {
                uint64_t key = 0;
                for (int j = 0; j <= k; ++j) key = (key << bits_per) | tup[(size_t)j];
                packed.push_back(key);
            } else {
                flat.insert(flat.end(), tup.begin(), tup.end());
            }
        }
        if (packable) {
            std::sort(packed.begin(), packed.end());
            if (std::adjacent_find(packed.begin(), packed.end()) != packed.end()) return std::nullopt;
        } else {
            std::vector<size_t> order(X.count[k]);
            for (size_t s = 0; s < order.size(); ++s) order[s] = s;
            size_t stride = (size_t)k + 1;
            auto row = [&](size_t s) { return flat.begin() + (long)(s * stride); };
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                return std::lexicographical_compare(row(a), row(a) + (long)stride, row(b), row(b) + (long)stride);
            });
            for (size_t s = 0; s + 1 < order.size(); ++s)
                if (std::equal(row(order[s]), row(order[s]) + (long)stride, row(order[s + 1]))) return std::nullopt;
        }
    }
    std::vector<std::pair<Label, Label>> pairs;
    std::vector<Label> els;
    for (size_t i = 0; i < n; ++i) els.push_back(X.name_of(0, (int32_t)i));
    for (size_t i = 0; i < n; ++i)
        for (size_t w = 0; w < words; ++w)
            for (uint64_t bits = up[i][w]; bits; bits &= bits - 1)
                pairs.emplace_back(els[i], els[(w << 6) + (size_t)std::countr_zero(bits)]);
    return Poset::from_pairs(els, pairs);
}

}  // namespace omf
