#pragma once

// Finite posets, monotone maps, chain enumeration, isomorphism search.

#include <optional>
#include <string>
#include <vector>

#include "omf/zmod.hpp"

namespace omf {

struct Poset {
    std::vector<Label> elements;            // sorted by label for stable output
    std::vector<std::vector<bool>> rel;     // full relation, rel[i][j] = (e_i <= e_j)

    size_t size() const { return elements.size(); }

    size_t index(const Label& l) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), l);
        if (it == elements.end() || !(*it == l))
            throw std::runtime_error("poset: unknown element " + l.str());
        return size_t(it - elements.begin());
    }

    bool leq(size_t a, size_t b) const { return rel[a][b]; }
    bool leq(const Label& a, const Label& b) const { return rel[index(a)][index(b)]; }
    bool lt(size_t a, size_t b) const { return a != b && rel[a][b]; }

    bool operator==(const Poset& o) const { return elements == o.elements && rel == o.rel; }

    // Builds from generating pairs: sorts elements, closes reflexively and
    // transitively, rejects antisymmetry violations.
    static Poset from_pairs(std::vector<Label> els,
                            const std::vector<std::pair<Label, Label>>& pairs) {
        Poset p;
        std::sort(els.begin(), els.end());
        els.erase(std::unique(els.begin(), els.end()), els.end());
        p.elements = std::move(els);
        size_t n = p.elements.size();
        p.rel.assign(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) p.rel[i][i] = true;
        for (const auto& [a, b] : pairs) p.rel[p.index(a)][p.index(b)] = true;
        for (size_t k = 0; k < n; ++k)  // Warshall
            for (size_t i = 0; i < n; ++i)
                if (p.rel[i][k])
                    for (size_t j = 0; j < n; ++j)
                        if (p.rel[k][j]) p.rel[i][j] = true;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (p.rel[i][j] && p.rel[j][i])
                    throw std::runtime_error("poset: antisymmetry violated between " +
                                             p.elements[i].str() + " and " + p.elements[j].str());
        return p;
    }

    static Poset from_pairs(const std::vector<std::string>& els,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
        std::vector<Label> l;
        for (const auto& e : els) l.push_back(Label(e));
        std::vector<std::pair<Label, Label>> p;
        for (const auto& [a, b] : pairs) p.emplace_back(Label(a), Label(b));
        return from_pairs(std::move(l), p);
    }

    // Hasse pairs (covering relation), for compact export.
    std::vector<std::pair<size_t, size_t>> hasse() const {
        std::vector<std::pair<size_t, size_t>> h;
        size_t n = size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (i == j || !rel[i][j]) continue;
                bool covering = true;
                for (size_t k = 0; k < n && covering; ++k)
                    if (k != i && k != j && rel[i][k] && rel[k][j]) covering = false;
                if (covering) h.emplace_back(i, j);
            }
        return h;
    }
};

// The linear order 0 < 1 < ... < n.
inline Poset chain_poset(int n) {
    std::vector<Label> els;
    std::vector<std::pair<Label, Label>> pairs;
    for (int i = 0; i <= n; ++i) els.push_back(Label(std::to_string(i)));
    for (int i = 0; i < n; ++i)
        pairs.emplace_back(Label(std::to_string(i)), Label(std::to_string(i + 1)));
    return Poset::from_pairs(els, pairs);
}

// All strictly increasing (p+1)-tuples, in lexicographic element order.
// Tuples increase in the poset order, which need not agree with the label
// order, so every level rescans all elements and filters by lt.
inline std::vector<std::vector<size_t>> chains_ix(const Poset& E, int p) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    auto rec = [&](auto&& self) -> void {
        if ((int)cur.size() == p + 1) {
            out.push_back(cur);
            return;
        }
        for (size_t i = 0; i < E.size(); ++i) {
            if (!cur.empty() && !E.lt(cur.back(), i)) continue;
            cur.push_back(i);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

inline std::vector<std::vector<Label>> chains(const Poset& E, int p) {
    std::vector<std::vector<Label>> out;
    for (const auto& t : chains_ix(E, p)) {
        std::vector<Label> lab;
        for (size_t i : t) lab.push_back(E.elements[i]);
        out.push_back(std::move(lab));
    }
    return out;
}

inline std::vector<std::vector<std::string>> chains_str(const Poset& E, int p) {
    std::vector<std::vector<std::string>> out;
    for (const auto& t : chains(E, p)) {
        std::vector<std::string> row;
        for (const auto& l : t) row.push_back(l.str());
        out.push_back(std::move(row));
    }
    return out;
}

// Number of elements in a longest chain (0 for the empty poset).
inline int longest_chain_size(const Poset& E) {
    size_t n = E.size();
    std::vector<int> best(n, 1);
    bool changed = true;
    while (changed) {  // tiny posets; fixpoint is simplest
        changed = false;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (E.lt(i, j) && best[j] < best[i] + 1) {
                    best[j] = best[i] + 1;
                    changed = true;
                }
    }
    int m = 0;
    for (size_t i = 0; i < n; ++i) m = std::max(m, best[i]);
    return m;
}

struct MonotoneMap {
    const Poset* src = nullptr;
    const Poset* dst = nullptr;
    std::vector<size_t> map;  // by source element index

    void validate() const {
        for (size_t i = 0; i < src->size(); ++i)
            for (size_t j = 0; j < src->size(); ++j)
                if (src->leq(i, j) && !dst->leq(map[i], map[j]))
                    throw std::runtime_error("monotone map: order not preserved at " +
                                             src->elements[i].str() + " <= " + src->elements[j].str());
    }
};

// Isomorphism search by backtracking on degree invariants; posets here are
// small enough that this is instant.
inline std::optional<std::vector<size_t>> poset_isomorphism(const Poset& A, const Poset& B) {
    size_t n = A.size();
    if (n != B.size()) return std::nullopt;
    auto profile = [](const Poset& P, size_t i) {
        int below = 0, above = 0;
        for (size_t j = 0; j < P.size(); ++j) {
            if (P.lt(j, i)) ++below;
            if (P.lt(i, j)) ++above;
        }
        return std::pair<int, int>(below, above);
    };
    std::vector<size_t> img(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == n) return true;
        for (size_t c = 0; c < n; ++c) {
            if (used[c] || profile(A, i) != profile(B, c)) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) {
                if (A.rel[i][j] != B.rel[c][img[j]]) ok = false;
                if (A.rel[j][i] != B.rel[img[j]][c]) ok = false;
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
