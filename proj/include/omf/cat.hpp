#pragma once

// The category generated by the 1-skeleton modulo triangle relations, closed
// by coset-style enumeration: morphisms are discovered as composites, the
// relations drive unifications, and composition tables are merged under a
// union-find until nothing changes.  Finite categories terminate; a step
// bound catches the rest.

#include <deque>
#include <map>
#include <optional>

#include "omf/poset.hpp"
#include "omf/sset.hpp"

namespace omf {

struct ClosureBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PathRelation {
    size_t src = 0;                 // object where both paths start
    std::vector<size_t> lhs, rhs;   // generator indices, first applied first
};

struct Category {
    std::vector<Label> objects;
    struct Gen {
        size_t src = 0, dst = 0;
        Label name;
    };
    std::vector<Gen> gens;
    std::vector<PathRelation> relations;
};

// Closure state: morphism ids with source, target, identity flags, and the
// generator-composition table, all modulo the discovered congruence.
class CategoryClosure {
  public:
    explicit CategoryClosure(Category cat, size_t bound = 10000) : cat_(std::move(cat)) {
        for (size_t o = 0; o < cat_.objects.size(); ++o) ids_.push_back(fresh(o, o));
        run(bound);
        collect();
    }

    const Category& category() const { return cat_; }
    size_t morphism_count() const { return live_.size(); }

    // live morphism ids from object a to object b
    const std::vector<size_t>& hom(size_t a, size_t b) const {
        static const std::vector<size_t> none;
        auto it = homs_.find({a, b});
        return it == homs_.end() ? none : it->second;
    }

    bool is_poset() const {
        for (const auto& [ab, ms] : homs_) {
            if (ms.size() > 1) return false;
            auto [a, b] = ab;
            if (a != b && homs_.count({b, a})) return false;
        }
        return true;
    }

    Poset to_poset() const {
        if (!is_poset()) throw std::runtime_error("category closure: not a poset");
        std::vector<std::pair<Label, Label>> pairs;
        for (const auto& [ab, ms] : homs_) pairs.emplace_back(cat_.objects[ab.first], cat_.objects[ab.second]);
        return Poset::from_pairs(cat_.objects, pairs);
    }

  private:
    Category cat_;
    std::vector<size_t> parent_, src_, dst_, ids_;
    std::vector<std::map<size_t, size_t>> comp_;  // comp_[m][g] with src(g) = dst(m)
    std::deque<std::pair<size_t, size_t>> pending_;
    std::vector<size_t> live_;
    std::map<std::pair<size_t, size_t>, std::vector<size_t>> homs_;
    size_t steps_ = 0, bound_ = 0;

    size_t fresh(size_t s, size_t d) {
        parent_.push_back(parent_.size());
        src_.push_back(s);
        dst_.push_back(d);
        comp_.emplace_back();
        ++steps_;
        return parent_.size() - 1;
    }

    size_t find(size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    void merge(size_t a, size_t b) {
        pending_.emplace_back(a, b);
        while (!pending_.empty()) {
            auto [x, y] = pending_.front();
            pending_.pop_front();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (x > y) std::swap(x, y);
            if (++steps_ > bound_) throw ClosureBoundExceeded("category closure went past the step bound");
            parent_[y] = x;
            for (auto [g, t] : comp_[y]) {
                auto it = comp_[x].find(g);
                if (it == comp_[x].end())
                    comp_[x][g] = t;
                else
                    pending_.emplace_back(it->second, t);
            }
            comp_[y].clear();
        }
    }

    size_t apply(size_t m, size_t g) {
        m = find(m);
        if (cat_.gens[g].src != dst_[m]) throw std::runtime_error("category closure: bad composite");
        auto it = comp_[m].find(g);
        if (it != comp_[m].end()) return find(it->second);
        if (steps_ >= bound_) throw ClosureBoundExceeded("category closure went past the step bound");
        size_t e = fresh(src_[m], cat_.gens[g].dst);
        comp_[m][g] = e;
        return e;
    }

    size_t walk(size_t m, const std::vector<size_t>& path) {
        for (size_t g : path) m = apply(m, g);
        return find(m);
    }

    // Relations are scanned at each element before its composites are
    // completed, so quotienting keeps pace with definition and the table
    // closes whenever the category is finite.
    void run(size_t bound) {
        bound_ = bound;
        std::vector<std::vector<size_t>> gen_at(cat_.objects.size()), rel_at(cat_.objects.size());
        for (size_t g = 0; g < cat_.gens.size(); ++g) gen_at[cat_.gens[g].src].push_back(g);
        for (size_t r = 0; r < cat_.relations.size(); ++r) rel_at[cat_.relations[r].src].push_back(r);
        for (;;) {
            size_t before = steps_;
            for (size_t m = 0; m < parent_.size(); ++m) {
                if (find(m) != m) continue;
                for (size_t ri : rel_at[dst_[m]]) {
                    const auto& r = cat_.relations[ri];
                    merge(walk(m, r.lhs), walk(m, r.rhs));
                }
                for (size_t g : gen_at[dst_[m]]) apply(m, g);
            }
            if (steps_ == before) break;
        }
    }

    void collect() {
        for (size_t m = 0; m < parent_.size(); ++m)
            if (find(m) == m) {
                live_.push_back(m);
                homs_[{src_[m], dst_[m]}].push_back(m);
            }
    }
};

// Generators are the nondegenerate edges, relations come from the 2-simplices
// with degenerate faces read as identities.
inline Category c1_presentation(const SimplicialSet& X) {
    if (X.cutoff < 2) throw std::runtime_error("c1: need levels up to 2");
    Category cat;
    for (size_t v = 0; v < X.count[0]; ++v) cat.objects.push_back(X.name_of(0, (int32_t)v));
    std::vector<int32_t> gen_of(X.count[1], -1);
    for (int32_t e = 0; e < (int32_t)X.count[1]; ++e) {
        if (is_degenerate(X, 1, e)) continue;
        gen_of[e] = (int32_t)cat.gens.size();
        cat.gens.push_back({(size_t)X.faces[1][e][1], (size_t)X.faces[1][e][0], X.name_of(1, e)});
    }
    for (int32_t t = 0; t < (int32_t)X.count[2]; ++t) {
        if (is_degenerate(X, 2, t)) continue;  // its relation already holds
        PathRelation r;
        int32_t e2 = X.faces[2][t][2], e0 = X.faces[2][t][0], e1 = X.faces[2][t][1];
        r.src = (size_t)X.faces[1][e2][1];
        if (gen_of[e2] >= 0) r.lhs.push_back(gen_of[e2]);
        if (gen_of[e0] >= 0) r.lhs.push_back(gen_of[e0]);
        if (gen_of[e1] >= 0) r.rhs.push_back(gen_of[e1]);
        cat.relations.push_back(std::move(r));
    }
    return cat;
}

inline CategoryClosure c1(const SimplicialSet& X, size_t bound = 10000) {
    return CategoryClosure(c1_presentation(X), bound);
}

}  // namespace omf
