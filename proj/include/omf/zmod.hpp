#pragma once

// Exact integer linear algebra over labelled bases: sparse vectors, dense
// matrices, Smith normal form with unimodular witnesses, chain-complex
// homology, bounded nonnegative solving, and finitely presented abelian
// groups with canonical coset representatives.
//
// All arithmetic uses arbitrary-precision integers; entry growth during
// elimination is unbounded for fixed-width types.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace omf {

using Int = boost::multiprecision::cpp_int;

// Thrown by homology() when consecutive boundary maps do not compose to zero.
struct CompositionNonzero : std::runtime_error {
    explicit CompositionNonzero(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

// Identifier for a basis element.  Plain ids use a single part; chain bases
// built from nerves use one part per poset element, so code that needs the
// tuple structure (juxtaposition, vertex extraction) can read it back.
struct Label {
    std::vector<std::string> parts;

    Label() = default;
    explicit Label(std::string one) : parts{std::move(one)} {}
    explicit Label(std::vector<std::string> p) : parts(std::move(p)) {}

    bool operator==(const Label& o) const { return parts == o.parts; }
    bool operator!=(const Label& o) const { return parts != o.parts; }
    bool operator<(const Label& o) const {
        if (parts.size() != o.parts.size()) return parts.size() < o.parts.size();
        return parts < o.parts;
    }

    std::string str() const {
        if (parts.size() == 1) return parts[0];
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += parts[i];
        }
        s += ")";
        return s;
    }
};

// ---------------------------------------------------------------------------
// Sparse vectors
// ---------------------------------------------------------------------------

// Finitely supported map Label -> Int; zero entries are never stored.
struct ZVec {
    std::map<Label, Int> c;

    ZVec() = default;

    static ZVec unit(const Label& l) {
        ZVec v;
        v.c[l] = 1;
        return v;
    }

    bool is_zero() const { return c.empty(); }

    Int get(const Label& l) const {
        auto it = c.find(l);
        return it == c.end() ? Int(0) : it->second;
    }

    void set(const Label& l, Int v) {
        if (v == 0)
            c.erase(l);
        else
            c[l] = std::move(v);
    }

    void add(const Label& l, const Int& v) { set(l, get(l) + v); }

    ZVec& operator+=(const ZVec& o) {
        for (const auto& [l, v] : o.c) add(l, v);
        return *this;
    }
    ZVec& operator-=(const ZVec& o) {
        for (const auto& [l, v] : o.c) add(l, -v);
        return *this;
    }
    ZVec operator+(const ZVec& o) const {
        ZVec r = *this;
        r += o;
        return r;
    }
    ZVec operator-(const ZVec& o) const {
        ZVec r = *this;
        r -= o;
        return r;
    }
    ZVec operator-() const {
        ZVec r;
        for (const auto& [l, v] : c) r.c[l] = -v;
        return r;
    }
    ZVec operator*(const Int& k) const {
        ZVec r;
        if (k != 0)
            for (const auto& [l, v] : c) r.c[l] = v * k;
        return r;
    }

    bool operator==(const ZVec& o) const { return c == o.c; }
    bool operator!=(const ZVec& o) const { return c != o.c; }
    bool operator<(const ZVec& o) const { return c < o.c; }  // stable total order

    std::vector<Label> support() const {
        std::vector<Label> s;
        s.reserve(c.size());
        for (const auto& [l, v] : c) s.push_back(l);
        return s;
    }

    std::string str() const {
        if (c.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [l, v] : c) {
            if (v > 0 && !first) s += "+";
            if (v == -1)
                s += "-";
            else if (v != 1)
                s += v.str() + "*";
            s += l.str();
            first = false;
        }
        return s;
    }
};

// Splits x into its positive and negative parts, x = plus - minus, with
// disjoint supports and both parts having nonnegative entries.
struct PosParts {
    ZVec plus, minus;
};

inline PosParts pos_decompose(const ZVec& x) {
    PosParts p;
    for (const auto& [l, v] : x.c) {
        if (v > 0)
            p.plus.c[l] = v;
        else
            p.minus.c[l] = -v;
    }
    return p;
}

inline bool is_nonneg(const ZVec& x) {
    for (const auto& [l, v] : x.c)
        if (v < 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

// Row- and column-labelled dense integer matrix.  Columns act as the images
// of generators: apply() computes M*z for z given in column coordinates.
struct ZMatrix {
    std::vector<Label> rows, cols;
    std::vector<std::vector<Int>> a;  // a[i][j], i over rows, j over cols

    ZMatrix() = default;
    ZMatrix(std::vector<Label> r, std::vector<Label> c)
        : rows(std::move(r)), cols(std::move(c)),
          a(rows.size(), std::vector<Int>(cols.size(), Int(0))) {}

    size_t nrows() const { return rows.size(); }
    size_t ncols() const { return cols.size(); }

    static ZMatrix from_columns(const std::vector<Label>& row_labels,
                                const std::vector<Label>& col_labels,
                                const std::map<Label, ZVec>& images) {
        ZMatrix m(row_labels, col_labels);
        std::map<Label, size_t> rix;
        for (size_t i = 0; i < row_labels.size(); ++i) rix[row_labels[i]] = i;
        for (size_t j = 0; j < col_labels.size(); ++j) {
            auto it = images.find(col_labels[j]);
            if (it == images.end()) continue;
            for (const auto& [l, v] : it->second.c) {
                auto r = rix.find(l);
                if (r == rix.end()) throw std::runtime_error("from_columns: image label not a row: " + l.str());
                m.a[r->second][j] = v;
            }
        }
        return m;
    }

    ZVec apply(const ZVec& z) const {
        std::map<Label, size_t> cix;
        for (size_t j = 0; j < cols.size(); ++j) cix[cols[j]] = j;
        ZVec out;
        for (const auto& [l, v] : z.c) {
            auto it = cix.find(l);
            if (it == cix.end()) throw std::runtime_error("apply: unknown column " + l.str());
            for (size_t i = 0; i < rows.size(); ++i) {
                const Int& e = a[i][it->second];
                if (e != 0) out.add(rows[i], e * v);
            }
        }
        return out;
    }

    ZVec column(size_t j) const {
        ZVec out;
        for (size_t i = 0; i < rows.size(); ++i)
            if (a[i][j] != 0) out.c[rows[i]] = a[i][j];
        return out;
    }
};

inline std::vector<std::vector<Int>> mat_mul(const std::vector<std::vector<Int>>& x,
                                             const std::vector<std::vector<Int>>& y) {
    size_t n = x.size(), k = y.size(), m = k ? y[0].size() : 0;
    std::vector<std::vector<Int>> r(n, std::vector<Int>(m, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (x[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (y[t][j] != 0) r[i][j] += x[i][t] * y[t][j];
        }
    return r;
}

inline std::vector<std::vector<Int>> identity_mat(size_t n) {
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Label-aware product; keeps dimensions honest even when a factor is empty.
inline ZMatrix mat_mul(const ZMatrix& x, const ZMatrix& y) {
    if (x.cols != y.rows) throw std::runtime_error("mat_mul: inner labels disagree");
    ZMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows.size(); ++i)
        for (size_t t = 0; t < x.cols.size(); ++t) {
            if (x.a[i][t] == 0) continue;
            for (size_t j = 0; j < y.cols.size(); ++j)
                if (y.a[t][j] != 0) r.a[i][j] += x.a[i][t] * y.a[t][j];
        }
    return r;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

// u * m * v = s with s diagonal, s[i] > 0, s[i] | s[i+1], and u, v unimodular.
// uinv and vinv are maintained alongside as explicit unimodularity witnesses.
struct SnfResult {
    std::vector<std::vector<Int>> s, u, uinv, v, vinv;
    size_t rank = 0;                 // number of nonzero diagonal entries
    std::vector<Int> diag;           // the nonzero diagonal entries, in order
};

inline SnfResult snf(const std::vector<std::vector<Int>>& input) {
    SnfResult r;
    size_t n = input.size(), m = n ? input[0].size() : 0;
    r.s = input;
    r.u = identity_mat(n);
    r.uinv = identity_mat(n);
    r.v = identity_mat(m);
    r.vinv = identity_mat(m);
    auto& s = r.s;

    auto row_swap = [&](size_t i, size_t j) {
        std::swap(s[i], s[j]);
        std::swap(r.u[i], r.u[j]);
        for (size_t k = 0; k < n; ++k) std::swap(r.uinv[k][i], r.uinv[k][j]);
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t k = 0; k < n; ++k) std::swap(s[k][i], s[k][j]);
        for (size_t k = 0; k < m; ++k) std::swap(r.v[k][i], r.v[k][j]);
        std::swap(r.vinv[i], r.vinv[j]);
    };
    auto row_neg = [&](size_t i) {
        for (auto& x : s[i]) x = -x;
        for (auto& x : r.u[i]) x = -x;
        for (size_t k = 0; k < n; ++k) r.uinv[k][i] = -r.uinv[k][i];
    };
    // row i += q * row j
    auto row_axpy = [&](size_t i, size_t j, const Int& q) {
        for (size_t k = 0; k < m; ++k) s[i][k] += q * s[j][k];
        for (size_t k = 0; k < n; ++k) r.u[i][k] += q * r.u[j][k];
        for (size_t k = 0; k < n; ++k) r.uinv[k][j] -= q * r.uinv[k][i];
    };
    // col i += q * col j
    auto col_axpy = [&](size_t i, size_t j, const Int& q) {
        for (size_t k = 0; k < n; ++k) s[k][i] += q * s[k][j];
        for (size_t k = 0; k < m; ++k) r.v[k][i] += q * r.v[k][j];
        for (size_t k = 0; k < m; ++k) r.vinv[j][k] -= q * r.vinv[i][k];
    };

    size_t t = 0;
    while (t < n && t < m) {
        // locate a pivot of minimal absolute value in the trailing block
        size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < m; ++j) {
                if (s[i][j] == 0) continue;
                Int av = abs(s[i][j]);
                if (!found || av < best) {
                    found = true;
                    best = av;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);

        // clear row t and column t; remainders shrink, so this terminates
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < n; ++i) {
                if (s[i][t] == 0) continue;
                Int q = s[i][t] / s[t][t];
                row_axpy(i, t, -q);
                if (s[i][t] != 0) {
                    row_swap(t, i);  // smaller remainder becomes the pivot
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < m; ++j) {
                if (s[t][j] == 0) continue;
                Int q = s[t][j] / s[t][t];
                col_axpy(j, t, -q);
                if (s[t][j] != 0) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
        }
        if (s[t][t] < 0) row_neg(t);
        ++t;
    }
    r.rank = t;

    // enforce the divisibility chain d1 | d2 | ... by folding adjacent pairs
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < r.rank; ++i) {
            if (s[i + 1][i + 1] % s[i][i] == 0) continue;
            changed = true;
            // block [d_i 0; 0 d_{i+1}] -> [gcd 0; 0 lcm]
            col_axpy(i, i + 1, Int(1));           // puts d_{i+1} into column i
            // now clear the 2x2 block again
            bool dirty2 = true;
            while (dirty2) {
                dirty2 = false;
                if (s[i + 1][i] != 0) {
                    Int q = s[i + 1][i] / s[i][i];
                    row_axpy(i + 1, i, -q);
                    if (s[i + 1][i] != 0) {
                        row_swap(i, i + 1);
                        dirty2 = true;
                    }
                }
                if (s[i][i + 1] != 0) {
                    Int q = s[i][i + 1] / s[i][i];
                    col_axpy(i + 1, i, -q);
                    if (s[i][i + 1] != 0) {
                        col_swap(i, i + 1);
                        dirty2 = true;
                    }
                }
            }
            if (s[i][i] < 0) row_neg(i);
            if (s[i + 1][i + 1] < 0) row_neg(i + 1);
        }
    }
    r.diag.clear();
    for (size_t i = 0; i < r.rank; ++i) r.diag.push_back(s[i][i]);
    return r;
}

// ---------------------------------------------------------------------------
// Homology of a chain complex
// ---------------------------------------------------------------------------

// Isomorphism type of a finitely generated abelian group: free rank plus the
// invariant factors greater than one.
struct GroupInfo {
    Int rank = 0;
    std::vector<Int> torsion;

    bool operator==(const GroupInfo& o) const { return rank == o.rank && torsion == o.torsion; }
    bool operator!=(const GroupInfo& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = "Z^" + rank.str();
        for (const auto& t : torsion) s += " + Z/" + t.str();
        return s;
    }
};

// d[k] is the boundary map from degree k+1 to degree k, columns indexed by
// degree-(k+1) generators.  Returns ker(d_k)/im(d_{k+1}) for every degree
// covered by the list; degrees above it are not reported.  Requires
// d_k * d_{k+1} = 0 and matching intermediate dimensions.
inline std::vector<GroupInfo> homology(const std::vector<ZMatrix>& d) {
    for (size_t k = 0; k + 1 < d.size(); ++k) {
        if (d[k].ncols() != d[k + 1].nrows())
            throw CompositionNonzero("homology: dimension mismatch between degrees " +
                                     std::to_string(k + 1) + " and " + std::to_string(k + 2));
        auto prod = mat_mul(d[k].a, d[k + 1].a);
        for (const auto& row : prod)
            for (const auto& x : row)
                if (x != 0)
                    throw CompositionNonzero("homology: d_" + std::to_string(k + 1) + " * d_" +
                                             std::to_string(k + 2) + " != 0");
    }
    std::vector<GroupInfo> out;
    std::vector<size_t> ranks(d.size() + 1, 0);
    std::vector<std::vector<Int>> diags(d.size() + 1);
    for (size_t k = 0; k < d.size(); ++k) {
        auto f = snf(d[k].a);
        ranks[k + 1] = f.rank;
        diags[k + 1] = f.diag;
    }
    for (size_t k = 0; k < d.size(); ++k) {
        size_t nk = d[k].nrows();  // generator count in degree k
        GroupInfo g;
        size_t rk = ranks[k];          // rank of d_k (0 for k = 0)
        size_t rk1 = ranks[k + 1];     // rank of d_{k+1}
        g.rank = Int(nk) - Int(rk) - Int(rk1);
        if (g.rank < 0)
            throw CompositionNonzero("homology: negative rank, boundary data inconsistent");
        for (const auto& t : diags[k + 1])
            if (t > 1) g.torsion.push_back(t);
        out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounded nonnegative solving
// ---------------------------------------------------------------------------

// All z >= 0 with M z = b and every entry at most cap, sorted.  cap_hit
// reports that some branch at the cap boundary was cut while still feasible
// for unbounded remaining variables, i.e. solutions beyond the cap may exist.
struct SolveResult {
    std::vector<ZVec> solutions;
    bool cap_hit = false;
};

inline SolveResult solve_nonneg(const ZMatrix& M, const ZVec& b, const Int& cap) {
    SolveResult res;
    size_t n = M.nrows(), m = M.ncols();
    std::map<Label, size_t> rix;
    for (size_t i = 0; i < n; ++i) rix[M.rows[i]] = i;

    std::vector<Int> resid(n, Int(0));
    for (const auto& [l, v] : b.c) {
        auto it = rix.find(l);
        if (it == rix.end()) {
            if (v != 0) return res;  // demand outside the row space
        } else {
            resid[it->second] = v;
        }
    }

    // per-depth bounds on what the remaining columns can still contribute
    std::vector<std::vector<Int>> pos_rem(m + 1, std::vector<Int>(n, Int(0)));
    std::vector<std::vector<Int>> neg_rem(m + 1, std::vector<Int>(n, Int(0)));
    for (size_t j = m; j-- > 0;)
        for (size_t i = 0; i < n; ++i) {
            pos_rem[j][i] = pos_rem[j + 1][i] + (M.a[i][j] > 0 ? M.a[i][j] : Int(0));
            neg_rem[j][i] = neg_rem[j + 1][i] + (M.a[i][j] < 0 ? M.a[i][j] : Int(0));
        }

    auto feasible = [&](size_t depth, const std::vector<Int>& r) {
        for (size_t i = 0; i < n; ++i) {
            if (r[i] > cap * pos_rem[depth][i]) return false;
            if (r[i] < cap * neg_rem[depth][i]) return false;
        }
        return true;
    };
    // sign-availability only: could the residual still be met if the
    // remaining variables were unbounded?
    auto probe_alive = [&](size_t depth, const std::vector<Int>& r) {
        for (size_t i = 0; i < n; ++i) {
            if (r[i] > 0 && pos_rem[depth][i] == 0) return false;
            if (r[i] < 0 && neg_rem[depth][i] == 0) return false;
        }
        return true;
    };

    std::vector<Int> z(m, Int(0));
    std::vector<Int> r = resid;

    auto rec = [&](auto&& self, size_t depth) -> void {
        if (depth == m) {
            for (size_t i = 0; i < n; ++i)
                if (r[i] != 0) return;
            ZVec sol;
            for (size_t j = 0; j < m; ++j)
                if (z[j] != 0) sol.c[M.cols[j]] = z[j];
            res.solutions.push_back(std::move(sol));
            return;
        }
        for (Int v = 0; v <= cap; ++v) {
            if (v > 0)
                for (size_t i = 0; i < n; ++i) r[i] -= M.a[i][depth];
            if (feasible(depth + 1, r)) {
                z[depth] = v;
                self(self, depth + 1);
            } else if (probe_alive(depth + 1, r)) {
                // only the bound killed this branch; a deeper variable past
                // the cap might still complete it
                res.cap_hit = true;
            }
        }
        // would value cap+1 still look alive?  then the cap truncated search
        for (size_t i = 0; i < n; ++i) r[i] -= M.a[i][depth];
        if (probe_alive(depth + 1, r)) res.cap_hit = true;
        for (size_t i = 0; i < n; ++i) r[i] += (cap + 1) * M.a[i][depth];
        z[depth] = 0;
    };
    if (feasible(0, r))
        rec(rec, 0);
    else if (probe_alive(0, r))
        res.cap_hit = true;
    std::sort(res.solutions.begin(), res.solutions.end());
    return res;
}

// ---------------------------------------------------------------------------
// Finitely presented abelian groups
// ---------------------------------------------------------------------------

// Z^gens modulo the column space of a relation matrix.  Keeps the Smith data
// of the relations so cosets get canonical representatives: normal_form is
// idempotent, additive up to renormalization, and zero exactly on the image
// of the relations.
struct AbelianGroup {
    std::vector<Label> gens;
    Int rank = 0;                    // free rank of the quotient
    std::vector<Int> torsion;        // invariant factors > 1
    std::vector<Int> diag;           // all invariant factors, including 1s
    std::vector<std::vector<Int>> u, uinv;  // change of basis y = u x

    GroupInfo info() const {
        GroupInfo g;
        g.rank = rank;
        g.torsion = torsion;
        return g;
    }

    std::vector<Int> to_dense(const ZVec& x) const {
        std::vector<Int> d(gens.size(), Int(0));
        std::map<Label, size_t> gix;
        for (size_t i = 0; i < gens.size(); ++i) gix[gens[i]] = i;
        for (const auto& [l, v] : x.c) {
            auto it = gix.find(l);
            if (it == gix.end()) throw std::runtime_error("AbelianGroup: unknown generator " + l.str());
            d[it->second] = v;
        }
        return d;
    }

    // coordinates in the diagonalized basis with torsion reduced mod the
    // invariant factor; equal tuples mean equal group elements
    std::vector<Int> coords(const ZVec& x) const {
        auto d = to_dense(x);
        size_t n = gens.size();
        std::vector<Int> y(n, Int(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (u[i][j] != 0) y[i] += u[i][j] * d[j];
        for (size_t i = 0; i < diag.size(); ++i) {
            Int md = y[i] % diag[i];
            if (md < 0) md += diag[i];
            y[i] = md;
        }
        return y;
    }

    // canonical coset representative in generator coordinates
    ZVec normal_form(const ZVec& x) const {
        auto y = coords(x);
        size_t n = gens.size();
        ZVec out;
        for (size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (size_t i = 0; i < n; ++i)
                if (uinv[j][i] != 0) acc += uinv[j][i] * y[i];
            if (acc != 0) out.c[gens[j]] = acc;
        }
        return out;
    }

    bool is_zero(const ZVec& x) const {
        for (const auto& v : coords(x))
            if (v != 0) return false;
        return true;
    }

    bool equal(const ZVec& x, const ZVec& y) const { return is_zero(x - y); }
};

inline AbelianGroup quotient_group(const std::vector<Label>& gens,
                                   const std::vector<ZVec>& relations) {
    AbelianGroup g;
    g.gens = gens;
    std::map<Label, size_t> gix;
    for (size_t i = 0; i < gens.size(); ++i) gix[gens[i]] = i;

    // deduplicate relation columns; repeats are common and only slow the SNF
    std::vector<ZVec> rel;
    {
        std::vector<ZVec> sorted = relations;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& r : sorted) {
            if (r.is_zero()) continue;
            if (rel.empty() || !(rel.back() == r)) rel.push_back(r);
        }
    }

    std::vector<std::vector<Int>> R(gens.size(), std::vector<Int>(rel.size(), Int(0)));
    for (size_t j = 0; j < rel.size(); ++j)
        for (const auto& [l, v] : rel[j].c) {
            auto it = gix.find(l);
            if (it == gix.end()) throw std::runtime_error("quotient_group: relation mentions unknown generator " + l.str());
            R[it->second][j] = v;
        }
    auto f = snf(R);
    g.u = f.u;
    g.uinv = f.uinv;
    g.diag = f.diag;
    g.rank = Int(gens.size()) - Int(f.rank);
    for (const auto& t : f.diag)
        if (t > 1) g.torsion.push_back(t);
    return g;
}

// ---------------------------------------------------------------------------
// Maps between presented groups
// ---------------------------------------------------------------------------

// Decides whether the assignment gens(A) -> ZVec over gens(B) descends to a
// well-defined isomorphism A -> B of the presented groups.  Everything is
// SNF-based: well-definedness sends relations of A to zero in B, surjectivity
// kills the cokernel, injectivity checks that the full preimage of the B
// relations lies in the A relations.
struct GroupMapCheck {
    bool well_defined = false;
    bool surjective = false;
    bool injective = false;
    bool iso() const { return well_defined && surjective && injective; }
};

inline GroupMapCheck check_group_map(const AbelianGroup& A,
                                     const std::vector<ZVec>& a_relations,
                                     const AbelianGroup& B,
                                     const std::vector<ZVec>& b_relations,
                                     const std::map<Label, ZVec>& images) {
    GroupMapCheck out;
    size_t na = A.gens.size(), nb = B.gens.size();
    std::map<Label, size_t> aix, bix;
    for (size_t i = 0; i < na; ++i) aix[A.gens[i]] = i;
    for (size_t i = 0; i < nb; ++i) bix[B.gens[i]] = i;

    std::vector<std::vector<Int>> T(nb, std::vector<Int>(na, Int(0)));
    for (size_t j = 0; j < na; ++j) {
        auto it = images.find(A.gens[j]);
        if (it == images.end()) return out;  // not even defined on generators
        for (const auto& [l, v] : it->second.c) {
            auto b = bix.find(l);
            if (b == bix.end()) return out;
            T[b->second][j] = v;
        }
    }

    // relations of A must die in B
    out.well_defined = true;
    for (const auto& r : a_relations) {
        auto d = A.to_dense(r);
        ZVec img;
        for (size_t j = 0; j < na; ++j)
            if (d[j] != 0)
                for (size_t i = 0; i < nb; ++i)
                    if (T[i][j] != 0) img.add(B.gens[i], T[i][j] * d[j]);
        if (!B.is_zero(img)) {
            out.well_defined = false;
            return out;
        }
    }

    // surjective iff Z^nb / (im T + im R_B) is trivial
    {
        std::vector<std::vector<Int>> M(nb, std::vector<Int>(na + b_relations.size(), Int(0)));
        for (size_t i = 0; i < nb; ++i)
            for (size_t j = 0; j < na; ++j) M[i][j] = T[i][j];
        for (size_t j = 0; j < b_relations.size(); ++j) {
            auto d = B.to_dense(b_relations[j]);
            for (size_t i = 0; i < nb; ++i) M[i][na + j] = d[i];
        }
        auto f = snf(M);
        out.surjective = (f.rank == nb);
        for (const auto& t : f.diag)
            if (t != 1) out.surjective = false;
    }

    // injective iff { x : T x in im R_B } is contained in im R_A.
    // Encode T x = R_B y as the kernel of [T | -R_B] and project to x.
    {
        size_t nr = b_relations.size();
        std::vector<std::vector<Int>> M(nb, std::vector<Int>(na + nr, Int(0)));
        for (size_t i = 0; i < nb; ++i)
            for (size_t j = 0; j < na; ++j) M[i][j] = T[i][j];
        for (size_t j = 0; j < nr; ++j) {
            auto d = B.to_dense(b_relations[j]);
            for (size_t i = 0; i < nb; ++i) M[i][na + j] = -d[i];
        }
        auto f = snf(M);
        // kernel generators are the columns of v past the rank
        out.injective = true;
        size_t total = na + nr;
        for (size_t j = f.rank; j < total; ++j) {
            ZVec x;
            for (size_t t = 0; t < na; ++t)
                if (f.v[t][j] != 0) x.add(A.gens[t], f.v[t][j]);
            if (!A.is_zero(x)) {
                out.injective = false;
                return out;
            }
        }
    }
    return out;
}

}  // namespace omf
