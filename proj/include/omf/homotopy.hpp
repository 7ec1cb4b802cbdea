#pragma once

// The deformation retraction between the nerve of a poset and the simplex
// set of its truncated oriental: the juxtaposition product on chains, the
// homotopy components over a splitting map to the edge, verification that
// every component is a morphism of complexes, that the whole family is
// simplicial, and that the unit and counit form a retraction.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "omf/omega.hpp"
#include "omf/workers.hpp"

namespace omf {

// Raised when a juxtaposition junction is out of order.  The equality flag
// is never set on a throw; coinciding junction entries are counted and their
// terms dropped, see concat_product.
struct NotChainable : std::runtime_error {
    bool equality = false;
    NotChainable(const std::string& m, bool eq)
        : std::runtime_error("not chainable: " + m), equality(eq) {}
};

struct ConcatStats {
    long long terms = 0;
    long long junction_equal = 0;
};

// Bilinear juxtaposition of an ell-chain with a complementary chain: basis
// tuples concatenate when the last entry of the left tuple lies strictly
// under the first entry of the right tuple.  A coinciding junction makes the
// concatenated tuple degenerate; the differential compatibility of the
// homotopy forces such terms to vanish, so they contribute zero and are
// counted.  An incomparable or reversed junction breaks the ordering
// hypothesis and throws.  Once the result degree passes the target dimension
// the product is zero.
inline ZVec concat_product(const Adc& target, int ell, const ZVec& a, const ZVec& b,
                           ConcatStats& st) {
    ZVec out;
    if (a.is_zero() || b.is_zero()) return out;
    int m = (int)(a.c.begin()->first.parts.size() + b.c.begin()->first.parts.size()) - 1;
    if (m > target.dim) return out;
    for (const auto& [u, cu] : a.c)
        for (const auto& [v, cv] : b.c) {
            ++st.terms;
            if ((int)u.parts.size() != ell + 1)
                throw std::runtime_error("concat: left degree mismatch at " + u.str());
            if (u.parts.back() == v.parts.front()) {
                ++st.junction_equal;
                continue;
            }
            std::vector<std::string> parts = u.parts;
            parts.insert(parts.end(), v.parts.begin(), v.parts.end());
            Label cat(parts);
            if (!target.has_gen(m, cat))
                throw NotChainable("junction " + u.parts.back() + " above " + v.parts.front(), false);
            out.add(cat, cu * cv);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Endomorphisms of the simplex set and the homotopy components
// ---------------------------------------------------------------------------

// A levelwise self-map of the simplex set, stored by index.
struct NerveEndo {
    const StreetNerve* S = nullptr;
    std::vector<std::vector<size_t>> map;

    const AdcMorphism& at(int p, size_t i) const {
        return S->simplices[(size_t)p][map[(size_t)p][i]];
    }
};

inline NerveEndo identity_endo(const StreetNerve& S) {
    NerveEndo f;
    f.S = &S;
    f.map.resize((size_t)S.cutoff + 1);
    for (int p = 0; p <= S.cutoff; ++p) {
        f.map[(size_t)p].resize(S.simplices[(size_t)p].size());
        for (size_t i = 0; i < f.map[(size_t)p].size(); ++i) f.map[(size_t)p][i] = i;
    }
    return f;
}

// The composite sending a simplex to the unit simplex over its vertex chain.
inline NerveEndo retraction_endo(const StreetNerve& S) {
    NerveEndo f;
    f.S = &S;
    f.map.resize((size_t)S.cutoff + 1);
    for (int p = 0; p <= S.cutoff; ++p)
        for (const auto& x : S.simplices[(size_t)p])
            f.map[(size_t)p].push_back(S.index_of(p, eta_simplex(S, eps_simplex(S, x))));
    return f;
}

inline bool endo_is_natural(const NerveEndo& f) {
    const SimplicialSet& X = f.S->X;
    for (int p = 1; p <= f.S->cutoff; ++p)
        for (size_t s = 0; s < X.count[(size_t)p]; ++s)
            for (int i = 0; i <= p; ++i)
                if (f.map[(size_t)p - 1][(size_t)X.faces[(size_t)p][s][i]] !=
                    (size_t)X.faces[(size_t)p][f.map[(size_t)p][s]][i])
                    return false;
    for (int p = 0; p < f.S->cutoff; ++p)
        for (size_t s = 0; s < X.count[(size_t)p]; ++s)
            for (int i = 0; i <= p; ++i)
                if (f.map[(size_t)p + 1][(size_t)X.degen[(size_t)p][s][i]] !=
                    (size_t)X.degen[(size_t)p][f.map[(size_t)p][s]][i])
                    return false;
    return true;
}

// The ordering hypothesis on objects: the image of every vertex under f
// sits under its image under g.
inline bool endo_leq_on_vertices(const NerveEndo& f, const NerveEndo& g) {
    const StreetNerve& S = *f.S;
    for (size_t i = 0; i < S.simplices[0].size(); ++i) {
        size_t fv = eps_simplex(S, f.at(0, i))[0];
        size_t gv = eps_simplex(S, g.at(0, i))[0];
        if (!S.E.leq(fv, gv)) return false;
    }
    return true;
}

// The splitting maps to the edge are monotone 0/1 vectors, hence determined
// by the number of leading zeros.
inline std::vector<int> split_map(int zeros, int p) {
    std::vector<int> phi((size_t)p + 1);
    for (int j = 0; j <= p; ++j) phi[(size_t)j] = j < zeros ? 0 : 1;
    return phi;
}

// One homotopy component: a morphism from the chains of the p-simplex whose
// value on a basis tuple splits it at the last zero of phi, sends the prefix
// through f, the suffix through g, and juxtaposes.
inline AdcMorphism homotopy_component(const StreetNerve& S, const NerveEndo& f, const NerveEndo& g,
                                      int zeros, int p, size_t xi, ConcatStats& st) {
    const AdcMorphism& fx = f.at(p, xi);
    const AdcMorphism& gx = g.at(p, xi);
    const Adc& src = *S.sources[(size_t)p];
    const Adc& dst = *S.target;
    AdcMorphism h;
    h.src = &src;
    h.dst = &dst;
    h.img.resize((size_t)src.dim + 1);
    for (int m = 0; m <= src.dim; ++m)
        for (const auto& l : src.gens[(size_t)m]) {
            ZVec img;
            if (m <= dst.dim) {
                auto t = tuple_of_label(l);
                int k_phi = -1;
                for (size_t j = 0; j < t.size(); ++j)
                    if (t[j] < zeros) k_phi = (int)j;
                if (k_phi == m) {
                    img = fx.of(m, l);
                } else if (k_phi == -1) {
                    img = gx.of(m, l);
                } else {
                    std::vector<int> pre(t.begin(), t.begin() + k_phi + 1);
                    std::vector<int> suf(t.begin() + k_phi + 1, t.end());
                    ZVec a = fx.of(k_phi, label_of_tuple(pre));
                    ZVec b = gx.of(m - k_phi - 1, label_of_tuple(suf));
                    // the raw representative stays nonnegative; comparisons
                    // go through canonical keys instead
                    img = concat_product(dst, k_phi, a, b, st);
                }
            }
            h.img[(size_t)m].push_back(img);
        }
    return h;
}

// ---------------------------------------------------------------------------
// Verification passes
// ---------------------------------------------------------------------------

struct CheckReport {
    std::string check;
    std::string status = "PASS";
    std::string counterexample;
    std::vector<std::pair<std::string, long long>> stats;

    bool pass() const { return status == "PASS"; }

    void fail(const std::string& cx) {
        if (status != "FAIL") {
            status = "FAIL";
            counterexample = cx;
        }
    }

    void inconclusive(const std::string& cx) {
        if (status != "FAIL") {
            status = "INCONCLUSIVE";
            if (counterexample.empty()) counterexample = cx;
        }
    }

    void add_stat(const std::string& k, long long v) {
        for (auto& [n, x] : stats)
            if (n == k) {
                x += v;
                return;
            }
        stats.push_back({k, v});
    }

    long long stat(const std::string& k) const {
        for (const auto& [n, x] : stats)
            if (n == k) return x;
        return 0;
    }
};

// Differential, augmentation, and positivity checks for one component.
inline CheckReport verify_adc_morphism(const AdcMorphism& h, const Int& cap = 16) {
    CheckReport r;
    r.check = "adc-morphism";
    try {
        h.validate(cap);
    } catch (const CapExceeded& e) {
        r.inconclusive(e.what());
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
    return r;
}

using MorKey = std::vector<std::vector<ZVec>>;

// The full component table of the homotopy between two endomorphisms,
// computed once per (level, simplex, splitting map).
struct HomotopyH {
    const StreetNerve* S = nullptr;
    const NerveEndo* f = nullptr;
    const NerveEndo* g = nullptr;
    // table[p][x * (p + 2) + zeros]
    std::vector<std::vector<AdcMorphism>> table;
    std::vector<std::vector<MorKey>> keys;
    ConcatStats stats;
    long long notchainable = 0;

    const AdcMorphism& at(int p, size_t x, int zeros) const {
        return table[(size_t)p][x * (size_t)(p + 2) + (size_t)zeros];
    }

    const MorKey& key(int p, size_t x, int zeros) const {
        return keys[(size_t)p][x * (size_t)(p + 2) + (size_t)zeros];
    }
};

inline HomotopyH build_homotopy(const StreetNerve& S, const NerveEndo& f, const NerveEndo& g) {
    HomotopyH H;
    H.S = &S;
    H.f = &f;
    H.g = &g;
    H.table.resize((size_t)S.cutoff + 1);
    H.keys.resize((size_t)S.cutoff + 1);
    for (int p = 0; p <= S.cutoff; ++p) {
        size_t nx = S.simplices[(size_t)p].size();
        H.table[(size_t)p].resize(nx * (size_t)(p + 2));
        H.keys[(size_t)p].resize(nx * (size_t)(p + 2));
        std::vector<ConcatStats> local(nx);
        std::vector<long long> bad(nx, 0);
        std::vector<std::string> err(nx);
        parallel_for(nx, [&](size_t x) {
            for (int z = 0; z <= p + 1; ++z) {
                try {
                    AdcMorphism h = homotopy_component(S, f, g, z, p, x, local[x]);
                    H.keys[(size_t)p][x * (size_t)(p + 2) + (size_t)z] = h.key();
                    H.table[(size_t)p][x * (size_t)(p + 2) + (size_t)z] = std::move(h);
                } catch (const NotChainable&) {
                    ++bad[x];
                } catch (const std::exception& e) {
                    if (err[x].empty()) err[x] = e.what();
                }
            }
        });
        for (size_t x = 0; x < nx; ++x) {
            H.stats.terms += local[x].terms;
            H.stats.junction_equal += local[x].junction_equal;
            H.notchainable += bad[x];
            if (!err[x].empty()) throw std::runtime_error("homotopy table: " + err[x]);
        }
    }
    return H;
}

// Every component is a morphism of augmented directed complexes; a flipped
// coefficient in any free degree is caught exactly.
inline CheckReport verify_components(const HomotopyH& H, const Int& cap = 16) {
    CheckReport r;
    r.check = "homotopy-components";
    const StreetNerve& S = *H.S;
    if (H.notchainable > 0) r.fail("juxtaposition order hypothesis violated");
    long long total = 0;
    for (int p = 0; p <= S.cutoff; ++p) {
        size_t nx = S.simplices[(size_t)p].size();
        std::vector<std::string> msg(nx);
        std::vector<char> soft(nx, 0);
        parallel_for(nx, [&](size_t x) {
            for (int z = 0; z <= p + 1 && msg[x].empty(); ++z) {
                CheckReport one = verify_adc_morphism(H.at(p, x, z), cap);
                if (!one.pass()) {
                    msg[x] = "level " + std::to_string(p) + " simplex " + std::to_string(x) +
                             " zeros " + std::to_string(z) + ": " + one.counterexample;
                    soft[x] = one.status == "INCONCLUSIVE" ? 1 : 0;
                }
            }
        });
        total += (long long)(nx * (size_t)(p + 2));
        for (size_t x = 0; x < nx; ++x)
            if (!msg[x].empty()) {
                if (soft[x])
                    r.inconclusive(msg[x]);
                else
                    r.fail(msg[x]);
            }
    }
    r.add_stat("components", total);
    r.add_stat("junction_equal", H.stats.junction_equal);
    r.add_stat("notchainable", H.notchainable);
    return r;
}

inline std::vector<std::vector<int>> monotone_maps(int q, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur((size_t)q + 1, 0);
    while (true) {
        out.push_back(cur);
        int i = q;
        while (i >= 0 && cur[(size_t)i] == p) --i;
        if (i < 0) break;
        int v = cur[(size_t)i] + 1;
        for (int j = i; j <= q; ++j) cur[(size_t)j] = v;
    }
    return out;
}

// Naturality against every operator between levels under the cutoff, plus
// the endpoint laws: all zeros restricts to f, all ones to g.
inline CheckReport verify_simplicial(const HomotopyH& H) {
    CheckReport r;
    r.check = "homotopy-simplicial";
    const StreetNerve& S = *H.S;
    const NerveEndo& f = *H.f;
    const NerveEndo& g = *H.g;
    long long endpoint = 0;
    for (int p = 0; p <= S.cutoff; ++p) {
        size_t nx = S.simplices[(size_t)p].size();
        std::vector<std::string> msg(nx);
        parallel_for(nx, [&](size_t x) {
            if (H.key(p, x, p + 1) != f.at(p, x).key())
                msg[x] = "restriction to zero is not f at level " + std::to_string(p) +
                         " simplex " + std::to_string(x);
            if (msg[x].empty() && H.key(p, x, 0) != g.at(p, x).key())
                msg[x] = "restriction to one is not g at level " + std::to_string(p) + " simplex " +
                         std::to_string(x);
        });
        endpoint += 2 * (long long)nx;
        for (const auto& m : msg)
            if (!m.empty()) r.fail(m);
    }
    r.add_stat("endpoint_checks", endpoint);

    long long natural = 0;
    for (int p = 0; p <= S.cutoff; ++p) {
        size_t nx = S.simplices[(size_t)p].size();
        std::vector<std::vector<std::vector<int>>> psis((size_t)S.cutoff + 1);
        for (int q = 0; q <= S.cutoff; ++q) psis[(size_t)q] = monotone_maps(q, p);
        std::vector<std::string> msg(nx);
        std::vector<long long> cnt(nx, 0);
        parallel_for(nx, [&](size_t x) {
            for (int q = 0; q <= S.cutoff && msg[x].empty(); ++q)
                for (const auto& psi : psis[(size_t)q]) {
                    auto [lev, yi] = apply_op(S.X, p, (int32_t)x, psi);
                    (void)lev;
                    for (int z = 0; z <= p + 1; ++z) {
                        int zq = 0;
                        for (int i = 0; i <= q; ++i)
                            if (psi[(size_t)i] < z) ++zq;
                        AdcMorphism lhs = precompose_simplex_op(H.at(p, x, z),
                                                                *S.sources[(size_t)q], psi);
                        if (lhs.key() != H.key(q, (size_t)yi, zq)) {
                            msg[x] = "naturality fails at level " + std::to_string(p) +
                                     " simplex " + std::to_string(x) + " zeros " +
                                     std::to_string(z);
                            break;
                        }
                        ++cnt[x];
                    }
                    if (!msg[x].empty()) break;
                }
        });
        for (size_t x = 0; x < nx; ++x) natural += cnt[x];
        for (const auto& m : msg)
            if (!m.empty()) r.fail(m);
    }
    r.add_stat("naturality_checks", natural);
    r.add_stat("junction_equal", H.stats.junction_equal);
    return r;
}

// The full retraction check for one poset and one truncation depth: the
// counit splits the unit, the homotopy connects the retraction to the
// identity, every component is a morphism, and the family is simplicial.
inline CheckReport verify_retract(const Poset& E, int n, int max_p, const Int& cap) {
    CheckReport r;
    r.check = "retract";
    try {
        StreetNerve S = street_nerve(E, n, max_p, cap);
        for (int p = 0; p <= max_p; ++p) {
            for (const auto& chain : weak_chains_ix(E, p)) {
                AdcMorphism u = eta_simplex(S, chain);
                if (!(eps_simplex(S, u) == chain)) {
                    r.fail("counit does not split the unit at level " + std::to_string(p));
                    return r;
                }
            }
            r.add_stat("unit_simplices", (long long)weak_chains_ix(E, p).size());
        }
        NerveEndo g = identity_endo(S);
        NerveEndo f = retraction_endo(S);
        for (size_t i = 0; i < S.simplices[0].size(); ++i)
            if (f.map[0][i] != i) {
                r.fail("retraction moves a vertex");
                return r;
            }
        if (!endo_is_natural(f)) {
            r.fail("retraction endomorphism is not simplicial");
            return r;
        }
        if (!endo_leq_on_vertices(f, g)) {
            r.fail("vertex ordering hypothesis fails");
            return r;
        }
        HomotopyH H = build_homotopy(S, f, g);
        CheckReport comp = verify_components(H, cap);
        CheckReport simp = verify_simplicial(H);
        for (const auto& [k, v] : comp.stats) r.add_stat(k, v);
        for (const auto& [k, v] : simp.stats)
            if (k != "junction_equal") r.add_stat(k, v);
        if (comp.status == "FAIL") r.fail(comp.counterexample);
        if (simp.status == "FAIL") r.fail(simp.counterexample);
        if (comp.status == "INCONCLUSIVE") r.inconclusive(comp.counterexample);
    } catch (const CapExceeded& e) {
        r.inconclusive(e.what());
        r.add_stat("cap_hits", 1);
    }
    return r;
}

}  // namespace omf
