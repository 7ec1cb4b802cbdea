#pragma once

// JSON input and output for every object the command line touches: posets,
// simplicial sets, simplicial complexes, directed complexes, cell tables,
// homology groups, and check reports.  Emission is deterministic: object
// keys sort alphabetically, arrays follow canonical construction order, so
// a dump of a reloaded dump is byte-identical.

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "omf/adc.hpp"
#include "omf/homotopy.hpp"
#include "omf/scomplex.hpp"
#include "omf/sset.hpp"

namespace omf {

using nlohmann::json;

struct JsonError : std::runtime_error {
    explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

inline long long to_i64(const Int& v) {
    if (v > Int(std::numeric_limits<long long>::max()) ||
        v < Int(std::numeric_limits<long long>::min()))
        throw JsonError("integer too large for serialization: " + v.str());
    return v.convert_to<long long>();
}

// Multi-part labels print as "(a,b,c)"; the parts may not contain the
// delimiter characters, so the round trip is unambiguous.
inline void check_label_part(const std::string& s) {
    if (s.empty()) throw JsonError("empty label part");
    if (s.find_first_of("(),") != std::string::npos)
        throw JsonError("label part '" + s + "' contains a reserved character");
}

inline Label parse_label(const std::string& s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        std::vector<std::string> parts;
        std::string cur;
        for (size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += s[i];
            }
        }
        parts.push_back(cur);
        for (const auto& p : parts) check_label_part(p);
        return Label(parts);
    }
    check_label_part(s);
    return Label(s);
}

inline const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw JsonError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline ZVec zvec_from_json(const json& j) {
    if (!j.is_object()) throw JsonError("coefficient map must be an object");
    ZVec v;
    for (const auto& [k, val] : j.items()) {
        if (!val.is_number_integer()) throw JsonError("coefficient of '" + k + "' must be an integer");
        v.set(parse_label(k), Int(val.get<long long>()));
    }
    return v;
}

inline json zvec_to_json(const ZVec& v) {
    json j = json::object();
    for (const auto& [l, c] : v.c) j[l.str()] = to_i64(c);
    return j;
}

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

inline json poset_to_json(const Poset& E) {
    json j;
    j["elements"] = json::array();
    for (const auto& e : E.elements) j["elements"].push_back(e.str());
    j["leq"] = json::array();
    for (size_t a = 0; a < E.size(); ++a)
        for (size_t b = 0; b < E.size(); ++b)
            if (a != b && E.leq(a, b))
                j["leq"].push_back(json::array({E.elements[a].str(), E.elements[b].str()}));
    return j;
}

inline Poset poset_from_json(const json& j) {
    const json& els = need(j, "elements");
    const json& leq = need(j, "leq");
    if (!els.is_array() || !leq.is_array()) throw JsonError("poset: elements and leq must be arrays");
    std::vector<Label> labels;
    for (const auto& e : els) {
        if (!e.is_string()) throw JsonError("poset: element must be a string");
        Label l = parse_label(e.get<std::string>());
        if (l.parts.size() != 1) throw JsonError("poset: element must be a plain name");
        labels.push_back(l);
    }
    std::vector<std::pair<Label, Label>> pairs;
    for (const auto& p : leq) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw JsonError("poset: leq entry must be a pair of strings");
        pairs.emplace_back(parse_label(p[0].get<std::string>()), parse_label(p[1].get<std::string>()));
    }
    return Poset::from_pairs(labels, pairs);
}

// ---------------------------------------------------------------------------
// Simplicial sets
// ---------------------------------------------------------------------------

inline json sset_to_json(const SimplicialSet& X) {
    json j;
    j["cutoff"] = X.cutoff;
    j["levels"] = json::array();
    for (int k = 0; k <= X.cutoff; ++k) {
        json lev;
        lev["names"] = json::array();
        for (size_t s = 0; s < X.count[(size_t)k]; ++s)
            lev["names"].push_back(X.name_of(k, (int32_t)s).str());
        lev["faces"] = json::array();
        if (k >= 1)
            for (size_t s = 0; s < X.count[(size_t)k]; ++s)
                lev["faces"].push_back(X.faces[(size_t)k][s]);
        lev["degen"] = json::array();
        if (k < X.cutoff)
            for (size_t s = 0; s < X.count[(size_t)k]; ++s)
                lev["degen"].push_back(X.degen[(size_t)k][s]);
        j["levels"].push_back(std::move(lev));
    }
    return j;
}

inline SimplicialSet sset_from_json(const json& j) {
    SimplicialSet X;
    const json& cut = need(j, "cutoff");
    if (!cut.is_number_integer() || cut.get<int>() < 0) throw JsonError("sset: bad cutoff");
    X.cutoff = cut.get<int>();
    const json& levels = need(j, "levels");
    if (!levels.is_array() || (int)levels.size() != X.cutoff + 1)
        throw JsonError("sset: need one level per degree up to the cutoff");
    X.count.resize((size_t)X.cutoff + 1);
    X.faces.resize((size_t)X.cutoff + 1);
    X.degen.resize((size_t)X.cutoff + 1);
    X.names.resize((size_t)X.cutoff + 1);
    for (int k = 0; k <= X.cutoff; ++k) {
        const json& lev = levels[(size_t)k];
        const json& names = need(lev, "names");
        if (!names.is_array()) throw JsonError("sset: names must be an array");
        size_t n = names.size();
        X.count[(size_t)k] = n;
        for (const auto& s : names) {
            if (!s.is_string()) throw JsonError("sset: name must be a string");
            X.names[(size_t)k].push_back(parse_label(s.get<std::string>()));
        }
        auto table = [&](const char* key, int width, bool wanted) {
            const json& t = need(lev, key);
            if (!t.is_array()) throw JsonError(std::string("sset: ") + key + " must be an array");
            std::vector<std::vector<int32_t>> rows;
            if (!wanted) {
                if (!t.empty()) throw JsonError(std::string("sset: unexpected ") + key + " table");
                return rows;
            }
            if (t.size() != n) throw JsonError(std::string("sset: ") + key + " row per simplex");
            for (const auto& row : t) {
                if (!row.is_array() || (int)row.size() != width)
                    throw JsonError(std::string("sset: ") + key + " row width");
                std::vector<int32_t> r;
                for (const auto& e : row) {
                    if (!e.is_number_integer()) throw JsonError("sset: table entry must be an integer");
                    r.push_back(e.get<int32_t>());
                }
                rows.push_back(std::move(r));
            }
            return rows;
        };
        X.faces[(size_t)k] = table("faces", k + 1, k >= 1);
        X.degen[(size_t)k] = table("degen", k + 1, k < X.cutoff);
    }
    // index ranges before the simplicial identities
    for (int k = 1; k <= X.cutoff; ++k)
        for (const auto& row : X.faces[(size_t)k])
            for (int32_t v : row)
                if (v < 0 || (size_t)v >= X.count[(size_t)k - 1]) throw JsonError("sset: face index range");
    for (int k = 0; k < X.cutoff; ++k)
        for (const auto& row : X.degen[(size_t)k])
            for (int32_t v : row)
                if (v < 0 || (size_t)v >= X.count[(size_t)k + 1]) throw JsonError("sset: degeneracy index range");
    X.validate();
    return X;
}

// ---------------------------------------------------------------------------
// Simplicial complexes
// ---------------------------------------------------------------------------

inline json scomplex_to_json(const SimplicialComplex& S) {
    json j;
    j["poset"] = poset_to_json(S.base);
    j["faces"] = json::array();
    for (const auto& f : S.faces) {
        json face = json::array();
        for (const auto& l : f) face.push_back(l.str());
        j["faces"].push_back(std::move(face));
    }
    return j;
}

inline SimplicialComplex scomplex_from_json(const json& j) {
    SimplicialComplex S;
    S.base = poset_from_json(need(j, "poset"));
    const json& faces = need(j, "faces");
    if (!faces.is_array()) throw JsonError("scomplex: faces must be an array");
    for (const auto& f : faces) {
        if (!f.is_array()) throw JsonError("scomplex: face must be an array");
        std::vector<Label> face;
        for (const auto& l : f) {
            if (!l.is_string()) throw JsonError("scomplex: face entry must be a string");
            face.push_back(parse_label(l.get<std::string>()));
        }
        S.faces.insert(std::move(face));
    }
    S.validate();
    return S;
}

// ---------------------------------------------------------------------------
// Augmented directed complexes
// ---------------------------------------------------------------------------

inline json adc_to_json(const Adc& K) {
    json j;
    j["dim"] = K.dim;
    j["based"] = K.based;
    j["aug"] = json::array();
    for (const auto& a : K.aug) j["aug"].push_back(to_i64(a));
    j["degrees"] = json::array();
    for (int k = 0; k <= K.dim; ++k) {
        json deg;
        deg["gens"] = json::array();
        for (const auto& l : K.gens[(size_t)k]) deg["gens"].push_back(l.str());
        // positivity is generated by the listed generators in every degree
        deg["positive"] = deg["gens"];
        if (k >= 1) {
            deg["diff"] = json::array();
            for (const auto& v : K.diff[(size_t)k]) deg["diff"].push_back(zvec_to_json(v));
        }
        deg["relations"] = json::array();
        for (const auto& r : K.relations[(size_t)k]) deg["relations"].push_back(zvec_to_json(r));
        j["degrees"].push_back(std::move(deg));
    }
    return j;
}

inline Adc adc_from_json(const json& j) {
    Adc K;
    const json& dim = need(j, "dim");
    if (!dim.is_number_integer() || dim.get<int>() < 0) throw JsonError("adc: bad dimension");
    K.dim = dim.get<int>();
    const json& based = need(j, "based");
    if (!based.is_boolean()) throw JsonError("adc: based must be a boolean");
    K.based = based.get<bool>();
    const json& degrees = need(j, "degrees");
    if (!degrees.is_array() || (int)degrees.size() != K.dim + 1)
        throw JsonError("adc: need one degree block per degree up to dim");
    K.gens.resize((size_t)K.dim + 1);
    K.diff.resize((size_t)K.dim + 1);
    K.relations.resize((size_t)K.dim + 1);
    for (int k = 0; k <= K.dim; ++k) {
        const json& deg = degrees[(size_t)k];
        const json& gens = need(deg, "gens");
        if (!gens.is_array()) throw JsonError("adc: gens must be an array");
        for (const auto& g : gens) {
            if (!g.is_string()) throw JsonError("adc: generator must be a string");
            K.gens[(size_t)k].push_back(parse_label(g.get<std::string>()));
        }
        if (need(deg, "positive") != gens)
            throw JsonError("adc: positivity must be generated by the listed generators");
        if (k >= 1) {
            const json& diff = need(deg, "diff");
            if (!diff.is_array() || diff.size() != K.gens[(size_t)k].size())
                throw JsonError("adc: one differential row per generator");
            for (const auto& row : diff) K.diff[(size_t)k].push_back(zvec_from_json(row));
        }
        const json& rels = need(deg, "relations");
        if (!rels.is_array()) throw JsonError("adc: relations must be an array");
        for (const auto& r : rels) K.relations[(size_t)k].push_back(zvec_from_json(r));
        if (K.based && !K.relations[(size_t)k].empty())
            throw JsonError("adc: a based complex may not carry relations");
    }
    const json& aug = need(j, "aug");
    if (!aug.is_array() || aug.size() != K.gens[0].size())
        throw JsonError("adc: one augmentation value per degree zero generator");
    for (const auto& a : aug) {
        if (!a.is_number_integer()) throw JsonError("adc: augmentation must be integer");
        K.aug.push_back(Int(a.get<long long>()));
    }
    K.finalize();
    K.validate();
    return K;
}

// ---------------------------------------------------------------------------
// Cell tables, groups, reports
// ---------------------------------------------------------------------------

inline json cell_to_json(const NuCell& c) {
    json j;
    j["dim"] = c.dim;
    j["rows"] = json::array();
    for (const auto& row : c.rows)
        j["rows"].push_back(json::array({zvec_to_json(row[0]), zvec_to_json(row[1])}));
    return j;
}

inline NuCell cell_from_json(const json& j) {
    NuCell c;
    const json& dim = need(j, "dim");
    if (!dim.is_number_integer() || dim.get<int>() < 0) throw JsonError("cell: bad dimension");
    c.dim = dim.get<int>();
    const json& rows = need(j, "rows");
    if (!rows.is_array() || (int)rows.size() != c.dim + 1)
        throw JsonError("cell: need one row pair per level");
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != 2) throw JsonError("cell: row must hold two chains");
        c.rows.push_back({zvec_from_json(row[0]), zvec_from_json(row[1])});
    }
    return c;
}

inline json groups_to_json(const std::vector<GroupInfo>& gs) {
    json j = json::array();
    for (const auto& g : gs) {
        json one;
        one["rank"] = to_i64(g.rank);
        one["torsion"] = json::array();
        for (const auto& t : g.torsion) one["torsion"].push_back(to_i64(t));
        j.push_back(std::move(one));
    }
    return j;
}

inline json report_to_json(const CheckReport& r) {
    json j;
    j["check"] = r.check;
    std::string s = r.status;
    for (auto& ch : s) ch = (char)std::tolower((unsigned char)ch);
    j["status"] = s;
    if (r.counterexample.empty())
        j["counterexample"] = nullptr;
    else
        j["counterexample"] = json{{"message", r.counterexample}};
    j["stats"] = json::object();
    for (const auto& [k, v] : r.stats) j["stats"][k] = v;
    return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw JsonError(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw JsonError("cannot write " + path);
    out << text;
}

}  // namespace omf
