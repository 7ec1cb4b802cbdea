#pragma once

// Induced maps on homology.  Each degree is presented as the cycle lattice
// modulo boundaries; a chain map is pushed through these presentations and
// certified degreewise with the group-map checker.

#include <tuple>

#include "omf/zmod.hpp"

namespace omf {

// Saturated basis of the kernel lattice, read off the column operations of
// the normal form.
inline std::vector<ZVec> kernel_basis(const ZMatrix& M) {
    SnfResult s = snf(M.a);
    std::vector<ZVec> out;
    for (size_t j = s.rank; j < M.cols.size(); ++j) {
        ZVec v;
        for (size_t i = 0; i < M.cols.size(); ++i)
            if (s.v[i][j] != 0) v.add(M.cols[i], s.v[i][j]);
        out.push_back(std::move(v));
    }
    return out;
}

// Solves sum_i x_i K_i = b for integral x; the basis is independent and b
// must lie in its span, which holds for boundaries inside a cycle lattice.
inline ZVec express_in_basis(const std::vector<Label>& row_labels, const std::vector<ZVec>& basis,
                             const std::vector<Label>& names, const ZVec& b) {
    std::map<Label, ZVec> cols;
    for (size_t j = 0; j < basis.size(); ++j) cols[names[j]] = basis[j];
    ZMatrix K = ZMatrix::from_columns(row_labels, names, cols);
    SnfResult s = snf(K.a);
    size_t n = row_labels.size(), m = names.size();
    std::vector<Int> bd(n, 0);
    for (size_t i = 0; i < n; ++i) bd[i] = b.get(row_labels[i]);
    std::vector<Int> ub(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (s.u[i][j] != 0) ub[i] += s.u[i][j] * bd[j];
    std::vector<Int> z(m, 0);
    for (size_t i = 0; i < n; ++i) {
        if (i < s.rank) {
            if (ub[i] % s.s[i][i] != 0) throw std::runtime_error("express_in_basis: not in the lattice");
            z[i] = ub[i] / s.s[i][i];
        } else if (ub[i] != 0) {
            throw std::runtime_error("express_in_basis: outside the span");
        }
    }
    ZVec out;
    for (size_t j = 0; j < m; ++j) {
        Int xj = 0;
        for (size_t i = 0; i < m; ++i)
            if (s.v[j][i] != 0) xj += s.v[j][i] * z[i];
        if (xj != 0) out.set(names[j], xj);
    }
    return out;
}

struct HomologyDegreeCheck {
    GroupInfo src, dst;
    GroupMapCheck map;
};

// dA and dB list the boundaries d_{k+1}: C_{k+1} -> C_k for k = 0..K-1 on
// each side; f gives the chain map in degrees 0..K.  Degrees 0..K-1 are
// checked.  Chain-map squares are verified first.
inline std::vector<HomologyDegreeCheck> homology_map_check(const std::vector<ZMatrix>& dA,
                                                           const std::vector<ZMatrix>& dB,
                                                           const std::vector<ZMatrix>& f) {
    size_t K = dA.size();
    if (dB.size() != K || f.size() < K + 1)
        throw std::runtime_error("homology_map_check: shape mismatch");
    for (size_t k = 0; k < K; ++k)
        if (mat_mul(f[k], dA[k]).a != mat_mul(dB[k], f[k + 1]).a)
            throw std::runtime_error("homology_map_check: not a chain map");
    auto degree_data = [](const std::vector<ZMatrix>& d, size_t k) {
        const std::vector<Label>& chain_basis = d[k].rows;
        std::vector<ZVec> cycles;
        if (k == 0) {
            for (const Label& l : chain_basis) cycles.push_back(ZVec::unit(l));
        } else {
            cycles = kernel_basis(d[k - 1]);
        }
        std::vector<Label> names;
        for (size_t j = 0; j < cycles.size(); ++j) names.push_back(Label("z" + std::to_string(j)));
        std::vector<ZVec> rels;
        for (size_t j = 0; j < d[k].cols.size(); ++j)
            rels.push_back(express_in_basis(chain_basis, cycles, names, d[k].column(j)));
        return std::tuple(chain_basis, cycles, names, rels);
    };
    std::vector<HomologyDegreeCheck> out;
    for (size_t k = 0; k < K; ++k) {
        auto [abasis, acyc, anames, arels] = degree_data(dA, k);
        auto [bbasis, bcyc, bnames, brels] = degree_data(dB, k);
        AbelianGroup HA = quotient_group(anames, arels);
        AbelianGroup HB = quotient_group(bnames, brels);
        std::map<Label, ZVec> images;
        for (size_t j = 0; j < acyc.size(); ++j) {
            ZVec fz = f[k].apply(acyc[j]);
            images[anames[j]] = express_in_basis(bbasis, bcyc, bnames, fz);
        }
        HomologyDegreeCheck c;
        c.src = HA.info();
        c.dst = HB.info();
        c.map = check_group_map(HA, arels, HB, brels, images);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace omf
