#pragma once

#include <random>

#include "tilehom/normal_form.hpp"

namespace tilehom::testing {

inline IntMat random_mat(std::mt19937& rng, int rows, int cols, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

/// Independent Smith-factor oracle: d_1 ... d_k equals the gcd of all
/// k x k minors; factors recovered by successive quotients.
inline std::vector<Int> snf_oracle_minor_gcd(const IntMat& m) {
    std::vector<Int> gcds;
    int n = std::min(m.rows(), m.cols());
    for (int k = 1; k <= n; ++k) {
        Int g = 0;
        for (const auto& rs : subsets_lex(m.rows(), k))
            for (const auto& cs : subsets_lex(m.cols(), k)) g = gcd(g, det(m.submatrix(rs, cs)));
        if (g == 0) break;
        gcds.push_back(g);
    }
    std::vector<Int> factors;
    Int prev = 1;
    for (const Int& g : gcds) {
        factors.push_back(divexact(g, prev));
        prev = g;
    }
    return factors;
}

inline bool is_unimodular(const IntMat& u) {
    if (u.rows() != u.cols()) return false;
    Int d = det(u);
    return d == 1 || d == -1;
}

/// Checks the row-style HNF shape: positive pivots strictly to the right as
/// rows descend, entries above each pivot in [0, pivot), zero rows last.
inline bool is_row_hnf(const IntMat& h) {
    int last_piv = -1;
    bool seen_zero_row = false;
    for (int i = 0; i < h.rows(); ++i) {
        int piv = -1;
        for (int j = 0; j < h.cols(); ++j)
            if (h(i, j) != 0) { piv = j; break; }
        if (piv < 0) { seen_zero_row = true; continue; }
        if (seen_zero_row) return false;
        if (piv <= last_piv) return false;
        if (h(i, piv) <= 0) return false;
        for (int r = 0; r < i; ++r)
            if (h(r, piv) < 0 || h(r, piv) >= h(i, piv)) return false;
        last_piv = piv;
    }
    return true;
}

}  // namespace tilehom::testing
