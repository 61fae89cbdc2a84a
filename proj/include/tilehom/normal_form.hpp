#pragma once

#include <algorithm>
#include <optional>

#include "tilehom/matrix.hpp"

namespace tilehom {

struct HnfResult {
    IntMat h;  ///< row-style Hermite normal form of the input
    IntMat u;  ///< unimodular, u * m = h
    int rank = 0;
    std::vector<int> pivot_cols;  ///< pivot column of row i, for i < rank
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows last. u accumulates the row operations.
inline HnfResult hnf(const IntMat& m) {
    HnfResult res;
    res.h = m;
    res.u = IntMat::identity(m.rows());
    IntMat& h = res.h;
    IntMat& u = res.u;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        // clear column c below row r by gcd row combinations
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (h(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) { h.swap_rows(piv, r); u.swap_rows(piv, r); }
        for (int i = r + 1; i < m.rows(); ++i) {
            if (h(i, c) == 0) continue;
            Int a = h(r, c), b = h(i, c), p, q;
            Int g = gcdext(a, b, p, q);
            Int ag = divexact(a, g), bg = divexact(b, g);
            for (int j = 0; j < m.cols(); ++j) {
                Int hr = h(r, j), hi = h(i, j);
                h(r, j) = p * hr + q * hi;
                h(i, j) = ag * hi - bg * hr;
            }
            for (int j = 0; j < m.rows(); ++j) {
                Int ur = u(r, j), ui = u(i, j);
                u(r, j) = p * ur + q * ui;
                u(i, j) = ag * ui - bg * ur;
            }
        }
        if (h(r, c) < 0) {
            for (int j = 0; j < m.cols(); ++j) h(r, j) = -h(r, j);
            for (int j = 0; j < m.rows(); ++j) u(r, j) = -u(r, j);
        }
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < r; ++i) {
            Int f = fdiv(h(i, c), h(r, c));
            if (f == 0) continue;
            for (int j = 0; j < m.cols(); ++j) h(i, j) -= f * h(r, j);
            for (int j = 0; j < m.rows(); ++j) u(i, j) -= f * u(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

/// HNF of m with zero rows dropped; canonical basis of the row space lattice.
inline IntMat hnf_basis(const IntMat& m) {
    HnfResult r = hnf(m);
    IntMat b(r.rank, m.cols());
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < m.cols(); ++j) b(i, j) = r.h(i, j);
    return b;
}

struct SnfResult {
    std::vector<Int> factors;  ///< nonzero diagonal entries, d1 | d2 | ...
    IntMat left, right;        ///< unimodular, left * m * right = diag(factors, 0...)
};

/// Smith normal form by elimination with minimal-absolute-value pivoting.
inline SnfResult snf(const IntMat& m) {
    SnfResult res;
    IntMat a = m;
    res.left = IntMat::identity(m.rows());
    res.right = IntMat::identity(m.cols());
    IntMat& L = res.left;
    IntMat& R = res.right;
    int n = std::min(m.rows(), m.cols());
    for (int t = 0; t < n; ++t) {
        // find the nonzero entry of minimal absolute value in the trailing block
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < a.rows(); ++i)
            for (int j = t; j < a.cols(); ++j) {
                if (a(i, j) == 0) continue;
                Int v = abs(a(i, j));
                if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break;
        if (pi != t) { a.swap_rows(pi, t); L.swap_rows(pi, t); }
        if (pj != t) { a.swap_cols(pj, t); R.swap_cols(pj, t); }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            // clear column t
            for (int i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                Int r = mod_floor(a(i, t), a(t, t));
                Int q = divexact(a(i, t) - r, a(t, t));
                if (q != 0) {
                    for (int j = 0; j < a.cols(); ++j) a(i, j) -= q * a(t, j);
                    for (int j = 0; j < L.cols(); ++j) L(i, j) -= q * L(t, j);
                }
                if (a(i, t) != 0) {  // remainder smaller than pivot: swap up, restart
                    a.swap_rows(i, t);
                    L.swap_rows(i, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // clear row t
            for (int j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                Int r = mod_floor(a(t, j), a(t, t));
                Int q = divexact(a(t, j) - r, a(t, t));
                if (q != 0) {
                    for (int i = 0; i < a.rows(); ++i) a(i, j) -= q * a(i, t);
                    for (int i = 0; i < R.rows(); ++i) R(i, j) -= q * R(i, t);
                }
                if (a(t, j) != 0) {
                    a.swap_cols(j, t);
                    R.swap_cols(j, t);
                    dirty = true;
                }
            }
        }
        if (a(t, t) < 0) {
            for (int j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
            for (int j = 0; j < L.cols(); ++j) L(t, j) = -L(t, j);
        }
    }
    // enforce the divisibility chain d1 | d2 | ...
    int r = 0;
    while (r < n && a(r, r) != 0) ++r;
    for (bool again = true; again;) {
        again = false;
        for (int i = 0; i + 1 < r; ++i) {
            for (int j = i + 1; j < r; ++j) {
                if (a(j, j) % a(i, i) == 0) continue;
                again = true;
                // replace diag pair (di, dj) by (gcd, lcm) with explicit transforms
                // col i += col j: block becomes [[di,0],[dj,dj]]
                for (int k = 0; k < a.rows(); ++k) a(k, i) += a(k, j);
                for (int k = 0; k < R.rows(); ++k) R(k, i) += R(k, j);
                Int di = a(i, i), dj = a(j, i), p, q;
                Int g = gcdext(di, dj, p, q);
                Int dig = divexact(di, g), djg = divexact(dj, g);
                for (int c = 0; c < a.cols(); ++c) {
                    Int ri = a(i, c), rj = a(j, c);
                    a(i, c) = p * ri + q * rj;
                    a(j, c) = dig * rj - djg * ri;
                }
                for (int c = 0; c < L.cols(); ++c) {
                    Int ri = L(i, c), rj = L(j, c);
                    L(i, c) = p * ri + q * rj;
                    L(j, c) = dig * rj - djg * ri;
                }
                // rows now (g, q*dj | cols i,j) and (0, lcm); clear the residue
                Int f = divexact(a(i, j), g);
                if (f != 0) {
                    for (int k = 0; k < a.rows(); ++k) a(k, j) -= f * a(k, i);
                    for (int k = 0; k < R.rows(); ++k) R(k, j) -= f * R(k, i);
                }
                if (a(j, j) < 0) {
                    for (int c = 0; c < a.cols(); ++c) a(j, c) = -a(j, c);
                    for (int c = 0; c < L.cols(); ++c) L(j, c) = -L(j, c);
                }
            }
        }
    }
    for (int i = 0; i < r; ++i) res.factors.push_back(a(i, i));
    return res;
}

/// Rank over Q.
inline int rank_q(const IntMat& m) {
    RatMat a = to_rational(m);
    int rank = 0;
    for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
        int piv = -1;
        for (int r = rank; r < a.rows(); ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        a.swap_rows(piv, rank);
        for (int r = rank + 1; r < a.rows(); ++r) {
            if (a(r, c) == 0) continue;
            Rat f = a(r, c) / a(rank, c);
            for (int j = c; j < a.cols(); ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Rank of m over F_p.
inline int rank_mod_p(const IntMat& m, const Int& p) {
    IntMat a(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a(i, j) = mod_floor(m(i, j), p);
    int rank = 0;
    for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
        int piv = -1;
        for (int r = rank; r < a.rows(); ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        a.swap_rows(piv, rank);
        Int inv;
        mpz_invert(inv.get_mpz_t(), a(rank, c).get_mpz_t(), p.get_mpz_t());
        for (int r = rank + 1; r < a.rows(); ++r) {
            if (a(r, c) == 0) continue;
            Int f = mod_floor(a(r, c) * inv, p);
            for (int j = c; j < a.cols(); ++j) a(r, j) = mod_floor(a(r, j) - f * a(rank, j), p);
        }
        ++rank;
    }
    return rank;
}

/// Basis (rows, canonical HNF) of the left nullspace over F_p:
/// {x in F_p^rows : x * m = 0}. Returned entries lifted to [0, p).
inline IntMat nullspace_mod_p(const IntMat& m, const Int& p) {
    int nr = m.rows(), nc = m.cols();
    IntMat a(nr, nc + nr);
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nc; ++j) a(i, j) = mod_floor(m(i, j), p);
        a(i, nc + i) = 1;
    }
    int rank = 0;
    for (int c = 0; c < nc && rank < nr; ++c) {
        int piv = -1;
        for (int r = rank; r < nr; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        a.swap_rows(piv, rank);
        Int inv;
        mpz_invert(inv.get_mpz_t(), a(rank, c).get_mpz_t(), p.get_mpz_t());
        for (int r = 0; r < nr; ++r) {
            if (r == rank || a(r, c) == 0) continue;
            Int f = mod_floor(a(r, c) * inv, p);
            for (int j = 0; j < a.cols(); ++j) a(r, j) = mod_floor(a(r, j) - f * a(rank, j), p);
        }
        ++rank;
    }
    IntMat ker(nr - rank, nr);
    for (int i = rank; i < nr; ++i)
        for (int j = 0; j < nr; ++j) ker(i - rank, j) = a(i, nc + j);
    return ker;
}

/// Canonical basis (rows, HNF) of the integer left kernel {x : x * m = 0}.
/// Kernels of integer maps are automatically saturated.
inline IntMat kernel_basis(const IntMat& m) {
    HnfResult r = hnf(m);
    // rows of u below the rank span the kernel; already a lattice basis
    IntMat k(m.rows() - r.rank, m.rows());
    for (int i = r.rank; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) k(i - r.rank, j) = r.u(i, j);
    return hnf_basis(k);
}

/// One integer solution x of x * m = b, if any.
inline std::optional<std::vector<Int>> solve_left(const IntMat& m, const std::vector<Int>& b) {
    assert(int(b.size()) == m.cols());
    HnfResult r = hnf(m);
    std::vector<Int> rem = b, z(m.rows(), 0);
    for (int i = 0; i < r.rank; ++i) {
        int c = r.pivot_cols[i];
        if (rem[c] % r.h(i, c) != 0) return std::nullopt;
        Int f = divexact(rem[c], r.h(i, c));
        z[i] = f;
        if (f != 0)
            for (int j = 0; j < m.cols(); ++j) rem[j] -= f * r.h(i, j);
    }
    for (int j = 0; j < m.cols(); ++j)
        if (rem[j] != 0) return std::nullopt;
    std::vector<Int> x(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) x[j] += z[i] * r.u(i, j);
    return x;
}

/// One rational solution x of x * m = b, if any.
inline std::optional<std::vector<Rat>> solve_left_rat(const RatMat& m, const std::vector<Rat>& b) {
    assert(int(b.size()) == m.cols());
    // row-reduce the augmented system transposed: solve m^T x^T = b^T
    int n = m.rows(), cc = m.cols();
    RatMat a(cc, n + 1);
    for (int i = 0; i < cc; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = m(j, i);
        a(i, n) = b[i];
    }
    int rank = 0;
    std::vector<int> pivcol;
    for (int c = 0; c < n && rank < cc; ++c) {
        int piv = -1;
        for (int r = rank; r < cc; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        a.swap_rows(piv, rank);
        for (int r = 0; r < cc; ++r) {
            if (r == rank || a(r, c) == 0) continue;
            Rat f = a(r, c) / a(rank, c);
            for (int j = c; j <= n; ++j) a(r, j) -= f * a(rank, j);
        }
        pivcol.push_back(c);
        ++rank;
    }
    for (int r = rank; r < cc; ++r)
        if (a(r, n) != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (int i = 0; i < rank; ++i) x[pivcol[i]] = a(i, n) / a(i, pivcol[i]);
    return x;
}

/// Membership of a row vector in the lattice spanned by the rows of basis.
inline bool in_row_lattice(const IntMat& basis, const std::vector<Int>& v) {
    return solve_left(basis, v).has_value();
}

}  // namespace tilehom
