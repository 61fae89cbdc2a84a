#pragma once

#include <string>

#include "tilehom/lattice.hpp"

namespace tilehom {

/// Map between based free Z-modules, row convention: x |-> x * matrix,
/// so matrix is source_rank x target_rank. Labels name the based modules.
struct LatticeMap {
    IntMat matrix;
    std::string source_label, target_label;

    LatticeMap() = default;
    LatticeMap(IntMat m, std::string src = "", std::string tgt = "")
        : matrix(std::move(m)), source_label(std::move(src)), target_label(std::move(tgt)) {}

    int source_rank() const { return matrix.rows(); }
    int target_rank() const { return matrix.cols(); }

    /// f then g.
    LatticeMap compose(const LatticeMap& g) const {
        assert(target_rank() == g.source_rank());
        return LatticeMap(matrix * g.matrix, source_label, g.target_label);
    }
};

/// target / image(f) in canonical form.
inline FgAbelianGroup cokernel(const LatticeMap& f) {
    return group_from_presentation(f.target_rank(), f.matrix);
}

/// Canonical basis of {x : x * matrix = 0}; automatically saturated.
inline Lattice kernel(const LatticeMap& f) {
    return Lattice(f.source_rank(), kernel_basis(f.matrix));
}

/// k-th compound matrix: rows/columns indexed by lexicographically ordered
/// k-subsets of the source/target bases, entries the k x k minors.
/// k = 0 gives the 1x1 identity; k beyond a dimension gives an empty matrix.
inline LatticeMap exterior_power(int k, const LatticeMap& f) {
    if (k < 0) throw std::invalid_argument("exterior_power: k < 0");
    auto rows = subsets_lex(f.source_rank(), k);
    auto cols = subsets_lex(f.target_rank(), k);
    IntMat m(int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            m(int(i), int(j)) = det(f.matrix.submatrix(rows[i], cols[j]));
    std::string mark = "Lambda^" + std::to_string(k) + " ";
    return LatticeMap(std::move(m), mark + f.source_label, mark + f.target_label);
}

struct ReduceRingResult {
    int rank = 0;            ///< rank over the field (modulus 0 or prime)
    bool has_count = false;  ///< true when modulus is a prime power
    Int cokernel_count = 0;  ///< |coker over Z/p^k| when has_count
};

/// Rank of f over Q (modulus 0) or F_p (modulus prime); for a prime power
/// p^k, the exact number of elements of coker(Z/p^k reduction), read off the
/// integral SNF factors. Composite non-prime-power moduli are rejected.
inline ReduceRingResult reduce_ring(const LatticeMap& f, const Int& modulus) {
    ReduceRingResult out;
    if (modulus == 0) {
        out.rank = rank_q(f.matrix);
        return out;
    }
    if (modulus < 2) throw std::invalid_argument("reduce_ring: modulus must be 0 or >= 2");
    Int p;
    unsigned k = 0;
    if (!prime_power_decompose(modulus, p, k))
        throw std::invalid_argument("reduce_ring: composite non-prime-power modulus rejected");
    if (k == 1) out.rank = rank_mod_p(f.matrix, p);
    SnfResult s = snf(f.matrix);
    out.has_count = true;
    Int count = 1;
    for (const Int& d : s.factors) count *= gcd(d, modulus);
    for (int i = int(s.factors.size()); i < f.target_rank(); ++i) count *= modulus;
    out.cokernel_count = count;
    if (k > 1) {
        // rank over Z/p^k is not a field rank; report the F_p rank of the reduction
        out.rank = rank_mod_p(f.matrix, p);
    }
    return out;
}

}  // namespace tilehom
