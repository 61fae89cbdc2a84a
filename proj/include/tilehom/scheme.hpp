#pragma once

#include "tilehom/affine.hpp"
#include "tilehom/abelian.hpp"

namespace tilehom {

/// Singular hyperplane family member: an affine hyperplane of V given by
/// spanning directions (n-1 of them) and an offset point.
struct Hyperplane {
    std::vector<FVec> directions;
    FVec offset;
};

/// Expected results attached to a catalog entry (published table rows or
/// prose facts); absent fields are not checked.
struct ExpectedHomology {
    std::vector<FgAbelianGroup> groups;          ///< H_0..H_d when fully known
    bool groups_known = false;
    std::optional<FgAbelianGroup> torsion_h0;    ///< prose-only torsion facts
    std::optional<FgAbelianGroup> torsion_h1;
    std::optional<FgAbelianGroup> t1_prime, t1_dblprime, t0_prime;  ///< codim-3 columns
};

/// Canonical projection scheme (V, Gamma, W): internal space V = F^n with
/// number-field coordinates, super-lattice Gamma = Z^(n+d) acting through
/// the internal projection, and the singular hyperplane family W.
class ProjectionScheme {
public:
    std::string name;
    int d = 0;  ///< physical dimension
    int n = 0;  ///< internal (co)dimension
    NumberField field;
    std::vector<FVec> lattice;  ///< n+d images of the Z^(n+d) basis in V
    std::vector<Hyperplane> hyperplanes;
    std::vector<IntMat> point_group;  ///< optional unimodular (n+d)x(n+d) matrices

    int rank() const { return n + d; }
    bool nu_integral() const { return n > 0 && (n + d) % n == 0; }
    int nu() const { return (n + d) / n; }

    /// Flattened internal projection: row i = flatten(lattice[i]), an
    /// (n+d) x (n*degree) rational matrix (row convention: gamma * P).
    RatMat flattened() const {
        int cols = n * field.degree();
        RatMat P(rank(), cols);
        for (int i = 0; i < rank(); ++i) {
            auto f = field.flatten(lattice[i]);
            for (int j = 0; j < cols; ++j) P(i, j) = f[j];
        }
        return P;
    }

    std::vector<Rat> project(const std::vector<Int>& gamma) const {
        RatMat P = flattened();
        std::vector<Rat> out(P.cols(), Rat(0));
        for (int i = 0; i < P.rows(); ++i)
            for (int j = 0; j < P.cols(); ++j) out[j] += Rat(gamma[i]) * P(i, j);
        return out;
    }

    FVec unflatten(const std::vector<Rat>& flat) const {
        assert(int(flat.size()) == n * field.degree());
        FVec v(n, field.zero());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < field.degree(); ++j) v[i][j] = flat[size_t(i) * field.degree() + j];
        return v;
    }

    FVec project_point(const std::vector<Int>& gamma) const { return unflatten(project(gamma)); }

    /// Validation; throws std::invalid_argument with a distinct diagnostic.
    void validate() const {
        if (n <= 0 || d < 0) throw std::invalid_argument("scheme: dimensions must satisfy n >= 1, d >= 0");
        if (!nu_integral())
            throw std::invalid_argument("scheme '" + name + "': nu=(n+d)/n not an integer");
        if (int(lattice.size()) != rank())
            throw std::invalid_argument("scheme '" + name + "': lattice must have n+d columns");
        for (const auto& col : lattice) {
            if (int(col.size()) != n) throw std::invalid_argument("scheme '" + name + "': malformed field data (column length)");
            for (const auto& e : col)
                if (int(e.size()) != field.degree())
                    throw std::invalid_argument("scheme '" + name + "': malformed field data (element length)");
        }
        auto [P, den] = clear_denominators(flattened());
        if (rank_q(P) != rank())
            throw std::invalid_argument("scheme '" + name + "': projection not injective on Gamma");
        if (hyperplanes.empty())
            throw std::invalid_argument("scheme '" + name + "': no hyperplanes");
        // normals span V <=> the direction spaces intersect trivially
        std::optional<FSpace> common;
        for (const auto& h : hyperplanes) {
            if (int(h.offset.size()) != n)
                throw std::invalid_argument("scheme '" + name + "': malformed field data (offset length)");
            FSpace dir(field, n);
            for (const auto& v : h.directions) dir.insert(v);
            if (dir.rank() != n - 1)
                throw std::invalid_argument("scheme '" + name + "': hyperplane directions do not span an (n-1)-space");
            common = common ? common->intersection(dir) : dir;
        }
        if (n >= 1 && common && common->rank() != 0)
            throw std::invalid_argument("scheme '" + name + "': hyperplane normals do not span V");
        for (const auto& g : point_group) {
            if (g.rows() != rank() || g.cols() != rank() || abs(det(g)) != 1)
                throw std::invalid_argument("scheme '" + name + "': point_group matrix not unimodular of rank n+d");
        }
    }

    /// The F-linear automorphism of V induced by a lattice automorphism P
    /// (gamma |-> gamma * P), if it exists: A with A(pi(e_i)) = pi(e_i * P).
    std::optional<std::vector<FVec>> induced_map(const IntMat& P) const {
        // find n F-independent lattice images to determine A's matrix (rows = images of the V-basis)
        // solve in terms of coordinates: for each standard V coordinate, express
        // A as an n x n F-matrix: lattice[i] * A = target_i
        std::vector<FVec> lhs;  // rows: lattice images (in F^n)
        std::vector<FVec> rhs;
        for (int i = 0; i < rank(); ++i) {
            lhs.push_back(lattice[i]);
            FVec t = fvec_zero(field, n);
            for (int j = 0; j < rank(); ++j) {
                if (P(i, j) == 0) continue;
                FElem c = field.from_rational(Rat(P(i, j)));
                t = fvec_add(field, t, fvec_scale(field, c, lattice[j]));
            }
            rhs.push_back(t);
        }
        // A's k-th column (as function of input coordinates): solve sum_i x_i lhs_i = e_k basis...
        // Instead solve row-wise: find A (n x n over F) with lhs * A = rhs: for each output
        // coordinate c, solve the linear system sum over input coords.
        std::vector<FVec> A(n, fvec_zero(field, n));  // A[i][j]: image of basis vector i, coordinate j
        for (int col = 0; col < n; ++col) {
            // unknowns: column col of A (n field elements); equations: for each lattice row i:
            // sum_j lhs[i][j] * A[j][col] = rhs[i][col]
            std::vector<FVec> rows(n, fvec_zero(field, rank()));
            FVec b(rank(), field.zero());
            for (int i = 0; i < rank(); ++i) {
                for (int j = 0; j < n; ++j) rows[j][i] = lhs[i][j];
                b[i] = rhs[i][col];
            }
            auto sol = FSpace::solve(field, rows, b, rank());
            if (!sol) return std::nullopt;
            for (int j = 0; j < n; ++j) A[j][col] = (*sol)[j];
        }
        return A;
    }
};

/// A catalog row: the scheme plus the published values, where stated.
struct CatalogEntry {
    ProjectionScheme scheme;
    std::optional<ExpectedHomology> expected;
};

}  // namespace tilehom
