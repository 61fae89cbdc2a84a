#pragma once

#include "tilehom/abelian.hpp"

namespace tilehom {

/// Subgroup of Z^ambient_rank stored by its canonical (row-style HNF) basis.
/// Equal lattices have equal representations, so equality is data equality.
class Lattice {
public:
    Lattice() : ambient_(0), basis_(0, 0) {}
    explicit Lattice(int ambient) : ambient_(ambient), basis_(0, ambient) {}
    /// Rows of `generators` span the lattice; basis is canonicalized.
    Lattice(int ambient, const IntMat& generators)
        : ambient_(ambient), basis_(hnf_basis(generators)) {
        assert(generators.cols() == ambient || generators.rows() == 0);
        if (generators.rows() == 0) basis_ = IntMat(0, ambient);
    }

    static Lattice full(int ambient) { return Lattice(ambient, IntMat::identity(ambient)); }
    static Lattice zero(int ambient) { return Lattice(ambient); }

    int ambient_rank() const { return ambient_; }
    int rank() const { return basis_.rows(); }
    const IntMat& basis() const { return basis_; }

    bool operator==(const Lattice& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Lattice& o) const { return !(*this == o); }
    bool operator<(const Lattice& o) const {
        if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
        return basis_ < o.basis_;
    }

    bool contains(const std::vector<Int>& v) const { return in_row_lattice(basis_, v); }
    bool contains(const Lattice& o) const {
        for (int i = 0; i < o.rank(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    /// Coordinates of v in this basis; v must lie in the lattice.
    std::vector<Int> coordinates(const std::vector<Int>& v) const {
        auto x = solve_left(basis_, v);
        if (!x) throw std::domain_error("Lattice::coordinates: vector not in lattice");
        return *x;
    }

    Lattice sum(const Lattice& o) const {
        assert(ambient_ == o.ambient_);
        return Lattice(ambient_, basis_.stacked(o.basis_));
    }

    /// Intersection via the kernel of the difference map on the direct sum.
    Lattice intersection(const Lattice& o) const {
        assert(ambient_ == o.ambient_);
        // x in both lattices <=> x = a*B1 = b*B2; kernel of [B1; -B2] stacked
        IntMat stack = basis_.stacked(-o.basis_);
        IntMat ker = kernel_basis(stack);  // rows (a | b), a*B1 - b*B2 = 0
        IntMat gens(ker.rows(), ambient_);
        for (int i = 0; i < ker.rows(); ++i)
            for (int j = 0; j < ambient_; ++j) {
                Int v = 0;
                for (int k = 0; k < basis_.rows(); ++k) v += ker(i, k) * basis_(k, j);
                gens(i, j) = v;
            }
        return Lattice(ambient_, gens);
    }

    /// (this + other) / other as an abstract group.
    FgAbelianGroup quotient_by(const Lattice& o) const {
        assert(ambient_ == o.ambient_);
        Lattice s = sum(o);
        // relations: coordinates of o's basis inside s's basis
        IntMat rel(o.rank(), s.rank());
        for (int i = 0; i < o.rank(); ++i) {
            auto c = s.coordinates(o.basis_.row(i));
            rel.set_row(i, c);
        }
        return group_from_presentation(s.rank(), rel);
    }

    /// Saturation: (L tensor Q) intersected with Z^ambient = kernel of the
    /// induced map onto the rational quotient.
    Lattice saturation() const {
        if (rank() == 0) return *this;
        IntMat k = kernel_basis(basis_.transposed());
        // saturation = {x : x orthogonal-ish, i.e. x * basis^perp-gens^T = 0}
        return Lattice(ambient_, kernel_basis(k.transposed()));
    }

    bool is_saturated() const { return *this == saturation(); }

    /// Index [saturation : this] when finite, via the quotient group order.
    Int index_in(const Lattice& super) const {
        assert(super.contains(*this) && super.rank() == rank());
        IntMat rel(rank(), super.rank());
        for (int i = 0; i < rank(); ++i) rel.set_row(i, super.coordinates(basis_.row(i)));
        return abs(det(rel));
    }

private:
    int ambient_;
    IntMat basis_;
};

struct LatticeOpsResult {
    Lattice intersection;
    Lattice sum;
    FgAbelianGroup quotient;  ///< (a+b)/b
    Lattice saturation;       ///< of a
};

inline LatticeOpsResult lattice_ops(const Lattice& a, const Lattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw std::invalid_argument("lattice_ops: ambient ranks differ");
    return {a.intersection(b), a.sum(b), a.quotient_by(b), a.saturation()};
}

}  // namespace tilehom
