#pragma once

#include "tilehom/lattice_map.hpp"

namespace tilehom {

/// Abelian group presented as Z^generators modulo the row span of relations.
/// The workhorse for maps whose source or target carries torsion (cokernels
/// of integer maps, Z/p^k-level kernels).
struct PresentedGroup {
    int generators = 0;
    IntMat relations;  ///< rows in generator coordinates

    PresentedGroup() : relations(0, 0) {}
    PresentedGroup(int gens, IntMat rel) : generators(gens), relations(std::move(rel)) {
        assert(relations.cols() == generators || relations.rows() == 0);
        if (relations.rows() == 0) relations = IntMat(0, gens);
    }

    static PresentedGroup free_group(int gens) { return PresentedGroup(gens, IntMat(0, gens)); }

    /// coker(f) = Z^tgt / rows(f.matrix).
    static PresentedGroup cokernel_of(const LatticeMap& f) {
        return PresentedGroup(f.target_rank(), f.matrix);
    }

    /// Z/m-module R^gens as a Z-presentation (appends m * identity relations).
    static PresentedGroup mod_m_free(int gens, const Int& m) {
        IntMat rel = IntMat::identity(gens);
        for (int i = 0; i < gens; ++i) rel(i, i) = m;
        return PresentedGroup(gens, rel);
    }

    FgAbelianGroup group() const { return group_from_presentation(generators, relations); }
};

/// Map of presented groups given on generators, row convention.
struct PresentedMap {
    PresentedGroup source, target;
    IntMat matrix;  ///< source.generators x target.generators

    PresentedMap(PresentedGroup src, PresentedGroup tgt, IntMat m)
        : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
        assert(matrix.rows() == source.generators && matrix.cols() == target.generators);
    }

    /// Each source relation must map into the target relation span.
    bool well_defined() const {
        IntMat image = source.relations * matrix;
        for (int i = 0; i < image.rows(); ++i)
            if (!in_row_lattice(hnf_basis(target.relations), image.row(i))) return false;
        return true;
    }

    FgAbelianGroup cokernel_group() const {
        return group_from_presentation(target.generators, matrix.stacked(target.relations));
    }

    /// Kernel as a presented group together with its generator lift into the
    /// source generators (rows of `lift`).
    struct Kernel {
        PresentedGroup group;
        IntMat lift;  ///< group.generators x source.generators
    };

    Kernel kernel() const {
        // x in Z^src with x*F in rowspan(target.relations):
        // (x, y) * [F; -R_tgt] = 0, project to x
        IntMat stack = matrix.stacked(-target.relations);
        IntMat ker = kernel_basis(stack);
        IntMat proj(ker.rows(), source.generators);
        for (int i = 0; i < ker.rows(); ++i)
            for (int j = 0; j < source.generators; ++j) proj(i, j) = ker(i, j);
        IntMat lift = hnf_basis(proj);
        // relations: source relations live inside the kernel lattice
        IntMat rel(source.relations.rows(), lift.rows());
        for (int i = 0; i < source.relations.rows(); ++i) {
            auto c = solve_left(lift, source.relations.row(i));
            if (!c) throw std::logic_error("PresentedMap::kernel: relation escapes kernel lattice");
            rel.set_row(i, *c);
        }
        return {PresentedGroup(lift.rows(), std::move(rel)), std::move(lift)};
    }
};

/// The Z/m-level kernel of an integer map f (kernel of the reduction of f
/// mod m), as a Z-presented group with its lift {x in Z^src : x*f in m Z^tgt}.
inline PresentedMap::Kernel kernel_mod_m(const LatticeMap& f, const Int& m) {
    PresentedMap pm(PresentedGroup::free_group(f.source_rank()),
                    PresentedGroup::mod_m_free(f.target_rank(), m), f.matrix);
    // relations of the source as a Z/m-module: m * identity
    pm.source = PresentedGroup::mod_m_free(f.source_rank(), m);
    return pm.kernel();
}

}  // namespace tilehom
