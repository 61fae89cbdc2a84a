#pragma once

#include "tilehom/presented.hpp"
#include "tilehom/singular.hpp"

namespace tilehom {

/// Integral homology with torsion, ranks over Q and F_p, torsion ranks,
/// Euler characteristic, K-groups, and the codimension-3 diagnostics.
struct HomologyResult {
    int d = 0, n = 0;
    std::vector<FgAbelianGroup> groups;              ///< H_0 .. H_d
    std::vector<long> D;                             ///< free ranks
    std::map<Int, std::vector<long>> modp_D;         ///< p -> D_k^p
    std::map<Int, std::vector<long>> torsion_ranks;  ///< p -> T_k^p
    long euler = 0;
    std::optional<std::pair<FgAbelianGroup, FgAbelianGroup>> ktheory;  ///< (K^0, K^1)

    std::optional<FgAbelianGroup> t1_prime;     ///< Torsion(coker phi'_1)
    std::optional<FgAbelianGroup> t1_dblprime;  ///< Torsion(coker phi''_1)
    std::optional<FgAbelianGroup> t0_prime;     ///< Torsion(ker phi'_0)
    std::vector<std::string> extension_trace;
    bool partial = false;                       ///< extension left ambiguous
    std::vector<std::string> checks;            ///< recorded hypothesis verifications

    std::optional<std::vector<long>> corrected_D;  ///< codim-3 closed-form ranks
    std::optional<long> corrected_euler;
};

namespace assembly {

/// Ordered point data of a container: members of I_0^Theta with shifts.
struct ContainerPoints {
    std::vector<IncidenceEntry> members;  ///< ordered by global class id
    int find(int cls) const {
        for (size_t i = 0; i < members.size(); ++i)
            if (members[i].cls == cls) return int(i);
        return -1;
    }
};

inline ContainerPoints container_points(const SingularComplex& cx, int level, int id) {
    ContainerPoints cp;
    cp.members = cx.members(level, id, 0);
    std::sort(cp.members.begin(), cp.members.end(),
              [](const IncidenceEntry& a, const IncidenceEntry& b) { return a.cls < b.cls; });
    return cp;
}

/// Expansion of e_to - e_from in the difference basis u_j = e_{j+1} - e_j
/// of the kernel of the sum map on `count` classes.
inline std::vector<Int> diff_expand(int from, int to, int count) {
    std::vector<Int> v(std::max(count - 1, 0), 0);
    for (int j = std::min(from, to); j < std::max(from, to); ++j) v[j] = (to > from) ? 1 : -1;
    return v;
}

/// The sum map Z^{L_0^Theta} -> Z and the canonical basis of its kernel
/// (differences of consecutive classes).
struct EpsilonMap {
    LatticeMap sum_map;
    IntMat kernel;  ///< (count-1) x count difference rows
};

inline EpsilonMap build_epsilon(int count) {
    IntMat s(count, 1);
    for (int i = 0; i < count; ++i) s(i, 0) = 1;
    IntMat k(std::max(count - 1, 0), count);
    for (int i = 0; i + 1 < count; ++i) {
        k(i, i) = -1;
        k(i, i + 1) = 1;
    }
    return {LatticeMap(std::move(s), "Z^" + std::to_string(count), "Z"), std::move(k)};
}

/// Rows of the source block of a beta_0 / gamma_0 style map for one
/// container Theta mapping into [Lambda_1(target) | ker eps(target)]:
/// Lambda_1 rows are the stabilizer inclusion, epsilon rows carry the
/// lattice displacement (cross term) and the class-difference image.
///
///   target_rank:     rank of the target Lambda_1 block
///   incl:            stabilizer inclusion matrix (nu x target_rank)
///   src_points:      I_0 of the container (ordered)
///   tgt_points:      I_0 of the target container (ordered; for the global
///                    target this is the identity list 0..L_0-1)
///   displacement:    maps a source member to its shift relative to the
///                    target representative, in target Lambda_1 coordinates
template <typename DisplacementFn>
inline IntMat epsilon_block(int target_rank, const IntMat& incl,
                            const ContainerPoints& src_points,
                            const ContainerPoints& tgt_points, DisplacementFn displacement) {
    int rows = incl.rows() + std::max(int(src_points.members.size()) - 1, 0);
    int tgt_ker = std::max(int(tgt_points.members.size()) - 1, 0);
    IntMat m(rows, target_rank + tgt_ker);
    for (int i = 0; i < incl.rows(); ++i)
        for (int j = 0; j < target_rank; ++j) m(i, j) = incl(i, j);
    for (size_t i = 0; i + 1 < src_points.members.size(); ++i) {
        int row = incl.rows() + int(i);
        const auto& a = src_points.members[i];
        const auto& b = src_points.members[i + 1];
        std::vector<Int> za = displacement(a), zb = displacement(b);
        for (int j = 0; j < target_rank; ++j) m(row, j) = zb[j] - za[j];
        int pa = tgt_points.find(a.cls), pb = tgt_points.find(b.cls);
        if (pa < 0 || pb < 0) throw std::logic_error("epsilon_block: class missing in target");
        auto diff = diff_expand(pa, pb, int(tgt_points.members.size()));
        for (int j = 0; j < tgt_ker; ++j) m(row, target_rank + j) = diff[j];
    }
    return m;
}

/// Stabilizer basis of orbit o expressed in the stabilizer basis of the
/// containing orbit c (Gamma^theta inside Gamma^alpha).
inline IntMat restrict_stabilizer(const SingularOrbit& o, const SingularOrbit& c) {
    IntMat m(o.stabilizer.rank(), c.stabilizer.rank());
    for (int i = 0; i < o.stabilizer.rank(); ++i)
        m.set_row(i, c.stabilizer.coordinates(o.stabilizer.basis().row(i)));
    return m;
}

/// Vertical stack of per-summand blocks (direct-sum source).
inline IntMat stack_blocks(const std::vector<IntMat>& blocks, int cols) {
    IntMat out(0, cols);
    for (const auto& b : blocks) out = out.stacked(b);
    return out;
}

}  // namespace assembly

/// --- codimension 1 -------------------------------------------------------

/// H_k = Z^{binom(d+1, k+1)} for k > 0, H_0 = Z^{L_0 + d}; never torsion.
inline HomologyResult codim1(const ProjectionScheme& s, const SingularComplex& cx) {
    if (s.n != 1) throw std::invalid_argument("codim1: scheme has n != 1");
    HomologyResult res;
    res.d = s.d;
    res.n = 1;
    long L0 = cx.count(0);
    for (int k = 0; k <= s.d; ++k) {
        long rank = (k == 0) ? L0 + s.d : binomial_l(s.d + 1, k + 1);
        res.groups.push_back(FgAbelianGroup::free(int(rank)));
        res.D.push_back(rank);
    }
    return res;
}

/// --- codimension 2 -------------------------------------------------------

namespace assembly {

/// All beta maps of a codimension-2 scheme: beta[k] for k = 0..d+1, where
/// beta_k for k >= 1 is the Lambda_{k+1} stack of stabilizer inclusions and
/// beta_0 carries the epsilon blocks.
struct Codim2Maps {
    std::vector<IntMat> beta;      ///< beta[k], index k = 0..d+1
    std::vector<long> src;         ///< source ranks
    std::vector<long> tgt;         ///< target ranks
    long L0 = 0;
};

inline Codim2Maps build_codim2(const SingularComplex& cx) {
    Codim2Maps mm;
    const auto& lines = cx.levels[1];
    int rank = cx.scheme.rank();
    int nu = cx.scheme.nu();
    mm.L0 = cx.count(0);
    int d = cx.scheme.d;
    ContainerPoints global;
    for (int c = 0; c < mm.L0; ++c) global.members.push_back({c, {}});

    for (int k = 0; k <= d + 1; ++k) {
        std::vector<IntMat> blocks;
        long cols;
        if (k >= 1) {
            cols = binomial_l(rank, k + 1);
            for (const auto& line : lines)
                blocks.push_back(
                    exterior_power(k + 1, LatticeMap(line.stabilizer.basis())).matrix);
        } else {
            cols = rank + (mm.L0 - 1);
            for (const auto& line : lines) {
                ContainerPoints pts = container_points(cx, 1, line.id);
                if (pts.members.empty())
                    throw std::logic_error("codim2: singular line carries no point classes");
                blocks.push_back(epsilon_block(
                    rank, line.stabilizer.basis(), pts, global,
                    [&](const IncidenceEntry& e) { return e.shift; }));
            }
        }
        IntMat m = stack_blocks(blocks, int(cols));
        mm.src.push_back(m.rows());
        mm.tgt.push_back(cols);
        mm.beta.push_back(std::move(m));
        (void)nu;
    }
    return mm;
}

}  // namespace assembly

/// Theorem route H_k = coker(beta_{k+1}) + ker(beta_k) for n = 2.
inline HomologyResult codim2(const ProjectionScheme& s, const SingularComplex& cx) {
    if (s.n != 2) throw std::invalid_argument("codim2: scheme has n != 2");
    if (!s.nu_integral()) throw std::invalid_argument("codim2: nu not an integer");
    for (const auto& o : cx.levels[1])
        if (o.stabilizer.rank() != s.nu())
            throw std::logic_error("codim2: stabilizer rank differs from nu (homology not "
                                   "finitely generated)");
    HomologyResult res;
    res.d = s.d;
    res.n = 2;
    auto mm = assembly::build_codim2(cx);
    for (int k = 0; k <= s.d; ++k) {
        FgAbelianGroup ck = cokernel(LatticeMap(mm.beta[k + 1]));
        long kerdim = mm.src[k] - rank_q(mm.beta[k]);
        FgAbelianGroup hk = ck.direct_sum(FgAbelianGroup::free(int(kerdim)));
        res.D.push_back(hk.free_rank);
        res.groups.push_back(std::move(hk));
    }
    for (int k = 0; k <= s.d; ++k) res.euler += (k % 2 ? -1 : 1) * res.D[k];
    return res;
}

/// F_p ranks for codimension 2: the same exact sequences with every rank
/// computed over F_p.
inline std::vector<long> codim2_modp(const SingularComplex& cx, const Int& p) {
    auto mm = assembly::build_codim2(cx);
    std::vector<long> Dp;
    for (int k = 0; k <= cx.scheme.d; ++k) {
        long ck = mm.tgt[k + 1] - rank_mod_p(mm.beta[k + 1], p);
        long kk = mm.src[k] - rank_mod_p(mm.beta[k], p);
        Dp.push_back(ck + kk);
    }
    return Dp;
}

/// --- codimension 3 (n = d = 3) -------------------------------------------

namespace assembly {

/// The full diagram of a codimension-3 scheme: the line-level maps gamma_s,
/// the per-plane maps beta^alpha_s, the inclusion-induced blocks, and the
/// scatter matrices realizing the j maps on the direct sums.
struct Codim3Assembly {
    // line level
    IntMat gamma1;                   ///< L1 x 15
    IntMat gamma0;                   ///< gamma0_src x (6 + L0 - 1)
    std::vector<int> theta_offset;   ///< start of theta's block in gamma0 source
    std::vector<int> theta_size;     ///< 2 + (L0^theta - 1)
    IntMat ker_gamma1, ker_gamma0;   ///< canonical kernel bases

    struct Plane {
        std::vector<IncidenceEntry> line_members;  ///< I_1^alpha with shifts
        IntMat beta1;                ///< L1^alpha x 6
        IntMat beta0;                ///< beta0_src x (4 + L0^alpha - 1)
        IntMat ker_beta1, ker_beta0;
        IntMat lam2, lam3, lam4;     ///< Lambda^k of the stabilizer inclusion
        IntMat j1;                   ///< L1^alpha x L1 scatter
        IntMat j0;                   ///< beta0_src x gamma0_src scatter
        IntMat iota0;                ///< (4 + L0^alpha - 1) x (6 + L0 - 1)
    };
    std::vector<Plane> planes;

    IntMat phi2p;   ///< stacked Lambda^4: L2 x 15
    IntMat phi1p;   ///< stacked Lambda^3: 4 L2 x 20
    IntMat phi1pp;  ///< pushed line kernels in the basis of ker gamma1
    IntMat phi0pp;  ///< pushed beta0 kernels in the basis of ker gamma0
    std::vector<std::string> checks;
};

inline Codim3Assembly build_codim3(const SingularComplex& cx) {
    const ProjectionScheme& s = cx.scheme;
    Codim3Assembly A;
    const auto& lines = cx.levels[1];
    const auto& planes = cx.levels[2];
    long L0 = cx.count(0), L1 = cx.count(1);

    ContainerPoints global;
    for (int c = 0; c < L0; ++c) global.members.push_back({c, {}});

    // gamma_1 and gamma_0
    {
        std::vector<IntMat> g1blocks, g0blocks;
        int off = 0;
        for (const auto& th : lines) {
            if (th.stabilizer.rank() != 2)
                throw std::logic_error("codim3: line stabilizer rank != 2");
            g1blocks.push_back(exterior_power(2, LatticeMap(th.stabilizer.basis())).matrix);
            ContainerPoints pts = container_points(cx, 1, th.id);
            if (pts.members.empty())
                throw std::logic_error("codim3: singular line carries no point classes");
            IntMat blk = epsilon_block(6, th.stabilizer.basis(), pts, global,
                                       [&](const IncidenceEntry& e) { return e.shift; });
            A.theta_offset.push_back(off);
            A.theta_size.push_back(blk.rows());
            off += blk.rows();
            g0blocks.push_back(std::move(blk));
        }
        A.gamma1 = stack_blocks(g1blocks, 15);
        A.gamma0 = stack_blocks(g0blocks, int(6 + L0 - 1));
    }
    A.ker_gamma1 = kernel_basis(A.gamma1);
    A.ker_gamma0 = kernel_basis(A.gamma0);

    // per-plane data
    std::vector<IntMat> phi2blocks, phi1blocks, phi1pp_rows, phi0pp_rows;
    for (const auto& al : planes) {
        Codim3Assembly::Plane P;
        if (al.stabilizer.rank() != 4)
            throw std::logic_error("codim3: plane stabilizer rank != 4");
        P.line_members = cx.members(2, al.id, 1);
        std::sort(P.line_members.begin(), P.line_members.end(),
                  [](const IncidenceEntry& a, const IncidenceEntry& b) { return a.cls < b.cls; });
        ContainerPoints apts = container_points(cx, 2, al.id);
        LatticeMap Ba(al.stabilizer.basis());
        P.lam2 = exterior_power(2, Ba).matrix;
        P.lam3 = exterior_power(3, Ba).matrix;
        P.lam4 = exterior_power(4, Ba).matrix;

        std::vector<IntMat> b1blocks, b0blocks;
        int brow = 0;
        std::vector<std::pair<int, int>> member_span;  // (start row, size) in beta0 source
        for (const auto& mem : P.line_members) {
            const SingularOrbit& th = lines[mem.cls];
            IntMat Bta = restrict_stabilizer(th, al);
            b1blocks.push_back(exterior_power(2, LatticeMap(Bta)).matrix);
            ContainerPoints pts = container_points(cx, 1, th.id);
            IntMat blk = epsilon_block(
                4, Bta, pts, apts, [&](const IncidenceEntry& e) {
                    // displacement of the point seen inside the plane, in
                    // plane-stabilizer coordinates: g^theta + x - g^alpha
                    int pos = apts.find(e.cls);
                    if (pos < 0) throw std::logic_error("codim3: point class missing in plane");
                    std::vector<Int> h(s.rank());
                    for (int j = 0; j < s.rank(); ++j)
                        h[j] = e.shift[j] + mem.shift[j] - apts.members[pos].shift[j];
                    return al.stabilizer.coordinates(h);
                });
            member_span.emplace_back(brow, blk.rows());
            brow += blk.rows();
            b0blocks.push_back(std::move(blk));
        }
        P.beta1 = stack_blocks(b1blocks, 6);
        P.beta0 = stack_blocks(b0blocks, int(4 + apts.members.size()) - 1);
        P.ker_beta1 = kernel_basis(P.beta1);
        P.ker_beta0 = kernel_basis(P.beta0);

        // scatter matrices for j
        P.j1 = IntMat(int(P.line_members.size()), int(L1));
        for (size_t m = 0; m < P.line_members.size(); ++m) P.j1(int(m), P.line_members[m].cls) = 1;
        P.j0 = IntMat(P.beta0.rows(), A.gamma0.rows());
        for (size_t m = 0; m < P.line_members.size(); ++m) {
            int t = P.line_members[m].cls;
            for (int i = 0; i < member_span[m].second; ++i)
                P.j0(member_span[m].first + i, A.theta_offset[t] + i) = 1;
        }

        // iota_0: plane block into the global block
        P.iota0 = epsilon_block(6, al.stabilizer.basis(), apts, global,
                                [&](const IncidenceEntry& e) { return e.shift; });

        // commuting square at s = 0: j0 then gamma0 equals beta0 then iota0
        if (!(P.j0 * A.gamma0 == P.beta0 * P.iota0))
            throw std::logic_error("codim3: epsilon-level commuting square failed");

        phi2blocks.push_back(P.lam4);
        phi1blocks.push_back(P.lam3);
        // phi''_1 rows: pushed kernel of beta1 expressed in ker gamma1
        {
            IntMat pushed = P.ker_beta1 * P.j1;
            IntMat rows(pushed.rows(), A.ker_gamma1.rows());
            for (int i = 0; i < pushed.rows(); ++i) {
                auto c = solve_left(A.ker_gamma1, pushed.row(i));
                if (!c) throw std::logic_error("codim3: pushed beta1 kernel escapes ker gamma1");
                rows.set_row(i, *c);
            }
            phi1pp_rows.push_back(std::move(rows));
        }
        {
            IntMat pushed = P.ker_beta0 * P.j0;
            IntMat rows(pushed.rows(), A.ker_gamma0.rows());
            for (int i = 0; i < pushed.rows(); ++i) {
                auto c = solve_left(A.ker_gamma0, pushed.row(i));
                if (!c) throw std::logic_error("codim3: pushed beta0 kernel escapes ker gamma0");
                rows.set_row(i, *c);
            }
            phi0pp_rows.push_back(std::move(rows));
        }
        A.planes.push_back(std::move(P));
    }
    A.phi2p = stack_blocks(phi2blocks, 15);
    A.phi1p = stack_blocks(phi1blocks, 20);
    A.phi1pp = stack_blocks(phi1pp_rows, A.ker_gamma1.rows());
    A.phi0pp = stack_blocks(phi0pp_rows, A.ker_gamma0.rows());

    // splitting-lemma hypotheses, per plane: the kernels are subgroups of
    // free groups (torsion-free by construction) and each restriction
    // j^alpha|ker beta^alpha_s must be injective
    for (const auto& P : A.planes) {
        if (rank_q(P.ker_beta1 * P.j1) != P.ker_beta1.rows())
            throw std::logic_error("codim3: j_1|ker beta_1 not injective; splitting lemma fails");
        if (rank_q(P.ker_beta0 * P.j0) != P.ker_beta0.rows())
            throw std::logic_error("codim3: j_0|ker beta_0 not injective; splitting lemma fails");
    }
    A.checks.push_back("j_s^alpha|ker beta_s^alpha injective for s = 0, 1: ok");
    A.checks.push_back("ker beta^alpha_s, ker gamma_s torsion-free: ok (kernel lattices)");
    return A;
}

/// |coker_{Z/m} phi''_1| with honest Z/m-level kernels as the source and
/// target (they pick up extra elements exactly when the integral cokernels
/// of beta_1^alpha or gamma_1 carry torsion at the prime of m).
inline Int phi1pp_count_mod(const Codim3Assembly& A, const Int& mod) {
    auto tgt = kernel_mod_m(LatticeMap(A.gamma1), mod);
    int gens = 0, relrows = 0;
    std::vector<PresentedMap::Kernel> kers;
    for (const auto& P : A.planes) {
        kers.push_back(kernel_mod_m(LatticeMap(P.beta1), mod));
        gens += kers.back().lift.rows();
        relrows += kers.back().group.relations.rows();
    }
    IntMat bigrel(relrows, gens);
    IntMat rows(gens, tgt.lift.rows());
    int go = 0, ro = 0;
    for (size_t a = 0; a < A.planes.size(); ++a) {
        const auto& K = kers[a];
        IntMat pushed = K.lift * A.planes[a].j1;
        for (int i = 0; i < pushed.rows(); ++i) {
            auto c = solve_left(tgt.lift, pushed.row(i));
            if (!c) throw std::logic_error("phi1pp_count_mod: kernel push escapes target");
            rows.set_row(go + i, *c);
        }
        for (int i = 0; i < K.group.relations.rows(); ++i)
            for (int j = 0; j < K.group.relations.cols(); ++j)
                bigrel(ro + i, go + j) = K.group.relations(i, j);
        go += K.lift.rows();
        ro += K.group.relations.rows();
    }
    PresentedMap pm(PresentedGroup(gens, std::move(bigrel)), tgt.group, std::move(rows));
    FgAbelianGroup ck = pm.cokernel_group();
    if (ck.free_rank != 0) throw std::logic_error("phi1pp_count_mod: cokernel not finite");
    return ck.torsion_order();
}

/// |coker_{Z/m} phi_1|: the phi'-block tensors exactly (right-exactness),
/// the phi''-block needs the honest Z/m kernels.
inline Int phi1_count_mod(const Codim3Assembly& A, const Int& mod) {
    Int n1 = cokernel(LatticeMap(A.phi1p)).tensor_count(mod);
    return Int(n1 * phi1pp_count_mod(A, mod));
}

/// phi'_0 as a map of presented groups: direct sum of coker(beta^alpha_1)
/// into coker(gamma_1), induced by the Lambda^2 stabilizer inclusions.
inline PresentedMap phi0_prime(const Codim3Assembly& A) {
    int nsrc = 6 * int(A.planes.size());
    int relrows = 0;
    for (const auto& P : A.planes) relrows += P.beta1.rows();
    IntMat rel(relrows, nsrc);
    IntMat mat(nsrc, 15);
    int roff = 0, goff = 0;
    for (const auto& P : A.planes) {
        for (int i = 0; i < P.beta1.rows(); ++i)
            for (int j = 0; j < 6; ++j) rel(roff + i, goff + j) = P.beta1(i, j);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 15; ++j) mat(goff + i, j) = P.lam2(i, j);
        roff += P.beta1.rows();
        goff += 6;
    }
    PresentedGroup src(nsrc, std::move(rel));
    PresentedGroup tgt(15, A.gamma1);
    return PresentedMap(std::move(src), std::move(tgt), std::move(mat));
}

}  // namespace assembly

/// Counting data of the corrected closed-form rank formulas.
struct CorrectedRanks {
    std::vector<long> D;  ///< D_0 .. D_3
    long euler = 0;
};

namespace assembly {

/// R_s terms of the corrected formulas, with ranks taken over Q (p = 0)
/// or over F_p. The third term stacks, over the planes, the image under j
/// of the kernel of gamma^alpha_s (the summed global inclusions).
inline long corrected_R(const SingularComplex& cx, int sdeg, const Int& p) {
    const auto& lines = cx.levels[1];
    auto rk = [&](const IntMat& m) { return p == 0 ? rank_q(m) : rank_mod_p(m, p); };
    long R = 0;
    // term 1: <Lambda_{s+2} Gamma^alpha>
    {
        std::vector<IntMat> blocks;
        for (const auto& al : cx.levels[2])
            blocks.push_back(exterior_power(sdeg + 2, LatticeMap(al.stabilizer.basis())).matrix);
        R += rk(stack_blocks(blocks, binomial_l(6, sdeg + 2)));
    }
    // terms 2 and 3 per plane
    std::vector<IntMat> pushed;
    long term2 = 0;
    for (const auto& al : cx.levels[2]) {
        auto mems = cx.members(2, al.id, 1);
        std::sort(mems.begin(), mems.end(),
                  [](const IncidenceEntry& a, const IncidenceEntry& b) { return a.cls < b.cls; });
        std::vector<IntMat> beta_blocks, gam_blocks;
        for (const auto& mem : mems) {
            const SingularOrbit& th = lines[mem.cls];
            beta_blocks.push_back(
                exterior_power(sdeg + 1, LatticeMap(restrict_stabilizer(th, al))).matrix);
            gam_blocks.push_back(
                exterior_power(sdeg + 1, LatticeMap(th.stabilizer.basis())).matrix);
        }
        IntMat beta = stack_blocks(beta_blocks, binomial_l(4, sdeg + 1));
        term2 += rk(beta);
        IntMat gam_alpha = stack_blocks(gam_blocks, binomial_l(6, sdeg + 1));
        IntMat ker = (p == 0) ? kernel_basis(gam_alpha) : nullspace_mod_p(gam_alpha, p);
        // push member coordinates to global theta coordinates
        long width = binomial_l(2, sdeg + 1);
        IntMat push(ker.rows(), int(cx.count(1) * width));
        for (int i = 0; i < ker.rows(); ++i)
            for (size_t m = 0; m < mems.size(); ++m)
                for (int w = 0; w < width; ++w)
                    push(i, int(mems[m].cls * width + w)) = ker(i, int(m * width + w));
        pushed.push_back(std::move(push));
    }
    R += term2;
    R += rk(stack_blocks(pushed, int(cx.count(1) * binomial_l(2, sdeg + 1))));
    return R;
}

}  // namespace assembly

/// Closed-form rational ranks and Euler characteristic of a codimension-3
/// scheme, independent of the homology assembly; p = 0 gives the rational
/// ranks, a prime p the F_p ranks.
inline CorrectedRanks corrected_ranks(const SingularComplex& cx, const Int& p = 0) {
    const ProjectionScheme& s = cx.scheme;
    if (s.n != 3 || s.d != 3)
        throw std::invalid_argument("corrected_ranks: requires n = d = 3");
    long nu = s.nu();
    long L2 = cx.count(2), L1 = cx.count(1), L0 = cx.count(0);
    long sumL1a = 0, sumL0a = 0, sumsumL0t = 0, sumL0t = 0;
    for (const auto& al : cx.levels[2]) {
        auto m1 = cx.members(2, al.id, 1);
        auto m0 = cx.members(2, al.id, 0);
        sumL1a += long(m1.size());
        sumL0a += long(m0.size());
        for (const auto& mem : m1) sumsumL0t += long(cx.members(1, mem.cls, 0).size());
    }
    for (const auto& th : cx.levels[1]) sumL0t += long(cx.members(1, th.id, 0).size());
    long e = L0 - sumL0a + sumsumL0t - sumL0t;

    std::vector<long> R(6, 0);
    for (int sdeg = 1; sdeg <= 4; ++sdeg) R[sdeg] = assembly::corrected_R(cx, sdeg, p);

    CorrectedRanks out;
    out.euler = e;
    out.D.assign(4, 0);
    for (int sdeg = 1; sdeg <= 3; ++sdeg) {
        long v = binomial_l(3 * nu, sdeg + 3) + L2 * binomial_l(2 * nu, sdeg + 2) +
                 sumL1a * binomial_l(nu, sdeg + 1) + L1 * binomial_l(nu, sdeg + 2);
        out.D[sdeg] = v - R[sdeg] - R[sdeg + 1];
    }
    long d0 = 0;
    for (int j = 0; j <= 3; ++j) d0 += (j % 2 ? -1 : 1) * binomial_l(3 * nu, 3 - j);
    long c2 = 0;
    for (int j = 0; j <= 2; ++j) c2 += (j % 2 ? -1 : 1) * binomial_l(2 * nu, 2 - j);
    long c1 = 0;
    for (int j = 0; j <= 1; ++j) c1 += (j % 2 ? -1 : 1) * binomial_l(nu, 1 - j);
    long c1b = 0;
    for (int j = 0; j <= 2; ++j) c1b += (j % 2 ? -1 : 1) * binomial_l(nu, 2 - j);
    out.D[0] = d0 + L2 * c2 + sumL1a * c1 + L1 * c1b + e - R[1];
    return out;
}

/// --- extension resolution --------------------------------------------------

/// Input of the degree-0 extension problem
///   0 -> coker phi_1 -> H_0 -> ker phi_0 -> 0
/// when Torsion(ker phi'_0) is nontrivial.
struct ExtensionInput {
    FgAbelianGroup coker_phi1;   ///< exact integral group (free rank l, torsion tau_A)
    FgAbelianGroup ker_torsion;  ///< Torsion(ker phi'_0) = tau_C
    long ker_rank = 0;           ///< free rank m of ker phi_0
    std::map<Int, long> T0p;     ///< p -> rank of the p-torsion of H_0 (mod-p run)
    /// |coker_{Z/p^k} phi_1| with honest Z/p^k-level kernels.
    std::function<Int(const Int&, unsigned)> count;
};

struct ExtensionResult {
    FgAbelianGroup H0;
    bool partial = false;
    std::vector<std::string> trace;
};

namespace extension_detail {

/// Partitions of `total` into exactly `parts` parts, each in [1, maxpart],
/// weakly decreasing.
inline void partitions_rec(long total, int parts, long maxpart, std::vector<unsigned>& cur,
                           std::vector<std::vector<unsigned>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    long hi = std::min<long>(maxpart, total - (parts - 1));
    for (long v = hi; v >= 1; --v) {
        cur.push_back(unsigned(v));
        partitions_rec(total - v, parts - 1, v, cur, out);
        cur.pop_back();
    }
}

/// tau_A (exponent partition a) embeds in the candidate (partition b) iff the
/// conjugate partitions dominate pointwise: #{a_i >= e} <= #{b_i >= e}.
inline bool embeds(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    if (a.empty()) return true;
    unsigned amax = *std::max_element(a.begin(), a.end());
    for (unsigned e = 1; e <= amax; ++e) {
        int ca = 0, cb = 0;
        for (unsigned v : a) ca += (v >= e);
        for (unsigned v : b) cb += (v >= e);
        if (ca > cb) return false;
    }
    return true;
}

inline Int pow_int(const Int& p, unsigned k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
    return r;
}

}  // namespace extension_detail

/// Enumerates the candidate torsion groups consistent with the mod-p rank,
/// the order bookkeeping of the exact sequence, and the exponent bound, then
/// discriminates by exact element counts of coker_{Z/p^k} phi_1 for
/// k = 2, 3, ... If no unique candidate survives, flags PARTIAL.
inline ExtensionResult resolve_extension(const ExtensionInput& in) {
    using namespace extension_detail;
    ExtensionResult res;
    auto primaryA = in.coker_phi1.primary();
    auto primaryC = in.ker_torsion.primary();
    long l = in.coker_phi1.free_rank;
    long D0 = l + in.ker_rank;

    std::vector<Int> sel_divisors;  // prime powers of the resolved torsion
    for (auto& [p, cexps] : primaryC) {
        std::vector<unsigned> aexps;
        if (auto it = primaryA.find(p); it != primaryA.end()) aexps = it->second;
        long vA = 0, vC = 0;
        for (unsigned e : aexps) vA += e;
        for (unsigned e : cexps) vC += e;
        unsigned eA = aexps.empty() ? 0 : aexps.front();
        unsigned eC = cexps.empty() ? 0 : cexps.front();
        long rank = 0;
        if (auto it = in.T0p.find(p); it != in.T0p.end()) rank = it->second;
        else throw std::invalid_argument("resolve_extension: missing mod-p rank for p=" + p.get_str());

        std::vector<std::vector<unsigned>> cands;
        for (long j = 0; j <= vC; ++j) {
            std::vector<unsigned> cur;
            std::vector<std::vector<unsigned>> part;
            partitions_rec(vA + j, int(rank), long(eA + eC), cur, part);
            for (auto& lam : part)
                if (embeds(aexps, lam)) cands.push_back(lam);
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        {
            std::ostringstream os;
            os << "p=" << p.get_str() << ": " << cands.size() << " candidate(s) from rank="
               << rank << ", |tau_A|=p^" << vA << ", |tau_C|=p^" << vC;
            res.trace.push_back(os.str());
        }
        unsigned kmax = 1;
        for (auto& lam : cands)
            for (unsigned e : lam) kmax = std::max(kmax, e);
        for (unsigned k = 2; k <= kmax && cands.size() > 1; ++k) {
            Int m = pow_int(p, k);
            Int actual = in.count(p, k);
            std::vector<std::vector<unsigned>> keep;
            for (auto& lam : cands) {
                // predicted |coker_{Z/p^k}| = |T tensor Z/p^k| (p^k)^l / |tau_C tensor Z/p^k|
                Int tT = 1;
                for (unsigned e : lam) tT *= pow_int(p, std::min(e, k));
                Int num = tT;
                for (long i = 0; i < l; ++i) num *= m;
                Int den = in.ker_torsion.tensor_count(m);
                Int pred = num / den;
                if (pred * den == num && pred == actual) keep.push_back(lam);
                std::ostringstream os;
                os << "  k=" << k << " candidate T_p=(";
                for (size_t i = 0; i < lam.size(); ++i) os << (i ? "," : "") << lam[i];
                os << ") predicted " << pred.get_str() << " actual " << actual.get_str();
                res.trace.push_back(os.str());
            }
            if (!keep.empty()) cands = keep;
            else {
                res.trace.push_back("  no candidate matches the count; flagging PARTIAL");
                res.partial = true;
                break;
            }
        }
        if (cands.size() != 1) {
            res.partial = true;
            std::ostringstream os;
            os << "p=" << p.get_str() << ": " << cands.size() << " candidates remain";
            res.trace.push_back(os.str());
        }
        if (!cands.empty()) {
            for (unsigned e : cands.front()) sel_divisors.push_back(pow_int(p, e));
            std::ostringstream os;
            os << "p=" << p.get_str() << ": selected T_p = (";
            for (size_t i = 0; i < cands.front().size(); ++i)
                os << (i ? "," : "") << cands.front()[i];
            os << ")";
            res.trace.push_back(os.str());
        }
    }
    // primes of tau_A not interacting with tau_C pass through unchanged
    for (auto& [p, aexps] : primaryA) {
        if (primaryC.count(p)) continue;
        for (unsigned e : aexps) sel_divisors.push_back(extension_detail::pow_int(p, e));
    }
    res.H0 = FgAbelianGroup::from_divisors(int(D0), sel_divisors);
    return res;
}

/// --- codimension 3 driver --------------------------------------------------

inline HomologyResult codim3(const ProjectionScheme& s, const SingularComplex& cx,
                             std::vector<Int> primes = {Int(2), Int(3), Int(5), Int(7)}) {
    if (s.n != 3 || s.d != 3)
        throw std::invalid_argument("codim3: only the case n = d = 3 is covered");
    HomologyResult res;
    res.d = 3;
    res.n = 3;
    auto A = assembly::build_codim3(cx);
    res.checks = A.checks;

    // degree 3 and 2
    long ker_phi2p = A.phi2p.rows() - rank_q(A.phi2p);
    res.groups.assign(4, FgAbelianGroup());
    res.groups[3] = FgAbelianGroup::free(1);
    res.groups[2] = FgAbelianGroup::free(int(6 + ker_phi2p));

    // degree 1: coker phi'_2 + ker(phi'_1 + phi''_1)
    FgAbelianGroup coker_phi2p = cokernel(LatticeMap(A.phi2p));
    long ker1 = (A.phi1p.rows() - rank_q(A.phi1p)) + (A.phi1pp.rows() - rank_q(A.phi1pp));
    res.groups[1] = coker_phi2p.direct_sum(FgAbelianGroup::free(int(ker1)));

    // degree 0 pieces
    FgAbelianGroup coker1p = cokernel(LatticeMap(A.phi1p));
    FgAbelianGroup coker1pp = cokernel(LatticeMap(A.phi1pp));
    res.t1_prime = coker1p.torsion();
    res.t1_dblprime = coker1pp.torsion();
    PresentedMap ph0 = assembly::phi0_prime(A);
    if (!ph0.well_defined()) throw std::logic_error("codim3: phi'_0 ill-defined");
    auto ker0p = ph0.kernel();
    FgAbelianGroup ker0p_group = ker0p.group.group();
    res.t0_prime = ker0p_group.torsion();
    long ker0pp = A.phi0pp.rows() - rank_q(A.phi0pp);
    long m = ker0p_group.free_rank + ker0pp;
    FgAbelianGroup coker_phi1 = coker1p.direct_sum(coker1pp);
    long D0 = coker_phi1.free_rank + m;

    if (res.t0_prime->is_trivial()) {
        res.groups[0] = coker_phi1.direct_sum(FgAbelianGroup::free(int(m)));
        res.extension_trace.push_back("Torsion(ker phi'_0) trivial: H_0 = coker phi_1 + free");
    } else {
        // mod-p ranks feed the candidate enumeration
        for (const Int& q : res.t0_prime->torsion_primes())
            if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
        ExtensionInput in;
        in.coker_phi1 = coker_phi1;
        in.ker_torsion = *res.t0_prime;
        in.ker_rank = m;
        for (const Int& p : primes) {
            long D0p = corrected_ranks(cx, p).D[0];
            in.T0p[p] = D0p - D0;
        }
        in.count = [&A](const Int& p, unsigned k) {
            return assembly::phi1_count_mod(A, extension_detail::pow_int(p, k));
        };
        auto ext = resolve_extension(in);
        res.groups[0] = ext.H0;
        res.partial = ext.partial;
        res.extension_trace = ext.trace;
    }

    for (int k = 0; k <= 3; ++k) {
        res.D.push_back(res.groups[k].free_rank);
        res.euler += (k % 2 ? -1 : 1) * res.groups[k].free_rank;
    }
    if (res.D[0] != D0) throw std::logic_error("codim3: rank bookkeeping mismatch");
    return res;
}

/// --- cross-cutting operations ----------------------------------------------

/// T_k^p from the universal-coefficient recursion D_k^p = D_k + T_k^p + T_{k-1}^p.
inline std::vector<long> torsion_ranks_from(const std::vector<long>& D,
                                            const std::vector<long>& Dp) {
    if (D.size() != Dp.size())
        throw std::invalid_argument("torsion_ranks: length mismatch");
    std::vector<long> T(D.size(), 0);
    long prev = 0;
    for (size_t k = 0; k < D.size(); ++k) {
        T[k] = Dp[k] - D[k] - prev;
        if (T[k] < 0)
            throw std::logic_error("torsion_ranks: negative rank (inconsistent input)");
        prev = T[k];
    }
    return T;
}

struct BandReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Torsion can occur only in degrees s < (n-1)d/n; above the band the groups
/// are the explicit free ones Z^{binom(n+d, d-s)}.
inline BandReport torsion_band_check(const HomologyResult& r) {
    BandReport rep;
    for (int sdeg = 0; sdeg <= r.d; ++sdeg) {
        bool above_or_at = long(sdeg) * r.n >= long(r.n - 1) * r.d;
        bool strictly_above = long(sdeg) * r.n > long(r.n - 1) * r.d;
        if (above_or_at && !r.groups[sdeg].is_free()) {
            rep.ok = false;
            rep.violations.push_back("torsion in degree " + std::to_string(sdeg) +
                                     " at or above the band");
        }
        if (strictly_above) {
            long expect = binomial_l(r.n + r.d, r.d - sdeg);
            if (r.groups[sdeg] != FgAbelianGroup::free(int(expect))) {
                rep.ok = false;
                rep.violations.push_back("degree " + std::to_string(sdeg) +
                                         " differs from Z^" + std::to_string(expect));
            }
        }
    }
    if (!r.groups.empty() && r.groups[r.d] != FgAbelianGroup::free(1)) {
        rep.ok = false;
        rep.violations.push_back("top group H_d is not Z");
    }
    return rep;
}

/// K^0 = sum of H^{even} = sum of H_{d-2r}; K^1 = sum of H^{odd}. Proven for
/// physical dimension at most 3; larger d is refused (equivalence open).
inline std::pair<FgAbelianGroup, FgAbelianGroup> ktheory(const HomologyResult& r) {
    if (r.d > 3)
        throw std::invalid_argument("ktheory: equivalence open for d >= 4");
    FgAbelianGroup k0, k1;
    for (int i = 0; i <= r.d; ++i) {
        const FgAbelianGroup& h = r.groups[r.d - i];  // H^i = H_{d-i}
        if (i % 2 == 0) k0 = k0.direct_sum(h);
        else k1 = k1.direct_sum(h);
    }
    return {k0, k1};
}

/// Default prime set: 2, 3, 5, 7 plus every prime dividing an invariant
/// factor of the computed groups.
inline std::vector<Int> default_primes(const HomologyResult& r) {
    std::vector<Int> ps{Int(2), Int(3), Int(5), Int(7)};
    for (const auto& g : r.groups)
        for (const Int& p : g.torsion_primes())
            if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    return ps;
}

/// Full pipeline: generate is assumed done; dispatches on the codimension,
/// fills mod-p ranks, torsion ranks, K-theory and the corrected-rank column.
inline HomologyResult compute_homology(const ProjectionScheme& s, const SingularComplex& cx,
                                       std::vector<Int> primes = {}) {
    HomologyResult res;
    if (s.n == 1) res = codim1(s, cx);
    else if (s.n == 2) res = codim2(s, cx);
    else if (s.n == 3) res = codim3(s, cx);
    else throw std::invalid_argument("compute_homology: codimension > 3 not covered");

    if (primes.empty()) primes = default_primes(res);
    for (const Int& p : primes) {
        std::vector<long> Dp;
        if (s.n == 1) Dp = res.D;
        else if (s.n == 2) Dp = codim2_modp(cx, p);
        else Dp = corrected_ranks(cx, p).D;
        res.torsion_ranks[p] = torsion_ranks_from(res.D, Dp);
        res.modp_D[p] = std::move(Dp);
    }
    if (s.n == 3) {
        auto cr = corrected_ranks(cx);
        res.corrected_D = cr.D;
        res.corrected_euler = cr.euler;
        if (*res.corrected_D != res.D)
            throw std::logic_error("codim3: corrected ranks disagree with the assembly");
        if (*res.corrected_euler != res.euler)
            throw std::logic_error("codim3: Euler characteristic mismatch");
    }
    if (s.d <= 3) res.ktheory = ktheory(res);
    return res;
}

}  // namespace tilehom
