#pragma once

#include "tilehom/scheme.hpp"

namespace tilehom {
namespace catalog_detail {

/// Star vector e_k of the 2m-gonal star in the basis (e_0, e_1), where
/// zeta = exp(i pi / m) satisfies zeta^2 = t zeta - 1 and t = 2 cos(pi/m)
/// generates the coordinate field. Rotation: (a, b) -> (-b, a + t b).
inline FVec star2d(const NumberField& F, int k) {
    FElem t = F.generator();
    FVec v{F.one(), F.zero()};  // e_0
    for (int i = 0; i < k; ++i) {
        FElem a = v[0], b = v[1];
        v[0] = F.neg(b);
        v[1] = F.add(a, F.mul(t, b));
    }
    return v;
}

inline Hyperplane line_through(const NumberField& F, const FVec& dir, const FVec& off) {
    return Hyperplane{{dir}, off};
}

/// Dihedral 2m-gonal scheme skeleton: lattice columns e_0 .. e_{rank-1}.
inline ProjectionScheme dihedral_scheme(const std::string& name, int m,
                                        const std::vector<Int>& min_poly, int rank) {
    ProjectionScheme s;
    s.name = name;
    s.n = 2;
    s.d = rank - 2;
    s.field = NumberField(min_poly);
    for (int i = 0; i < rank; ++i) s.lattice.push_back(star2d(s.field, i));
    // point group: rotation by pi/m (companion action on the star) and the
    // reflection fixing e_0 (star conjugation e_k -> e_{-k})
    IntMat rot(rank, rank);
    for (int i = 0; i + 1 < rank; ++i) rot(i, i + 1) = 1;
    // e_{rank} in terms of the basis: from the minimal polynomial of zeta,
    // recovered numerically from star2d via flatten-independence
    // (solve star2d(rank) = sum c_i e_i over Q)
    {
        NumberField& F = s.field;
        auto flat = F.flatten(star2d(F, rank));
        auto sol = solve_left_rat(s.flattened(), flat);
        if (sol) {
            bool integral = true;
            for (const Rat& c : *sol) integral &= (c.get_den() == 1);
            if (integral) {
                for (int i = 0; i < rank; ++i) rot(rank - 1, i) = (*sol)[i].get_num();
                s.point_group.push_back(rot);
            }
        }
    }
    return s;
}

inline FgAbelianGroup Zn(int r) { return FgAbelianGroup::free(r); }
inline FgAbelianGroup grp(int r, std::vector<int> primary) {
    std::vector<Int> divs;
    for (int v : primary) divs.push_back(v);
    return FgAbelianGroup::from_divisors(r, divs);
}

inline ExpectedHomology table_row(std::vector<FgAbelianGroup> groups) {
    ExpectedHomology e;
    e.groups = std::move(groups);
    e.groups_known = true;
    return e;
}

inline FVec ico_vec(const NumberField& F, std::initializer_list<std::pair<int, int>> coords) {
    // each coordinate given as a + b*tau
    FVec v;
    for (auto [a, b] : coords) {
        FElem e = F.zero();
        e[0] = a;
        e[1] = b;
        v.push_back(e);
    }
    return v;
}

/// Plane through the origin with the given normal, in the Euclidean
/// coordinates of the icosahedral schemes.
inline Hyperplane plane_normal(const NumberField& F, const FVec& normal) {
    // directions: F-kernel of the 1 x 3 system sum_j normal_j x_j = 0
    std::vector<FVec> rows(3, fvec_zero(F, 1));
    for (int j = 0; j < 3; ++j) rows[j][0] = normal[j];
    auto ker = FSpace::left_kernel(F, rows, 1);
    Hyperplane h;
    for (auto& coeffs : ker) {
        FVec dir(coeffs.begin(), coeffs.end());
        h.directions.push_back(dir);
    }
    h.offset = fvec_zero(F, 3);
    return h;
}

inline std::vector<FVec> icosahedral_star(const NumberField& F) {
    return {
        ico_vec(F, {{0, 0}, {1, 0}, {0, 1}}),    // (0, 1, tau)
        ico_vec(F, {{0, 0}, {-1, 0}, {0, 1}}),   // (0, -1, tau)
        ico_vec(F, {{1, 0}, {0, 1}, {0, 0}}),    // (1, tau, 0)
        ico_vec(F, {{-1, 0}, {0, 1}, {0, 0}}),   // (-1, tau, 0)
        ico_vec(F, {{0, 1}, {0, 0}, {1, 0}}),    // (tau, 0, 1)
        ico_vec(F, {{0, 1}, {0, 0}, {-1, 0}}),   // (tau, 0, -1)
    };
}

/// 15 two-fold axis directions: coordinate axes and cyclic (s1(tau-1), s2 tau, 1).
inline std::vector<FVec> twofold_normals(const NumberField& F) {
    std::vector<FVec> out;
    auto mk = [&](std::initializer_list<std::pair<int, int>> c) { return ico_vec(F, c); };
    out.push_back(mk({{1, 0}, {0, 0}, {0, 0}}));
    out.push_back(mk({{0, 0}, {1, 0}, {0, 0}}));
    out.push_back(mk({{0, 0}, {0, 0}, {1, 0}}));
    // base (tau-1, tau, 1) with independent signs on the first two entries
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            std::pair<int, int> a{-s1, s1}, b{0, s2}, c{1, 0};
            std::vector<std::pair<int, int>> v{a, b, c};
            for (int rotc = 0; rotc < 3; ++rotc) {
                out.push_back(ico_vec(F, {v[rotc % 3], v[(rotc + 1) % 3], v[(rotc + 2) % 3]}));
            }
        }
    return out;
}

/// 6 five-fold axis directions (the vertex star itself).
inline std::vector<FVec> fivefold_normals(const NumberField& F) { return icosahedral_star(F); }

/// 10 three-fold axis directions: (±1,1,1)-type and cyclic (±1, 0, tau^2).
inline std::vector<FVec> threefold_normals(const NumberField& F) {
    std::vector<FVec> out;
    out.push_back(ico_vec(F, {{1, 0}, {1, 0}, {1, 0}}));
    out.push_back(ico_vec(F, {{-1, 0}, {1, 0}, {1, 0}}));
    out.push_back(ico_vec(F, {{1, 0}, {-1, 0}, {1, 0}}));
    out.push_back(ico_vec(F, {{1, 0}, {1, 0}, {-1, 0}}));
    for (int s : {1, -1}) {
        std::pair<int, int> a{s, 0}, b{0, 0}, c{1, 1};  // (s, 0, tau^2 = 1 + tau)
        std::vector<std::pair<int, int>> v{a, b, c};
        for (int rotc = 0; rotc < 3; ++rotc)
            out.push_back(ico_vec(F, {v[rotc % 3], v[(rotc + 1) % 3], v[(rotc + 2) % 3]}));
    }
    return out;
}

inline ProjectionScheme icosahedral_scheme(const std::string& name, bool f_centered,
                                           const std::vector<FVec>& normals) {
    ProjectionScheme s;
    s.name = name;
    s.n = 3;
    s.d = 3;
    s.field = NumberField({Int(-1), Int(-1), Int(1)});  // x^2 - x - 1 (tau)
    auto star = icosahedral_star(s.field);
    if (!f_centered) {
        s.lattice = star;
    } else {
        // even-coefficient-sum sublattice of the primitive star lattice
        IntMat B{{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0)},
                 {Int(1), Int(-1), Int(0), Int(0), Int(0), Int(0)},
                 {Int(0), Int(1), Int(1), Int(0), Int(0), Int(0)},
                 {Int(0), Int(0), Int(1), Int(1), Int(0), Int(0)},
                 {Int(0), Int(0), Int(0), Int(1), Int(1), Int(0)},
                 {Int(0), Int(0), Int(0), Int(0), Int(1), Int(1)}};
        for (int i = 0; i < 6; ++i) {
            FVec v = fvec_zero(s.field, 3);
            for (int j = 0; j < 6; ++j) {
                if (B(i, j) == 0) continue;
                v = fvec_add(s.field, v,
                             fvec_scale(s.field, s.field.from_rational(Rat(B(i, j))), star[j]));
            }
            s.lattice.push_back(v);
        }
    }
    for (const auto& nrm : normals) s.hyperplanes.push_back(plane_normal(s.field, nrm));
    return s;
}

/// Lattice automorphisms of the star lattice that induce F-linear maps of V
/// and permute the hyperplane directions; found by searching signed images
/// of the first three star columns. Returns up to `limit` matrices.
inline std::vector<IntMat> star_symmetries(const ProjectionScheme& s, size_t limit = 4) {
    const NumberField& F = s.field;
    int rank = s.rank();
    std::vector<IntMat> found;
    // candidate images: +-(lattice columns); build P rows for e_0..e_2, solve
    // the induced map from all rank rows afterwards via ProjectionScheme::induced_map
    std::vector<std::vector<Int>> cands;
    for (int j = 0; j < rank; ++j)
        for (int sgn : {1, -1}) {
            std::vector<Int> row(rank, 0);
            row[j] = sgn;
            cands.push_back(row);
        }
    // search assignments of the first min(rank,3) basis rows; derive the rest by
    // requiring the induced F-map to exist
    std::vector<int> pick(3, 0);
    for (size_t i0 = 0; i0 < cands.size() && found.size() < limit; ++i0)
        for (size_t i1 = 0; i1 < cands.size() && found.size() < limit; ++i1) {
            if (i1 / 2 == i0 / 2) continue;
            for (size_t i2 = 0; i2 < cands.size() && found.size() < limit; ++i2) {
                if (i2 / 2 == i0 / 2 || i2 / 2 == i1 / 2) continue;
                // determine A from rows 0..2 if independent, then images of the rest
                std::vector<FVec> src{s.lattice[0], s.lattice[1], s.lattice[2]};
                FSpace span(F, s.n);
                for (auto& v : src) span.insert(v);
                if (span.rank() != s.n) return found;  // star degenerate; give up
                auto img = [&](const std::vector<Int>& c) {
                    FVec v = fvec_zero(F, s.n);
                    for (int j = 0; j < rank; ++j)
                        if (c[j] != 0)
                            v = fvec_add(F, v, fvec_scale(F, F.from_rational(Rat(c[j])), s.lattice[j]));
                    return v;
                };
                FVec t0 = img(cands[i0]), t1 = img(cands[i1]), t2 = img(cands[i2]);
                // A determined by src -> t; check every lattice column maps to +-column
                IntMat P(rank, rank);
                P.set_row(0, cands[i0]);
                P.set_row(1, cands[i1]);
                P.set_row(2, cands[i2]);
                bool ok = true;
                for (int r = 3; r < rank && ok; ++r) {
                    // solve s.lattice[r] = x0 src0 + x1 src1 + x2 src2 over F,
                    // then image must be x0 t0 + x1 t1 + x2 t2 = +- some column
                    auto sol = FSpace::solve(F, src, s.lattice[r], s.n);
                    if (!sol) { ok = false; break; }
                    FVec it = fvec_zero(F, s.n);
                    it = fvec_add(F, it, fvec_scale(F, (*sol)[0], t0));
                    it = fvec_add(F, it, fvec_scale(F, (*sol)[1], t1));
                    it = fvec_add(F, it, fvec_scale(F, (*sol)[2], t2));
                    bool matched = false;
                    for (size_t c = 0; c < cands.size() && !matched; ++c) {
                        if (img(cands[c]) == it) {
                            P.set_row(r, cands[c]);
                            matched = true;
                        }
                    }
                    ok = matched;
                }
                if (!ok || abs(det(P)) != 1) continue;
                bool identity = P == IntMat::identity(rank);
                if (!identity) found.push_back(P);
            }
        }
    return found;
}

}  // namespace catalog_detail

inline ProjectionScheme generalized_penrose(const Rat& gamma);

/// The built-in schemes: the seven codimension-2 rows of the published
/// homology table, the four icosahedral rows, and the two prose variants
/// (octagonal b-lines, heptagonal b-lines). Built once, cached.
inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
    using namespace catalog_detail;
    std::vector<CatalogEntry> out;

    const std::vector<Int> poly_tau{Int(-1), Int(-1), Int(1)};   // x^2 - x - 1
    const std::vector<Int> poly_sqrt2{Int(-2), Int(0), Int(1)};  // x^2 - 2
    const std::vector<Int> poly_sqrt3{Int(-3), Int(0), Int(1)};  // x^2 - 3
    const std::vector<Int> poly_hept{Int(1), Int(-2), Int(-1), Int(1)};  // x^3 - x^2 - 2x + 1

    auto a_lines = [](ProjectionScheme& s, int m) {
        for (int i = 0; i < m; ++i)
            s.hyperplanes.push_back(line_through(s.field, star2d(s.field, i), fvec_zero(s.field, 2)));
    };
    auto b_lines = [](ProjectionScheme& s, int m) {
        for (int i = 0; i < m; ++i) {
            FVec dir = fvec_add(s.field, star2d(s.field, i), star2d(s.field, i + 1));
            s.hyperplanes.push_back(line_through(s.field, dir, fvec_zero(s.field, 2)));
        }
    };

    {  // Ammann-Beenker, undecorated: (V, Gamma_8, W_8^a)
        auto s = dihedral_scheme("ammann-beenker", 4, poly_sqrt2, 4);
        a_lines(s, 4);
        out.push_back({s, table_row({Zn(9), Zn(5), Zn(1)})});
    }
    {  // Ammann-Beenker, decorated: W_8^a united with W_8^b
        auto s = dihedral_scheme("ammann-beenker-decorated", 4, poly_sqrt2, 4);
        a_lines(s, 4);
        b_lines(s, 4);
        out.push_back({s, table_row({Zn(23), Zn(9), Zn(1)})});
    }
    {  // Penrose: (V, Gamma_10, W_10^a)
        auto s = dihedral_scheme("penrose", 5, poly_tau, 4);
        a_lines(s, 5);
        out.push_back({s, table_row({Zn(8), Zn(5), Zn(1)})});
    }
    {  // generalized Penrose, gamma = 1/4
        auto s = generalized_penrose(Rat(1, 4));
        out.push_back({s, table_row({Zn(34), Zn(10), Zn(1)})});
    }
    {  // TTT: (V, Gamma_10, W_10^b)
        auto s = dihedral_scheme("ttt", 5, poly_tau, 4);
        b_lines(s, 5);
        out.push_back({s, table_row({grp(24, {5, 5}), Zn(5), Zn(1)})});
    }
    {  // Socolar, undecorated: (V, Gamma_12, W_12^a)
        auto s = dihedral_scheme("socolar", 6, poly_sqrt3, 4);
        a_lines(s, 6);
        out.push_back({s, table_row({Zn(28), Zn(7), Zn(1)})});
    }
    {  // Socolar, decorated
        auto s = dihedral_scheme("socolar-decorated", 6, poly_sqrt3, 4);
        a_lines(s, 6);
        b_lines(s, 6);
        out.push_back({s, table_row({Zn(59), Zn(12), Zn(1)})});
    }
    {  // octagonal b-lines: Z_2 torsion in H_0
        auto s = dihedral_scheme("octagonal-b", 4, poly_sqrt2, 4);
        b_lines(s, 4);
        ExpectedHomology e;
        e.torsion_h0 = grp(0, {2});
        out.push_back({s, e});
    }
    {  // heptagonal b-lines, d = 4: Z_7^4 in H_0 and Z_7^3 in H_1
        auto s = dihedral_scheme("heptagonal-b", 7, poly_hept, 6);
        b_lines(s, 7);
        ExpectedHomology e;
        e.torsion_h0 = grp(0, {7, 7, 7, 7});
        e.torsion_h1 = grp(0, {7, 7, 7});
        out.push_back({s, e});
    }
    {  // Ammann-Kramer: (V, Gamma_P, W^2)
        auto s = icosahedral_scheme("ammann-kramer", false, twofold_normals(NumberField(poly_tau)));
        s.point_group = star_symmetries(s, 2);
        ExpectedHomology e = table_row({grp(181, {2}), grp(72, {2}), Zn(12), Zn(1)});
        e.t1_prime = grp(0, {});
        e.t1_dblprime = grp(0, {2});
        e.t0_prime = grp(0, {});
        out.push_back({s, e});
    }
    {  // dual canonical D6: (V, Gamma_F, W^2)
        auto s = icosahedral_scheme("dual-d6", true, twofold_normals(NumberField(poly_tau)));
        ExpectedHomology e = table_row({grp(331, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2,
                                                  2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4}),
                                        grp(102, {2, 2, 2, 2, 4}), Zn(12), Zn(1)});
        e.t1_prime = grp(0, {2, 2, 2, 2, 2, 2});
        e.t1_dblprime = grp(0, {2, 2, 2, 2, 2, 2, 2});
        e.t0_prime = grp(0, std::vector<int>(15, 2));
        out.push_back({s, e});
    }
    {  // Danzer: (V, Gamma_F, W^5)
        auto s = icosahedral_scheme("danzer", true, fivefold_normals(NumberField(poly_tau)));
        ExpectedHomology e = table_row({grp(20, {2}), Zn(16), Zn(7), Zn(1)});
        e.t1_prime = grp(0, {});
        e.t1_dblprime = grp(0, {2});
        e.t0_prime = grp(0, {});
        out.push_back({s, e});
    }
    {  // canonical D6: (V, Gamma_F, W^5 united with W^3)
        NumberField Ftau(poly_tau);
        auto normals = fivefold_normals(Ftau);
        auto three = threefold_normals(Ftau);
        normals.insert(normals.end(), three.begin(), three.end());
        auto s = icosahedral_scheme("canonical-d6", true, normals);
        ExpectedHomology e = table_row({grp(205, {2, 2}), Zn(72), Zn(7), Zn(1)});
        e.t1_prime = grp(0, {});
        e.t1_dblprime = grp(0, {2});
        e.t0_prime = grp(0, {});
        out.push_back({s, e});
    }

    return out;
    }();
    return entries;
}

/// Generalized Penrose scheme for a rational shift parameter gamma.
/// Line families: for i = 0..4, lines parallel to e_{2i} through
/// -gamma e_{2i+1} and through gamma (e_{2i+1} + e_{2i+2}).
inline ProjectionScheme generalized_penrose(const Rat& gamma) {
    using namespace catalog_detail;
    auto s = dihedral_scheme("generalized-penrose", 5, {Int(-1), Int(-1), Int(1)}, 4);
    // only fivefold symmetry: rotation by 2 pi / 5 = square of the stored rotation
    if (!s.point_group.empty()) {
        IntMat r = s.point_group[0];
        s.point_group.clear();
        s.point_group.push_back(r * r);
    }
    NumberField& F = s.field;
    FElem g = F.from_rational(gamma);
    for (int i = 0; i < 5; ++i) {
        FVec dir = star2d(F, 2 * i);
        FVec off1 = fvec_scale(F, F.neg(g), star2d(F, 2 * i + 1));
        FVec off2 = fvec_scale(F, g, fvec_add(F, star2d(F, 2 * i + 1), star2d(F, 2 * i + 2)));
        s.hyperplanes.push_back(line_through(F, dir, off1));
        s.hyperplanes.push_back(line_through(F, dir, off2));
    }
    return s;
}

inline std::optional<CatalogEntry> catalog_find(const std::string& name) {
    for (auto& e : catalog())
        if (e.scheme.name == name) return e;
    return std::nullopt;
}

}  // namespace tilehom
