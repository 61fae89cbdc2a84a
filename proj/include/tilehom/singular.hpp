#pragma once

#include <map>
#include <sstream>

#include "tilehom/lattice.hpp"
#include "tilehom/scheme.hpp"

namespace tilehom {

struct OrbitCapExceeded : std::runtime_error {
    explicit OrbitCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A Gamma-orbit class of singular r-spaces: canonical direction space,
/// canonical offset representative, and the stabilizer sublattice
/// Gamma^Theta = {x in Z^(n+d) : pi(x) in span(directions)}.
struct SingularOrbit {
    int r = 0;
    FSpace dirs;
    FVec offset;               ///< canonical representative point
    std::vector<Rat> residue;  ///< canonical offset class (flattened), the dedupe key
    Lattice stabilizer;
    int id = -1;

    SingularOrbit(const NumberField& F, int n) : dirs(F, n) {}
};

/// One member of I_r^Theta: the global class at level r and a lattice shift
/// g with rep(cls) + pi(g) contained in the container representative.
struct IncidenceEntry {
    int cls;
    std::vector<Int> shift;
};

/// Flattening context for one scheme: all geometric decision procedures go
/// through Q-linear algebra here.
class SchemeContext {
public:
    explicit SchemeContext(const ProjectionScheme& s) : s_(&s), P_(s.flattened()) {
        ng_ = s.n * s.field.degree();
    }

    const ProjectionScheme& scheme() const { return *s_; }
    int ng() const { return ng_; }
    const RatMat& P() const { return P_; }

    /// Q-echelon rows spanning the flattened direction space of an F-space.
    RatMat flat_space(const FSpace& dirs) const {
        const NumberField& F = s_->field;
        int g = F.degree();
        std::vector<std::vector<Rat>> rows;
        for (const auto& u : dirs.basis()) {
            FVec pw = u;
            for (int j = 0; j < g; ++j) {
                rows.push_back(F.flatten(pw));
                if (j + 1 < g) pw = fvec_scale(F, F.generator(), pw);
            }
        }
        RatMat m(int(rows.size()), ng_);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < ng_; ++j) m(int(i), j) = rows[i][j];
        return rref(m);
    }

    /// Gamma^Theta for the direction space: integer kernel of P composed with
    /// the quotient by the flattened direction space. Saturated by construction.
    Lattice stabilizer(const FSpace& dirs) const {
        RatMat U = flat_space(dirs);
        RatMat Pbar = reduce_rows_mod(P_, U);
        auto [M, den] = clear_denominators(Pbar);
        return Lattice(s_->rank(), kernel_basis(M));
    }

    /// Canonical residue of `point` modulo span(dirs) + pi(Gamma), and the

    /// canonical representative point (the unflattened residue).
    std::pair<std::vector<Rat>, FVec> canonical_offset(const FSpace& dirs, const FVec& point) const {
        RatMat U = flat_space(dirs);
        std::vector<Rat> q = reduce_vec_mod(s_->field.flatten(point), U);
        RatMat Pbar = reduce_rows_mod(P_, U);
        auto [M, den] = clear_denominators(Pbar);
        IntMat H = hnf_basis(M);
        // reduce q against H / den
        for (int i = 0; i < H.rows(); ++i) {
            int c = -1;
            for (int j = 0; j < H.cols(); ++j)
                if (H(i, j) != 0) { c = j; break; }
            if (c < 0) continue;
            // z = floor(q[c] * den / H(i,c))
            Rat t = q[c] * Rat(den) / Rat(H(i, c));
            Int z = fdiv(t.get_num(), t.get_den());
            if (z != 0)
                for (int j = 0; j < ng_; ++j) q[j] -= Rat(z) * Rat(H(i, j)) / Rat(den);
        }
        return {q, s_->unflatten(q)};
    }

    /// One integer solution of pi(gamma) = target (mod span(dirs)), if any.
    std::optional<std::vector<Int>> solve_shift(const FSpace& dirs,
                                                const std::vector<Rat>& target) const {
        RatMat U = flat_space(dirs);
        RatMat Pbar = reduce_rows_mod(P_, U);
        std::vector<Rat> t = reduce_vec_mod(target, U);
        // gamma * Pbar = t over Z: clear denominators jointly
        Int den = 1;
        for (int i = 0; i < Pbar.rows(); ++i)
            for (int j = 0; j < Pbar.cols(); ++j) den = lcm(den, Pbar(i, j).get_den());
        for (const Rat& v : t) den = lcm(den, v.get_den());
        IntMat M(Pbar.rows(), Pbar.cols());
        for (int i = 0; i < Pbar.rows(); ++i)
            for (int j = 0; j < Pbar.cols(); ++j)
                M(i, j) = Pbar(i, j).get_num() * divexact(den, Pbar(i, j).get_den());
        std::vector<Int> b(t.size());
        for (size_t j = 0; j < t.size(); ++j) b[j] = t[j].get_num() * divexact(den, t[j].get_den());
        return solve_left(M, b);
    }

    /// Canonical coset representative: v reduced against the HNF basis rows.
    static std::vector<Int> reduce_mod_lattice(std::vector<Int> v, const Lattice& L) {
        const IntMat& B = L.basis();
        for (int i = 0; i < B.rows(); ++i) {
            int c = -1;
            for (int j = 0; j < B.cols(); ++j)
                if (B(i, j) != 0) { c = j; break; }
            if (c < 0) continue;
            Int z = fdiv(v[c], B(i, c));
            if (z != 0)
                for (int j = 0; j < B.cols(); ++j) v[j] -= z * B(i, j);
        }
        return v;
    }

    static RatMat rref(RatMat a) {
        int rank = 0;
        for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
            int piv = -1;
            for (int r = rank; r < a.rows(); ++r)
                if (a(r, c) != 0) { piv = r; break; }
            if (piv < 0) continue;
            a.swap_rows(piv, rank);
            Rat inv = a(rank, c);
            for (int j = 0; j < a.cols(); ++j) a(rank, j) /= inv;
            for (int r = 0; r < a.rows(); ++r) {
                if (r == rank || a(r, c) == 0) continue;
                Rat f = a(r, c);
                for (int j = 0; j < a.cols(); ++j) a(r, j) -= f * a(rank, j);
            }
            ++rank;
        }
        // drop zero rows
        RatMat out(rank, a.cols());
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        return out;
    }

    static std::vector<Rat> reduce_vec_mod(std::vector<Rat> v, const RatMat& echelon) {
        for (int i = 0; i < echelon.rows(); ++i) {
            int c = -1;
            for (int j = 0; j < echelon.cols(); ++j)
                if (echelon(i, j) != 0) { c = j; break; }
            if (c < 0) continue;
            Rat f = v[c] / echelon(i, c);
            if (f == 0) continue;
            for (int j = 0; j < echelon.cols(); ++j) v[j] -= f * echelon(i, j);
        }
        return v;
    }

    static RatMat reduce_rows_mod(const RatMat& m, const RatMat& echelon) {
        RatMat out = m;
        for (int i = 0; i < m.rows(); ++i) {
            auto v = reduce_vec_mod(out.row(i), echelon);
            for (int j = 0; j < m.cols(); ++j) out(i, j) = v[j];
        }
        return out;
    }

private:
    const ProjectionScheme* s_;
    RatMat P_;
    int ng_;
};

namespace singular_detail {

struct OrbitKey {
    int r;
    std::vector<Rat> dirs_flat;  ///< concatenated echelon rows of the direction space
    std::vector<Rat> residue;

    bool operator<(const OrbitKey& o) const {
        if (r != o.r) return r < o.r;
        if (dirs_flat != o.dirs_flat) return dirs_flat < o.dirs_flat;
        return residue < o.residue;
    }
    bool operator==(const OrbitKey& o) const {
        return r == o.r && dirs_flat == o.dirs_flat && residue == o.residue;
    }
};

inline OrbitKey key_of(const SchemeContext& ctx, const FSpace& dirs,
                       const std::vector<Rat>& residue) {
    OrbitKey k;
    k.r = dirs.rank();
    const NumberField& F = ctx.scheme().field;
    for (const auto& row : dirs.basis()) {
        auto f = F.flatten(row);
        k.dirs_flat.insert(k.dirs_flat.end(), f.begin(), f.end());
    }
    k.residue = residue;
    return k;
}

}  // namespace singular_detail

/// Makes a canonical SingularOrbit from any representative affine subspace.
inline SingularOrbit canonicalize_orbit(const SchemeContext& ctx, const FSpace& dirs,
                                        const FVec& point) {
    const ProjectionScheme& s = ctx.scheme();
    SingularOrbit o(s.field, s.n);
    o.r = dirs.rank();
    o.dirs = dirs;
    auto [residue, rep] = ctx.canonical_offset(dirs, point);
    o.residue = std::move(residue);
    o.offset = std::move(rep);
    o.stabilizer = ctx.stabilizer(dirs);
    return o;
}

/// True iff the two orbits have the same direction space and their offsets
/// differ by an element of pi(Gamma) + direction space.
inline bool orbit_equal(const SchemeContext& ctx, const SingularOrbit& a, const SingularOrbit& b) {
    using singular_detail::key_of;
    if (!(a.dirs == b.dirs)) return false;
    return key_of(ctx, a.dirs, a.residue) == key_of(ctx, b.dirs, b.residue);
}

/// All translation-orbit classes arising as intersections of translates of
/// a and b, each of dimension dim(U_a intersect U_b); parallel or nested
/// direction spaces yield nothing. Complete and duplicate-free.
inline std::vector<SingularOrbit> intersect_orbits(const SchemeContext& ctx,
                                                   const SingularOrbit& a, const SingularOrbit& b,
                                                   long max_orbits = 100000) {
    const ProjectionScheme& s = ctx.scheme();
    const NumberField& F = s.field;
    std::vector<SingularOrbit> out;
    if (a.dirs.contains_space(b.dirs) || b.dirs.contains_space(a.dirs)) return out;

    FSpace sum = a.dirs.sum(b.dirs);
    Lattice T = ctx.stabilizer(sum);
    Lattice S = a.stabilizer.sum(b.stabilizer);
    if (S.rank() < T.rank())
        throw OrbitCapExceeded("intersection family has infinitely many orbit classes (scheme "
                               "outside the finitely generated class)");
    // solvability: pi(gamma) = a.offset - b.offset (mod U_a + U_b)
    auto fa = F.flatten(a.offset), fb = F.flatten(b.offset);
    std::vector<Rat> target(fa.size());
    for (size_t i = 0; i < fa.size(); ++i) target[i] = fa[i] - fb[i];
    auto gamma0 = ctx.solve_shift(sum, target);
    if (!gamma0) return out;

    // coset representatives of T / S
    IntMat rel(S.rank(), T.rank());
    for (int i = 0; i < S.rank(); ++i) rel.set_row(i, T.coordinates(S.basis().row(i)));
    SnfResult sn = snf(rel);
    Int index = 1;
    for (const Int& d : sn.factors) index *= d;
    if (index > max_orbits)
        throw OrbitCapExceeded("orbit coset index exceeds cap: " + index.get_str());
    // cosets of Z^k / rowspan(rel): x = t * right^{-1}, t in prod [0, d_i)
    IntMat rinv(T.rank(), T.rank());
    for (int i = 0; i < T.rank(); ++i) {
        std::vector<Int> e(T.rank(), 0);
        e[i] = 1;
        auto sol = solve_left(sn.right, e);
        rinv.set_row(i, *sol);
    }
    std::map<singular_detail::OrbitKey, SingularOrbit> found;
    std::vector<Int> tuple(sn.factors.size(), 0);
    auto emit = [&](const std::vector<Int>& tup) {
        // coset rep in T-coords, then in Z^(n+d)
        std::vector<Int> x(T.rank(), 0);
        for (size_t i = 0; i < tup.size(); ++i)
            for (int j = 0; j < T.rank(); ++j) x[j] += tup[i] * rinv(int(i), j);
        std::vector<Int> gamma = *gamma0;
        for (int i = 0; i < T.rank(); ++i)
            for (int j = 0; j < s.rank(); ++j) gamma[j] += x[i] * T.basis()(i, j);
        // translate b by pi(gamma) and intersect with a
        FVec shift = s.project_point(gamma);
        AffineSubspace A(F, a.dirs, a.offset);
        AffineSubspace B(F, b.dirs, fvec_add(F, b.offset, shift));
        auto meet = AffineSubspace::intersect(F, A, B);
        if (!meet) throw std::logic_error("intersect_orbits: enumerated translate misses");
        SingularOrbit o = canonicalize_orbit(ctx, meet->dirs, meet->offset);
        found.emplace(singular_detail::key_of(ctx, o.dirs, o.residue), std::move(o));
    };
    // iterate the product of factor ranges
    if (sn.factors.empty()) {
        emit({});
    } else {
        std::vector<Int> tup(sn.factors.size(), 0);
        while (true) {
            emit(tup);
            int i = int(tup.size()) - 1;
            while (i >= 0) {
                tup[i] += 1;
                if (tup[i] < sn.factors[i]) break;
                tup[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
    }
    for (auto& [k, o] : found) out.push_back(std::move(o));
    return out;
}

/// The full combinatorics of singular subspaces of a scheme.
struct SingularComplex {
    ProjectionScheme scheme;
    std::vector<std::vector<SingularOrbit>> levels;  ///< levels[r], r = 0..n-1
    /// incidence[k][i][r] = members of I_r^Theta for container (k, i), r < k.
    std::vector<std::vector<std::vector<std::vector<IncidenceEntry>>>> incidence;

    long count(int r) const { return long(levels[r].size()); }
    const std::vector<IncidenceEntry>& members(int k, int i, int r) const {
        return incidence[k][i][r];
    }

    /// Debug dump for regression diffing: orbits, stabilizers, incidences.
    std::string dump() const {
        std::ostringstream os;
        for (int r = int(levels.size()) - 1; r >= 0; --r) {
            os << "level " << r << ": " << levels[r].size() << " orbit(s)\n";
            for (const auto& o : levels[r]) {
                os << "  [" << o.id << "] stab rank " << o.stabilizer.rank() << " basis ";
                os << o.stabilizer.basis() << " offset (";
                for (size_t j = 0; j < o.residue.size(); ++j)
                    os << (j ? "," : "") << rat_to_string(o.residue[j]);
                os << ")\n";
            }
        }
        for (size_t k = 0; k < incidence.size(); ++k)
            for (size_t i = 0; i < incidence[k].size(); ++i)
                for (size_t r = 0; r < incidence[k][i].size(); ++r) {
                    if (incidence[k][i][r].empty()) continue;
                    os << "I_" << r << "^(" << k << "," << i << "): ";
                    for (const auto& e : incidence[k][i][r]) os << e.cls << " ";
                    os << "\n";
                }
        return os.str();
    }
};

/// Closes the hyperplane family under intersection down to dimension 0,
/// canonicalizes and deduplicates at every level, and fills incidences.
inline SingularComplex generate(const ProjectionScheme& s, long max_orbits = 100000) {
    s.validate();
    SchemeContext ctx(s);
    const NumberField& F = s.field;
    int n = s.n;
    SingularComplex cx;
    cx.scheme = s;
    cx.levels.assign(n, {});

    std::map<singular_detail::OrbitKey, SingularOrbit> byname[8];
    // hyperplane classes at level n-1
    for (const auto& h : s.hyperplanes) {
        FSpace dirs(F, n);
        for (const auto& v : h.directions) dirs.insert(v);
        SingularOrbit o = canonicalize_orbit(ctx, dirs, h.offset);
        byname[n - 1].emplace(singular_detail::key_of(ctx, o.dirs, o.residue), o);
    }
    // closure: intersect each class with the hyperplane classes
    std::vector<SingularOrbit> hyper;
    for (auto& [k, o] : byname[n - 1]) hyper.push_back(o);
    for (int r = n - 1; r >= 1; --r) {
        // iterate over a stable snapshot: classes at level r are final by now
        std::vector<SingularOrbit> current;
        for (auto& [k, o] : byname[r]) current.push_back(o);
        for (const auto& x : current)
            for (const auto& h : hyper) {
                if (h.dirs.contains_space(x.dirs)) continue;
                for (auto& o : intersect_orbits(ctx, x, h, max_orbits)) {
                    assert(o.r == r - 1);
                    byname[r - 1].emplace(singular_detail::key_of(ctx, o.dirs, o.residue), o);
                    if (long(byname[r - 1].size()) > max_orbits)
                        throw OrbitCapExceeded("orbit count exceeds cap at level " +
                                               std::to_string(r - 1));
                }
            }
    }
    for (int r = 0; r < n; ++r) {
        int id = 0;
        for (auto& [k, o] : byname[r]) {
            SingularOrbit oo = o;
            oo.id = id++;
            cx.levels[r].push_back(std::move(oo));
        }
    }

    // incidence: for each container and each lower class, at most one member
    // per global class (the shift solutions form a single stabilizer coset)
    cx.incidence.assign(n, {});
    for (int k = 1; k < n; ++k) {
        cx.incidence[k].assign(cx.levels[k].size(), {});
        for (size_t i = 0; i < cx.levels[k].size(); ++i) {
            const SingularOrbit& cont = cx.levels[k][i];
            cx.incidence[k][i].assign(k, {});
            auto fc = F.flatten(cont.offset);
            for (int r = 0; r < k; ++r) {
                for (const auto& sub : cx.levels[r]) {
                    if (!cont.dirs.contains_space(sub.dirs)) continue;
                    auto fs = F.flatten(sub.offset);
                    std::vector<Rat> target(fc.size());
                    for (size_t j = 0; j < fc.size(); ++j) target[j] = fc[j] - fs[j];
                    auto g = ctx.solve_shift(cont.dirs, target);
                    if (!g) continue;
                    auto shift = SchemeContext::reduce_mod_lattice(*g, cont.stabilizer);
                    cx.incidence[k][i][r].push_back({sub.id, std::move(shift)});
                }
            }
        }
    }
    return cx;
}

}  // namespace tilehom
