#pragma once

#include <optional>

#include "tilehom/number_field.hpp"

namespace tilehom {

/// Row-echelon machinery over a number field F. Rows are FVecs of a common
/// length; the echelon form is fully reduced (pivots 1, zeros above and
/// below), so a subspace has one canonical basis.
class FSpace {
public:
    FSpace(const NumberField& F, int dim) : F_(F), dim_(dim) {}

    int dim_ambient() const { return dim_; }
    int rank() const { return int(rows_.size()); }
    const std::vector<FVec>& basis() const { return rows_; }

    /// Inserts v, re-echelonizing; returns true if the rank grew.
    bool insert(FVec v) {
        reduce_in_place(v);
        int p = pivot_of(v);
        if (p < 0) return false;
        // normalize pivot to 1
        v = fvec_scale(F_, F_.inv(v[p]), v);
        // clear this column in existing rows
        for (auto& r : rows_)
            if (!F_.is_zero(r[p])) r = fvec_sub(F_, r, fvec_scale(F_, r[p], v));
        // insert keeping pivot columns increasing
        auto it = rows_.begin();
        while (it != rows_.end() && pivot_of(*it) < p) ++it;
        rows_.insert(it, std::move(v));
        pivots_.clear();
        for (const auto& r : rows_) pivots_.push_back(pivot_of(r));
        return true;
    }

    /// Residue of v modulo the span: pivot coordinates eliminated.
    FVec reduce(FVec v) const {
        reduce_in_place(v);
        return v;
    }

    bool contains(const FVec& v) const { return fvec_is_zero(F_, reduce(v)); }

    bool contains_space(const FSpace& o) const {
        for (const auto& r : o.rows_)
            if (!contains(r)) return false;
        return true;
    }

    bool operator==(const FSpace& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }

    /// Span of the union.
    FSpace sum(const FSpace& o) const {
        FSpace s = *this;
        for (const auto& r : o.rows_) s.insert(r);
        return s;
    }

    /// Intersection via the kernel of the concatenated coefficient system.
    FSpace intersection(const FSpace& o) const {
        // x = sum a_i u_i = sum b_j w_j: solve the homogeneous system in (a, b)
        int ru = rank(), rw = o.rank();
        FSpace out(F_, dim_);
        if (ru == 0 || rw == 0) return out;
        // unknown vector (a_1..a_ru, b_1..b_rw): dim_ equations over F
        std::vector<FVec> rows;  // system rows: one per unknown, columns = equations
        for (int i = 0; i < ru; ++i) rows.push_back(rows_[i]);
        for (int j = 0; j < rw; ++j) rows.push_back(fvec_scale(F_, F_.from_rational(-1), o.rows_[j]));
        auto ker = left_kernel(F_, rows, dim_);
        for (const auto& coeff : ker) {
            FVec v = fvec_zero(F_, dim_);
            for (int i = 0; i < ru; ++i) v = fvec_add(F_, v, fvec_scale(F_, coeff[i], rows_[i]));
            out.insert(v);
        }
        return out;
    }

    /// {x : sum_i x_i v_i = 0} for the given rows: basis of the left kernel.
    static std::vector<FElem> concat(const FVec& v) {
        std::vector<FElem> out;
        for (const auto& e : v) out.push_back(e);
        return out;
    }

    static std::vector<std::vector<FElem>> left_kernel(const NumberField& F,
                                                       const std::vector<FVec>& rows, int width) {
        int m = int(rows.size());
        // augment with identity; eliminate; rows whose system part vanishes give the kernel
        std::vector<std::vector<FElem>> a(m);
        for (int i = 0; i < m; ++i) {
            a[i].assign(width + m, F.zero());
            for (int j = 0; j < width; ++j) a[i][j] = rows[i][j];
            a[i][width + i] = F.one();
        }
        int rank = 0;
        for (int c = 0; c < width && rank < m; ++c) {
            int piv = -1;
            for (int r = rank; r < m; ++r)
                if (!F.is_zero(a[r][c])) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(a[piv], a[rank]);
            FElem inv = F.inv(a[rank][c]);
            for (auto& e : a[rank]) e = F.mul(inv, e);
            for (int r = 0; r < m; ++r) {
                if (r == rank || F.is_zero(a[r][c])) continue;
                FElem f = a[r][c];
                for (int j = 0; j < width + m; ++j)
                    a[r][j] = F.sub(a[r][j], F.mul(f, a[rank][j]));
            }
            ++rank;
        }
        std::vector<std::vector<FElem>> ker;
        for (int r = rank; r < m; ++r)
            ker.emplace_back(a[r].begin() + width, a[r].end());
        return ker;
    }

    /// Solve sum_i x_i rows_i = b over F; nullopt if inconsistent.
    static std::optional<std::vector<FElem>> solve(const NumberField& F,
                                                   const std::vector<FVec>& rows, const FVec& b,
                                                   int width) {
        int m = int(rows.size());
        std::vector<std::vector<FElem>> a(m);
        for (int i = 0; i < m; ++i) {
            a[i].assign(width + m + 1, F.zero());
            for (int j = 0; j < width; ++j) a[i][j] = rows[i][j];
            a[i][width + i] = F.one();
        }
        // eliminate; track combination; then match b by back substitution
        // simpler: transpose viewpoint, gaussian solve on columns
        // build matrix with columns = rows_i, solve A x = b
        int eq = width;  // number of F-equations
        std::vector<std::vector<FElem>> sys(eq, std::vector<FElem>(m + 1, F.zero()));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < eq; ++j) sys[j][i] = rows[i][j];
        for (int j = 0; j < eq; ++j) sys[j][m] = b[j];
        std::vector<int> pivcol;
        int rank = 0;
        for (int c = 0; c < m && rank < eq; ++c) {
            int piv = -1;
            for (int r = rank; r < eq; ++r)
                if (!F.is_zero(sys[r][c])) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(sys[piv], sys[rank]);
            FElem inv = F.inv(sys[rank][c]);
            for (auto& e : sys[rank]) e = F.mul(inv, e);
            for (int r = 0; r < eq; ++r) {
                if (r == rank || F.is_zero(sys[r][c])) continue;
                FElem f = sys[r][c];
                for (int j = 0; j <= m; ++j) sys[r][j] = F.sub(sys[r][j], F.mul(f, sys[rank][j]));
            }
            pivcol.push_back(c);
            ++rank;
        }
        for (int r = rank; r < eq; ++r)
            if (!F.is_zero(sys[r][m])) return std::nullopt;
        std::vector<FElem> x(m, F.zero());
        for (int i = 0; i < rank; ++i) x[pivcol[i]] = sys[i][m];
        return x;
    }

private:
    int pivot_of(const FVec& v) const {
        for (int i = 0; i < dim_; ++i)
            if (!F_.is_zero(v[i])) return i;
        return -1;
    }
    void reduce_in_place(FVec& v) const {
        for (size_t k = 0; k < rows_.size(); ++k) {
            int p = pivots_[k];
            if (!F_.is_zero(v[p])) v = fvec_sub(F_, v, fvec_scale(F_, v[p], rows_[k]));
        }
    }

    NumberField F_;
    int dim_;
    std::vector<FVec> rows_;   // reduced echelon, pivots increasing, pivot entries 1
    std::vector<int> pivots_;
};

/// Affine subspace offset + span(dirs) of V = F^n, in canonical form:
/// dirs echelon, offset reduced against dirs (pivot coordinates zero).
struct AffineSubspace {
    FSpace dirs;
    FVec offset;

    AffineSubspace(const NumberField& F, int n) : dirs(F, n), offset(fvec_zero(F, n)) {}
    AffineSubspace(const NumberField& F, FSpace d, FVec off) : dirs(std::move(d)), offset() {
        offset = dirs.reduce(std::move(off));
    }

    int dim() const { return dirs.rank(); }

    bool contains_point(const NumberField& F, const FVec& p) const {
        return dirs.contains(fvec_sub(F, p, offset));
    }

    /// Set containment (this inside other).
    bool subset_of(const NumberField& F, const AffineSubspace& o) const {
        return o.dirs.contains_space(dirs) && o.contains_point(F, offset);
    }

    bool operator==(const AffineSubspace& o) const {
        return dirs == o.dirs && offset == o.offset;
    }

    /// Intersection; nullopt when empty.
    static std::optional<AffineSubspace> intersect(const NumberField& F, const AffineSubspace& a,
                                                   const AffineSubspace& b) {
        int n = a.dirs.dim_ambient();
        // particular point: offset_a + sum x_i u_i = offset_b + sum y_j w_j
        std::vector<FVec> rows;
        for (const auto& u : a.dirs.basis()) rows.push_back(u);
        for (const auto& w : b.dirs.basis()) rows.push_back(fvec_scale(F, F.from_rational(-1), w));
        FVec rhs = fvec_sub(F, b.offset, a.offset);
        auto sol = FSpace::solve(F, rows, rhs, n);
        if (!sol) return std::nullopt;
        FVec point = a.offset;
        for (int i = 0; i < a.dirs.rank(); ++i)
            point = fvec_add(F, point, fvec_scale(F, (*sol)[i], a.dirs.basis()[i]));
        return AffineSubspace(F, a.dirs.intersection(b.dirs), std::move(point));
    }
};

}  // namespace tilehom
