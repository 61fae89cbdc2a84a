#pragma once

#include "tilehom/matrix.hpp"

namespace tilehom {

/// Element of Q[x]/(min_poly), stored as the coefficient vector of the
/// residue representative (length = field degree, low degree first).
using FElem = std::vector<Rat>;

/// Vector of field elements; coordinates of a point of the internal space V.
using FVec = std::vector<FElem>;

/// Real number field Q[x]/(f), f monic with integer coefficients.
/// Degrees in the catalog are <= 3; irreducibility is certified by the
/// absence of rational roots (sufficient for degree <= 3).
class NumberField {
public:
    NumberField() : degree_(1), min_poly_{0, 1} {}
    /// min_poly low-degree-first, monic, integer coefficients.
    explicit NumberField(std::vector<Int> min_poly) : min_poly_(std::move(min_poly)) {
        if (min_poly_.size() < 2) throw std::invalid_argument("min_poly must have degree >= 1");
        if (min_poly_.back() != 1) throw std::invalid_argument("min_poly must be monic");
        degree_ = int(min_poly_.size()) - 1;
        if (degree_ <= 3 && degree_ >= 2 && has_rational_root())
            throw std::invalid_argument("min_poly reducible over Q (rational root)");
        // reduction table for x^degree: x^d = -(a_0 + a_1 x + ... + a_{d-1} x^{d-1})
        reduction_.resize(degree_);
        for (int i = 0; i < degree_; ++i) reduction_[i] = Rat(-min_poly_[i]);
    }

    int degree() const { return degree_; }
    const std::vector<Int>& min_poly() const { return min_poly_; }

    bool operator==(const NumberField& o) const { return min_poly_ == o.min_poly_; }
    bool operator!=(const NumberField& o) const { return !(*this == o); }

    FElem zero() const { return FElem(degree_, Rat(0)); }
    FElem one() const { return from_rational(Rat(1)); }
    FElem from_rational(const Rat& q) const {
        FElem e(degree_, Rat(0));
        e[0] = q;
        return e;
    }
    /// The class of x (the field generator); degree 1 fields have generator 0... x = root.
    FElem generator() const {
        FElem e(degree_, Rat(0));
        if (degree_ >= 2) e[1] = 1;
        else e[0] = root_of_linear();
        return e;
    }

    bool is_zero(const FElem& a) const {
        for (const Rat& c : a)
            if (c != 0) return false;
        return true;
    }

    FElem add(const FElem& a, const FElem& b) const {
        FElem r(degree_);
        for (int i = 0; i < degree_; ++i) r[i] = a[i] + b[i];
        return r;
    }
    FElem sub(const FElem& a, const FElem& b) const {
        FElem r(degree_);
        for (int i = 0; i < degree_; ++i) r[i] = a[i] - b[i];
        return r;
    }
    FElem neg(const FElem& a) const {
        FElem r(degree_);
        for (int i = 0; i < degree_; ++i) r[i] = -a[i];
        return r;
    }
    FElem scale(const Rat& c, const FElem& a) const {
        FElem r(degree_);
        for (int i = 0; i < degree_; ++i) r[i] = c * a[i];
        return r;
    }

    FElem mul(const FElem& a, const FElem& b) const {
        std::vector<Rat> prod(2 * degree_ - 1, Rat(0));
        for (int i = 0; i < degree_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < degree_; ++j) prod[i + j] += a[i] * b[j];
        }
        // reduce degrees >= degree_ via x^d = reduction_
        for (int k = int(prod.size()) - 1; k >= degree_; --k) {
            if (prod[k] == 0) continue;
            Rat c = prod[k];
            prod[k] = 0;
            for (int i = 0; i < degree_; ++i) prod[k - degree_ + i] += c * reduction_[i];
        }
        prod.resize(degree_);
        return prod;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    FElem inv(const FElem& a) const {
        if (is_zero(a)) throw std::domain_error("NumberField::inv: zero element");
        // r0 = min_poly, r1 = a; track s with s*a = r (mod min_poly)
        std::vector<Rat> r0(min_poly_.size()), r1(a.begin(), a.end());
        for (size_t i = 0; i < min_poly_.size(); ++i) r0[i] = Rat(min_poly_[i]);
        trim(r1);
        std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
        while (poly_deg(r1) > 0) {
            auto [q, rem] = poly_divmod(r0, r1);
            r0 = r1;
            r1 = rem;
            auto s2 = poly_sub(s0, poly_mul(q, s1));
            s0 = s1;
            s1 = s2;
            trim(r1);
        }
        if (r1.empty() || r1[0] == 0)
            throw std::domain_error("NumberField::inv: element not invertible (min_poly reducible)");
        FElem out = zero();
        Rat lead = r1[0];
        for (size_t i = 0; i < s1.size() && int(i) < degree_; ++i) out[i] = s1[i] / lead;
        return out;
    }

    FElem div(const FElem& a, const FElem& b) const { return mul(a, inv(b)); }

    /// Q-coordinates of a field vector in the basis {x^j * standard_i}:
    /// coordinate i of the vector contributes its degree coefficients at
    /// positions [i*degree, (i+1)*degree).
    std::vector<Rat> flatten(const FVec& v) const {
        std::vector<Rat> out;
        out.reserve(v.size() * degree_);
        for (const FElem& e : v) {
            assert(int(e.size()) == degree_);
            out.insert(out.end(), e.begin(), e.end());
        }
        return out;
    }

private:
    bool has_rational_root() const {
        // rational root theorem: p/q with p | a_0, q | a_d = 1
        Int a0 = min_poly_[0];
        if (a0 == 0) return true;  // x divides
        for (Int p = 1; p <= abs(a0); ++p) {
            if (abs(a0) % p != 0) continue;
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                Rat x(p * sgn);
                Rat v(0);
                for (int i = int(min_poly_.size()) - 1; i >= 0; --i) v = v * x + Rat(min_poly_[i]);
                if (v == 0) return true;
            }
        }
        return false;
    }

    Rat root_of_linear() const {
        // degree 1: x + a0 = 0
        return Rat(-min_poly_[0]);
    }

    static int poly_deg(const std::vector<Rat>& p) {
        for (int i = int(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    }
    static void trim(std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }
    static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }
    static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
        for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        return r;
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a,
                                                                     const std::vector<Rat>& b) {
        int db = poly_deg(b);
        assert(db >= 0);
        std::vector<Rat> q(std::max<int>(int(a.size()) - db, 1), Rat(0));
        for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
            Rat c = a[da] / b[db];
            q[da - db] = c;
            for (int i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
        }
        return {q, a};
    }

    int degree_;
    std::vector<Int> min_poly_;
    std::vector<Rat> reduction_;
};

inline FVec fvec_add(const NumberField& F, const FVec& a, const FVec& b) {
    assert(a.size() == b.size());
    FVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}
inline FVec fvec_sub(const NumberField& F, const FVec& a, const FVec& b) {
    assert(a.size() == b.size());
    FVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return r;
}
inline FVec fvec_scale(const NumberField& F, const FElem& c, const FVec& a) {
    FVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}
inline FVec fvec_zero(const NumberField& F, int n) { return FVec(n, F.zero()); }
inline bool fvec_is_zero(const NumberField& F, const FVec& a) {
    for (const FElem& e : a)
        if (!F.is_zero(e)) return false;
    return true;
}

}  // namespace tilehom
