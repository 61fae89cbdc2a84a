#pragma once

#include <map>
#include <sstream>

#include "tilehom/normal_form.hpp"

namespace tilehom {

/// Finitely generated abelian group in canonical form:
/// Z^free_rank + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
struct FgAbelianGroup {
    int free_rank = 0;
    std::vector<Int> invariant_factors;

    FgAbelianGroup() = default;
    FgAbelianGroup(int fr, std::vector<Int> factors)
        : free_rank(fr), invariant_factors(std::move(factors)) {}

    static FgAbelianGroup free(int rank) { return FgAbelianGroup(rank, {}); }
    static FgAbelianGroup trivial() { return FgAbelianGroup(); }

    /// From any list of elementary divisors (drops 1s, sorts into a chain).
    static FgAbelianGroup from_divisors(int fr, const std::vector<Int>& divs) {
        // collect prime powers, then rebuild the invariant factor chain
        std::map<Int, std::vector<unsigned>> primary;  // p -> exponents
        for (const Int& d : divs) {
            Int m = abs(d);
            if (m <= 1) continue;
            Int p = 2;
            Int rest = m;
            while (rest > 1) {
                while (!is_prime(p) || rest % p != 0) ++p;
                unsigned e = 0;
                while (rest % p == 0) { rest = divexact(rest, p); ++e; }
                primary[p].push_back(e);
            }
        }
        size_t len = 0;
        for (auto& [p, es] : primary) {
            std::sort(es.begin(), es.end(), std::greater<unsigned>());
            len = std::max(len, es.size());
        }
        std::vector<Int> chain(len, Int(1));
        for (auto& [p, es] : primary)
            for (size_t i = 0; i < es.size(); ++i) {
                Int pe;
                mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), es[i]);
                chain[len - 1 - i] *= pe;
            }
        return FgAbelianGroup(fr, chain);
    }

    bool operator==(const FgAbelianGroup& o) const {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }
    bool operator!=(const FgAbelianGroup& o) const { return !(*this == o); }

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_free() const { return invariant_factors.empty(); }

    Int torsion_order() const {
        Int o = 1;
        for (const Int& d : invariant_factors) o *= d;
        return o;
    }

    FgAbelianGroup torsion() const { return FgAbelianGroup(0, invariant_factors); }

    /// Direct sum, renormalized to canonical invariant factors.
    FgAbelianGroup direct_sum(const FgAbelianGroup& o) const {
        std::vector<Int> divs = invariant_factors;
        divs.insert(divs.end(), o.invariant_factors.begin(), o.invariant_factors.end());
        return from_divisors(free_rank + o.free_rank, divs);
    }

    /// dim_{F_p} (G tensor F_p) = free rank + #factors divisible by p.
    int rank_mod_p(const Int& p) const {
        int r = free_rank;
        for (const Int& d : invariant_factors)
            if (d % p == 0) ++r;
        return r;
    }

    /// |G tensor Z/m| for m = p^k (G tensor Z/m = Z_m^free + sum Z_gcd(d,m)).
    Int tensor_count(const Int& m) const {
        Int c = 1;
        for (int i = 0; i < free_rank; ++i) c *= m;
        for (const Int& d : invariant_factors) c *= gcd(d, m);
        return c;
    }

    /// Exponent of the torsion part (1 if free).
    Int torsion_exponent() const {
        return invariant_factors.empty() ? Int(1) : invariant_factors.back();
    }

    /// Primary decomposition p -> sorted exponent list (descending).
    std::map<Int, std::vector<unsigned>> primary() const {
        std::map<Int, std::vector<unsigned>> out;
        for (const Int& d : invariant_factors) {
            Int rest = d, p = 2;
            while (rest > 1) {
                while (!is_prime(p) || rest % p != 0) ++p;
                unsigned e = 0;
                while (rest % p == 0) { rest = divexact(rest, p); ++e; }
                out[p].push_back(e);
            }
        }
        for (auto& [p, es] : out) std::sort(es.begin(), es.end(), std::greater<unsigned>());
        return out;
    }

    std::vector<Int> torsion_primes() const {
        std::vector<Int> ps;
        for (auto& [p, es] : primary()) ps.push_back(p);
        return ps;
    }

    /// Rendering in primary form, e.g. "Z^331 + Z_2^26 + Z_4".
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        if (free_rank > 0) {
            os << "Z";
            if (free_rank > 1) os << "^" << free_rank;
            first = false;
        }
        // group primary components as Z_{p^e}^multiplicity, ordered by p then e
        std::map<Int, std::map<unsigned, int>> counts;
        for (auto& [p, es] : primary())
            for (unsigned e : es) counts[p][e]++;
        for (auto& [p, em] : counts)
            for (auto& [e, c] : em) {
                if (!first) os << " + ";
                Int pe;
                mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
                os << "Z_" << pe.get_str();
                if (c > 1) os << "^" << c;
                first = false;
            }
        if (first) os << "0";
        return os.str();
    }
};

/// Group presented as Z^cols(rel) modulo the row span of rel.
inline FgAbelianGroup group_from_presentation(int generators, const IntMat& relations) {
    assert(relations.cols() == generators || relations.rows() == 0);
    SnfResult s = snf(relations);
    std::vector<Int> divs;
    for (const Int& d : s.factors)
        if (d > 1) divs.push_back(d);
    return FgAbelianGroup::from_divisors(generators - int(s.factors.size()), divs);
}

}  // namespace tilehom
