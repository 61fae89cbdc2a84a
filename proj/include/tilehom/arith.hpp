#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilehom {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// g = gcd(a,b) together with u,v such that u*a + v*b = g.
inline Int gcdext(const Int& a, const Int& b, Int& u, Int& v) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Exact division; throws if b does not divide a.
inline Int divexact(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("divexact: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::domain_error("divexact: not divisible");
    return q;
}

/// Floor division (needed for HNF reduction with positive pivots).
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// Writes p and k for n = p^k (p prime, k >= 1); returns false otherwise.
inline bool prime_power_decompose(const Int& n, Int& p, unsigned& k) {
    if (n < 2) return false;
    if (is_prime(n)) { p = n; k = 1; return true; }
    // n = p^k has p <= n^(1/k); try k = 2.. via exact roots
    for (unsigned e = 2; ; ++e) {
        Int root;
        int exact = mpz_root(root.get_mpz_t(), n.get_mpz_t(), e);
        if (root < 2) return false;
        if (exact && is_prime(root)) { p = root; k = e; return true; }
        if (!exact && root == 2) return false;
    }
}

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline long binomial_l(unsigned long n, unsigned long k) {
    return static_cast<long>(binomial(n, k).get_ui());
}

/// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        if (k == 0) break;
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return q;
}

inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace tilehom
