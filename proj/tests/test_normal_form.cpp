#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace tilehom;
using namespace tilehom::testing;

TEST_CASE("hnf identity and fixed points", "[hnf]") {
    IntMat id = IntMat::identity(2);
    auto r = hnf(id);
    CHECK(r.h == id);
    CHECK(r.u == id);

    IntMat d{{Int(2), Int(0)}, {Int(0), Int(3)}};
    CHECK(hnf(d).h == d);
}

TEST_CASE("hnf of [[2,4],[6,8]]", "[hnf]") {
    IntMat m{{Int(2), Int(4)}, {Int(6), Int(8)}};
    auto r = hnf(m);
    IntMat expect{{Int(2), Int(0)}, {Int(0), Int(4)}};
    CHECK(r.h == expect);
    CHECK(is_unimodular(r.u));
    CHECK(r.u * m == r.h);
    CHECK(abs(det(r.h)) == 8);  // |det| preserved
}

TEST_CASE("hnf properties on random matrices", "[hnf][property]") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + int(rng() % 6), cols = 1 + int(rng() % 6);
        IntMat m = random_mat(rng, rows, cols);
        auto r = hnf(m);
        CHECK(is_unimodular(r.u));
        CHECK(r.u * m == r.h);
        CHECK(is_row_hnf(r.h));
        // row space unchanged: each original row lies in the HNF row lattice
        IntMat basis = hnf_basis(m);
        for (int i = 0; i < rows; ++i) CHECK(in_row_lattice(basis, m.row(i)));
    }
}

TEST_CASE("snf of zero and diagonal matrices", "[snf]") {
    CHECK(snf(IntMat(2, 3)).factors.empty());
    IntMat d{{Int(2), Int(0)}, {Int(0), Int(3)}};
    auto s = snf(d);
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0] == 1);
    CHECK(s.factors[1] == 6);
}

TEST_CASE("snf of [[2,4],[6,8]]", "[snf]") {
    IntMat m{{Int(2), Int(4)}, {Int(6), Int(8)}};
    auto s = snf(m);
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0] == 2);
    CHECK(s.factors[1] == 4);
    CHECK(snf_oracle_minor_gcd(m) == s.factors);
}

TEST_CASE("snf reconstruction and transforms", "[snf][property]") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + int(rng() % 6), cols = 1 + int(rng() % 6);
        IntMat m = random_mat(rng, rows, cols);
        auto s = snf(m);
        CHECK(is_unimodular(s.left));
        CHECK(is_unimodular(s.right));
        IntMat diag = s.left * m * s.right;
        for (int i = 0; i < diag.rows(); ++i)
            for (int j = 0; j < diag.cols(); ++j) {
                if (i == j && i < int(s.factors.size()))
                    CHECK(diag(i, j) == s.factors[i]);
                else
                    CHECK(diag(i, j) == 0);
            }
        for (size_t i = 0; i + 1 < s.factors.size(); ++i)
            CHECK(s.factors[i + 1] % s.factors[i] == 0);
    }
}

TEST_CASE("snf agrees with the minor-gcd oracle", "[snf][oracle]") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 150; ++trial) {
        int rows = 1 + int(rng() % 6), cols = 1 + int(rng() % 6);
        IntMat m = random_mat(rng, rows, cols);
        CHECK(snf(m).factors == snf_oracle_minor_gcd(m));
    }
}

TEST_CASE("kernel basics", "[kernel]") {
    CHECK(kernel_basis(IntMat::identity(3)).rows() == 0);

    // sum map Z^3 -> Z^1
    IntMat sum{{Int(1)}, {Int(1)}, {Int(1)}};
    IntMat k = kernel_basis(sum);
    REQUIRE(k.rows() == 2);
    CHECK(in_row_lattice(k, {Int(1), Int(-1), Int(0)}));
    CHECK(in_row_lattice(k, {Int(0), Int(1), Int(-1)}));

    IntMat m{{Int(2), Int(4)}, {Int(6), Int(8)}};
    CHECK(kernel_basis(m).rows() == 0);  // det != 0
}

TEST_CASE("rank-nullity over Q", "[kernel][property]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        int rows = 1 + int(rng() % 6), cols = 1 + int(rng() % 6);
        IntMat m = random_mat(rng, rows, cols, -4, 4);
        CHECK(kernel_basis(m).rows() + rank_q(m) == rows);
        // kernel rows actually kill m
        IntMat k = kernel_basis(m);
        if (k.rows() > 0) CHECK((k * m).is_zero());
    }
}

TEST_CASE("integer solve", "[solve]") {
    IntMat m{{Int(2), Int(0)}, {Int(0), Int(3)}};
    auto x = solve_left(m, {Int(4), Int(9)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solve_left(m, {Int(1), Int(0)}).has_value());

    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + int(rng() % 5), cols = 1 + int(rng() % 5);
        IntMat m2 = random_mat(rng, rows, cols, -5, 5);
        std::vector<Int> coeff(rows);
        for (int i = 0; i < rows; ++i) coeff[i] = int(rng() % 7) - 3;
        std::vector<Int> b(cols, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) b[j] += coeff[i] * m2(i, j);
        auto sol = solve_left(m2, b);
        REQUIRE(sol.has_value());
        std::vector<Int> back(cols, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) back[j] += (*sol)[i] * m2(i, j);
        CHECK(back == b);
    }
}

TEST_CASE("rank mod p and F_p nullspace", "[modp]") {
    IntMat m{{Int(5)}};
    CHECK(rank_mod_p(m, 5) == 0);
    CHECK(rank_q(m) == 1);

    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + int(rng() % 5), cols = 1 + int(rng() % 5);
        IntMat a = random_mat(rng, rows, cols, -6, 6);
        for (Int p : {Int(2), Int(3), Int(5)}) {
            IntMat ns = nullspace_mod_p(a, p);
            CHECK(ns.rows() + rank_mod_p(a, p) == rows);
            IntMat prod = ns * a;
            for (int i = 0; i < prod.rows(); ++i)
                for (int j = 0; j < prod.cols(); ++j) CHECK(mod_floor(prod(i, j), p) == 0);
        }
    }
}

TEST_CASE("empty matrices are first-class", "[edge]") {
    IntMat e(0, 3);
    CHECK(hnf(e).h.rows() == 0);
    CHECK(snf(e).factors.empty());
    CHECK(kernel_basis(e).rows() == 0);
    CHECK(rank_q(e) == 0);

    IntMat e2(3, 0);
    CHECK(hnf(e2).rank == 0);
    CHECK(kernel_basis(e2).rows() == 3);  // everything maps to the zero module
    CHECK(snf(e2).factors.empty());
}
