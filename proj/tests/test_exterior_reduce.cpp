#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "tilehom/lattice_map.hpp"

using namespace tilehom;
using namespace tilehom::testing;

TEST_CASE("exterior power small cases", "[exterior]") {
    LatticeMap f(IntMat{{Int(1), Int(2)}, {Int(3), Int(4)}});
    CHECK(exterior_power(1, f).matrix == f.matrix);

    auto l2 = exterior_power(2, f);
    REQUIRE(l2.matrix.rows() == 1);
    REQUIRE(l2.matrix.cols() == 1);
    CHECK(l2.matrix(0, 0) == -2);  // det

    auto l0 = exterior_power(0, f);
    CHECK(l0.matrix == IntMat::identity(1));

    auto l3 = exterior_power(3, f);
    CHECK(l3.matrix.rows() == 0);
    CHECK(l3.matrix.cols() == 0);

    CHECK(exterior_power(2, LatticeMap(IntMat::identity(4))).matrix == IntMat::identity(6));
}

TEST_CASE("exterior power functoriality", "[exterior][property]") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        IntMat a = random_mat(rng, 3, 3, -5, 5);
        IntMat b = random_mat(rng, 3, 3, -5, 5);
        for (int k = 0; k <= 3; ++k) {
            // row convention: (x |-> xA then xB) has matrix A*B
            LatticeMap ab(a * b);
            auto lhs = exterior_power(k, ab).matrix;
            auto rhs = exterior_power(k, LatticeMap(a)).matrix *
                       exterior_power(k, LatticeMap(b)).matrix;
            CHECK(lhs == rhs);
        }
    }
}

static Int brute_force_coker_count(const IntMat& m, long mod) {
    // enumerate (Z/mod)^cols modulo the image of (Z/mod)^rows
    int rows = m.rows(), cols = m.cols();
    long total = 1;
    for (int i = 0; i < cols; ++i) total *= mod;
    std::vector<char> in_image(size_t(total), 0);
    long src_total = 1;
    for (int i = 0; i < rows; ++i) src_total *= mod;
    for (long x = 0; x < src_total; ++x) {
        long rem = x;
        std::vector<long> coeff(rows);
        for (int i = 0; i < rows; ++i) { coeff[i] = rem % mod; rem /= mod; }
        long idx = 0, base = 1;
        for (int j = 0; j < cols; ++j) {
            long v = 0;
            for (int i = 0; i < rows; ++i)
                v += coeff[i] * (((m(i, j).get_si()) % mod + mod) % mod);
            idx += (v % mod) * base;
            base *= mod;
        }
        in_image[size_t(idx)] = 1;
    }
    long image_size = 0;
    for (char c : in_image) image_size += c;
    return Int(total / image_size);
}

TEST_CASE("reduce_ring", "[reduce]") {
    LatticeMap five(IntMat{{Int(5)}});
    CHECK(reduce_ring(five, 5).rank == 0);
    CHECK(reduce_ring(five, 0).rank == 1);

    LatticeMap m(IntMat{{Int(2), Int(0)}, {Int(0), Int(4)}});
    auto r = reduce_ring(m, 4);
    REQUIRE(r.has_count);
    CHECK(r.cokernel_count == 8);
    CHECK(brute_force_coker_count(m.matrix, 4) == 8);  // direct enumeration oracle

    CHECK_THROWS_AS(reduce_ring(m, 6), std::invalid_argument);
    CHECK_THROWS_AS(reduce_ring(m, 12), std::invalid_argument);
    CHECK(reduce_ring(m, 9).cokernel_count == 1);  // 2 and 4 are units mod 9
}

TEST_CASE("reduce_ring count agrees with enumeration", "[reduce][oracle]") {
    std::mt19937 rng(1717);
    for (int trial = 0; trial < 40; ++trial) {
        IntMat m = random_mat(rng, 1 + int(rng() % 3), 1 + int(rng() % 3), -4, 4);
        for (long mod : {2L, 4L, 3L}) {
            auto r = reduce_ring(LatticeMap(m), mod);
            CHECK(r.cokernel_count == brute_force_coker_count(m, mod));
        }
    }
}

TEST_CASE("reduce_ring rank drop equals factors divisible by p", "[reduce][property]") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 60; ++trial) {
        IntMat m = random_mat(rng, 1 + int(rng() % 5), 1 + int(rng() % 5), -6, 6);
        auto s = snf(m);
        for (Int p : {Int(2), Int(3), Int(5), Int(7)}) {
            int divisible = 0;
            for (const Int& d : s.factors)
                if (d % p == 0) ++divisible;
            CHECK(rank_mod_p(m, p) == rank_q(m) - divisible);
        }
    }
}
