#include <catch2/catch.hpp>

#include <random>

#include "tilehom/number_field.hpp"

using namespace tilehom;

TEST_CASE("field arithmetic in Q(sqrt5)", "[field]") {
    NumberField F({Int(-5), Int(0), Int(1)});  // x^2 - 5
    CHECK(F.degree() == 2);
    FElem s = F.generator();           // sqrt(5)
    FElem v = F.add(F.one(), s);       // 1 + sqrt5
    CHECK(F.mul(s, s) == F.from_rational(5));
    CHECK(F.mul(v, F.inv(v)) == F.one());
    // (1+sqrt5)(1-sqrt5) = -4
    FElem w = F.sub(F.one(), s);
    CHECK(F.mul(v, w) == F.from_rational(-4));
}

TEST_CASE("golden ratio field", "[field]") {
    NumberField F({Int(-1), Int(-1), Int(1)});  // x^2 - x - 1
    FElem tau = F.generator();
    CHECK(F.mul(tau, tau) == F.add(tau, F.one()));              // tau^2 = tau + 1
    CHECK(F.mul(tau, F.sub(tau, F.one())) == F.one());          // tau(tau-1) = 1
    CHECK(F.inv(tau) == F.sub(tau, F.one()));
}

TEST_CASE("cubic field of 2cos(pi/7)", "[field]") {
    NumberField F({Int(1), Int(-2), Int(-1), Int(1)});  // x^3 - x^2 - 2x + 1
    FElem c = F.generator();
    FElem c3 = F.mul(c, F.mul(c, c));
    FElem rhs = F.add(F.mul(c, c), F.sub(F.add(c, c), F.one()));  // c^2 + 2c - 1
    CHECK(c3 == rhs);
    CHECK(F.mul(c, F.inv(c)) == F.one());
}

TEST_CASE("flatten", "[field][flatten]") {
    NumberField F({Int(-5), Int(0), Int(1)});
    // zero vector -> zero vector
    auto z = F.flatten(fvec_zero(F, 2));
    CHECK(z == std::vector<Rat>(4, Rat(0)));

    // v = (1 + sqrt5, 0) -> (1,1,0,0)
    FVec v{F.add(F.one(), F.generator()), F.zero()};
    CHECK(F.flatten(v) == std::vector<Rat>{Rat(1), Rat(1), Rat(0), Rat(0)});
}

TEST_CASE("flatten is Q-linear and injective", "[field][property]") {
    NumberField F({Int(1), Int(-2), Int(-1), Int(1)});
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        FVec a(2), b(2);
        for (int i = 0; i < 2; ++i) {
            a[i] = F.zero();
            b[i] = F.zero();
            for (int j = 0; j < 3; ++j) {
                a[i][j] = Rat(d(rng), 1 + (rng() % 3));
                b[i][j] = Rat(d(rng), 1 + (rng() % 3));
                a[i][j].canonicalize();
                b[i][j].canonicalize();
            }
        }
        auto fa = F.flatten(a), fb = F.flatten(b);
        auto fsum = F.flatten(fvec_add(F, a, b));
        for (size_t i = 0; i < fa.size(); ++i) CHECK(fsum[i] == fa[i] + fb[i]);
        if (!fvec_is_zero(F, a)) {
            bool nonzero = false;
            for (const Rat& q : fa) nonzero |= (q != 0);
            CHECK(nonzero);
        }
    }
}

TEST_CASE("reducible polynomials are rejected", "[field]") {
    CHECK_THROWS_AS(NumberField({Int(-4), Int(0), Int(1)}), std::invalid_argument);   // x^2-4
    CHECK_THROWS_AS(NumberField({Int(0), Int(0), Int(1)}), std::invalid_argument);    // x^2
    CHECK_THROWS_AS(NumberField({Int(-1), Int(1), Int(-1), Int(1)}), std::invalid_argument);  // (x-1)(x^2+1)
    CHECK_NOTHROW(NumberField({Int(-2), Int(0), Int(1)}));  // x^2-2
}
