#include <catch2/catch.hpp>

#include "tilehom/catalog.hpp"
#include "tilehom/homology.hpp"

using namespace tilehom;

/// Fibonacci-type codimension-1 scheme: d = 1, n = 1, Gamma = Z + Z sqrt2
/// dense in the line, cut points the given offsets.
static ProjectionScheme fibonacci(std::vector<Rat> offsets) {
    ProjectionScheme s;
    s.name = "fibonacci";
    s.d = 1;
    s.n = 1;
    s.field = NumberField({Int(-2), Int(0), Int(1)});  // x^2 - 2
    s.lattice = {FVec{s.field.one()}, FVec{s.field.generator()}};
    for (const Rat& off : offsets)
        s.hyperplanes.push_back({{}, FVec{s.field.from_rational(off)}});
    return s;
}

TEST_CASE("codimension 1 has no torsion and the stated ranks", "[codim1]") {
    auto s = fibonacci({Rat(0)});
    auto cx = generate(s);
    REQUIRE(cx.count(0) == 1);
    auto h = compute_homology(s, cx);
    REQUIRE(h.groups.size() == 2);
    CHECK(h.groups[0] == FgAbelianGroup::free(2));  // Z^{L_0 + d}
    CHECK(h.groups[1] == FgAbelianGroup::free(1));  // top group, binom(2,2)
    CHECK(torsion_band_check(h).ok);

    // K-theory via H^i = H_{d-i}: K^0 = H^0 = H_1 = Z, K^1 = H^1 = H_0 = Z^2
    REQUIRE(h.ktheory);
    CHECK(h.ktheory->first == FgAbelianGroup::free(1));
    CHECK(h.ktheory->second == FgAbelianGroup::free(2));
}

TEST_CASE("codimension 1 with three cut point orbits", "[codim1]") {
    auto s = fibonacci({Rat(0), Rat(1, 3), Rat(2, 3)});
    auto cx = generate(s);
    REQUIRE(cx.count(0) == 3);
    auto h = compute_homology(s, cx);
    CHECK(h.groups[0] == FgAbelianGroup::free(4));  // L_0 + d
    CHECK(h.groups[1] == FgAbelianGroup::free(1));
    for (const auto& [p, Dp] : h.modp_D) CHECK(Dp == h.D);
}

TEST_CASE("codim1 rejects other codimensions", "[codim1]") {
    auto e = catalog_find("penrose");
    auto cx = generate(e->scheme);
    CHECK_THROWS_AS(codim1(e->scheme, cx), std::invalid_argument);
}

TEST_CASE("torsion_ranks recursion", "[torsion]") {
    // all equal: zeros
    CHECK(torsion_ranks_from({3, 2, 1}, {3, 2, 1}) == std::vector<long>({0, 0, 0}));
    // TTT-like at p = 5: D^p = D + (2, 2, 0) pattern -> T = (2, 0, 0)
    CHECK(torsion_ranks_from({24, 5, 1}, {26, 7, 1}) == std::vector<long>({2, 0, 0}));
    // inconsistent input must be diagnosed
    CHECK_THROWS_AS(torsion_ranks_from({3, 3}, {2, 3}), std::logic_error);
}

TEST_CASE("torsion band check catches violations", "[torsion]") {
    HomologyResult bad;
    bad.d = 2;
    bad.n = 2;
    bad.groups = {FgAbelianGroup::free(5), FgAbelianGroup(2, {Int(3)}), FgAbelianGroup::free(1)};
    auto rep = torsion_band_check(bad);
    CHECK_FALSE(rep.ok);  // torsion in degree 1 >= (n-1)d/n = 1

    bad.groups[1] = FgAbelianGroup::free(2);
    CHECK(torsion_band_check(bad).ok);

    bad.groups[2] = FgAbelianGroup::free(2);  // top group must be Z
    CHECK_FALSE(torsion_band_check(bad).ok);
}

TEST_CASE("ktheory refuses d >= 4", "[ktheory]") {
    HomologyResult r;
    r.d = 4;
    r.n = 2;
    r.groups.assign(5, FgAbelianGroup::free(1));
    CHECK_THROWS_AS(ktheory(r), std::invalid_argument);
}
