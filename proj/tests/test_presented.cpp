#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "tilehom/presented.hpp"

using namespace tilehom;
using namespace tilehom::testing;

TEST_CASE("presented group basics", "[presented]") {
    // Z^2 / <(2,0)> = Z + Z/2
    PresentedGroup g(2, IntMat{{Int(2), Int(0)}});
    auto a = g.group();
    CHECK(a.free_rank == 1);
    CHECK(a.invariant_factors == std::vector<Int>{Int(2)});
}

TEST_CASE("presented map cokernel and kernel", "[presented]") {
    // f: Z -> Z/4, 1 |-> 2: kernel = 2Z = Z, cokernel = Z/2
    PresentedGroup src = PresentedGroup::free_group(1);
    PresentedGroup tgt(1, IntMat{{Int(4)}});
    PresentedMap f(src, tgt, IntMat{{Int(2)}});
    CHECK(f.well_defined());
    auto ck = f.cokernel_group();
    CHECK(ck.free_rank == 0);
    CHECK(ck.invariant_factors == std::vector<Int>{Int(2)});
    auto k = f.kernel();
    auto kg = k.group.group();
    CHECK(kg.free_rank == 1);
    CHECK(kg.invariant_factors.empty());
    CHECK(k.lift == IntMat{{Int(2)}});

    // g: Z/4 -> Z/4, x |-> 2x: kernel = 2Z/4Z = Z/2, cokernel = Z/2
    PresentedMap g(tgt, tgt, IntMat{{Int(2)}});
    CHECK(g.well_defined());
    auto kg2 = g.kernel().group.group();
    CHECK(kg2.free_rank == 0);
    CHECK(kg2.invariant_factors == std::vector<Int>{Int(2)});
}

TEST_CASE("kernel of map between cokernels", "[presented]") {
    // source = Z^2/<(2,0)> = Z/2 + Z, target = Z/6
    PresentedGroup src(2, IntMat{{Int(2), Int(0)}});
    PresentedGroup tgt(1, IntMat{{Int(6)}});
    // map: e1 |-> 3, e2 |-> 1  (well-defined: 2*e1 |-> 6 = 0)
    PresentedMap f(src, tgt, IntMat{{Int(3)}, {Int(1)}});
    REQUIRE(f.well_defined());
    // kernel: {(a,b): 3a+b = 0 mod 6}/<(2,0)>; the full group has order
    // |src| infinite with Z part; kernel group = {(a, -3a mod 6)} + ...
    auto k = f.kernel();
    auto kg = k.group.group();
    // kernel = {(a,b) : 3a+b = 0 mod 6} mod <(2,0)> = <(1,3)> free of rank 1:
    // 2*(1,3) = (0,6) and (0,6k),(1,3+6k) exhaust the solutions
    CHECK(kg.free_rank == 1);
    CHECK(kg.torsion_order() == 1);
    CHECK(f.cokernel_group().is_trivial());
}

TEST_CASE("kernel_mod_m picks up extra torsion", "[presented]") {
    // multiplication by 2 on Z: over Z/4 the kernel is 2Z/4Z = Z/2
    LatticeMap times2(IntMat{{Int(2)}});
    auto k4 = kernel_mod_m(times2, 4);
    auto g4 = k4.group.group();
    CHECK(g4.free_rank == 0);
    CHECK(g4.invariant_factors == std::vector<Int>{Int(2)});

    // over Z/2 the map is zero: kernel = Z/2
    auto k2 = kernel_mod_m(times2, 2);
    auto g2 = k2.group.group();
    CHECK(g2.invariant_factors == std::vector<Int>{Int(2)});

    // multiplication by 3 on Z over Z/4 is injective
    auto k3 = kernel_mod_m(LatticeMap(IntMat{{Int(3)}}), 4);
    CHECK(k3.group.group().is_trivial());
}

TEST_CASE("presented calculus consistency on random maps", "[presented][property]") {
    std::mt19937 rng(6060);
    for (int trial = 0; trial < 60; ++trial) {
        int gs = 1 + int(rng() % 3), gt = 1 + int(rng() % 3);
        IntMat f = random_mat(rng, gs, gt, -3, 3);
        PresentedGroup src = PresentedGroup::free_group(gs);
        PresentedGroup tgt = PresentedGroup::free_group(gt);
        PresentedMap pm(src, tgt, f);
        REQUIRE(pm.well_defined());
        // free source/target: kernel group = integer kernel lattice (free)
        auto k = pm.kernel();
        auto kg = k.group.group();
        CHECK(kg.invariant_factors.empty());
        CHECK(kg.free_rank == kernel_basis(f).rows());
        // cokernel matches the LatticeMap cokernel
        CHECK(pm.cokernel_group() == cokernel(LatticeMap(f)));
    }
}
