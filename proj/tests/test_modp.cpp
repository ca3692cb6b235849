#include "latrep/modp.hpp"

#include <doctest.h>

#include <random>

using namespace latrep;

TEST_CASE("rref of identity and zero") {
    auto id = rref_modp(ModPMatrix::identity(5, 3));
    CHECK(id.rank == 3);
    CHECK(id.kernel_trivial);

    ModPMatrix zero(3, 2, 2);
    auto z = rref_modp(zero);
    CHECK(z.rank == 0);
    CHECK(z.kernel.cols() == 2);
}

TEST_CASE("rank-one kernel matches a hand check") {
    ModPMatrix m(5, 2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    auto r = rref_modp(m);
    CHECK(r.rank == 1);
    CHECK(r.kernel.cols() == 1);
    // Every kernel column is annihilated.
    ModPMatrix image = m * r.kernel;
    CHECK(image.is_zero());
    // (2, -1) = (2, 4) lies in the kernel span: proportional to the basis.
    std::uint64_t a = r.kernel(0, 0), b = r.kernel(1, 0);
    bool proportional = false;
    for (std::uint64_t c = 1; c < 5; ++c)
        if ((a * c) % 5 == 2 && (b * c) % 5 == 4) proportional = true;
    CHECK(proportional);
}

TEST_CASE("composite moduli are rejected") {
    CHECK_THROWS_AS(ModPMatrix(6, 2, 2), InputError);
    CHECK_THROWS_AS(ModPMatrix(1, 2, 2), InputError);
}

TEST_CASE("solving against an identity block") {
    ModPMatrix a = ModPMatrix::identity(7, 3);
    ModPMatrix b(7, 3, 1);
    b(0, 0) = 2;
    b(1, 0) = 5;
    b(2, 0) = 6;
    auto sol = solve_linear_modp(a, b);
    CHECK(sol.consistent);
    CHECK(sol.kernel_trivial);
    CHECK(sol.particular == b);
}

TEST_CASE("zero system has full solution space") {
    ModPMatrix a(3, 2, 2);
    ModPMatrix b(3, 2, 1);
    auto sol = solve_linear_modp(a, b);
    CHECK(sol.consistent);
    CHECK(sol.kernel.cols() == 2);
}

TEST_CASE("binary diagonal solution set enumerated exhaustively") {
    // x + y = 0 over F_2: solutions are exactly {(0,0), (1,1)}.
    ModPMatrix a(2, 1, 2);
    a(0, 0) = 1;
    a(0, 1) = 1;
    ModPMatrix b(2, 1, 1);
    auto sol = solve_linear_modp(a, b);
    REQUIRE(sol.consistent);
    REQUIRE(sol.kernel.cols() == 1);
    auto satisfies = [&](std::uint64_t x, std::uint64_t y) {
        return (x + y) % 2 == 0;
    };
    for (std::uint64_t x = 0; x < 2; ++x)
        for (std::uint64_t y = 0; y < 2; ++y) {
            bool in_set = false;
            // particular + t * kernel over t in F_2
            for (std::uint64_t t = 0; t < 2; ++t) {
                std::uint64_t sx = (sol.particular(0, 0) + t * sol.kernel(0, 0)) % 2;
                std::uint64_t sy = (sol.particular(1, 0) + t * sol.kernel(1, 0)) % 2;
                if (sx == x && sy == y) in_set = true;
            }
            CHECK(in_set == satisfies(x, y));
        }
}

TEST_CASE("inconsistent systems are reported") {
    ModPMatrix a(3, 2, 1);
    a(0, 0) = 1;
    a(1, 0) = 1;
    ModPMatrix b(3, 2, 1);
    b(0, 0) = 1;
    b(1, 0) = 2;
    auto sol = solve_linear_modp(a, b);
    CHECK(!sol.consistent);
}

TEST_CASE("shape mismatches are rejected") {
    ModPMatrix a = ModPMatrix::identity(3, 2);
    ModPMatrix b(3, 3, 1);
    CHECK_THROWS_AS(solve_linear_modp(a, b), InputError);
}

TEST_CASE("mod-p rank agrees with rational rank away from the prime") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> dist(-9, 9);
    int checked = 0;
    while (checked < 25) {
        std::size_t n = 2 + rng() % 4;
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
        Rat det = m.det();
        if (det == 0 || valuation(det, Int(5)) != 0) continue;
        auto red = rref_modp(ModPMatrix::from_exact(m, 5));
        CHECK(red.rank == n);
        ++checked;
    }
}

TEST_CASE("reduction rejects denominators divisible by p") {
    ExactMatrix m(1, 1, {Rat(1, 5)});
    CHECK_THROWS_AS(ModPMatrix::from_exact(m, 5), InputError);
}
