#include <doctest.h>

#include <set>

#include "jns/generators.hpp"
#include "jns/grid_function.hpp"
#include "jns/rng.hpp"

using namespace jns;

TEST_CASE("cube children bisect the parent") {
    SUBCASE("1-D root of [0,1)") {
        const DomainSpec d(1, 0, 3);
        const auto kids = cube_children(DyadicCube::root(), d);
        REQUIRE(kids.size() == 2);
        CHECK(kids[0].low(d, 0) == 0.0);
        CHECK(kids[0].side(d) == 0.5);
        CHECK(kids[1].low(d, 0) == 0.5);
    }
    SUBCASE("2-D root splits into the 4 quadrants") {
        const DomainSpec d(2, 0, 2);
        const auto kids = cube_children(DyadicCube::root(), d);
        REQUIRE(kids.size() == 4);
        std::set<std::pair<double, double>> corners;
        for (const auto& k : kids) {
            CHECK(k.side(d) == 0.5);
            corners.insert({k.low(d, 0), k.low(d, 1)});
        }
        CHECK(corners == std::set<std::pair<double, double>>{
                             {0.0, 0.0}, {0.0, 0.5}, {0.5, 0.0}, {0.5, 0.5}});
    }
    SUBCASE("leaf at maximum depth has no children") {
        const DomainSpec d(1, 0, 2);
        DyadicCube leaf;
        leaf.level = 2;
        CHECK_THROWS_WITH_AS((void)cube_children(leaf, d), "no children at maximum depth", error);
    }
}

TEST_CASE("level enumeration covers the domain with disjoint interiors") {
    const DomainSpec d(2, 1, 3);
    for (int k = 0; k <= 3; ++k) {
        const auto cubes = cubes_at_level(d, k);
        CHECK(cubes.size() == std::size_t(1) << (2 * k));
        std::vector<char> hit(std::size_t(d.cell_count()), 0);
        for (const auto& cube : cubes)
            for_each_cell(d, cube, [&](std::int64_t cell) {
                CHECK(hit[std::size_t(cell)] == 0);
                hit[std::size_t(cell)] = 1;
            });
        for (char h : hit) CHECK(h == 1);
    }
}

TEST_CASE("integrate_monomial matches analytic integrals") {
    const DomainSpec d(1, 0, 3);
    GridFunction one = GridFunction::constant(d, 1.0);
    one.prepare_moments(2);
    const DyadicCube root = DyadicCube::root();
    CHECK(integrate_monomial(one, root, MultiIndex{0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate_monomial(one, root, MultiIndex{1}) == doctest::Approx(0.5).epsilon(1e-14));

    // f = 1 on [0, 0.5), 0 on [0.5, 1): int f x = 1/8
    std::vector<double> vals{1, 1, 1, 1, 0, 0, 0, 0};
    GridFunction step(d, vals);
    step.prepare_moments(1);
    CHECK(integrate_monomial(step, root, MultiIndex{1}) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("cell averages") {
    const DomainSpec d(1, 0, 2);
    SUBCASE("constants average to themselves on every cube") {
        GridFunction c = GridFunction::constant(d, -2.75);
        c.prepare_moments(0);
        for (int k = 0; k <= 2; ++k)
            for (const auto& cube : cubes_at_level(d, k))
                CHECK(cell_average(c, cube) == doctest::Approx(-2.75).epsilon(1e-15));
    }
    SUBCASE("spike (4,0,0,0)") {
        GridFunction f(d, {4, 0, 0, 0});
        f.prepare_moments(0);
        CHECK(cell_average(f, DyadicCube::root()) == doctest::Approx(1.0));
        CHECK(cell_average(f, DyadicCube(2, {0})) == doctest::Approx(4.0));
    }
}

TEST_CASE("moment order must be prepared") {
    const DomainSpec d(1, 0, 2);
    GridFunction f = GridFunction::constant(d, 1.0);
    f.prepare_moments(1);
    CHECK_THROWS_WITH_AS((void)integrate_monomial(f, DyadicCube::root(), MultiIndex{2}),
                         "moment order not prepared", error);
}

TEST_CASE("grid values must be finite") {
    const DomainSpec d(1, 0, 1);
    CHECK_THROWS_AS(GridFunction(d, {1.0, std::nan("")}), error);
}

TEST_CASE("partition additivity of moments") {
    Rng rng(7);
    for (int n = 1; n <= 2; ++n) {
        const DomainSpec d(n, 1, n == 1 ? 5 : 3);
        GridFunction f = gen_random(d, 11 + std::uint64_t(n));
        f.prepare_moments(3);
        for (const MultiIndex& beta : multi_indices_upto(n, 3))
            for (int k = 0; k < d.K; ++k)
                for (const auto& cube : cubes_at_level(d, k)) {
                    const double whole = integrate_monomial(f, cube, beta);
                    double parts = 0.0;
                    for (const auto& child : cube_children(cube, d))
                        parts += integrate_monomial(f, child, beta);
                    CHECK(std::abs(whole - parts) <=
                          1e-12 * (std::abs(whole) + std::abs(parts) + 1e-30));
                }
    }
}

TEST_CASE("prefix tables agree with naive summation on random cubes") {
    Rng rng(99);
    for (int n = 1; n <= 2; ++n) {
        const DomainSpec d(n, 1, n == 1 ? 6 : 3);
        GridFunction f = gen_random(d, 4242 + std::uint64_t(n));
        f.prepare_moments(3);
        const double h2 = d.cell_side() / 2.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int level = int(rng.below(std::uint64_t(d.K) + 1));
            DyadicCube cube;
            cube.level = level;
            for (int i = 0; i < n; ++i)
                cube.index[i] = rng.int_in(0, (std::int64_t{1} << level) - 1);
            for (const MultiIndex& beta : multi_indices_upto(n, 3)) {
                Accumulator naive;
                for_each_cell(d, cube, [&](std::int64_t cell) {
                    auto c = d.cell_coords(cell);
                    double w = f.value(cell);
                    for (int i = 0; i < n; ++i)
                        w *= monomial_box_integral(d.cell_center(c[i]), h2, beta.beta[i]);
                    naive.add(w);
                });
                const double table = integrate_monomial(f, cube, beta);
                CHECK(std::abs(table - naive.total()) <=
                      1e-12 * (std::abs(table) + std::abs(naive.total()) + 1e-30));
            }
        }
    }
}
