#include <doctest.h>

#include "jns/generators.hpp"
#include "jns/norms.hpp"
#include "jns/rng.hpp"

using namespace jns;

namespace {

/// Independent 2x2 oracle for the degree-1 projection on [0,1): solve
/// int P = M0, int P x = M1 for P = a + b x.
std::pair<double, double> solve_degree1_unit(double m0, double m1) {
    // [1, 1/2; 1/2, 1/3] (a, b)^T = (m0, m1)^T
    const double det = 1.0 / 3.0 - 0.25;
    const double a = (m0 / 3.0 - m1 / 2.0) / det;
    const double b = (m1 - m0 / 2.0) / det;
    return {a, b};
}

}  // namespace

TEST_CASE("degree-0 projection is the cube average") {
    const DomainSpec d(1, 0, 3);
    GridFunction f = gen_random(d, 5);
    f.prepare_moments(0);
    const DyadicCube cube(1, {1});
    const SpacePolynomial p = project(f, cube, 0);
    CHECK(p.at_cell(d, 4) == doctest::Approx(cell_average(f, cube)).epsilon(1e-14));
}

TEST_CASE("constants project to themselves at any degree") {
    const DomainSpec d(2, 0, 2);
    GridFunction f = GridFunction::constant(d, 2.5);
    f.prepare_moments(3);
    for (int s = 0; s <= 3; ++s) {
        const SpacePolynomial p = project(f, DyadicCube::root(), s);
        for (std::int64_t cell = 0; cell < d.cell_count(); ++cell)
            CHECK(p.at_cell(d, cell) == doctest::Approx(2.5).epsilon(1e-14));
    }
}

TEST_CASE("degree-1 projection of the two-cell sign function") {
    // f = +1 on [0, 0.5), -1 on [0.5, 1): moments are int f = 0,
    // int f x = -1/4, and the hand-solved system gives P(x) = 1.5 - 3x.
    const DomainSpec d(1, 0, 1);
    GridFunction f(d, {1.0, -1.0});
    f.prepare_moments(1);
    const auto [a, b] = solve_degree1_unit(0.0, -0.25);
    REQUIRE(a == doctest::Approx(1.5).epsilon(1e-15));
    REQUIRE(b == doctest::Approx(-3.0).epsilon(1e-15));
    const SpacePolynomial p = project(f, DyadicCube::root(), 1);
    for (double x : {0.1, 0.25, 0.5, 0.9})
        CHECK(p.evaluate({x}) == doctest::Approx(a + b * x).epsilon(1e-13));
}

TEST_CASE("localized projection branches on side(Q) vs c0") {
    const DomainSpec d(1, 1, 3);
    GridFunction f = gen_random(d, 17);
    f.prepare_moments(1);
    const NormParams params = NormParams::make(2.0, 1.0, 1, 0.0, 1.0, Variant::localized, d);
    SUBCASE("side(Q) = c0 truncates to zero") {
        const SpacePolynomial p = localized_project(f, DyadicCube(1, {0}), params);
        CHECK(p.is_zero());
    }
    SUBCASE("side(Q) < c0 delegates to project") {
        const DyadicCube q(2, {1});
        const SpacePolynomial loc = localized_project(f, q, params);
        const SpacePolynomial direct = project(f, q, 1);
        for (std::size_t i = 0; i < loc.coeffs().size(); ++i)
            CHECK(loc.coeffs()[i] == direct.coeffs()[i]);
    }
    SUBCASE("truncated oscillation of a constant is |Q|^-alpha |a|") {
        GridFunction c = GridFunction::constant(d, -1.5);
        c.prepare_moments(0);
        const NormParams p0 = NormParams::make(2.0, 1.0, 0, 0.0, 1.0, Variant::localized, d);
        CHECK(oscillation(c, DyadicCube(1, {1}), p0) == doctest::Approx(1.5).epsilon(1e-14));
    }
}

TEST_CASE("projection constants from the reproducing kernel") {
    CHECK(projection_constant(0, 1, 64) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(projection_constant(0, 2, 64) == doctest::Approx(1.0).epsilon(1e-13));

    // s = 1, n = 1: kernel 1 + 3(2x-1)(2y-1) on the unit interval, sup 4 at
    // the corners; cross-checked against the closed form on a sample grid.
    const double c11 = projection_constant(1, 1, 129);
    double oracle = 0.0;
    for (int i = 0; i < 129; ++i)
        for (int j = 0; j < 129; ++j) {
            const double x = double(i) / 128.0, y = double(j) / 128.0;
            oracle = std::max(oracle, std::abs(1.0 + 3.0 * (2 * x - 1) * (2 * y - 1)));
        }
    CHECK(oracle == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(c11 == doctest::Approx(4.0).epsilon(1e-12));

    CHECK(projection_constant(1, 2, 65) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)projection_constant(1, 1, 32), error);
}

TEST_CASE("polynomial sup/mean ratio") {
    const DomainSpec ref(1, 0, 0);
    SUBCASE("constants give ratio 1") {
        SpacePolynomial c(ref, DyadicCube::root(), 1, {3.0, 0.0});
        CHECK(poly_sup_mean_ratio(c, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("P(x) = x - 1/2 on [0,1): sup 1/2, avg |P| = 1/4, ratio 2") {
        SpacePolynomial p(ref, DyadicCube::root(), 1, {0.0, 1.0});
        CHECK(poly_sup_mean_ratio(p, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("sampled ratios never fall below 1") {
        const double c = poly_norm_ratio_constant(2, 1, 1.5, 150);
        CHECK(c >= 1.0);
        CHECK(poly_norm_ratio_constant(1, 2, 1.0, 100) >= 1.0);
        CHECK_THROWS_AS((void)poly_norm_ratio_constant(1, 1, 1.0, 50), error);
    }
}

TEST_CASE("moment orthogonality on random cubes") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = trial % 3 == 2 ? 2 : 1;
        const DomainSpec d(n, int(rng.below(2)), n == 1 ? 4 : 2);
        GridFunction f = gen_random(d, 1000 + std::uint64_t(trial));
        const int s = int(rng.below(4));
        f.prepare_moments(s);
        const int level = int(rng.below(std::uint64_t(d.K) + 1));
        DyadicCube cube;
        cube.level = level;
        for (int i = 0; i < n; ++i) cube.index[i] = rng.int_in(0, (std::int64_t{1} << level) - 1);
        const SpacePolynomial p = project(f, cube, s);
        for (const MultiIndex& beta : multi_indices_upto(n, s)) {
            const double data = integrate_monomial(f, cube, beta);
            const double poly = p.cube_moment(d, cube, beta);
            CHECK(std::abs(data - poly) <= 1e-10 * (1.0 + std::abs(data)));
        }
    }
}

TEST_CASE("projection is linear and homogeneous") {
    const DomainSpec d(1, 0, 4);
    GridFunction f = gen_random(d, 8);
    GridFunction g = gen_haar_sum(d, 9);
    f.prepare_moments(2);
    g.prepare_moments(2);
    GridFunction sum = add(f, g);
    sum.prepare_moments(2);
    const DyadicCube cube(1, {0});
    const SpacePolynomial pf = project(f, cube, 2);
    const SpacePolynomial pg = project(g, cube, 2);
    const SpacePolynomial ps = project(sum, cube, 2);
    for (std::size_t i = 0; i < ps.coeffs().size(); ++i)
        CHECK(ps.coeffs()[i] ==
              doctest::Approx(pf.coeffs()[i] + pg.coeffs()[i]).epsilon(1e-12));

    GridFunction half = scale(f, 0.5);
    half.prepare_moments(2);
    const SpacePolynomial ph = project(half, cube, 2);
    for (std::size_t i = 0; i < ph.coeffs().size(); ++i)
        CHECK(ph.coeffs()[i] == 0.5 * pf.coeffs()[i]);  // exact: power-of-two scale
}

TEST_CASE("cellwise projection reproduces sampled polynomials exactly") {
    // center samples of any P in P_s lie in the model's polynomial span, so
    // the residual grid is zero and oscillation is invariant under adding P
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = trial % 2 + 1;
        const DomainSpec d(n, 0, n == 1 ? 5 : 3);
        const int s = int(rng.below(3));
        std::vector<double> coeffs(std::size_t(poly_space_dim(n, s)));
        for (double& c : coeffs) c = rng.uniform(-2.0, 2.0);
        const SpacePolynomial a(d, DyadicCube::root(), s, coeffs);
        std::vector<double> samples(std::size_t(d.cell_count()));
        for (std::int64_t cell = 0; cell < d.cell_count(); ++cell)
            samples[std::size_t(cell)] = a.at_cell(d, cell);
        GridFunction fa(d, std::move(samples));
        fa.prepare_moments(s);
        const auto resid = cellwise_residual(fa, DyadicCube::root(), s, false);
        for (double rres : resid) CHECK(std::abs(rres) <= 1e-12 * (1.0 + fa.max_abs()));
    }
}

TEST_CASE("pointwise projection bound with the computed constant") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = trial % 2 + 1;
        const DomainSpec d(n, 0, n == 1 ? 5 : 3);
        GridFunction f = gen_random(d, 300 + std::uint64_t(trial));
        const int s = int(rng.below(3));
        f.prepare_moments(s);
        const int level = int(rng.below(std::uint64_t(d.K)));
        DyadicCube cube;
        cube.level = level;
        for (int i = 0; i < n; ++i) cube.index[i] = rng.int_in(0, (std::int64_t{1} << level) - 1);
        const SpacePolynomial p = project(f, cube, s);
        const double cs = projection_constant_cached(s, n);
        double mean_abs = 0.0, sup = 0.0;
        for_each_cell(d, cube, [&](std::int64_t cell) {
            mean_abs += std::abs(f.value(cell));
            sup = std::max(sup, std::abs(p.at_cell(d, cell)));
        });
        mean_abs *= d.cell_measure() / cube.measure(d);
        CHECK(sup <= cs * mean_abs * (1.0 + 1e-12));
    }
}
