#include <doctest.h>

#include "jns/generators.hpp"
#include "jns/norms.hpp"
#include "jns/rng.hpp"

using namespace jns;

namespace {

NormParams std_params(const DomainSpec& d, double p = 2.0, double q = 1.0, int s = 0,
                      double alpha = 0.0, double c0 = 1.0) {
    return NormParams::make(p, q, s, alpha, std::min(c0, d.side()), Variant::localized, d);
}

}  // namespace

TEST_CASE("c0 snaps to dyadic scales") {
    CHECK(snap_dyadic(1.0) == 1.0);
    CHECK(snap_dyadic(0.25) == 0.25);
    CHECK(snap_dyadic(0.7) == 0.5);
    CHECK(snap_dyadic(3.0) == 2.0);
    CHECK_THROWS_AS((void)snap_dyadic(0.0), error);
}

TEST_CASE("parameter validation") {
    const DomainSpec d(1, 0, 2);
    CHECK_THROWS_AS((void)NormParams::make(1.0, 1.0, 0, 0.0, 1.0, Variant::localized, d), error);
    CHECK_THROWS_AS((void)NormParams::make(2.0, 0.5, 0, 0.0, 1.0, Variant::localized, d), error);
    CHECK_THROWS_AS((void)NormParams::make(2.0, 1.0, 0, -0.1, 1.0, Variant::localized, d), error);
    CHECK_THROWS_AS((void)NormParams::make(2.0, 1.0, 0, 0.0, 2.0, Variant::localized, d), error);
}

TEST_CASE("oscillation examples") {
    const DomainSpec d(1, 0, 1);
    SUBCASE("spike +1/-1 with s = 0, q = 1, truncated projection") {
        GridFunction f(d, {1.0, -1.0});
        f.prepare_moments(0);
        CHECK(oscillation(f, DyadicCube::root(), std_params(d)) == doctest::Approx(1.0));
    }
    SUBCASE("constants vanish below c0 and survive above") {
        const DomainSpec d2(1, 1, 3);
        GridFunction f = GridFunction::constant(d2, 4.0);
        f.prepare_moments(0);
        const NormParams params = std_params(d2);
        CHECK(oscillation(f, DyadicCube(2, {1}), params) == 0.0);       // side 1/2 < c0
        CHECK(oscillation(f, DyadicCube(1, {0}), params) == doctest::Approx(4.0));  // side 1
    }
}

TEST_CASE("jn norm of constants: |a| 2^{m/p} via tilings at scale >= c0") {
    for (int m = 0; m <= 3; ++m) {
        const DomainSpec d(1, m, m + 1);
        GridFunction f = GridFunction::constant(d, -2.0);
        f.prepare_moments(0);
        const NormResult r = jn_norm_dyadic(f, std_params(d, 2.0));
        CHECK(r.value == doctest::Approx(2.0 * std::pow(2.0, m / 2.0)).epsilon(1e-13));
        CHECK(packing_value(f, r.packing, std_params(d, 2.0)) ==
              doctest::Approx(r.value).epsilon(1e-13));
    }
}

TEST_CASE("JN norm kills polynomial grids") {
    SUBCASE("constants") {
        const DomainSpec d(1, 2, 4);
        GridFunction f = GridFunction::constant(d, 5.0);
        f.prepare_moments(0);
        CHECK(JN_norm_dyadic(f, std_params(d)).value <= 1e-12);
    }
    SUBCASE("center-sampled polynomials of degree <= s") {
        const DomainSpec d(1, 0, 6);
        const SpacePolynomial a(d, DyadicCube::root(), 1, {0.3, 1.7});
        std::vector<double> v(std::size_t(d.cell_count()));
        for (std::int64_t cell = 0; cell < d.cell_count(); ++cell)
            v[std::size_t(cell)] = a.at_cell(d, cell);
        GridFunction f(d, std::move(v));
        f.prepare_moments(1);
        CHECK(JN_norm_dyadic(f, std_params(d, 2.0, 1.0, 1)).value <= 1e-8 * f.max_abs());
    }
}

TEST_CASE("zero function: zero norm, empty packing") {
    const DomainSpec d(2, 0, 2);
    GridFunction f = GridFunction::constant(d, 0.0);
    f.prepare_moments(0);
    const NormResult r = jn_norm_dyadic(f, std_params(d, 2.0, 1.0, 0, 0.0, 0.5));
    CHECK(r.value == 0.0);
    CHECK(r.packing.empty());
}

TEST_CASE("packing oracle") {
    SUBCASE("depth-1 binary tree by hand: max(w(root), w(L)+w(R))") {
        const DomainSpec d(1, 0, 1);
        GridFunction f(d, {2.0, -1.0});
        f.prepare_moments(0);
        const NormParams params = std_params(d, 2.0, 1.0, 0, 0.0, 0.5);
        auto w = [&](const DyadicCube& c) {
            const double osc = oscillation(f, c, params);
            return c.measure(d) * osc * osc;
        };
        const double by_hand = std::max(w(DyadicCube::root()),
                                        w(DyadicCube(1, {0})) + w(DyadicCube(1, {1})));
        CHECK(packing_oracle(f, params, 1) == doctest::Approx(std::sqrt(by_hand)).epsilon(1e-13));
        CHECK(jn_norm_dyadic(f, params).value ==
              doctest::Approx(std::sqrt(by_hand)).epsilon(1e-13));
    }
    SUBCASE("a depth-3 binary tree has 677 antichains") {
        CHECK(antichain_count(DomainSpec(1, 0, 3)) == 677.0);
        CHECK(antichain_count(DomainSpec(2, 0, 2)) == 83522.0);
    }
    SUBCASE("oracle limit") {
        const DomainSpec d(1, 0, 5);
        GridFunction f = GridFunction::constant(d, 1.0);
        f.prepare_moments(0);
        CHECK_THROWS_WITH_AS((void)packing_oracle(f, std_params(d), 5), "oracle limit exceeded",
                             error);
    }
    SUBCASE("random functions match the DP, both variants") {
        Rng rng(3);
        for (int t = 0; t < 25; ++t) {
            const DomainSpec d(1, 0, 3);
            GridFunction f = gen_random(d, 50 + std::uint64_t(t));
            const int s = t % 2;
            f.prepare_moments(s);
            const NormParams params = std_params(d, 1.5 + t % 2, 1.0 + (t % 3 == 0), s,
                                                 (t % 4 == 0) ? 0.2 : 0.0, 0.5);
            CHECK(jn_norm_dyadic(f, params).value ==
                  doctest::Approx(packing_oracle(f, params, 3)).epsilon(1e-12));
            CHECK(JN_norm_dyadic(f, params).value ==
                  doctest::Approx(packing_oracle(f, params.with(Variant::plain), 3))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("campanato norm") {
    SUBCASE("zero and constants") {
        const DomainSpec d(1, 1, 3);
        GridFunction z = GridFunction::constant(d, 0.0);
        z.prepare_moments(0);
        CHECK(campanato_norm_dyadic(z, std_params(d)) == 0.0);
        GridFunction c = GridFunction::constant(d, -3.5);
        c.prepare_moments(0);
        CHECK(campanato_norm_dyadic(c, std_params(d)) == doctest::Approx(3.5));
    }
    SUBCASE("dominates jn / measure^{1/p}") {
        const DomainSpec d(1, 1, 4);
        GridFunction f = gen_haar_sum(d, 21);
        f.prepare_moments(0);
        const NormParams params = std_params(d, 3.0, 1.0, 0, 0.0, 0.5);
        const double jn = jn_norm_dyadic(f, params).value;
        const double camp = campanato_norm_dyadic(f, params);
        CHECK(jn <= std::pow(d.measure(), 1.0 / 3.0) * camp * (1.0 + 1e-12));
    }
}

TEST_CASE("lebesgue norm") {
    const DomainSpec d(1, 0, 2);
    GridFunction z = GridFunction::constant(d, 0.0);
    CHECK(lebesgue_norm(z, 2.0) == 0.0);
    GridFunction c = GridFunction::constant(d, 1.25);
    CHECK(lebesgue_norm(c, 3.0) == doctest::Approx(1.25));
    GridFunction f(d, {4, 0, 0, 0});
    CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(2.0));  // (16/4)^{1/2}
}

TEST_CASE("weak quasi-norm") {
    const DomainSpec d(1, 0, 2);
    SUBCASE("zero function") {
        GridFunction z = GridFunction::constant(d, 0.0);
        z.prepare_moments(0);
        CHECK(weak_quasi_norm(z, DyadicCube::root(), 0, 1.0) == 0.0);
    }
    SUBCASE("indicator of the left half at p = 1") {
        GridFunction f(d, {1, 1, 0, 0});
        f.prepare_moments(0);
        CHECK(weak_quasi_norm(f, DyadicCube::root(), 0, 1.0) == doctest::Approx(0.5));
    }
    SUBCASE("Chebyshev domination") {
        Rng rng(5);
        for (int t = 0; t < 40; ++t) {
            const DomainSpec dd(1, 0, 5);
            GridFunction f = gen_random(dd, 600 + std::uint64_t(t));
            const int s = t % 2;
            f.prepare_moments(s);
            const double p = 1.0 + rng.uniform(0.0, 3.0);
            const auto resid = cellwise_residual(f, DyadicCube::root(), s, false);
            Accumulator acc;
            for (double v : resid) acc.add(std::pow(std::abs(v), p) * dd.cell_measure());
            CHECK(weak_quasi_norm(f, DyadicCube::root(), s, p) <=
                  std::pow(acc.total(), 1.0 / p) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("norm axioms on the dyadic functional") {
    Rng rng(13);
    const DomainSpec d(1, 0, 4);
    for (int t = 0; t < 20; ++t) {
        GridFunction f = gen_random(d, 700 + std::uint64_t(t));
        GridFunction g = gen_haar_sum(d, 800 + std::uint64_t(t));
        const int s = t % 2;
        f.prepare_moments(s);
        g.prepare_moments(s);
        const NormParams params = std_params(d, 2.5, 1.0, s, 0.0, 0.5);

        const double nf = jn_norm_dyadic(f, params).value;
        const double lambda = rng.uniform(-3.0, 3.0);
        GridFunction lf = scale(f, lambda);
        lf.prepare_moments(s);
        CHECK(jn_norm_dyadic(lf, params).value ==
              doctest::Approx(std::abs(lambda) * nf).epsilon(1e-13));

        GridFunction sum = add(f, g);
        sum.prepare_moments(s);
        const double ng = jn_norm_dyadic(g, params).value;
        CHECK(jn_norm_dyadic(sum, params).value <= nf + ng + 1e-10 * (nf + ng + 1.0));
    }
}

TEST_CASE("oscillation is monotone in q") {
    Rng rng(19);
    const DomainSpec d(1, 0, 4);
    GridFunction f = gen_random(d, 23);
    f.prepare_moments(1);
    for (int t = 0; t < 30; ++t) {
        const double q1 = 1.0 + rng.uniform(0.0, 2.0);
        const double q2 = q1 + rng.uniform(0.0, 2.0);
        const int level = int(rng.below(4));
        DyadicCube cube;
        cube.level = level;
        cube.index[0] = rng.int_in(0, (std::int64_t{1} << level) - 1);
        const NormParams base = std_params(d, 2.0, q1, t % 2, 0.0, 0.5);
        CHECK(oscillation(f, cube, base) <=
              oscillation(f, cube, base.with_q(q2)) * (1.0 + 1e-12));
    }
}

TEST_CASE("oscillation is invariant under adding sampled polynomials below c0") {
    // the localized projection reproduces P_s exactly in the cell model, so
    // oscillations with side(Q) < c0 cannot see the added polynomial
    Rng rng(29);
    const DomainSpec d(1, 1, 5);
    GridFunction f = gen_random(d, 31);
    for (int s = 0; s <= 2; ++s) {
        f.prepare_moments(s);
        std::vector<double> coeffs(std::size_t(poly_space_dim(1, s)));
        for (double& c : coeffs) c = rng.uniform(-2.0, 2.0);
        const SpacePolynomial a(d, DyadicCube::root(), s, coeffs);
        std::vector<double> av(std::size_t(d.cell_count()));
        for (std::int64_t cell = 0; cell < d.cell_count(); ++cell)
            av[std::size_t(cell)] = a.at_cell(d, cell);
        GridFunction shifted = add(f, GridFunction(d, av));
        shifted.prepare_moments(s);
        const NormParams params = std_params(d, 2.0, 1.0, s, 0.0, 1.0);
        for (int k = 0; k <= d.K; ++k)
            for (const auto& cube : cubes_at_level(d, k)) {
                if (cube.side(d) >= params.c0) continue;
                CHECK(std::abs(oscillation(f, cube, params) -
                               oscillation(shifted, cube, params)) <= 1e-10);
            }
        // with c0 above the domain side every projection is plain, so the
        // whole JN functional is invariant as well
        const NormParams plain_all = std_params(d, 2.0, 1.0, s, 0.0, d.side());
        CHECK(JN_norm_dyadic(f, plain_all).value ==
              doctest::Approx(JN_norm_dyadic(shifted, plain_all).value)
                  .epsilon(1e-10)
                  .scale(1.0 + f.max_abs()));
    }
}

TEST_CASE("limit sweep: constants have zero gap, random gaps shrink") {
    const std::vector<double> p_list{2, 8, 32, 128, 512};
    SUBCASE("f == a on a measure-1 domain") {
        const DomainSpec d(1, 0, 3);
        GridFunction f = GridFunction::constant(d, 1.5);
        f.prepare_moments(0);
        const SweepResult sweep = norm_limit_sweep(f, std_params(d), p_list);
        for (const auto& row : sweep.rows) CHECK(row.jn == doctest::Approx(1.5).epsilon(1e-13));
        CHECK(sweep.terminal_gap <= 1e-13);
    }
    SUBCASE("random f: monotone, bracketed, small terminal gap") {
        const DomainSpec d(1, 0, 5);
        GridFunction f = gen_random(d, 37);
        f.prepare_moments(0);
        const SweepResult sweep =
            norm_limit_sweep(f, std_params(d, 2.0, 1.0, 0, 0.0, 0.25), p_list);
        CHECK(sweep.monotone);
        CHECK(sweep.terminal_gap <= 0.02);
        CHECK(sweep.single_cube_lower <= sweep.rows.back().jn * (1.0 + 1e-12));
        CHECK(sweep.rows.back().jn <= sweep.measure_upper * (1.0 + 1e-12));
    }
}

TEST_CASE("shifted-lattice ensemble only improves the lower bound") {
    Rng rng(41);
    for (int t = 0; t < 15; ++t) {
        const int n = t % 3 == 2 ? 2 : 1;
        const DomainSpec d(n, 0, n == 1 ? 4 : 2);
        GridFunction f = gen_random(d, 900 + std::uint64_t(t));
        f.prepare_moments(0);
        const NormParams params = std_params(d, 2.0, 1.0, 0, 0.0, 0.25);
        const double base = jn_norm_dyadic(f, params).value;
        const double shifted = jn_norm_shifted(f, params);
        CHECK(shifted >= base * (1.0 - 1e-12));
    }
    SUBCASE("a bump straddling the dyadic midline is seen only by a shift") {
        const DomainSpec d(1, 0, 2);
        GridFunction f(d, {0.0, 1.0, -1.0, 0.0});
        f.prepare_moments(0);
        const NormParams params = std_params(d, 2.0, 1.0, 0, 0.0, 0.5);
        const double base = jn_norm_dyadic(f, params).value;
        CHECK(base == doctest::Approx(0.5));  // best standard packing: the two halves
        // the lattice shifted by one cell holds [1/4, 3/4), where the full
        // oscillation 1 is visible
        CHECK(jn_norm_shifted(f, params) == doctest::Approx(std::sqrt(0.5)));
    }
}

TEST_CASE("equivalence experiments pass on random data") {
    const DomainSpec d(1, 1, 5);
    GridFunction f = gen_haar_sum(d, 47, 8);
    f.prepare_moments(1);
    SUBCASE("c0 independence and q invariance") {
        const NormParams params = std_params(d, 2.0, 2.0, 1, 0.0, 1.0);
        for (const auto& ex : equivalence_experiments(
                 f, params, {Experiment::c0_independence, Experiment::q_invariance}))
            CHECK(ex.all_passed());
        // a window spanning several dyadic scales
        CHECK(experiment_c0_independence(f, params, 0.25, 2.0).all_passed());
    }
    SUBCASE("intersection needs alpha > 0") {
        const NormParams params = std_params(d, 2.0, 1.0, 0, 0.15, 1.0);
        CHECK(experiment_intersection(f, params).all_passed());
        CHECK_THROWS_AS((void)experiment_intersection(f, std_params(d)), error);
    }
    SUBCASE("Lebesgue identifications") {
        CHECK(experiment_lebesgue_q(f, std_params(d, 2.0, 3.0)).all_passed());
        CHECK(experiment_lebesgue_p(f, std_params(d, 2.0, 2.0)).all_passed());
        CHECK_THROWS_AS((void)experiment_lebesgue_q(f, std_params(d, 3.0, 2.0)), error);
    }
    SUBCASE("quotient upper bound") {
        CHECK(experiment_quotient(f, std_params(d, 2.0, 1.0, 1)).all_passed());
    }
}

TEST_CASE("general dimension: 3-D DP agrees with the oracle") {
    const DomainSpec d(3, 0, 1);
    GridFunction f = gen_random(d, 53);
    f.prepare_moments(0);
    const NormParams params = std_params(d, 2.0, 1.0, 0, 0.0, 0.5);
    CHECK(jn_norm_dyadic(f, params).value ==
          doctest::Approx(packing_oracle(f, params, 1)).epsilon(1e-12));
    CHECK(cube_children(DyadicCube::root(), d).size() == 8);
}

TEST_CASE("vanishing certificate for constants when p < q") {
    const NormParams params =
        NormParams::make(1.5, 4.0, 0, 0.05, 1.0, Variant::localized, DomainSpec(1, 1, 2));
    const ExperimentResult ex = experiment_vanishing(2.0, params, 1, {1, 2, 3, 4}, 2);
    CHECK(ex.all_passed());
}
