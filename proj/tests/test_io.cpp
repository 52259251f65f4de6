#include <doctest.h>

#include <sstream>

#include "jns/generators.hpp"
#include "jns/grid_io.hpp"
#include "jns/report.hpp"

using namespace jns;

TEST_CASE("ascii grid files round trip bit for bit") {
    const DomainSpec d(2, 1, 3);
    GridFunction f = gen_random(d, 271, -5.0, 5.0);
    f.prepare_moments(2);
    std::ostringstream os;
    write_grid(f, os);
    std::istringstream is(os.str());
    const GridFunction g = read_grid(is);
    CHECK(g.domain() == d);
    CHECK(g.moment_order() == 2);
    REQUIRE(g.values().size() == f.values().size());
    for (std::size_t i = 0; i < f.values().size(); ++i) CHECK(g.values()[i] == f.values()[i]);

    // and the serialized form itself is reproducible
    std::ostringstream os2;
    write_grid(g, os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("binary grid files round trip") {
    const DomainSpec d(1, 0, 5);
    GridFunction f = gen_log_sample(d, 31337);
    f.prepare_moments(1);
    std::ostringstream os(std::ios::binary);
    write_grid(f, os, true);
    std::istringstream is(os.str(), std::ios::binary);
    const GridFunction g = read_grid(is);
    for (std::size_t i = 0; i < f.values().size(); ++i) CHECK(g.values()[i] == f.values()[i]);
}

TEST_CASE("malformed grid files are rejected") {
    SUBCASE("wrong magic") {
        std::istringstream is("grid v1 n=1 m=0 K=1\n0 0\n");
        CHECK_THROWS_AS((void)read_grid(is), error);
    }
    SUBCASE("missing fields") {
        std::istringstream is("jngrid v1 m=0\n0\n");
        CHECK_THROWS_AS((void)read_grid(is), error);
    }
    SUBCASE("unknown token") {
        std::istringstream is("jngrid v1 n=1 m=0 K=0 foo=2\n0\n");
        CHECK_THROWS_AS((void)read_grid(is), error);
    }
    SUBCASE("truncated payload") {
        std::istringstream is("jngrid v1 n=1 m=0 K=2 order=0\n1 2\n");
        CHECK_THROWS_AS((void)read_grid(is), error);
    }
}

TEST_CASE("generators are deterministic in the seed") {
    const DomainSpec d(1, 0, 6);
    const GridFunction a = gen_haar_sum(d, 12345, 8);
    const GridFunction b = gen_haar_sum(d, 12345, 8);
    const GridFunction c = gen_haar_sum(d, 54321, 8);
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        same = same && a.values()[i] == b.values()[i];
        differs = differs || a.values()[i] != c.values()[i];
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("report checks carry both sides, slack and a pass flag") {
    Report report;
    report.add_check("demo", 1.0, 2.0, true);
    const std::string body = report.to_string();
    CHECK(body.find("check.demo.lhs = 1") != std::string::npos);
    CHECK(body.find("check.demo.rhs = 2") != std::string::npos);
    CHECK(body.find("check.demo.slack = 1") != std::string::npos);
    CHECK(body.find("check.demo.pass = true") != std::string::npos);
    CHECK(report.all_passed());
    report.add_check("bad", 3.0, 2.0, false);
    CHECK_FALSE(report.all_passed());
    CHECK(report.failures() == 1);
}

TEST_CASE("generator shapes") {
    const DomainSpec d(1, 0, 3);
    SUBCASE("constant") {
        const GridFunction f = gen_constant(d, 3.0);
        for (double v : f.values()) CHECK(v == 3.0);
    }
    SUBCASE("spike is (A, 0, ..., 0)") {
        const GridFunction f = gen_spike(d, 4.0, 1);
        CHECK(f.value(0) == 4.0);
        for (std::int64_t i = 1; i < d.cell_count(); ++i) CHECK(f.value(i) == 0.0);
    }
    SUBCASE("log samples are positive") {
        const GridFunction f = gen_log_sample(d, 9);
        for (double v : f.values()) CHECK(v > 0.0);
    }
    SUBCASE("unknown kind") { CHECK_THROWS_AS((void)gen_kind_from_string("fourier"), error); }
}
