#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace gsflow;

namespace {

SweepTrace fixture_sweep(const std::string& name) {
    auto c = testsupport::fixture_complex(name);
    return sweep(c.boundary, c.grading());
}

const SpanningChain& column_entry(const std::vector<SpanningChain>& z, std::size_t col) {
    for (const auto& s : z)
        if (s.column == col) return s;
    FAIL("column not spanned");
    return z.front();
}

}  // namespace

TEST_CASE("first-page spanning chains are the generators") {
    auto t = fixture_sweep("cone_example");
    for (std::size_t p = 0; p < t.size(); ++p) {
        int k = t.grading[p];
        auto z = z_module(t, 1, p, k);
        const auto& s = column_entry(z, p + 1);
        CHECK(s.xi == 1);
        CHECK(s.chain == Chain{{p, Integer(1)}});
    }
    CHECK_THROWS_AS(z_module(t, 1, 0, 1), Error);
    CHECK_THROWS_AS(z_module(t, 1, 11, 2), Error);
}

TEST_CASE("mu flag drops once a primary is marked in the column") {
    auto t = fixture_sweep("cone_example");
    CHECK(column_entry(z_module(t, 3, 4, 1), 5).mu == 1);
    CHECK(column_entry(z_module(t, 4, 4, 1), 5).mu == 0);
    CHECK(column_entry(z_module(t, 1, 8, 2), 9).mu == 1);
    CHECK(column_entry(z_module(t, 2, 8, 2), 9).mu == 0);
}

TEST_CASE("page modules of the cone example") {
    auto t = fixture_sweep("cone_example");
    for (long p = 0; p < 11; ++p) CHECK(e_module(t, 1, p).rank == 1);
    CHECK(e_module(t, 2, 8).rank == 0);
    CHECK(e_module(t, 2, 7).rank == 0);
    CHECK(e_module(t, 2, 6).rank == 1);
    CHECK(e_module(t, 3, -1).rank == 0);
    CHECK(e_module(t, 3, 11).rank == 0);
    auto grid = page_table(t, 4);
    REQUIRE(grid.size() == 4);
    CHECK(grid[3] == std::vector<std::size_t>{1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 1});
}

TEST_CASE("differentials") {
    auto t = fixture_sweep("cone_example");
    auto d = differential(t, 1, 8);
    CHECK(d.kind == DifferentialClass::Primary);
    CHECK(d.value == 1);
    auto cob = differential(t, 3, 10);
    CHECK(cob.kind == DifferentialClass::ChangeOfBasis);
    CHECK(cob.value == -1);
    auto zero = differential(t, 1, 3);
    CHECK(zero.kind == DifferentialClass::Zero);
    CHECK_THROWS_AS(differential(t, 2, 8), Error);
    CHECK_THROWS_AS(differential(t, 1, 0), Error);
}

TEST_CASE("algebraic cancellations") {
    auto rounds = [](const std::vector<AlgebraicCancellation>& v) {
        std::vector<int> out;
        for (const auto& a : v) out.push_back(a.round);
        return out;
    };
    auto cone = algebraic_cancellations(fixture_sweep("cone_example"));
    CHECK(rounds(cone) == std::vector<int>{1, 3, 3});
    CHECK(cone[0].source == 8);
    CHECK(cone[0].target == 7);
    CHECK(rounds(algebraic_cancellations(fixture_sweep("double_crossing_example"))) == std::vector<int>{3, 5, 6, 6});
    CHECK(algebraic_cancellations(sweep(IntMatrix(4, 4))).empty());
}

TEST_CASE("E-infinity agrees with homology") {
    auto torus = testsupport::fixture_complex("pinched_torus");
    auto tt = sweep(torus.boundary, torus.grading());
    CHECK(surviving_positions(tt) == std::array<std::size_t, 3>{1, 1, 1});
    CHECK(e_infinity_check(tt, torus));
    for (const auto& name : testsupport::all_flow_fixtures()) {
        CAPTURE(name);
        auto c = testsupport::fixture_complex(name);
        CHECK(e_infinity_check(sweep(c.boundary, c.grading()), c));
    }
    GSComplex empty;
    CHECK(e_infinity_check(sweep(IntMatrix(0, 0)), empty));
}

TEST_CASE("pages converge on random complexes") {
    std::mt19937 rng(404);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto rc = testsupport::random_complex(rng);
        auto c = complex_from_matrix(rc.boundary, rc.grading);
        SweepTrace t;
        try {
            t = sweep(rc.boundary, rc.grading);
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::NonUnimodular);
            continue;
        }
        ++checked;
        const int n = static_cast<int>(t.size());
        for (long p = 0; p < n; ++p) {
            CHECK(e_module(t, n, p).rank == e_module(t, n + 3, p).rank);
            for (int r = 1; r < n; ++r) CHECK(e_module(t, r + 1, p).rank <= e_module(t, r, p).rank);
        }
        bool torsion_free = true;
        for (const auto& pv : t.primaries()) torsion_free = torsion_free && (pv.value == 1 || pv.value == -1);
        if (torsion_free) CHECK(e_infinity_check(t, c));
    }
    CHECK(checked > 50);
}
