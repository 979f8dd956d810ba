#include <doctest.h>

#include <cmath>

#include "peculiar/classify.hpp"
#include "peculiar/intpoly.hpp"

using namespace peculiar;

namespace {

// Census reports are shared across cases; building them once keeps the suite
// quick.
const EnumerationReport& census(int n) {
    static EnumerationReport r2 = enumerate_degree(2, TrackOptions{});
    static EnumerationReport r3 = enumerate_degree(3, TrackOptions{});
    static EnumerationReport r4 = enumerate_degree(4, TrackOptions{});
    switch (n) {
        case 2: return r2;
        case 3: return r3;
        default: return r4;
    }
}

} // namespace

TEST_CASE("classify_solution precedence") {
    SolutionPoint a;
    a.y = {Complex(1.0), Complex(-2.0)};
    CHECK(classify_solution(a, 1e-6) == ClassTag::P1minusP0);

    SolutionPoint b;
    b.y = {Complex(1.0), Complex(-1.0), Complex(-1.0), Complex(0.0)};
    CHECK(classify_solution(b, 1e-6) == ClassTag::P0);

    SolutionPoint c;
    c.y = {Complex(0.5651977), Complex(-1.7692924), Complex(0.6388969)};
    CHECK(classify_solution(c, 1e-6) == ClassTag::Pt);
}

TEST_CASE("census N=2") {
    const EnumerationReport& r = census(2);
    CHECK(r.counts.total_distinct == 2);
    CHECK(r.counts.p0 == 1);
    CHECK(r.counts.p1_minus_p0 == 1);
    CHECK(r.counts.pt == 0);
    CHECK(r.counts.real_all_nonzero == 1);
    CHECK(r.reverified_ok);
}

TEST_CASE("census N=3 with the published truly-peculiar data") {
    const EnumerationReport& r = census(3);
    CHECK(r.counts.total_distinct == 6);
    CHECK(r.counts.p0 == 2);
    CHECK(r.counts.p1_minus_p0 == 1);
    CHECK(r.counts.pt == 3);
    CHECK(r.reverified_ok);

    int real_pt = 0;
    for (const SolutionPoint& sp : r.solutions) {
        if (sp.class_tag == ClassTag::Pt && sp.is_real) {
            ++real_pt;
            CHECK(std::abs(sp.y[0].real() - 0.5651977) < 1e-6);
        }
    }
    CHECK(real_pt == 1);

    KnownAnswerAudit audit = verify_known_answers(3, r);
    CHECK(audit.ok);
    CHECK(audit.points_total == 4);
    CHECK(audit.points_matched == 4);
}

TEST_CASE("census N=4 with strictness and known answers") {
    const EnumerationReport& r = census(4);
    CHECK(r.counts.total_distinct == 23);
    CHECK(r.counts.p0 == 6);
    CHECK(r.counts.p1_minus_p0 == 3);
    CHECK(r.counts.pt == 14);
    CHECK(r.counts.p1_total == 5);
    CHECK(r.reverified_ok);
    CHECK(r.accounting.converged == 24);

    BoundsAudit bounds = check_bounds(r);
    CHECK(bounds.strict1); // 3 < 4
    CHECK(bounds.strict2); // 23 < 24
    CHECK(bounds.strict3); // 5 < 6

    KnownAnswerAudit audit = verify_known_answers(4, r);
    CHECK(audit.ok);
    CHECK(audit.points_total == 17);
    CHECK(audit.points_matched == 17);

    int real_pt = 0;
    for (const SolutionPoint& sp : r.solutions) {
        if (sp.class_tag == ClassTag::Pt && sp.is_real) ++real_pt;
    }
    CHECK(real_pt == 0);
}

TEST_CASE("partition identity") {
    for (int n : {2, 3, 4}) {
        const EnumerationReport& r = census(n);
        CHECK(r.counts.p0 + r.counts.p1_minus_p0 + r.counts.pt == r.counts.total_distinct);
    }
}

TEST_CASE("bounds N=3: the three equalities") {
    BoundsAudit audit = check_bounds(census(3));
    CHECK(audit.applicable);
    CHECK(audit.entries[1].equality); // p0 = 2 = 2!
    CHECK(audit.entries[4].equality); // p1\p0 = 1 = 1*1!
    CHECK(audit.entries[5].equality); // pt = 3 = 3*1!
    for (const BoundEntry& e : audit.entries) CHECK(e.holds);
}

TEST_CASE("bounds N=2 are not applicable") {
    BoundsAudit audit = check_bounds(census(2));
    CHECK(!audit.applicable);
}

TEST_CASE("bound violation is an error") {
    EnumerationReport fake = census(3);
    fake.counts.pt = 99;
    CHECK_THROWS_AS(check_bounds(fake), BoundViolation);
}

TEST_CASE("recursion audit") {
    CHECK(check_recursion(census(3), census(2)));
    CHECK(check_recursion(census(4), census(3)));
    CHECK_THROWS_AS(check_recursion(census(4), census(2)), DimensionMismatch);
}

TEST_CASE("stein filter") {
    auto s2 = stein_filter(census(2));
    REQUIRE(s2.size() == 1);
    CHECK(std::abs(s2[0].y[0] - Complex(1.0)) < 1e-10);
    CHECK(std::abs(s2[0].y[1] - Complex(-2.0)) < 1e-10);

    CHECK(stein_filter(census(3)).size() == 2);

    auto s4 = stein_filter(census(4));
    REQUIRE(s4.size() == 1);
    CHECK(std::abs(s4[0].y[1].real() - (-1.7548777)) < 1e-5);
    CHECK(std::abs(s4[0].y[2].real() - (-0.5698403)) < 1e-5);
}

TEST_CASE("peculiar implies eq3 on every census solution") {
    for (int n : {2, 3, 4}) {
        for (const SolutionPoint& sp : census(n).solutions) {
            CHECK(satisfies_eq3(MonicPoly{sp.y}, 1e-6));
        }
    }
}

TEST_CASE("conjecture probe at N=4: the documented exception") {
    ConjectureProbe probe = check_conjecture(4, TrackOptions{});
    CHECK(probe.p1nz_distinct == 4);
    CHECK(probe.p1nz_expected == 4);
    CHECK(probe.p1nz_has_yn_zero);       // the (1,-1,-1,0) point
    CHECK(probe.p1nz_has_ynm1_minus_one);
    CHECK(probe.pt_distinct == 14);
    CHECK(probe.pt_expected == 14);
    CHECK(!probe.pt_has_yn_zero);
    CHECK(probe.census_checked);
    CHECK(probe.census_consistent);
}

TEST_CASE("p1-nonzero solutions satisfy the p1-reduced system") {
    AlgebraicSystem reduced = build_p1_reduced(4);
    SolveResult r = solve(build_p1_nonzero(4), TrackOptions{});
    for (const SolutionPoint& sp : r.solutions) {
        std::vector<Complex> u(sp.y.begin() + 1, sp.y.end()); // strip y1 = 1
        CHECK(reduced.residual(u) < 1e-8);
    }
}

TEST_CASE("y1-one-subset is the same affine system as p1-nonzero") {
    AlgebraicSystem a = build_p1_nonzero(5);
    AlgebraicSystem b = build_y1_one_subset(5);
    REQUIRE(a.equations.size() == b.equations.size());
    CHECK(a.degrees == b.degrees);
    SolveResult r = solve(a, TrackOptions{});
    for (const SolutionPoint& sp : r.solutions) {
        std::vector<Complex> u(sp.y.begin() + 1, sp.y.end());
        CHECK(b.residual(u) < 1e-10);
    }
}

TEST_CASE("enumerate_degree rejects out-of-range degrees") {
    CHECK_THROWS_AS(enumerate_degree(1, TrackOptions{}), DimensionMismatch);
    CHECK_THROWS_AS(enumerate_degree(9, TrackOptions{}), DimensionMismatch);
}
