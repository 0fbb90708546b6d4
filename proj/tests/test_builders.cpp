#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "builders.hpp"
#include "iso.hpp"

using namespace pc;

TEST_CASE("finite field tables") {
    // constructors self-check the axioms; spot-check a few values
    FiniteField f7(7, 1);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.inv(3) == 5);
    FiniteField f9(3, 2);
    CHECK(f9.q() == 9);
    CHECK(f9.modulus() == std::vector<int>{1, 0});  // t^2 + 1
    // t = element 3 (coefficients 0 + 1*t); t^2 = -1 = 2
    CHECK(f9.mul(3, 3) == 2);
    FiniteField f8(2, 3);
    CHECK(f8.q() == 8);
    for (int a = 1; a < 8; ++a) CHECK(f8.mul(a, f8.inv(a)) == 1);
    CHECK_THROWS_AS(FiniteField(4, 1), Error);
    CHECK_THROWS_AS(FiniteField(2, 4), Error);
}

TEST_CASE("near-field of order 9") {
    NearField9 nf;
    // right distributivity and associativity hold on all triples (constructor
    // enforces); left distributivity fails at the recorded witness
    auto [a, b, c] = nf.left_distrib_witness();
    CHECK(nf.mul(a, nf.add(b, c)) != nf.add(nf.mul(a, b), nf.mul(a, c)));
    for (int x = 0; x < 9; ++x) {
        CHECK(nf.mul(x, 0) == 0);
        CHECK(nf.mul(0, x) == 0);
        CHECK(nf.mul(x, 1) == x);
    }
}

TEST_CASE("field planes PG(2,q)") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11}) {
        Plane plane = build_pg2(q);
        int v = q * q + q + 1;
        CHECK(plane.order() == q);
        CHECK(plane.num_points() == v);
        CHECK(plane.num_lines() == v);
        for (int li = 0; li < plane.num_lines(); ++li)
            CHECK(static_cast<int>(plane.line(li).size()) == q + 1);
    }
    CHECK_THROWS_AS(build_pg2(6), Error);
    CHECK_THROWS_AS(build_pg2(13), Error);

    Plane pg2 = build_pg2(2);
    CHECK(classify(pg2.system()).verdict == Verdict::projective_plane);
}

TEST_CASE("hall plane of order 9") {
    Plane hall = build_hall9();
    CHECK(hall.order() == 9);
    CHECK(hall.num_points() == 91);
    CHECK(hall.num_lines() == 91);
    ValidationReport rep = classify(hall.system());
    CHECK(rep.verdict == Verdict::projective_plane);
    CHECK(rep.order == 9);
}

TEST_CASE("free plane stages") {
    int expected[] = {4, 6, 7, 9, 13, 33};
    for (int n = 1; n <= 6; ++n) {
        IncidenceSystem x = free_plane_stage(n);
        CHECK(x.num_points() == expected[n - 1]);
        CHECK(x.num_lines() == expected[n - 1]);
        CHECK(validate_partial_linear(x).at_least(Verdict::partial_linear_space));
    }

    // old lines extend: every line of X_n is the restriction of an X_{n+1} line
    for (int n = 1; n <= 5; ++n) {
        IncidenceSystem xn = free_plane_stage(n);
        IncidenceSystem xn1 = free_plane_stage(n + 1);
        for (const auto& ln : xn.lines()) {
            bool found = false;
            for (const auto& big : xn1.lines()) {
                Line restricted;
                for (int x : big)
                    if (x < xn.num_points()) restricted.push_back(x);
                if (restricted == ln) {
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }
    }

    CHECK_THROWS_AS(free_plane_stage(0), Error);
    CHECK_THROWS_AS(free_plane_stage(8, 1000), Error);  // budget guard
}

TEST_CASE("free plane growth discipline") {
    for (int n = 1; n <= 5; ++n) {
        IncidenceSystem xn = free_plane_stage(n);
        IncidenceSystem xn1 = free_plane_stage(n + 1);
        // points born in stage n+1 lie on exactly two lines there
        auto through = xn1.lines_through_points();
        for (int x = xn.num_points(); x < xn1.num_points(); ++x)
            CHECK(through[static_cast<std::size_t>(x)].size() == 2);
        // every pair of stage-n lines meets somewhere in stage n+1
        for (std::size_t a = 0; a < xn.lines().size(); ++a) {
            for (std::size_t b = a + 1; b < xn.lines().size(); ++b) {
                // locate the extensions via restriction
                auto extension_of = [&](const Line& ln) -> const Line* {
                    for (const auto& big : xn1.lines()) {
                        Line restricted;
                        for (int x : big)
                            if (x < xn.num_points()) restricted.push_back(x);
                        if (restricted == ln) return &big;
                    }
                    return nullptr;
                };
                const Line* ea = extension_of(xn.lines()[a]);
                const Line* eb = extension_of(xn.lines()[b]);
                REQUIRE(ea != nullptr);
                REQUIRE(eb != nullptr);
                std::set<int> pts(ea->begin(), ea->end());
                bool meets = false;
                for (int x : *eb)
                    if (pts.count(x)) meets = true;
                CHECK(meets);
            }
        }
    }
}

TEST_CASE("pappus configuration") {
    IncidenceSystem p = build_pappus_config();
    CHECK(p.num_points() == 9);
    CHECK(p.num_lines() == 9);
    for (const auto& ln : p.lines()) CHECK(ln.size() == 3);
    auto through = p.lines_through_points();
    for (const auto& t : through) CHECK(t.size() == 3);

    // exactly 18 ordered pairs of disjoint lines
    int disjoint_pairs = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
            if (a == b) continue;
            std::set<int> pts(p.line(a).begin(), p.line(a).end());
            bool disjoint = true;
            for (int x : p.line(b))
                if (pts.count(x)) disjoint = false;
            if (disjoint) ++disjoint_pairs;
        }
    CHECK(disjoint_pairs == 18);
}

TEST_CASE("pappus configuration is flag independent") {
    Plane pg3 = build_pg2(3);
    IncidenceSystem reference = build_pappus_config();
    auto ref_form = canonical_form(reference).bytes;
    int flags = 0;
    for (int x = 0; x < pg3.num_points(); ++x) {
        for (int li : pg3.lines_through(x)) {
            IncidenceSystem p = build_pappus_config_at_flag(pg3, x, li);
            CHECK(canonical_form(p).bytes == ref_form);
            ++flags;
        }
    }
    CHECK(flags == 52);
}

TEST_CASE("desargues configuration") {
    IncidenceSystem d = build_desargues_config();
    CHECK(d.num_points() == 10);
    CHECK(d.num_lines() == 10);
    for (const auto& ln : d.lines()) CHECK(ln.size() == 3);
    auto through = d.lines_through_points();
    for (const auto& t : through) CHECK(t.size() == 3);
    CHECK(validate_partial_linear(d).at_least(Verdict::partial_linear_space));
}

TEST_CASE("patterns") {
    IncidenceSystem single = pattern_single_line(3);
    CHECK(single.num_points() == 3);
    CHECK(single.num_lines() == 1);
    CHECK(single.line(0) == Line{0, 1, 2});

    IncidenceSystem tri = pattern_triangle();
    CHECK(tri.num_points() == 3);
    CHECK(tri.num_lines() == 3);

    IncidenceSystem two = pattern_two_full_lines(5);
    CHECK(two.num_points() == 31);
    CHECK(two.num_lines() == 2);
    CHECK(two.line(0).size() == 6);
    CHECK(two.line(1).size() == 6);
    // the lines share exactly the point 0
    std::set<int> first(two.line(0).begin(), two.line(0).end());
    int common = 0, common_pt = -1;
    for (int x : two.line(1))
        if (first.count(x)) {
            ++common;
            common_pt = x;
        }
    CHECK(common == 1);
    CHECK(common_pt == 0);

    IncidenceSystem generic = pattern_k_lines_generic(3, 11);
    CHECK(generic.num_points() == 133);
    CHECK(generic.num_lines() == 3);
    CHECK(is_p_admissible(generic, 11));
    CHECK_THROWS_AS(pattern_single_line(1), Error);
}
