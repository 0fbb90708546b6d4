#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "builders.hpp"
#include "reconstruct.hpp"
#include "verify.hpp"

using namespace pc;

TEST_CASE("powers word values and types") {
    Plane pg5 = build_pg2(5);
    // k = 1: the indicator itself
    PowersWord one = powers_word({pg5.line(0)}, 31, 5);
    for (int x : pg5.line(0)) CHECK(one.word.coords[static_cast<std::size_t>(x)] == 1);
    CHECK(weight_of(one.word) == 6);

    // k = 2: two meeting lines, values {1, 2, 3}
    PowersWord two = powers_word({pg5.line(0), pg5.line(1)}, 31, 5);
    CHECK(type_of(two.word).counts == std::vector<int>{20, 5, 5, 1, 0});

    // k = 3 at p = 11: a triangle of full lines
    IncidenceSystem tri = pattern_k_lines_generic(3, 11);
    PowersWord three =
        powers_word({tri.line(0), tri.line(1), tri.line(2)}, tri.num_points(), 11);
    CHECK(type_of(three.word).counts ==
          std::vector<int>{100, 10, 10, 1, 10, 1, 1, 0, 0, 0, 0});

    CHECK_THROWS_AS(powers_word({pg5.line(0), pg5.line(1), pg5.line(2)}, 31, 5), Error);  // 8 > 5
    CHECK_THROWS_AS(powers_word({pg5.line(0), pg5.line(0)}, 31, 5), Error);  // repeated line
}

TEST_CASE("reconstruction inverts the powers word") {
    std::mt19937_64 rng(99);
    for (int p : {5, 7, 11}) {
        int kmax = p >= 8 ? 3 : 2;
        for (int trial = 0; trial < 340; ++trial) {
            int v = 10 + static_cast<int>(rng() % 30);
            int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(kmax));
            std::set<Line> chosen;
            while (static_cast<int>(chosen.size()) < k) {
                std::set<int> pts;
                int size = 2 + static_cast<int>(rng() % 5);
                while (static_cast<int>(pts.size()) < size)
                    pts.insert(static_cast<int>(rng() % static_cast<std::uint64_t>(v)));
                chosen.insert(Line(pts.begin(), pts.end()));
            }
            std::vector<Line> lines(chosen.begin(), chosen.end());
            PowersWord pw = powers_word(lines, v, p);
            CHECK(reconstruct_lines(pw.word, k) == lines);
        }
    }

    // a coordinate needing a higher binary digit is rejected
    FpVector w(5, 4);
    w.coords = {0, 4, 0, 0};
    CHECK_THROWS_AS(reconstruct_lines(w, 2), Error);
    FpVector ok(5, 4);
    ok.coords = {0, 3, 1, 2};
    CHECK(reconstruct_lines(ok, 2).size() == 2);
}

TEST_CASE("lemma39 on the small planes") {
    Lemma39Report fano_rep = lemma39_verify(build_pg2(2), 1);
    CHECK(fano_rep.pass);
    CHECK(fano_rep.type.counts == std::vector<int>{4, 3});
    CHECK(fano_rep.a_j.to_u64() == 7);
    CHECK(fano_rep.tuple_count.to_u64() == 7);

    Lemma39Report pg3_rep = lemma39_verify(build_pg2(3), 1);
    CHECK(pg3_rep.pass);
    CHECK(pg3_rep.a_j.to_u64() == 13);

    CHECK_THROWS_AS(lemma39_verify(build_pg2(3), 2), Error);  // 4 > 3
    CHECK_THROWS_AS(lemma39_verify(build_pg2(4), 1), Error);  // order not prime
}

TEST_CASE("theorem42 with k = 1 counts the lines") {
    Plane pg3 = build_pg2(3);
    InclusionReport rep = theorem42_count(pattern_single_line(4), pg3);
    CHECK(rep.match);
    CHECK(rep.total.to_u64() == 13);
    CHECK(rep.direct_count.to_u64() == 13);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].a_j_source == "full-census");
    CHECK(rep.rows[0].subsets_in_class.to_u64() == 13);
}

TEST_CASE("theorem42 with a two-line pattern on pg(2,5)") {
    // X: two 2-point lines sharing a point; i(X, pi) = v * C(6,2) * 25
    IncidenceSystem vee = IncidenceSystem::make(3, {{0, 1}, {1, 2}});
    Plane pg5 = build_pg2(5);
    InclusionReport rep = theorem42_count(vee, pg5);
    CHECK(rep.match);
    CHECK(rep.total.to_u64() == 31ull * 15 * 25);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].a_j_source == "bounded-census");
    CHECK(rep.rows[0].a_j.to_u64() == 930);
    CHECK(rep.rows[0].type.counts == std::vector<int>{20, 5, 5, 1, 0});
    CHECK(rep.rows[0].class_count_consistent);
}

TEST_CASE("theorem42 guards") {
    Plane pg3 = build_pg2(3);
    CHECK_THROWS_AS(theorem42_count(pattern_triangle(), pg3), Error);  // 2^3 > 3
    Plane pg4 = build_pg2(4);
    CHECK_THROWS_AS(theorem42_count(pattern_single_line(5), pg4), Error);  // order not prime
    IncidenceSystem not_pls = IncidenceSystem::make(4, {{0, 1, 2}, {0, 1, 3}});
    CHECK_THROWS_AS(theorem42_count(not_pls, pg3), Error);
}

TEST_CASE("corollary43 on a relabeled plane") {
    Plane pg3 = build_pg2(3);
    std::vector<int> perm(13);
    for (int i = 0; i < 13; ++i) perm[static_cast<std::size_t>(i)] = (i * 5 + 3) % 13;
    Plane relabeled = Plane::build(pg3.system().relabeled(perm));
    Corollary43Report rep = corollary43_compare(pg3, relabeled, pattern_single_line(4));
    CHECK(rep.totals_equal);
    CHECK(rep.type_tables_equal);
    CHECK(rep.first.total.to_u64() == 13);
}

TEST_CASE("corollary43 with a full line on pg(2,5)") {
    Plane pg5 = build_pg2(5);
    Corollary43Report rep = corollary43_compare(pg5, pg5, pattern_single_line(6));
    CHECK(rep.totals_equal);
    CHECK(rep.type_tables_equal);
    CHECK(rep.first.total.to_u64() == 31);
    CHECK(rep.second.total.to_u64() == 31);
}

TEST_CASE("lemma38 region brute force") {
    SuiteResult result = verify_lemma38(12);
    CHECK(result.pass);
}
