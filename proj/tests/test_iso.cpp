#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "builders.hpp"
#include "iso.hpp"

using namespace pc;

namespace {

IncidenceSystem fano() {
    return IncidenceSystem::make(
        7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

IncidenceSystem four_cycle() { return IncidenceSystem::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

// Exhaustive oracle: try every point bijection and test whether it maps the
// line set onto the line set.
bool isomorphic_exhaustive(const IncidenceSystem& a, const IncidenceSystem& b) {
    if (a.num_points() != b.num_points() || a.num_lines() != b.num_lines()) return false;
    std::vector<int> perm(static_cast<std::size_t>(a.num_points()));
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Line> blines(b.lines().begin(), b.lines().end());
    do {
        bool ok = true;
        for (const auto& ln : a.lines()) {
            Line mapped;
            for (int x : ln) mapped.push_back(perm[static_cast<std::size_t>(x)]);
            std::sort(mapped.begin(), mapped.end());
            if (!blines.count(mapped)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Exhaustive automorphism counting the same way.
std::uint64_t automorphisms_exhaustive(const IncidenceSystem& a) {
    std::vector<int> perm(static_cast<std::size_t>(a.num_points()));
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Line> lines(a.lines().begin(), a.lines().end());
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (const auto& ln : a.lines()) {
            Line mapped;
            for (int x : ln) mapped.push_back(perm[static_cast<std::size_t>(x)]);
            std::sort(mapped.begin(), mapped.end());
            if (!lines.count(mapped)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace

TEST_CASE("canonical form is relabeling invariant") {
    std::mt19937_64 rng(31337);
    for (const IncidenceSystem& sys :
         {fano(), four_cycle(), build_pappus_config(), pattern_two_full_lines(5),
          free_plane_stage(3)}) {
        auto reference = canonical_form(sys).bytes;
        for (int trial = 0; trial < 100; ++trial) {
            IncidenceSystem shuffled = sys.relabeled(random_perm(sys.num_points(), rng));
            CHECK(canonical_form(shuffled).bytes == reference);
        }
    }
}

TEST_CASE("canonical form distinguishes") {
    CHECK(canonical_form(four_cycle()).bytes != canonical_form(pattern_triangle()).bytes);
    CHECK(canonical_form(dual(fano())).bytes == canonical_form(fano()).bytes);
    IncidenceSystem path = IncidenceSystem::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    CHECK(canonical_form(path).bytes != canonical_form(four_cycle()).bytes);
}

TEST_CASE("are_isomorphic agrees with exhaustive bijection search") {
    std::mt19937_64 rng(5);
    IncidenceSystem x1 = four_cycle();
    IncidenceSystem x3 = free_plane_stage(3);
    IncidenceSystem tri = pattern_triangle();
    IncidenceSystem path = IncidenceSystem::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});

    CHECK(are_isomorphic(x1, dual(x1)));
    CHECK(isomorphic_exhaustive(x1, dual(x1)));
    CHECK(!are_isomorphic(x1, path));
    CHECK(!isomorphic_exhaustive(x1, path));
    CHECK(are_isomorphic(x3, x3.relabeled(random_perm(x3.num_points(), rng))));
    CHECK(isomorphic_exhaustive(x3, x3.relabeled(random_perm(x3.num_points(), rng))));
    CHECK(are_isomorphic(fano(), dual(fano())));
    CHECK(!are_isomorphic(tri, pattern_single_line(3)));

    // the pappus configuration against a relabeled copy
    IncidenceSystem p = build_pappus_config();
    CHECK(are_isomorphic(p, p.relabeled(random_perm(9, rng))));
}

TEST_CASE("dual is an involution up to isomorphism") {
    for (int n = 1; n <= 5; ++n) {
        IncidenceSystem x = free_plane_stage(n);
        CHECK(are_isomorphic(dual(dual(x)), x));
    }
    CHECK(are_isomorphic(dual(dual(fano())), fano()));
}

TEST_CASE("free plane stages are self-dual") {
    for (int n = 1; n <= 4; ++n) {
        IncidenceSystem x = free_plane_stage(n);
        CHECK(are_isomorphic(x, dual(x)));
    }
}

TEST_CASE("automorphism counts") {
    CHECK(automorphism_count(four_cycle()).to_u64() == 8);  // dihedral group of the square
    CHECK(automorphism_count(fano()).to_u64() == 168);
    CHECK(automorphisms_exhaustive(fano()) == 168);
    CHECK(automorphism_count(build_pappus_config()).to_u64() == 108);
    CHECK(automorphism_count(build_desargues_config()).to_u64() == 120);
    CHECK(automorphism_count(pattern_single_line(3)).to_u64() == 6);
    CHECK(automorphism_count(pattern_triangle()).to_u64() == 6);
    // isolated points contribute a free factorial factor
    BigUint expected = BigUint(2) * BigUint::factorial(5) * BigUint::factorial(5) *
                       BigUint::factorial(20);
    CHECK(automorphism_count(pattern_two_full_lines(5)) == expected);
}

TEST_CASE("pappus automorphisms by brute force") {
    CHECK(automorphisms_exhaustive(build_pappus_config()) == 108);
}

TEST_CASE("monomorphism counts") {
    IncidenceSystem f = fano();
    CHECK(count_monomorphisms(pattern_single_line(3), f).to_u64() == 42);
    // I(Y,Y) = #Aut(Y)
    CHECK(count_monomorphisms(four_cycle(), four_cycle()).to_u64() == 8);
    IncidenceSystem p = build_pappus_config();
    CHECK(count_monomorphisms(p, p) == automorphism_count(p));
    // Triangle into PG(2,2): #Aut(Triangle) * (C(7,3) - 7) = 6 * 28
    Plane pg2 = build_pg2(2);
    CHECK(count_monomorphisms(pattern_triangle(), pg2.system()).to_u64() == 168);
}

TEST_CASE("copy counts") {
    CHECK(count_copies(pattern_single_line(3), fano()).to_u64() == 7);
    CHECK(count_copies(pattern_triangle(), build_pg2(2).system()).to_u64() == 28);
    CHECK(count_copies(build_pappus_config(), build_pg2(3).system()).to_u64() == 52);
    // C(133,3) - 133 * C(12,3) non-collinear triples
    CHECK(count_copies(pattern_triangle(), build_pg2(11).system()).to_u64() == 354046);
}

TEST_CASE("copy counts agree with the literal subsystem oracle") {
    CHECK(count_copies_direct(pattern_single_line(3), fano()).to_u64() == 7);
    CHECK(count_copies_direct(pattern_triangle(), build_pg2(2).system()).to_u64() == 28);
    CHECK(count_copies_direct(pattern_triangle(), build_pg2(3).system()) ==
          count_copies(pattern_triangle(), build_pg2(3).system()));
    CHECK(count_copies_direct(four_cycle(), build_pg2(2).system()) ==
          count_copies(four_cycle(), build_pg2(2).system()));
    CHECK(count_copies_direct(build_pappus_config(), build_pg2(3).system()).to_u64() == 52);
}

TEST_CASE("lemma 4.1 divisibility on random instances") {
    // I(Y,X) = #Aut(Y) * i(Y,X) with exact division; count_copies asserts it,
    // so surviving this loop is the property.
    std::mt19937_64 rng(777);
    IncidenceSystem hosts[] = {fano(), build_pg2(3).system()};
    for (int trial = 0; trial < 25; ++trial) {
        int points = 3 + static_cast<int>(rng() % 4);
        int nlines = 1 + static_cast<int>(rng() % 2);
        std::set<Line> lines;
        for (int i = 0; i < nlines; ++i) {
            std::set<int> pts;
            int size = 2 + static_cast<int>(rng() % 2);
            while (static_cast<int>(pts.size()) < size)
                pts.insert(static_cast<int>(rng() % static_cast<std::uint64_t>(points)));
            lines.insert(Line(pts.begin(), pts.end()));
        }
        IncidenceSystem y =
            IncidenceSystem::make(points, std::vector<Line>(lines.begin(), lines.end()));
        if (!validate_partial_linear(y).at_least(Verdict::partial_linear_space)) continue;
        for (const auto& host : hosts) {
            BigUint monos = count_monomorphisms(y, host);
            BigUint copies = count_copies(y, host);
            CHECK(monos == automorphism_count(y) * copies);
        }
    }
}

TEST_CASE("hall plane is not the field plane") {
    Plane hall = build_hall9();
    Plane pg9 = build_pg2(9);
    CHECK(!are_isomorphic(hall.system(), pg9.system()));
    CHECK(are_isomorphic(pg9.system(), pg9.system()));
}

TEST_CASE("size guards") {
    IncidenceSystem big = IncidenceSystem::make(300, {{0, 1}});
    CHECK_THROWS_AS(canonical_form(big), Error);
    CHECK_THROWS_AS(automorphism_count(big), Error);
    CHECK_THROWS_AS(count_copies_direct(IncidenceSystem::make(20, {{0, 1}}), fano()), Error);
    // monomorphism node budget
    CHECK_THROWS_AS(
        count_monomorphisms(pattern_triangle(), build_pg2(11).system(), /*node_budget=*/10),
        Error);
}
