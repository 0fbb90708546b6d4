#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "builders.hpp"
#include "census.hpp"

using namespace pc;

namespace {

IncidenceSystem fano() {
    return IncidenceSystem::make(
        7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

// Independent oracle: enumerate every message combination from scratch.
std::vector<std::vector<std::uint8_t>> all_words_bruteforce(const LinearCode& code) {
    const int p = code.p();
    const int k = code.dim();
    const int v = code.length();
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(p);
    std::vector<std::vector<std::uint8_t>> words;
    words.reserve(total);
    for (std::uint64_t m = 0; m < total; ++m) {
        std::vector<std::uint8_t> w(static_cast<std::size_t>(v), 0);
        std::uint64_t rest = m;
        for (const auto& row : code.rows()) {
            int digit = static_cast<int>(rest % static_cast<std::uint64_t>(p));
            rest /= static_cast<std::uint64_t>(p);
            for (int c = 0; c < v; ++c)
                w[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
                    (w[static_cast<std::size_t>(c)] + digit * row[static_cast<std::size_t>(c)]) % p);
        }
        words.push_back(std::move(w));
    }
    return words;
}

int weight_of_bytes(const std::vector<std::uint8_t>& w) {
    int n = 0;
    for (auto c : w)
        if (c) ++n;
    return n;
}

}  // namespace

TEST_CASE("fano hamming census against brute force") {
    LinearCode code = code_from_system(fano(), 2);
    CensusTable table = full_census(code, CensusKind::hamming, ShardSpec{0, 1});
    CHECK(table.full_cover());
    REQUIRE(table.entries.size() == 4);
    CHECK(table.entries.at({0}).to_u64() == 1);
    CHECK(table.entries.at({3}).to_u64() == 7);
    CHECK(table.entries.at({4}).to_u64() == 7);
    CHECK(table.entries.at({7}).to_u64() == 1);

    std::map<int, int> oracle;
    for (const auto& w : all_words_bruteforce(code)) ++oracle[weight_of_bytes(w)];
    for (const auto& [key, count] : table.entries)
        CHECK(count.to_u64() == static_cast<std::uint64_t>(oracle.at(key[0])));
}

TEST_CASE("pg(2,3) complete census totals and specialization") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    CensusTable complete = full_census(code, CensusKind::complete, ShardSpec{0, 1});
    CHECK(complete.total_count() == BigUint::pow(3, 7));
    CHECK(complete.full_cover());

    CensusTable hamming = full_census(code, CensusKind::hamming, ShardSpec{0, 1});
    // pushing types through the weight map reproduces the hamming table
    std::map<std::vector<int>, BigUint> pushed;
    for (const auto& [type, count] : complete.entries)
        pushed[{code.length() - type[0]}] += count;
    CHECK(pushed == hamming.entries);
    CHECK(hamming.entries.at({4}).to_u64() == 26);  // (p-1)(p^2+p+1)
}

TEST_CASE("pg(2,3) complete census against brute force") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    CensusTable complete = full_census(code, CensusKind::complete, ShardSpec{0, 1});
    std::map<std::vector<int>, std::uint64_t> oracle;
    for (const auto& w : all_words_bruteforce(code)) {
        std::vector<int> counts(3, 0);
        for (auto c : w) ++counts[c];
        ++oracle[counts];
    }
    REQUIRE(oracle.size() == complete.entries.size());
    for (const auto& [key, count] : complete.entries)
        CHECK(count.to_u64() == oracle.at(key));
}

TEST_CASE("zero code census") {
    LinearCode full = LinearCode::from_rows(3, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    LinearCode zero = dual_code(full);
    REQUIRE(zero.dim() == 0);
    CensusTable table = full_census(zero, CensusKind::hamming, ShardSpec{0, 1});
    REQUIRE(table.entries.size() == 1);
    CHECK(table.entries.at({0}).to_u64() == 1);
    CHECK(table.full_cover());
}

TEST_CASE("span of the all-ones vector") {
    std::vector<std::uint8_t> ones(13, 1);
    LinearCode code = LinearCode::from_rows(3, 13, {ones});
    CensusTable table = full_census(code, CensusKind::complete, ShardSpec{0, 1});
    REQUIRE(table.entries.size() == 3);
    CHECK(table.entries.at({13, 0, 0}).to_u64() == 1);
    CHECK(table.entries.at({0, 13, 0}).to_u64() == 1);
    CHECK(table.entries.at({0, 0, 13}).to_u64() == 1);
}

TEST_CASE("shard splits merge to the same table") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    CensusTable whole = full_census(code, CensusKind::complete, ShardSpec{0, 1});
    for (int shards : {2, 4, 8}) {
        std::vector<CensusTable> parts;
        for (int s = 0; s < shards; ++s)
            parts.push_back(full_census(code, CensusKind::complete, ShardSpec{s, shards}));
        // merge in a shuffled order; the result must not depend on it
        std::mt19937_64 rng(static_cast<std::uint64_t>(shards));
        std::shuffle(parts.begin(), parts.end(), rng);
        CensusTable merged = merge_censuses(parts);
        CHECK(merged.entries == whole.entries);
        CHECK(merged.covered == whole.covered);
        CHECK(merged.full_cover());
    }
    // single-table merge is the identity
    CensusTable same = merge_censuses({whole});
    CHECK(same.entries == whole.entries);
}

TEST_CASE("full census refuses over budget and bad shards") {
    LinearCode code = code_from_system(build_pg2(5).system(), 5);
    CHECK_THROWS_AS(full_census(code, CensusKind::hamming, ShardSpec{0, 1}), Error);  // 5^16
    LinearCode small = code_from_system(build_pg2(3).system(), 3);
    CHECK_THROWS_AS(full_census(small, CensusKind::hamming, ShardSpec{2, 2}), Error);
    CHECK_THROWS_AS(full_census(small, CensusKind::hamming, ShardSpec{0, 0}), Error);
    // mismatched merges refused
    CensusTable h = full_census(small, CensusKind::hamming, ShardSpec{0, 1});
    CensusTable c = full_census(small, CensusKind::complete, ShardSpec{0, 1});
    CHECK_THROWS_AS(merge_censuses({h, c}), Error);
}

TEST_CASE("multithreaded full census matches single-threaded") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    CensusTable one = full_census(code, CensusKind::complete, ShardSpec{0, 1}, BigUint(1000000000ull), 1);
    CensusTable four = full_census(code, CensusKind::complete, ShardSpec{0, 1}, BigUint(1000000000ull), 4);
    CHECK(one.entries == four.entries);
}

TEST_CASE("bounded census equals the full census restriction on small codes") {
    for (int q : {2, 3}) {
        LinearCode code = code_from_system(build_pg2(q).system(), q);
        CensusTable full = full_census(code, CensusKind::hamming, ShardSpec{0, 1});
        int wmax = 2 * q + 1;
        BoundedCensus bounded = bounded_weight_census(code, wmax, false);
        CHECK(bounded.proven);
        for (const auto& [key, count] : full.entries) {
            if (key[0] > wmax) continue;
            REQUIRE(bounded.hamming.lookup(key) != nullptr);
            CHECK(*bounded.hamming.lookup(key) == count);
        }
        for (const auto& [key, count] : bounded.hamming.entries)
            CHECK(*full.lookup(key) == count);
    }
}

TEST_CASE("bounded census is seed and thread independent") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    BoundedCensus a = bounded_weight_census(code, 6, true, 0, 1);
    BoundedCensus b = bounded_weight_census(code, 6, true, 12345, 2);
    CHECK(a.hamming.entries == b.hamming.entries);
    CHECK(a.complete.entries == b.complete.entries);
    CHECK(a.words == b.words);
}

TEST_CASE("inamdar: dual minimum weight words of pg(2,3)") {
    IncidenceSystem sys = build_pg2(3).system();
    LinearCode dual = dual_code(code_from_system(sys, 3));
    BoundedCensus census = bounded_weight_census(dual, 6, true);
    CHECK(census.proven);
    // weights 1..5 empty, weight 6 has exactly 156 words
    for (int w = 1; w <= 5; ++w) CHECK(census.hamming.lookup({w}) == nullptr);
    REQUIRE(census.hamming.lookup({6}) != nullptr);
    CHECK(census.hamming.lookup({6})->to_u64() == 156);

    // and they are exactly the nonzero scalar multiples of line differences
    std::set<std::vector<std::uint8_t>> expected;
    for (int i = 0; i < sys.num_lines(); ++i)
        for (int j = 0; j < sys.num_lines(); ++j) {
            if (i == j) continue;
            std::vector<std::uint8_t> w(13, 0);
            for (int x : sys.line(i)) w[static_cast<std::size_t>(x)] = 1;
            for (int x : sys.line(j))
                w[static_cast<std::size_t>(x)] =
                    static_cast<std::uint8_t>((w[static_cast<std::size_t>(x)] + 2) % 3);
            expected.insert(w);
        }
    CHECK(expected.size() == 156);
    std::set<std::vector<std::uint8_t>> found;
    for (const auto& w : census.words)
        if (weight_of_bytes(w) == 6) found.insert(w);
    CHECK(found == expected);
}

TEST_CASE("type census strategies") {
    LinearCode pg3 = code_from_system(build_pg2(3).system(), 3);
    WeightType zero_type;
    zero_type.counts = {13, 0, 0};
    CHECK(type_census(pg3, zero_type, TypeCountStrategy::full).to_u64() == 1);
    WeightType line_type;
    line_type.counts = {9, 4, 0};
    CHECK(type_census(pg3, line_type, TypeCountStrategy::automatic).to_u64() == 13);

    LinearCode pg5 = code_from_system(build_pg2(5).system(), 5);
    WeightType t5;
    t5.counts = {25, 6, 0, 0, 0};
    CHECK(type_census(pg5, t5, TypeCountStrategy::bounded_weight).to_u64() == 31);
    WeightType bad;
    bad.counts = {1, 2, 3};
    CHECK_THROWS_AS(type_census(pg5, bad, TypeCountStrategy::automatic), Error);
}

TEST_CASE("heuristic fallback is reported as unproven") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    // a ridiculous volume budget forces the heuristic path
    CHECK_THROWS_AS(bounded_weight_census(code, 6, false, 0, 1, false, 10.0), Error);
    BoundedCensus census = bounded_weight_census(code, 6, false, 0, 1, true, 10.0);
    CHECK(!census.proven);
    CHECK(!census.hamming.proven);
}

TEST_CASE("bounded census cache returns the same instance") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    const BoundedCensus& a = cached_bounded_census(code, 6, 0, 1);
    const BoundedCensus& b = cached_bounded_census(code, 6, 0, 1);
    CHECK(&a == &b);
    // narrower requests derive from the recorded run
    const BoundedCensus& narrow = cached_bounded_census(code, 4, 0, 1);
    CHECK(narrow.hamming.wmax == 4);
    for (const auto& [key, count] : narrow.hamming.entries) CHECK(key[0] <= 4);
}

TEST_CASE("cwe round trip is byte-stable") {
    LinearCode code = code_from_system(build_pg2(3).system(), 3);
    CensusTable table = full_census(code, CensusKind::complete, ShardSpec{0, 1});
    std::string text = to_cwe_text(table);
    CensusTable back = from_cwe_text(text);
    CHECK(back.entries == table.entries);
    CHECK(back.p == table.p);
    CHECK(back.kind == table.kind);
    CHECK(back.fingerprint == table.fingerprint);
    CHECK(to_cwe_text(back) == text);

    BoundedCensus bounded = bounded_weight_census(code, 6, false);
    std::string btext = to_cwe_text(bounded.hamming);
    CensusTable bback = from_cwe_text(btext);
    CHECK(bback.wmax == 6);
    CHECK(bback.proven);
    CHECK(to_cwe_text(bback) == btext);

    CHECK_THROWS_AS(from_cwe_text("not a census"), Error);
    CHECK_THROWS_AS(from_cwe_text("cwe p=3 v=13 k=7 kind=weird fingerprint=00"), Error);
}

TEST_CASE("hamming entries of bounded runs include the zero word") {
    LinearCode code = code_from_system(fano(), 2);
    BoundedCensus census = bounded_weight_census(code, 3, false);
    REQUIRE(census.hamming.lookup({0}) != nullptr);
    CHECK(census.hamming.lookup({0})->to_u64() == 1);
    CHECK(census.hamming.lookup({3})->to_u64() == 7);
}
