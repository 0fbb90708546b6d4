#pragma once

#include <string>
#include <vector>

#include "bigint.hpp"
#include "census.hpp"
#include "fp_linear.hpp"
#include "incidence.hpp"

namespace pc {

// w = sum over i of 2^i * (indicator of lines[i]). Valid when p >= 2^k: every
// coordinate is then the plain integer encoding of the point's membership
// pattern, with no modular wraparound, so the lines are recoverable from the
// binary digits.
struct PowersWord {
    FpVector word;
    std::vector<Line> lines;
    int k = 0;
    int p = 2;
};

PowersWord powers_word(const std::vector<Line>& lines, int num_points, int p);

// Total inverse of powers_word: line i is the set of coordinates whose i-th
// binary digit is 1. Rejects coordinates >= 2^k.
std::vector<Line> reconstruct_lines(const FpVector& w, int k);

struct Lemma39Report {
    int p = 0, k = 0;
    WeightType type;
    BigUint a_j;              // codewords of the powers-word type, from the census
    BigUint tuple_count;      // ordered k-tuples of distinct plane lines of that type
    std::uint64_t words_checked = 0;
    std::uint64_t reconstruction_failures = 0;
    bool counts_match = false;
    bool pass = false;
    std::string a_j_source;
};

// For the k-line subsystem made of the plane's first k lines: every codeword
// of its powers-word type must reconstruct to k genuine plane lines, and the
// type count must equal the number of ordered k-tuples of distinct lines.
Lemma39Report lemma39_verify(const Plane& plane, int k, std::uint64_t seed = 0, int threads = 1);

struct InclusionClassRow {
    std::string class_hash;       // canonical-form hash of the covered core
    BigUint subsets_in_class;     // k-subsets of plane lines in this class
    BigUint pattern_copies;       // i(X, Y_j)
    BigUint aut;                  // #Aut(Y_j)
    WeightType type;              // type of the class powers word
    BigUint a_j;
    std::string a_j_source;       // "full-census" | "bounded-census" | "line-tuples"
    BigRat alpha;                 // i(X,Y_j) * j! / #Aut(Y_j)
    BigUint contribution;         // alpha * a_j, exact
    bool class_count_consistent;  // j! a_j / #Aut(Y_j) == subsets_in_class
};

struct InclusionReport {
    int p = 0, k = 0;
    std::string plane_fingerprint, pattern_fingerprint;
    std::vector<InclusionClassRow> rows;
    BigUint total;
    BigUint direct_count;  // independent backtracking count of i(X, plane)
    bool match = false;
    std::string note;
};

// i(X, plane) through the complete-weight-enumerator decomposition: k-subsets
// of plane lines grouped into isomorphism classes of p-admissible systems,
// each contributing i(X,Y_j) * j! * a_j / #Aut(Y_j) with exact rational
// arithmetic, cross-checked against direct backtracking. Classes not realized
// by any subset are omitted (their a_j vanish).
InclusionReport theorem42_count(const IncidenceSystem& pattern, const Plane& plane,
                                std::uint64_t seed = 0, int threads = 1);

struct Corollary43Report {
    InclusionReport first, second;
    bool totals_equal = false;
    bool type_tables_equal = false;  // per-type a_j agree across the planes
};

Corollary43Report corollary43_compare(const Plane& a, const Plane& b,
                                      const IncidenceSystem& pattern, std::uint64_t seed = 0,
                                      int threads = 1);

}  // namespace pc
