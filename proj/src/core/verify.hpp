#pragma once

#include <cstdint>
#include <string>

#include "incidence.hpp"
#include "pappus.hpp"
#include "reconstruct.hpp"

namespace pc {

struct SuiteResult {
    bool pass = false;
    std::string json;
};

// Rank duality dim C_p(X) == dim C_p(X*) over seeded random dual-able
// systems, p in {2,3,5}.
SuiteResult verify_lemma32(std::uint64_t seed = 0, int systems = 100);

// The binary-digit lemma, exhaustively over the region where violations can
// live: all solution vectors of sum 2^i x_i = 2^k - 1 with x-sum <= k.
SuiteResult verify_lemma38(int kmax = 12);

// Minimum-weight structure of the plane code: min weight p+1 with the
// scalar-multiple classification, and for p = 5 the full first-four-weights
// table {p+1, 2p, 2p+1, 3p-3} with the pair-combination counts.
SuiteResult verify_minweights(const Plane& plane, std::uint64_t seed = 0, int threads = 1);

SuiteResult verify_lemma39(const Plane& plane, int k, std::uint64_t seed = 0, int threads = 1);
SuiteResult verify_theorem42(const Plane& plane, const IncidenceSystem& pattern,
                             std::uint64_t seed = 0, int threads = 1);
SuiteResult verify_pappus(const Plane& plane, int threads = 1);
SuiteResult verify_desargues(const Plane& plane, int threads = 1);

std::string inclusion_report_json(const InclusionReport& report);
std::string pappus_count_json(const PappusCount& count);

}  // namespace pc
