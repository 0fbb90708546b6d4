#pragma once

#include <cstdint>

#include "bigint.hpp"
#include "incidence.hpp"

namespace pc {

// (2/3) * C(n^2+n+1, 2) * C(n,3)^2, the exact ceiling for the number of
// Pappus-configuration copies in any plane of order n; attained exactly by
// the field planes.
BigUint pappus_bound(int n);

struct PappusCount {
    int order = 0;
    BigUint witnesses_evaluated;  // 12 * C(v,2) * C(n,3)^2
    BigUint witnesses_closing;
    BigUint copies;  // closing / 18
    BigUint bound;
    bool is_pappian = false;
    // Spot check: sampled closing witnesses whose 9-point subsystem is tested
    // against the Pappus configuration.
    std::uint64_t iso_samples = 0;
    std::uint64_t iso_exceptions = 0;
    double seconds = 0.0;
};

// Counts closing Pappus witnesses (alpha, beta, f) over ordered line pairs,
// unordered 3-subsets off the meet, and all six bijections; every copy of the
// configuration is hit by exactly 18 of them. Guarded at order 11.
PappusCount count_pappus(const Plane& plane, int threads = 1,
                         std::uint64_t iso_sample_target = 10000);

struct DesarguesCount {
    int order = 0;
    BigUint witnesses_closing;
    BigUint witnesses_per_copy;  // calibrated on PG(2,3) against the iso-search count
    BigUint copies;
    bool divisible = false;
};

// Closing centrally-perspective witnesses that are also axially perspective,
// with full distinctness filters so each Desargues copy contributes the same
// witness multiplicity. Guarded at order 9.
BigUint count_desargues_closing(const Plane& plane, int threads = 1);

// Calibrates the witnesses-per-copy constant empirically on PG(2,5), the
// smallest plane here that contains subsystem copies of the configuration,
// and converts the closing count of the given plane.
DesarguesCount desargues_count(const Plane& plane, int threads = 1);

}  // namespace pc
