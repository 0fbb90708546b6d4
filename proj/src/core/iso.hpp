#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "incidence.hpp"

namespace pc {

// Canonical form of an incidence system: a relabeling of points and lines
// that is invariant under any input relabeling, plus the byte string of the
// relabeled incidence matrix. Two systems are isomorphic iff their byte
// strings are equal.
struct CanonicalForm {
    std::vector<int> point_order;  // canonical position -> original point
    std::vector<int> line_order;   // canonical position -> original line
    std::vector<std::uint8_t> bytes;

    std::string hex_hash() const;
};

inline constexpr int kCanonicalPointGuard = 200;

// Computed by iterated colour refinement on the point/line bipartite graph
// plus backtracking over the coarsest stable partition, taking the
// lexicographically least relabeled incidence string. Automorphisms
// discovered from equal leaves prune the search (orbit skipping and
// backjumping), so highly symmetric systems stay tractable. Guarded at 200
// points.
CanonicalForm canonical_form(const IncidenceSystem& sys);

bool are_isomorphic(const IncidenceSystem& a, const IncidenceSystem& b);

// Exact order of the automorphism group. Isolated points contribute a free
// factorial factor; the covered core is counted by the orbit-stabilizer
// product along the base 0,1,2,..., with each orbit membership decided by an
// explicit extension-existence search.
BigUint automorphism_count(const IncidenceSystem& sys);

// I(Y,X): injective point maps f such that every line of Y maps exactly onto
// (some line of X) intersected with the image of f, distinct lines going to
// distinct lines. This is the monomorphism count matching the subsystem
// semantics l' = l cap P'. Line-major backtracking with forward checking;
// points on a single line and isolated points are counted by falling
// factorials instead of being enumerated.
BigUint count_monomorphisms(const IncidenceSystem& sub, const IncidenceSystem& host,
                            std::uint64_t node_budget = 2'000'000'000ull);

// i(Y,X) = I(Y,X) / #Aut(Y); the division is asserted exact.
BigUint count_copies(const IncidenceSystem& sub, const IncidenceSystem& host,
                     std::uint64_t node_budget = 2'000'000'000ull);

// Debug oracle: literal enumeration of distinct subsystem images, assigning
// every point of `sub` one by one. Only sensible for sub with <= 12 points.
BigUint count_copies_direct(const IncidenceSystem& sub, const IncidenceSystem& host);

}  // namespace pc
