#pragma once

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace pc {

using Line = std::vector<int>;  // strictly ascending point indices

// An incidence system: points 0..num_points-1 and a set of lines, each a set
// of points. Storage is canonical (points ascending within a line, lines in
// lexicographic order, no duplicates), so equal systems compare equal
// componentwise and hashing/fingerprinting is deterministic. Immutable after
// construction.
class IncidenceSystem {
public:
    IncidenceSystem() = default;

    // Sorts each line and the line list; rejects out-of-range or repeated
    // point indices and repeated lines.
    static IncidenceSystem make(int num_points, std::vector<Line> lines);

    int num_points() const { return num_points_; }
    int num_lines() const { return static_cast<int>(lines_.size()); }
    const std::vector<Line>& lines() const { return lines_; }
    const Line& line(int i) const { return lines_[static_cast<std::size_t>(i)]; }

    // Ascending list of line indices through each point.
    std::vector<std::vector<int>> lines_through_points() const;

    bool operator==(const IncidenceSystem& o) const = default;

    // The system on the same points with the given permutation applied
    // (new index = perm[old index]). Used by tests and the flag-transitivity
    // checks; the result is re-canonicalized.
    IncidenceSystem relabeled(const std::vector<int>& perm) const;

private:
    int num_points_ = 0;
    std::vector<Line> lines_;
};

enum class Verdict {
    invalid,
    partial_linear_space,
    linear_space,
    projective_plane,
};

struct ValidationReport {
    Verdict verdict = Verdict::invalid;
    int order = -1;             // set when verdict == projective_plane
    std::string reason;         // set when verdict == invalid
    int witness_a = -1;         // offending point pair, or (line, -1)
    int witness_b = -1;

    bool at_least(Verdict v) const { return static_cast<int>(verdict) >= static_cast<int>(v); }
};

// Verdict partial_linear_space (or better) iff every line has >= 2 points and
// every point pair lies on at most one line; upgraded to linear_space when
// every pair is covered. Invalid verdicts carry a witness.
ValidationReport validate_partial_linear(const IncidenceSystem& sys);

// Full classification: projective_plane(n) iff the system and its dual are
// linear spaces and for any two distinct lines some point misses both.
ValidationReport classify(const IncidenceSystem& sys);

// Interchange points and lines. Requires a nonempty line set and every point
// on at least one line. The result goes through the canonical constructor, so
// degenerate inputs whose point pencils collide (e.g. a single line) are
// rejected there.
IncidenceSystem dual(const IncidenceSystem& sys);

// Exactly p^2+p+1 points, every line of size p+1, any two distinct lines
// meeting in exactly one point.
bool is_p_admissible(const IncidenceSystem& sys, int p);

// The restriction of sys to the points lying on at least one line, renumbered
// ascending. Automorphism groups and canonical forms factor through this core
// since isolated points are interchangeable.
IncidenceSystem covered_core(const IncidenceSystem& sys, int* isolated_count = nullptr);

// A validated projective plane with O(1) meet/join lookups. num_points and
// num_lines are both n^2+n+1; meet/join tables are dense and total off the
// diagonal.
class Plane {
public:
    static Plane build(IncidenceSystem sys);  // throws invalid_argument for non-planes

    const IncidenceSystem& system() const { return sys_; }
    int order() const { return order_; }
    int num_points() const { return sys_.num_points(); }
    int num_lines() const { return sys_.num_lines(); }
    const Line& line(int i) const { return sys_.line(i); }
    const std::vector<int>& lines_through(int point) const {
        return lines_through_[static_cast<std::size_t>(point)];
    }

    int meet(int line1, int line2) const {  // unique common point
        return meet_[static_cast<std::size_t>(line1) * sys_.num_lines() + line2];
    }
    int join(int point1, int point2) const {  // unique common line
        return join_[static_cast<std::size_t>(point1) * sys_.num_points() + point2];
    }
    bool incident(int point, int line) const {
        return incident_[static_cast<std::size_t>(line) * sys_.num_points() + point] != 0;
    }

private:
    IncidenceSystem sys_;
    int order_ = 0;
    std::vector<std::vector<int>> lines_through_;
    std::vector<int> meet_;            // line x line -> point, -1 on diagonal
    std::vector<int> join_;            // point x point -> line, -1 on diagonal
    std::vector<unsigned char> incident_;  // line x point
};

}  // namespace pc
