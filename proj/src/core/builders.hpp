#pragma once

#include <array>
#include <vector>

#include "incidence.hpp"

namespace pc {

// GF(p^e) for e in {1,2,3}, elements encoded as base-p polynomial values
// 0..q-1, arithmetic through full lookup tables. The modulus is the first
// irreducible monic polynomial in encoding order, except that GF(9) is pinned
// to t^2+1. Field axioms are checked on construction: on all triples for
// q <= 128 and on seeded random triples above that.
class FiniteField {
public:
    FiniteField(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * q_ + b]; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * q_ + b]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    int inv(int a) const;  // a != 0

private:
    int p_, e_, q_;
    std::vector<int> modulus_;  // monic, coefficients c0..c_{e-1} (x^e implicit)
    std::vector<int> add_, mul_, neg_, inv_;
    void check_axioms() const;
};

// The regular (right) near-field of order 9: GF(9) addition, multiplication
// a*b twisted by the Frobenius when b is a non-square. Associative and
// right-distributive but not left-distributive, hence not a field; this is
// the seed for the one non-Pappian plane in the repertoire.
class NearField9 {
public:
    NearField9();

    int add(int a, int b) const { return gf_.add(a, b); }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * 9 + b]; }
    int neg(int a) const { return gf_.neg(a); }
    // A triple (a,b,c) with a*(b+c) != a*b + a*c, proving left distributivity fails.
    const std::array<int, 3>& left_distrib_witness() const { return witness_; }

private:
    FiniteField gf_;
    std::vector<int> mul_;
    std::array<int, 3> witness_{};
    void check_axioms();
};

// PG(2,q): points are the normalized homogeneous triples over GF(q)
// (leftmost nonzero coordinate 1, lexicographic order), lines the kernels of
// the normalized dual triples. Supported q: 2,3,4,5,7,8,9,11.
Plane build_pg2(int q);

// Projective completion of the affine translation plane over NearField9:
// 91 points, 91 lines of 10 points, provably not isomorphic to PG(2,9).
Plane build_hall9();

// Stage n of the free completion of the 4-cycle. Throws a guard error when
// the next stage's point count would exceed point_budget.
IncidenceSystem free_plane_stage(int n, long long point_budget = 100000);

// The 9-point, 9-line Pappus configuration, cut out of PG(2,3) by deleting
// the given flag (defaults to the first incident point-line pair). Point and
// line indices of PG(2,3); the result is renumbered to 0..8.
IncidenceSystem build_pappus_config();
IncidenceSystem build_pappus_config_at_flag(const Plane& pg3, int point, int line);

// The Desargues configuration via the Petersen graph: points and lines are
// the 2-subsets of {0..4}, a line contains a point iff the pairs are disjoint.
IncidenceSystem build_desargues_config();

// Small test patterns on canonical point sets.
IncidenceSystem pattern_single_line(int size);
IncidenceSystem pattern_triangle();
// Two (p+1)-point lines meeting in point 0, padded to p^2+p+1 points.
IncidenceSystem pattern_two_full_lines(int p);
// k lines of size p+1 in general position (pairwise meets distinct, no three
// concurrent), padded to p^2+p+1 points.
IncidenceSystem pattern_k_lines_generic(int k, int p);

}  // namespace pc
