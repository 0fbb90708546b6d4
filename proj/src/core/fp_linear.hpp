#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "incidence.hpp"

namespace pc {

// Length-v vector over F_p, one byte per coordinate, always reduced mod p.
struct FpVector {
    int p = 2;
    std::vector<std::uint8_t> coords;

    FpVector() = default;
    FpVector(int p_, int length) : p(p_), coords(static_cast<std::size_t>(length), 0) {}

    int length() const { return static_cast<int>(coords.size()); }
    bool operator==(const FpVector& o) const = default;
};

// The p-tuple (j_0,...,j_{p-1}) counting how often each residue occurs.
struct WeightType {
    std::vector<int> counts;

    bool operator==(const WeightType& o) const = default;
    bool operator<(const WeightType& o) const { return counts < o.counts; }
    std::string to_string() const;  // "j0,j1,...,j_{p-1}"
    static WeightType parse(const std::string& csv, int p);
};

WeightType type_of(const FpVector& w);
int weight_of(const FpVector& w);

// A p-ary linear code stored as reduced row-echelon generator rows. The RREF
// is canonical for the row space, so two codes are equal as subspaces iff
// their rows compare equal.
class LinearCode {
public:
    static LinearCode from_rows(int p, int length, std::vector<std::vector<std::uint8_t>> rows,
                                std::string source_fingerprint = "");

    int p() const { return p_; }
    int length() const { return length_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }
    const std::string& source_fingerprint() const { return source_fingerprint_; }

    // FNV hash over (p, length, echelon rows); keys census files and caches.
    std::string fingerprint() const;

    bool operator==(const LinearCode& o) const {
        return p_ == o.p_ && length_ == o.length_ && rows_ == o.rows_;
    }

private:
    int p_ = 2;
    int length_ = 0;
    std::vector<std::vector<std::uint8_t>> rows_;
    std::string source_fingerprint_;
};

// Row space of the line indicator vectors of sys over F_p.
LinearCode code_from_system(const IncidenceSystem& sys, int p);

LinearCode dual_code(const LinearCode& code);
LinearCode hull(const LinearCode& code);  // C cap C-perp

bool contains(const LinearCode& code, const FpVector& w);

// Membership in the plane code decided by inner products alone:
// w is a codeword iff <w, l> = <w, 1> for every line l. Requires the plane
// order to be the prime p.
bool plane_membership(const Plane& plane, int p, const FpVector& w);

FpVector line_indicator(const IncidenceSystem& sys, int line, int p);

std::string generator_csv(const LinearCode& code);

int mod_inverse(int a, int p);
bool is_prime_int(int n);

}  // namespace pc
