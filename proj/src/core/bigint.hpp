#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pc {

// Arbitrary-precision non-negative integer. Counts in this project reach
// factorial(133) scale (~10^226), far past any machine word; all census and
// inclusion-number arithmetic is exact, so overflow semantics are simply
// absent. Limbs are base 10^9, little-endian, which keeps decimal I/O and
// divmod straightforward at these sizes.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v);
    static BigUint from_string(const std::string& decimal);

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const;
    std::uint64_t to_u64() const;  // requires fits_u64()
    std::string to_string() const;

    BigUint& operator+=(const BigUint& o);
    BigUint& operator-=(const BigUint& o);  // requires *this >= o
    BigUint& operator*=(const BigUint& o);
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }

    // Quotient and remainder; divisor must be nonzero.
    static void divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r);
    BigUint operator/(const BigUint& o) const;
    BigUint operator%(const BigUint& o) const;
    bool divides_exactly(const BigUint& num) const;  // *this | num

    int compare(const BigUint& o) const;
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return a.compare(b) >= 0; }

    static BigUint factorial(std::uint64_t n);
    static BigUint binomial(std::uint64_t n, std::uint64_t k);
    // n * (n-1) * ... * (n-k+1); the number of injective maps of k slots into n.
    static BigUint falling_factorial(std::uint64_t n, std::uint64_t k);
    static BigUint pow(std::uint64_t base, std::uint64_t exp);
    static BigUint gcd(BigUint a, BigUint b);

private:
    static constexpr std::uint32_t kBase = 1000000000u;
    std::vector<std::uint32_t> limbs_;  // little-endian, no leading zero limb
    void trim();
};

// Exact rational with non-negative numerator/denominator, kept reduced.
// Carries the Theorem-style coefficients whose numerators are factorial
// products; never converted to floating point.
class BigRat {
public:
    BigRat() : num_(0), den_(1) {}
    BigRat(BigUint num, BigUint den);

    const BigUint& num() const { return num_; }
    const BigUint& den() const { return den_; }
    bool is_integer() const;

    BigRat& operator+=(const BigRat& o);
    BigRat& operator*=(const BigRat& o);
    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string() const;  // "num/den", or plain integer when den == 1

private:
    BigUint num_, den_;
    void reduce();
};

}  // namespace pc
