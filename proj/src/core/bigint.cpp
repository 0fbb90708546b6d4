#include "bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace pc {

BigUint::BigUint(std::uint64_t v) {
    while (v != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_string(const std::string& decimal) {
    if (decimal.empty()) throw std::invalid_argument("BigUint: empty decimal string");
    BigUint r;
    std::size_t i = 0;
    for (; i < decimal.size(); ++i) {
        char c = decimal[i];
        if (c < '0' || c > '9') throw std::invalid_argument("BigUint: bad digit in decimal string");
    }
    // Parse in 9-digit chunks from the most significant end.
    std::size_t head = decimal.size() % 9;
    if (head > 0) {
        r = BigUint(std::stoull(decimal.substr(0, head)));
    }
    for (i = head; i + 9 <= decimal.size(); i += 9) {
        r *= BigUint(kBase);
        r += BigUint(std::stoull(decimal.substr(i, 9)));
    }
    return r;
}

bool BigUint::fits_u64() const {
    if (limbs_.size() > 3) return false;
    if (limbs_.size() < 3) return true;
    // top limb limited so that v <= 2^64-1 = 18446744073709551615
    __uint128_t v = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
        v = v * kBase + *it;
        if (v > UINT64_MAX) return false;
    }
    return true;
}

std::uint64_t BigUint::to_u64() const {
    std::uint64_t v = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) v = v * kBase + *it;
    return v;
}

std::string BigUint::to_string() const {
    if (limbs_.empty()) return "0";
    std::string s = std::to_string(limbs_.back());
    for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
        std::string part = std::to_string(*it);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(limbs_[i]) + carry +
                          (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint32_t>(s % kBase);
        carry = static_cast<std::uint32_t>(s / kBase);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    if (compare(o) < 0) throw std::underflow_error("BigUint: negative subtraction");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < o.limbs_.size() ? o.limbs_[i] : 0);
        if (d < 0) {
            d += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<std::uint32_t>(d);
    }
    trim();
    return *this;
}

BigUint& BigUint::operator*=(const BigUint& o) {
    if (is_zero() || o.is_zero()) {
        limbs_.clear();
        return *this;
    }
    std::vector<std::uint32_t> out(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = out[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        std::size_t k = i + o.limbs_.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
            ++k;
        }
    }
    limbs_ = std::move(out);
    trim();
    return *this;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

// Schoolbook long division, one base-10^9 digit of quotient at a time.
// Numbers in this project stay below ~300 decimal digits, so the O(n^2)
// behaviour is irrelevant.
void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r) {
    if (den.is_zero()) throw std::domain_error("BigUint: division by zero");
    q = BigUint();
    r = BigUint();
    if (num.compare(den) < 0) {
        r = num;
        return;
    }
    q.limbs_.assign(num.limbs_.size(), 0);
    for (std::size_t i = num.limbs_.size(); i-- > 0;) {
        // r = r * base + next limb
        r.limbs_.insert(r.limbs_.begin(), num.limbs_[i]);
        r.trim();
        if (r.compare(den) < 0) continue;
        // Binary search the quotient digit in [1, base).
        std::uint32_t lo = 1, hi = kBase - 1, digit = 0;
        while (lo <= hi) {
            std::uint32_t mid = lo + (hi - lo) / 2;
            BigUint t = den;
            t *= BigUint(mid);
            if (t.compare(r) <= 0) {
                digit = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        BigUint t = den;
        t *= BigUint(digit);
        r -= t;
        q.limbs_[i] = digit;
    }
    q.trim();
}

BigUint BigUint::operator/(const BigUint& o) const {
    BigUint q, r;
    divmod(*this, o, q, r);
    return q;
}

BigUint BigUint::operator%(const BigUint& o) const {
    BigUint q, r;
    divmod(*this, o, q, r);
    return r;
}

bool BigUint::divides_exactly(const BigUint& num) const {
    BigUint q, r;
    divmod(num, *this, q, r);
    return r.is_zero();
}

BigUint BigUint::factorial(std::uint64_t n) {
    BigUint r(1);
    for (std::uint64_t i = 2; i <= n; ++i) r *= BigUint(i);
    return r;
}

BigUint BigUint::binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigUint(0);
    if (k > n - k) k = n - k;
    BigUint r(1);
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= BigUint(n - i);
        r = r / BigUint(i + 1);  // exact at every step
    }
    return r;
}

BigUint BigUint::falling_factorial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigUint(0);
    BigUint r(1);
    for (std::uint64_t i = 0; i < k; ++i) r *= BigUint(n - i);
    return r;
}

BigUint BigUint::pow(std::uint64_t base, std::uint64_t exp) {
    BigUint r(1), b(base);
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    while (!b.is_zero()) {
        BigUint q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigRat::BigRat(BigUint num, BigUint den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("BigRat: zero denominator");
    reduce();
}

void BigRat::reduce() {
    if (num_.is_zero()) {
        den_ = BigUint(1);
        return;
    }
    BigUint g = BigUint::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

bool BigRat::is_integer() const { return den_ == BigUint(1); }

BigRat& BigRat::operator+=(const BigRat& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

BigRat& BigRat::operator*=(const BigRat& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

std::string BigRat::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

}  // namespace pc
