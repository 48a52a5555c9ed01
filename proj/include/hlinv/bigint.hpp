// Unsigned arbitrary-precision integers and non-negative rationals.
// Coloring counts grow like |G|^k under repeated stabilization, so the
// counting paths never touch fixed-width arithmetic.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hlinv {

class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v);

    static BigUint from_u64(uint64_t v) { return BigUint(v); }

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const;
    uint64_t to_u64() const;  // requires fits_u64()

    // three-way: -1, 0, +1
    static int cmp(const BigUint& a, const BigUint& b);

    friend bool operator==(const BigUint& a, const BigUint& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

    BigUint& operator+=(const BigUint& o);
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

    // requires *this >= o
    BigUint& operator-=(const BigUint& o);
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

    friend BigUint operator*(const BigUint& a, const BigUint& b);
    BigUint& operator*=(const BigUint& o) { return *this = *this * o; }

    // quotient and remainder; divisor must be nonzero
    static void divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r);
    friend BigUint operator/(const BigUint& a, const BigUint& b);
    friend BigUint operator%(const BigUint& a, const BigUint& b);

    static BigUint pow(const BigUint& base, uint64_t exp);
    static BigUint gcd(BigUint a, BigUint b);

    std::string to_string() const;

private:
    // base 2^32, little-endian, no trailing zero limbs
    std::vector<uint32_t> limbs_;

    void trim();
    uint32_t divmod_small(uint32_t d);  // in-place quotient, returns remainder
};

// Exact non-negative rational, always in lowest terms with positive denominator.
class URational {
public:
    URational() : num_(0), den_(1) {}
    URational(BigUint num, BigUint den);
    URational(uint64_t num, uint64_t den = 1) : URational(BigUint(num), BigUint(den)) {}

    const BigUint& num() const { return num_; }
    const BigUint& den() const { return den_; }

    static int cmp(const URational& a, const URational& b);
    friend bool operator==(const URational& a, const URational& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const URational& a, const URational& b) { return cmp(a, b) != 0; }
    friend bool operator<(const URational& a, const URational& b) { return cmp(a, b) < 0; }

    std::string to_string() const;  // "p/q", denominator always printed

private:
    BigUint num_, den_;
};

}  // namespace hlinv
