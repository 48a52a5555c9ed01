#include "hlinv/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace hlinv {

BigUint::BigUint(uint64_t v) {
    if (v) {
        limbs_.push_back(static_cast<uint32_t>(v));
        if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

bool BigUint::fits_u64() const { return limbs_.size() <= 2; }

uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint::to_u64");
    uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t sum = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<uint32_t>(sum);
        carry = sum >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    if (cmp(*this, o) < 0) throw std::underflow_error("BigUint subtraction");
    int64_t borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        int64_t diff = static_cast<int64_t>(limbs_[i]) - borrow -
                       (i < o.limbs_.size() ? static_cast<int64_t>(o.limbs_[i]) : 0);
        borrow = 0;
        if (diff < 0) {
            diff += (int64_t(1) << 32);
            borrow = 1;
        }
        limbs_[i] = static_cast<uint32_t>(diff);
    }
    trim();
    return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    BigUint out;
    if (a.is_zero() || b.is_zero()) return out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            uint64_t cur = out.limbs_[i + j] +
                           static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
            out.limbs_[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.limbs_.size();
        while (carry) {
            uint64_t cur = out.limbs_[k] + carry;
            out.limbs_[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

uint32_t BigUint::divmod_small(uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<uint32_t>(rem);
}

void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r) {
    if (den.is_zero()) throw std::domain_error("BigUint division by zero");
    int c = cmp(num, den);
    if (c < 0) {
        q = BigUint();
        r = num;
        return;
    }
    if (den.limbs_.size() == 1) {
        q = num;
        r = BigUint(q.divmod_small(den.limbs_[0]));
        return;
    }
    // schoolbook long division, bit by bit; fine at the sizes the
    // invariants produce
    q = BigUint();
    q.limbs_.assign(num.limbs_.size(), 0);
    r = BigUint();
    for (size_t i = num.limbs_.size(); i-- > 0;) {
        for (int bit = 31; bit >= 0; --bit) {
            // r = r*2 + next bit
            uint32_t carry = 0;
            for (size_t k = 0; k < r.limbs_.size(); ++k) {
                uint32_t nxt = r.limbs_[k] >> 31;
                r.limbs_[k] = (r.limbs_[k] << 1) | carry;
                carry = nxt;
            }
            if (carry) r.limbs_.push_back(carry);
            if ((num.limbs_[i] >> bit) & 1u) {
                if (r.limbs_.empty())
                    r.limbs_.push_back(1);
                else {
                    uint64_t sum = uint64_t(r.limbs_[0]) + 1;
                    r.limbs_[0] = static_cast<uint32_t>(sum);
                    size_t k = 1;
                    uint64_t cr = sum >> 32;
                    while (cr) {
                        if (k == r.limbs_.size()) {
                            r.limbs_.push_back(1);
                            break;
                        }
                        uint64_t s2 = uint64_t(r.limbs_[k]) + 1;
                        r.limbs_[k] = static_cast<uint32_t>(s2);
                        cr = s2 >> 32;
                        ++k;
                    }
                }
            }
            if (cmp(r, den) >= 0) {
                r -= den;
                q.limbs_[i] |= (1u << bit);
            }
        }
    }
    q.trim();
}

BigUint operator/(const BigUint& a, const BigUint& b) {
    BigUint q, r;
    BigUint::divmod(a, b, q, r);
    return q;
}

BigUint operator%(const BigUint& a, const BigUint& b) {
    BigUint q, r;
    BigUint::divmod(a, b, q, r);
    return r;
}

BigUint BigUint::pow(const BigUint& base, uint64_t exp) {
    BigUint out(1), b = base;
    while (exp) {
        if (exp & 1) out *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return out;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    while (!b.is_zero()) {
        BigUint q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    BigUint tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        uint32_t chunk = tmp.divmod_small(1000000000u);
        std::string part = std::to_string(chunk);
        if (tmp.is_zero())
            out = part + out;
        else
            out = std::string(9 - part.size(), '0') + part + out;
    }
    return out;
}

URational::URational(BigUint num, BigUint den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("URational zero denominator");
    if (num_.is_zero()) {
        den_ = BigUint(1);
        return;
    }
    BigUint g = BigUint::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

int URational::cmp(const URational& a, const URational& b) {
    return BigUint::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

std::string URational::to_string() const {
    return num_.to_string() + "/" + den_.to_string();
}

}  // namespace hlinv
