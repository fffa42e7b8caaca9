#pragma once
#include <cstdint>
#include <cstdlib>
#include <string>

#include "fiscomp/errors.hpp"
#include "fiscomp/rng.hpp"

namespace fiscomp {

// Exact rational arithmetic on 128-bit integers. Used by the identity checks
// that must distinguish "equal" from "equal up to rounding": evaluating an
// algebraic identity at rational points makes the comparison exact.
//
// All intermediate products and sums are overflow-checked; an expression that
// leaves the 128-bit range throws instead of wrapping. Callers keep operands
// small enough that this never fires (linear checks draw |num|,den <= 1e6,
// polynomial checks <= 60).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (d == 0) throw InvalidParameterError("rational: zero denominator");
        normalize();
    }

    static Rational from_int128(__int128 n, __int128 d) {
        if (d == 0) throw InvalidParameterError("rational: zero denominator");
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_int128(add(mul(num_, o.den_), mul(o.num_, den_)), mul(den_, o.den_));
    }
    Rational operator-(const Rational& o) const {
        return from_int128(add(mul(num_, o.den_), -mul(o.num_, den_)), mul(den_, o.den_));
    }
    Rational operator*(const Rational& o) const {
        return from_int128(mul(num_, o.num_), mul(den_, o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw InvalidParameterError("rational: division by zero");
        return from_int128(mul(num_, o.den_), mul(den_, o.num_));
    }
    Rational operator-() const { return from_int128(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    bool is_zero() const { return num_ == 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        auto i128_str = [](__int128 v) {
            if (v == 0) return std::string("0");
            bool neg = v < 0;
            unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
            std::string s;
            while (u > 0) {
                s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
                u /= 10;
            }
            return neg ? "-" + s : s;
        };
        return den_ == 1 ? i128_str(num_) : i128_str(num_) + "/" + i128_str(den_);
    }

private:
    __int128 num_;
    __int128 den_;  // > 0, coprime with num_

    static __int128 mul(__int128 a, __int128 b) {
        __int128 out;
        if (__builtin_mul_overflow(a, b, &out))
            throw InvalidParameterError("rational: product exceeds 128-bit range");
        return out;
    }

    static __int128 add(__int128 a, __int128 b) {
        __int128 out;
        if (__builtin_add_overflow(a, b, &out))
            throw InvalidParameterError("rational: sum exceeds 128-bit range");
        return out;
    }

    static unsigned __int128 gcd_u(unsigned __int128 a, unsigned __int128 b) {
        while (b != 0) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        unsigned __int128 a = num_ < 0 ? -static_cast<unsigned __int128>(num_)
                                       : static_cast<unsigned __int128>(num_);
        unsigned __int128 g = gcd_u(a, static_cast<unsigned __int128>(den_));
        num_ /= static_cast<__int128>(g);
        den_ /= static_cast<__int128>(g);
    }
};

// Random rational with |numerator| <= max_num and 1 <= denominator <= max_den.
inline Rational random_rational(DrawRng& rng, long long max_num = 1000000,
                                long long max_den = 1000000) {
    const long long num = static_cast<long long>(rng.bits() % (2 * max_num + 1)) - max_num;
    const long long den = static_cast<long long>(rng.bits() % max_den) + 1;
    return Rational(num, den);
}

// Random nonzero rational.
inline Rational random_nonzero_rational(DrawRng& rng, long long max_num = 1000000,
                                        long long max_den = 1000000) {
    for (;;) {
        Rational r = random_rational(rng, max_num, max_den);
        if (!r.is_zero()) return r;
    }
}

} // namespace fiscomp
