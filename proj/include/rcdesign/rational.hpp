#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace rcd {

using bigint = boost::multiprecision::cpp_int;

// Exact fraction with arbitrary-precision parts. The denominator is kept
// positive and the fraction reduced after every operation, so comparisons
// can always cross-multiply without normalization. No floating point is
// involved anywhere except in the explicit to_double() conversion used for
// display.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}
    Rational(const bigint& n) : num_(n), den_(1) {}
    Rational(bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    Rational(long n, long d) : num_(n), den_(d) { reduce(); }

    const bigint& num() const { return num_; }
    const bigint& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    // Exact floor as a bigint; works for negative values too.
    bigint floor() const;
    bigint ceil() const;

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        bigint lhs = num_ * o.den_;
        bigint rhs = o.num_ * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const;       // "p/q" or "p" when integral
    double to_double() const;      // display only

private:
    struct unchecked {};
    Rational(unchecked, bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) {}
    void reduce();

    bigint num_;
    bigint den_;  // > 0
};

}  // namespace rcd
