#include "rcdesign/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace rcd {

void Rational::reduce() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    bigint g = boost::multiprecision::gcd(num_ < 0 ? bigint(-num_) : num_, den_);
    num_ /= g;
    den_ /= g;
}

bigint Rational::floor() const {
    bigint q = num_ / den_;
    // cpp_int division truncates toward zero; fix up negatives.
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
}

bigint Rational::ceil() const {
    bigint q = num_ / den_;
    if (num_ > 0 && q * den_ != num_) ++q;
    return q;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

}  // namespace rcd
