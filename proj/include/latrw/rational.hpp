#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace latrw {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction over arbitrary-precision integers. Always stored in lowest
// terms with a positive denominator; all arithmetic is exact. This is the
// only number type allowed on the encode/decode path -- no floating point
// there, ever.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt num, BigInt den);

    // Accepts "p", "p/q" and exact decimals like "-2.75". Rejects anything
    // float-flavored (exponents, inf, nan).
    static Rational parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_integer() const { return den_ == 1; }

    BigInt floor() const;
    BigInt ceil() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Reporting only; never feeds back into exact computations.
    double to_double() const;

    // "p" when integral, "p/q" otherwise.
    std::string to_string() const;

    // Exact decimal expansion ("7.5") when the denominator is 2^a*5^b,
    // falls back to "p/q" otherwise. Used by the CSV writers.
    std::string to_decimal_string() const;

  private:
    void normalize();

    BigInt num_;
    BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// a mod m with the representative in [0, m) for m > 0.
Rational mod(const Rational& a, const Rational& m);

Rational abs(const Rational& r);

using RationalVector = std::vector<Rational>;

// Comma-separated exact values, e.g. "7,3/2,-0.5".
RationalVector parse_rational_vector(std::string_view text);
std::string format_rational_vector(const RationalVector& v);

// Narrowing helper; throws TooLarge when the value does not fit.
std::int64_t checked_int64(const BigInt& v);

}  // namespace latrw
