#include "latrw/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "latrw/errors.hpp"

namespace latrw {

namespace {

BigInt parse_big(std::string_view digits) {
    if (digits.empty()) throw std::invalid_argument("empty integer literal");
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("bad digit in number: '" + std::string(digits) + "'");
        }
    }
    return BigInt(std::string(digits));
}

BigInt pow10(std::size_t k) {
    BigInt p = 1;
    for (std::size_t i = 0; i < k; ++i) p *= 10;
    return p;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void Rational::normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    auto dot = s.find('.');
    Rational r;
    if (slash != std::string_view::npos) {
        if (dot != std::string_view::npos) {
            throw std::invalid_argument("mixed decimal/fraction literal: '" + std::string(text) + "'");
        }
        r = Rational(parse_big(s.substr(0, slash)), parse_big(s.substr(slash + 1)));
    } else if (dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw std::invalid_argument("bad decimal literal");
        BigInt scaled = whole.empty() ? BigInt(0) : parse_big(whole);
        scaled *= pow10(frac.size());
        if (!frac.empty()) scaled += parse_big(frac);
        r = Rational(scaled, pow10(frac.size()));
    } else {
        r = Rational(parse_big(s));
    }
    return negative ? -r : r;
}

BigInt Rational::floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
}

BigInt Rational::ceil() const {
    BigInt q = num_ / den_;
    if (num_ > 0 && q * den_ != num_) ++q;
    return q;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (den_ == o.den_) {
        num_ -= o.num_;
    } else {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

double Rational::to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Rational::to_string() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

std::string Rational::to_decimal_string() const {
    if (den_ == 1) return num_.str();
    // Denominator must be of the form 2^a * 5^b for a finite expansion.
    BigInt d = den_;
    std::size_t twos = 0;
    std::size_t fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return to_string();

    std::size_t digits = std::max(twos, fives);
    BigInt scaled = (num_ < 0 ? BigInt(-num_) : num_) * pow10(digits) / den_;
    std::string raw = scaled.str();
    if (raw.size() <= digits) raw.insert(0, digits - raw.size() + 1, '0');
    std::string out = raw.substr(0, raw.size() - digits) + "." + raw.substr(raw.size() - digits);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return (num_ < 0 ? "-" : "") + out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational mod(const Rational& a, const Rational& m) {
    if (!m.is_positive()) throw std::domain_error("mod with non-positive modulus");
    return a - m * Rational(BigInt((a / m).floor()));
}

Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

RationalVector parse_rational_vector(std::string_view text) {
    RationalVector out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = comma == std::string_view::npos ? text.substr(start)
                                                     : text.substr(start, comma - start);
        out.push_back(Rational::parse(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_rational_vector(const RationalVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i].to_string();
    }
    return out;
}

std::int64_t checked_int64(const BigInt& v) {
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max()) {
        throw TooLarge("integer out of 64-bit range: " + v.str());
    }
    return v.convert_to<std::int64_t>();
}

}  // namespace latrw
