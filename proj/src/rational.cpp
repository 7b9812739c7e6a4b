#include "ctmc/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace ctmc {

namespace {

using int128 = __int128;

std::int64_t checked_narrow(int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw NumericError(std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw NumericError("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    if (num_ == 0) { den_ = 1; return; }
    if (den_ == 1) return;
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::from_decimal_string(const std::string& text) {
    // [-]digits[.digits]
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
    }
    int128 num = 0;
    int128 den = 1;
    bool any = false, frac = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (frac) throw NumericError("malformed number '" + text + "'");
            frac = true;
            continue;
        }
        if (c < '0' || c > '9') throw NumericError("malformed number '" + text + "'");
        any = true;
        num = num * 10 + (c - '0');
        if (frac) den *= 10;
        if (num > INT64_MAX || den > INT64_MAX)
            throw NumericError("number literal too large: '" + text + "'");
    }
    if (!any) throw NumericError("malformed number '" + text + "'");
    Rational r;
    r.num_ = static_cast<std::int64_t>(neg ? -num : num);
    r.den_ = static_cast<std::int64_t>(den);
    r.normalize();
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked_narrow(-static_cast<int128>(num_), "negation");
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    int128 n = static_cast<int128>(num_) * o.den_ + static_cast<int128>(o.num_) * den_;
    int128 d = static_cast<int128>(den_) * o.den_;
    // reduce in 128-bit before narrowing
    if (n != 0) {
        int128 a = n < 0 ? -n : n, b = d;
        while (b) { int128 t = a % b; a = b; b = t; }
        n /= a; d /= a;
    } else {
        d = 1;
    }
    Rational r;
    r.num_ = checked_narrow(n, "addition");
    r.den_ = checked_narrow(d, "addition");
    return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    int128 n = static_cast<int128>(num_) * o.num_;
    int128 d = static_cast<int128>(den_) * o.den_;
    if (n != 0) {
        int128 a = n < 0 ? -n : n, b = d;
        while (b) { int128 t = a % b; a = b; b = t; }
        n /= a; d /= a;
    } else {
        d = 1;
    }
    Rational r;
    r.num_ = checked_narrow(n, "multiplication");
    r.den_ = checked_narrow(d, "multiplication");
    return r;
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<int128>(num_) * o.den_ < static_cast<int128>(o.num_) * den_;
}

bool Rational::operator<=(const Rational& o) const {
    return static_cast<int128>(num_) * o.den_ <= static_cast<int128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    // den = 2^a 5^b  ->  scale to a power of ten
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int digits = twos > fives ? twos : fives;
    int128 scaled = num_;
    for (int i = fives; i < twos; ++i) scaled *= 5;
    for (int i = twos; i < fives; ++i) scaled *= 2;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string raw;
    if (scaled == 0) raw = "0";
    while (scaled > 0) { raw.insert(raw.begin(), static_cast<char>('0' + int(scaled % 10))); scaled /= 10; }
    while (static_cast<int>(raw.size()) <= digits) raw.insert(raw.begin(), '0');
    raw.insert(raw.end() - digits, '.');
    return neg ? "-" + raw : raw;
}

const char* error_class_name(ErrorClass c) {
    switch (c) {
        case ErrorClass::Io: return "io";
        case ErrorClass::Lex: return "lex";
        case ErrorClass::Syntax: return "syntax";
        case ErrorClass::Validate: return "validate";
        case ErrorClass::Build: return "build";
        case ErrorClass::Numeric: return "numeric";
        case ErrorClass::Query: return "query";
        case ErrorClass::Usage: return "usage";
    }
    return "unknown";
}

} // namespace ctmc
