#ifndef CTMC_RATIONAL_HPP
#define CTMC_RATIONAL_HPP

#include <cstdint>
#include <string>

#include "ctmc/errors.hpp"

namespace ctmc {

// Exact rational over int64. Literals in model/property source are decimal,
// so every denominator arising from parsing and +,-,* folding is of the form
// 2^a * 5^b and has an exact finite decimal rendering.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}   // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d);

    static Rational from_decimal_string(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    // Exact decimal when den = 2^a 5^b, otherwise "num/den".
    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void normalize();
};

} // namespace ctmc

#endif
