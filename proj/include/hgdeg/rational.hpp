#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers over arbitrary-size integers.
 *
 * Values are always reduced, with a positive denominator, so structural
 * equality coincides with numeric equality. Storage is boost's cpp_rational.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace hgdeg {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long v) : v_(v) {}  // NOLINT
    Rational(long long v) : v_(v) {}  // NOLINT
    explicit Rational(const BigInt& v) : v_(v) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p" or "p/q" (optional leading sign, q > 0). Decimals are rejected.
    static Rational parse(std::string_view text);

    /// Exact value of a finite binary64 (every double is a dyadic rational).
    static Rational from_double(double x);

    BigInt num() const;
    BigInt den() const;

    bool is_integer() const;
    bool is_zero() const { return v_ == 0; }
    int sign() const;

    /// True iff the value is an integer <= 0.
    bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }
    bool is_positive_integer() const { return is_integer() && sign() > 0; }

    /// Integer value if the number is an integer that fits in 64 bits.
    std::optional<long long> to_int() const;
    /// Like to_int but throws DomainError when not a (small) integer.
    long long as_int() const;

    BigInt floor() const;

    /// Correctly rounded (round-half-even) conversion to binary64.
    double to_double() const;

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const;

    Rational operator-() const { return Rational(Raw{}, -v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Integer power; negative exponents invert (DomainError on 0^-k).
    Rational pow(long long k) const;

    Rational abs() const { return sign() < 0 ? -*this : *this; }

private:
    struct Raw {};
    using Value = boost::multiprecision::cpp_rational;
    Rational(Raw, Value v) : v_(std::move(v)) {}
    Value v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// n! as an exact rational (n >= 0).
Rational factorial(long long n);

/// Rising factorial (x)_k = x (x+1) ... (x+k-1); (x)_0 = 1.
Rational pochhammer(const Rational& x, long long k);

/// psi(p) - psi(q) for positive integers p, q: a finite harmonic sum.
Rational digamma_int_difference(long long p, long long q);

}  // namespace hgdeg
