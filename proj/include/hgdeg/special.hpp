#pragma once

// Gamma, digamma, rising factorials and principal-branch powers/logs.

#include "hgdeg/mobius.hpp"
#include "hgdeg/rational.hpp"

namespace hgdeg {

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Gamma on the reals. Throws PoleError at non-positive integers.
double gamma(double x);
double gamma(const Rational& x);

/// psi = Gamma'/Gamma. Throws PoleError at non-positive integers.
Complex digamma(Complex x);
double digamma(double x);
double digamma(const Rational& x);

Complex pochhammer(Complex x, long long k);
double pochhammer(double x, long long k);

/// sin(pi x), cos(pi x), tan(pi x) with argument reduction, exact zeros at
/// (half-)integers.
double sin_pi(const Rational& x);
double cos_pi(const Rational& x);
double tan_pi(const Rational& x);

/// Principal logarithm, imaginary part in (-pi, pi]. A signed zero imaginary
/// part on the negative axis is read as the limit from the upper half-plane.
Complex principal_log(Complex z);

/// exp(e * principal_log(base)); integer exponents by repeated squaring.
/// Throws DomainError for base 0 with e < 0.
Complex principal_power(Complex base, const Rational& e);

}  // namespace hgdeg
