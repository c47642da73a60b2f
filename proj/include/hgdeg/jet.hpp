#pragma once

// Second-order jets (value, first and second derivative) over complex
// doubles or exact Gaussian rationals.

#include "hgdeg/mobius.hpp"
#include "hgdeg/rational.hpp"

#include <string>

namespace hgdeg {

/// Exact complex rational re + i im.
struct CRational {
    Rational re, im;

    CRational() = default;
    CRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    /// Exact dyadic value of a complex double.
    static CRational from_complex(Complex z) { return {Rational::from_double(z.real()), Rational::from_double(z.imag())}; }
    Complex to_complex() const { return {re.to_double(), im.to_double()}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend CRational operator+(const CRational& x, const CRational& y) { return {x.re + y.re, x.im + y.im}; }
    friend CRational operator-(const CRational& x, const CRational& y) { return {x.re - y.re, x.im - y.im}; }
    friend CRational operator-(const CRational& x) { return {-x.re, -x.im}; }
    friend CRational operator*(const CRational& x, const CRational& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend CRational operator/(const CRational& x, const CRational& y) {
        Rational n = y.re * y.re + y.im * y.im;
        return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
    }
    CRational& operator+=(const CRational& o) { return *this = *this + o; }
    CRational& operator-=(const CRational& o) { return *this = *this - o; }
    CRational& operator*=(const CRational& o) { return *this = *this * o; }
    friend bool operator==(const CRational& x, const CRational& y) { return x.re == y.re && x.im == y.im; }

    std::string str() const { return re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "i"; }
};

inline CRational int_power(CRational base, long long k) {
    bool inv = k < 0;
    if (inv) k = -k;
    CRational r(Rational(1));
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return inv ? CRational(Rational(1)) / r : r;
}

template <class T>
struct Jet {
    T v{}, d1{}, d2{};

    static Jet constant(T c) { return {c, T{}, T{}}; }

    friend Jet operator+(const Jet& x, const Jet& y) { return {x.v + y.v, x.d1 + y.d1, x.d2 + y.d2}; }
    friend Jet operator-(const Jet& x, const Jet& y) { return {x.v - y.v, x.d1 - y.d1, x.d2 - y.d2}; }
    friend Jet operator*(const Jet& x, const Jet& y) {
        return {x.v * y.v, x.d1 * y.v + x.v * y.d1, x.d2 * y.v + T(2) * x.d1 * y.d1 + x.v * y.d2};
    }
    friend Jet operator*(const T& c, const Jet& x) { return {c * x.v, c * x.d1, c * x.d2}; }
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
};

/// Jet of a Moebius map at z.
template <class T>
Jet<T> mobius_jet(const Mobius& m, const T& z) {
    T num = T(m.p) * z + T(m.q), den = T(m.r) * z + T(m.s);
    T inv = T(1) / den;
    T v = num * inv;
    T d1 = T(m.p * m.s - m.q * m.r) * inv * inv;
    T d2 = T(-2) * T(m.r) * d1 * inv;
    return {v, d1, d2};
}

}  // namespace hgdeg
