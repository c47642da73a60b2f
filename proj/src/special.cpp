#include "hgdeg/special.hpp"

#include "hgdeg/errors.hpp"

#include <cmath>

namespace hgdeg {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

bool is_pole(double x) { return x <= 0 && x == std::floor(x); }

double cot_pi(double x) {
    double r = x - std::round(x);
    return std::cos(kPi * r) / std::sin(kPi * r);
}

Complex cot_pi(Complex x) {
    Complex r = x - std::round(x.real());
    return std::cos(kPi * r) / std::sin(kPi * r);
}

// Asymptotic series after shifting the argument to Re x >= 12.
template <class T>
T digamma_shifted(T x) {
    T acc = 0;
    while (std::real(x) < 12) {
        acc -= T(1) / x;
        x += T(1);
    }
    T x2 = T(1) / (x * x);
    // Bernoulli terms B_{2k} / (2k x^{2k}), k = 1..7, Horner form in 1/x^2
    T tail = x2 * (T(1.0 / 12) +
                   x2 * (T(-1.0 / 120) +
                         x2 * (T(1.0 / 252) +
                               x2 * (T(-1.0 / 240) +
                                     x2 * (T(1.0 / 132) + x2 * (T(-691.0 / 32760) + x2 * T(1.0 / 12)))))));
    return acc + std::log(x) - T(0.5) / x - tail;
}

}  // namespace

double gamma(double x) {
    if (is_pole(x)) throw PoleError("gamma pole at " + std::to_string(x));
    return std::tgamma(x);
}

double gamma(const Rational& x) {
    if (x.is_nonpositive_integer()) throw PoleError("gamma pole at " + x.str());
    return std::tgamma(x.to_double());
}

Complex digamma(Complex x) {
    if (x.imag() == 0) return digamma(x.real());
    if (x.real() < 0.5) return digamma_shifted(Complex(1) - x) - kPi * cot_pi(x);
    return digamma_shifted(x);
}

double digamma(double x) {
    if (is_pole(x)) throw PoleError("digamma pole at " + std::to_string(x));
    if (x < 0.5) return digamma_shifted(1 - x) - kPi * cot_pi(x);
    return digamma_shifted(x);
}

double digamma(const Rational& x) {
    if (x.is_nonpositive_integer()) throw PoleError("digamma pole at " + x.str());
    if (x.is_integer()) return digamma_int_difference(x.as_int(), 1).to_double() - kEulerGamma;
    return digamma(x.to_double());
}

Complex pochhammer(Complex x, long long k) {
    Complex p = 1;
    for (long long i = 0; i < k; ++i) p *= x + double(i);
    return p;
}

double pochhammer(double x, long long k) {
    double p = 1;
    for (long long i = 0; i < k; ++i) p *= x + double(i);
    return p;
}

double sin_pi(const Rational& x) {
    // reduce to r in [0, 2)
    Rational r = x - Rational(2) * Rational((x / Rational(2)).floor());
    double sign = 1;
    if (r >= Rational(1)) {
        r -= Rational(1);
        sign = -1;
    }
    if (r.is_zero()) return 0.0;
    if (r > Rational(1, 2)) r = Rational(1) - r;
    return sign * std::sin(kPi * r.to_double());
}

double cos_pi(const Rational& x) { return sin_pi(x + Rational(1, 2)); }

double tan_pi(const Rational& x) {
    double c = cos_pi(x);
    if (c == 0) throw PoleError("tan(pi x) pole at " + x.str());
    return sin_pi(x) / c;
}

Complex principal_log(Complex z) {
    if (z == Complex(0)) throw DomainError("log of zero");
    if (z.imag() == 0 && z.real() < 0) return {std::log(-z.real()), kPi};
    return std::log(z);
}

Complex principal_power(Complex base, const Rational& e) {
    if (base == Complex(0)) {
        if (e.sign() < 0) throw DomainError("zero to a negative power");
        return e.is_zero() ? Complex(1) : Complex(0);
    }
    if (auto k = e.to_int()) {
        long long n = *k < 0 ? -*k : *k;
        Complex result = 1, sq = base;
        while (n) {
            if (n & 1) result *= sq;
            sq *= sq;
            n >>= 1;
        }
        return *k < 0 ? Complex(1) / result : result;
    }
    return std::exp(e.to_double() * principal_log(base));
}

}  // namespace hgdeg
