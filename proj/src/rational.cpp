#include "hgdeg/rational.hpp"

#include "hgdeg/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

namespace hgdeg {

namespace mp = boost::multiprecision;

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = den < 0 ? Value(BigInt(-num), BigInt(-den)) : Value(num, den);
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    };
    auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
        std::size_t i = 0;
        bool neg = false;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
            neg = s[0] == '-';
            i = 1;
        }
        if (i >= s.size()) fail();
        BigInt v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
            v = v * 10 + (s[i] - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) fail();
    return Rational(num, den);
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite double has no rational value");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // mant * 2^53 is an exact integer
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num = m;
    BigInt den = 1;
    if (exp >= 0)
        num <<= exp;
    else
        den <<= -exp;
    return Rational(num, den);
}

BigInt Rational::num() const { return mp::numerator(v_); }
BigInt Rational::den() const { return mp::denominator(v_); }

bool Rational::is_integer() const { return mp::denominator(v_) == 1; }

int Rational::sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

std::optional<long long> Rational::to_int() const {
    if (!is_integer()) return std::nullopt;
    BigInt n = num();
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        return std::nullopt;
    return n.convert_to<long long>();
}

long long Rational::as_int() const {
    auto v = to_int();
    if (!v) throw DomainError("expected a machine-size integer, got " + str());
    return *v;
}

BigInt Rational::floor() const {
    BigInt n = num(), d = den();
    BigInt q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

double Rational::to_double() const {
    if (v_ == 0) return 0.0;
    BigInt n = mp::abs(num());
    BigInt d = den();
    // Scale so that the integer quotient carries 54 significant bits
    // (53 plus one rounding bit); the remainder acts as the sticky bit.
    long long shift = 54 - (static_cast<long long>(mp::msb(n)) - static_cast<long long>(mp::msb(d)));
    auto quotient = [&](long long s, BigInt& rem) {
        BigInt nn = n, dd = d;
        if (s >= 0) nn <<= s; else dd <<= -s;
        BigInt q = nn / dd;
        rem = nn - q * dd;
        return q;
    };
    BigInt rem;
    BigInt q = quotient(shift, rem);
    if (mp::msb(q) > 53) {
        --shift;
        q = quotient(shift, rem);
    } else if (mp::msb(q) < 53) {
        ++shift;
        q = quotient(shift, rem);
    }
    bool round_bit = mp::bit_test(q, 0);
    bool sticky = rem != 0;
    BigInt mant = q >> 1;
    if (round_bit && (sticky || mp::bit_test(mant, 0))) mant += 1;
    double out = std::ldexp(mant.convert_to<double>(), static_cast<int>(1 - shift));
    return sign() < 0 ? -out : out;
}

std::string Rational::str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::pow(long long k) const {
    if (k < 0) {
        if (is_zero()) throw DomainError("zero to a negative power");
        return Rational(1) / pow(-k);
    }
    Rational result(1), base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(long long n) {
    if (n < 0) throw PoleError("factorial of a negative integer");
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

Rational pochhammer(const Rational& x, long long k) {
    if (k < 0) throw DomainError("pochhammer with negative length");
    Rational p(1);
    for (long long i = 0; i < k; ++i) p *= x + Rational(i);
    return p;
}

Rational digamma_int_difference(long long p, long long q) {
    if (p <= 0 || q <= 0) throw PoleError("digamma at a non-positive integer");
    // psi(p) = -gamma + H_{p-1}
    Rational s(0);
    if (p > q)
        for (long long j = q; j < p; ++j) s += Rational(1, j);
    else
        for (long long j = p; j < q; ++j) s -= Rational(1, j);
    return s;
}

}  // namespace hgdeg
