#include "hgdeg/hypergeometric.hpp"

#include "hgdeg/errors.hpp"
#include "hgdeg/special.hpp"

#include <algorithm>
#include <cmath>

namespace hgdeg {

SeriesStatus series_status(const Rational& A, const Rational& B, const Rational& C) {
    std::optional<long long> degree;
    auto consider = [&](const Rational& x) {
        if (!x.is_nonpositive_integer()) return;
        long long n = -x.as_int();
        if (C.is_nonpositive_integer() && n > -C.as_int()) return;
        degree = degree ? std::min(*degree, n) : n;
    };
    consider(A);
    consider(B);
    if (degree) return {SeriesKind::Terminating, *degree};
    if (C.is_nonpositive_integer()) return {SeriesKind::Undefined, 0};
    return {SeriesKind::NonTerminating, 0};
}

bool SeriesAccumulator::add(Complex term) {
    Complex y = term - comp_;
    Complex t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
    ++terms_;
    last_ = std::abs(term);
    if (last_ <= opts_.rel_tol * std::abs(sum_))
        ++small_run_;
    else
        small_run_ = 0;
    return small_run_ >= opts_.stagnation_window;
}

double SeriesAccumulator::truncation_estimate() const {
    double s = std::abs(sum_);
    return s == 0 ? last_ : last_ / s;
}

Complex exact_polynomial_value(const std::vector<Rational>& coeffs, Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite evaluation point");
    Rational zr = Rational::from_double(z.real()), zi = Rational::from_double(z.imag());
    Rational sr(0), si(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        Rational nr = sr * zr - si * zi + *it;
        si = sr * zi + si * zr;
        sr = std::move(nr);
    }
    return {sr.to_double(), si.to_double()};
}

SeriesValue eval_2f1(const Rational& A, const Rational& B, const Rational& C, Complex z, const EvalOptions& opts) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite evaluation point");
    auto status = series_status(A, B, C);
    if (status.kind == SeriesKind::Undefined)
        throw UndefinedSeries("2F1(" + A.str() + "," + B.str() + ";" + C.str() + ") has a pole in its lower parameter");

    SeriesValue out;
    if (status.kind == SeriesKind::Terminating) {
        std::vector<Rational> coeffs{Rational(1)};
        for (long long k = 0; k < status.degree; ++k)
            coeffs.push_back(coeffs.back() * (A + Rational(k)) * (B + Rational(k)) / ((C + Rational(k)) * Rational(k + 1)));
        if (opts.exact_terminating) {
            out.value = exact_polynomial_value(coeffs, z);
        } else {
            Complex s = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * z + it->to_double();
            out.value = s;
        }
        out.terms_used = status.degree + 1;
        out.exact = true;
        return out;
    }

    if (std::abs(z) > kSummationRadius * (1 + 1e-12))
        throw DomainError("|z| = " + std::to_string(std::abs(z)) + " outside the summation disc");
    const double a = A.to_double(), b = B.to_double(), c = C.to_double();
    SeriesAccumulator acc(opts);
    Complex term = 1;
    for (long long k = 0;; ++k) {
        if (acc.add(term)) break;
        if (k + 1 >= opts.max_terms) throw NoConvergence("2F1 series did not converge in " + std::to_string(opts.max_terms) + " terms");
        term *= z * ((a + k) * (b + k) / ((c + k) * (k + 1)));
    }
    out.value = acc.sum();
    out.terms_used = acc.terms();
    out.truncation_estimate = acc.truncation_estimate();
    return out;
}

const char* to_string(BoldFBranch b) {
    switch (b) {
        case BoldFBranch::GammaRatio: return "gamma_ratio";
        case BoldFBranch::ShiftedLowerPole: return "shifted_lower_pole";
        case BoldFBranch::Residue: return "residue";
    }
    return "?";
}

BoldFValue eval_bold_f(const Rational& A, const Rational& B, const Rational& C, Complex z, const EvalOptions& opts) {
    const Rational one(1);
    auto fail = [&]() -> BoldFValue {
        throw UndefinedSeries("bold F(" + A.str() + "," + B.str() + ";" + C.str() + ") outside all conventions");
    };
    auto scaled = [](const SeriesValue& v, Complex factor) {
        BoldFValue out;
        out.value = factor * v.value;
        out.terms_used = v.terms_used;
        out.truncation_estimate = v.truncation_estimate;
        return out;
    };

    bool a_pole = A.is_nonpositive_integer(), b_pole = B.is_nonpositive_integer();
    if (!C.is_nonpositive_integer()) {
        if (a_pole || b_pole) return fail();
        auto out = scaled(eval_2f1(A, B, C, z, opts), gamma(A) * gamma(B) / gamma(C));
        out.branch = BoldFBranch::GammaRatio;
        return out;
    }

    const long long N = -C.as_int();
    const Rational shift(N + 1);
    const Complex zpow = principal_power(z, shift);
    if (!a_pole && !b_pole) {
        auto out = scaled(eval_2f1(A + shift, B + shift, Rational(N + 2), z, opts),
                          gamma(A + shift) * gamma(B + shift) / factorial(N + 1).to_double() * zpow);
        out.branch = BoldFBranch::ShiftedLowerPole;
        return out;
    }
    if (a_pole && b_pole) return fail();
    const Rational& upper = a_pole ? A : B;
    const Rational& other = a_pole ? B : A;
    const long long n = -upper.as_int();
    if (n > N) return fail();

    double sign = (N - n) % 2 ? -1.0 : 1.0;
    auto head = eval_2f1(upper, other, C, z, opts);
    auto tail = eval_2f1(Rational(N - n + 1), other + shift, Rational(N + 2), z, opts);
    Complex c_head = sign * gamma(other) * (factorial(N) / factorial(n)).to_double();
    Complex c_tail = gamma(other + shift) * (factorial(N - n) / factorial(N + 1)).to_double() * zpow;
    BoldFValue out;
    out.value = c_head * head.value + c_tail * tail.value;
    out.terms_used = head.terms_used + tail.terms_used;
    out.truncation_estimate = tail.truncation_estimate;
    out.branch = BoldFBranch::Residue;
    return out;
}

}  // namespace hgdeg
