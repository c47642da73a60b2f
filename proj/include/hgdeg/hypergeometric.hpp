#pragma once

// Gauss 2F1 summation and the gamma-normalised series bold F.

#include "hgdeg/mobius.hpp"
#include "hgdeg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgdeg {

/// Largest |argument| at which a non-terminating series is summed directly.
constexpr double kSummationRadius = 0.9;

struct EvalOptions {
    double rel_tol = 1e-14;
    long long max_terms = 10000;
    int stagnation_window = 3;
    /// Sum terminating series exactly over Q(i) using the dyadic value of z.
    bool exact_terminating = true;
};

struct SeriesValue {
    Complex value;
    long long terms_used = 0;
    double truncation_estimate = 0;
    bool exact = false;
};

enum class SeriesKind { NonTerminating, Terminating, Undefined };

/// Status of 2F1(A,B;C;z) under the terminating convention: an upper
/// parameter -n terminates the sum; C = -N is rescued only by -n with n <= N.
struct SeriesStatus {
    SeriesKind kind = SeriesKind::NonTerminating;
    long long degree = 0;  // valid for Terminating
};

SeriesStatus series_status(const Rational& A, const Rational& B, const Rational& C);

/// Kahan-compensated complex sum with the stagnation stop rule.
class SeriesAccumulator {
public:
    explicit SeriesAccumulator(const EvalOptions& opts) : opts_(opts) {}

    /// Adds a term; returns true once the stop rule has fired.
    bool add(Complex term);
    Complex sum() const { return sum_; }
    long long terms() const { return terms_; }
    double truncation_estimate() const;

private:
    EvalOptions opts_;
    Complex sum_ = 0, comp_ = 0;
    double last_ = 0;
    long long terms_ = 0;
    int small_run_ = 0;
};

/// Gauss series. Non-terminating series need |z| <= kSummationRadius.
SeriesValue eval_2f1(const Rational& A, const Rational& B, const Rational& C, Complex z,
                     const EvalOptions& opts = {});

enum class BoldFBranch { GammaRatio, ShiftedLowerPole, Residue };

const char* to_string(BoldFBranch b);

struct BoldFValue : SeriesValue {
    BoldFBranch branch = BoldFBranch::GammaRatio;
};

/// sum_k Gamma(A+k) Gamma(B+k) / (Gamma(C+k) k!) z^k with singular gamma
/// quotients taken as limits (C = -N) or residues (upper -n, C = -N, n <= N).
BoldFValue eval_bold_f(const Rational& A, const Rational& B, const Rational& C, Complex z,
                       const EvalOptions& opts = {});

/// Sum of a terminating series with exact rational coefficients at a
/// dyadic-rational complex point, correctly rounded.
Complex exact_polynomial_value(const std::vector<Rational>& coeffs, Complex z);

}  // namespace hgdeg
