#pragma once

/**
 * @file expression.hpp
 * @brief Evaluable solution expressions.
 *
 * An Expression is a sum of Terms. A Term is an exact symbolic constant times
 * principal powers of Moebius maps, an optional principal logarithm, and
 * power series in Moebius maps with rational coefficients and optional
 * digamma weights. Evaluation returns a second-order jet, so derivatives are
 * exact term by term. Expressions with rational constants, integer powers, no
 * logarithm and only finite sums also evaluate exactly over Q(i).
 */

#include "hgdeg/hypergeometric.hpp"
#include "hgdeg/jet.hpp"
#include "hgdeg/mobius.hpp"
#include "hgdeg/rational.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hgdeg {

enum class ConstFn { Gamma, SinPi, CosPi, TanPi, ExpIPi, Pi };

struct ConstFactor {
    ConstFn fn;
    Rational arg;  // unused for Pi
    int power = 1;
};

/// rational * prod fn(arg)^power * scale. `scale` stays 1 except in
/// deliberately perturbed (mutation) copies.
struct Constant {
    Rational rational{1};
    std::vector<ConstFactor> factors;
    double scale = 1.0;

    Constant() = default;
    Constant(Rational r) : rational(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Constant(int r) : rational(r) {}                  // NOLINT(google-explicit-constructor)

    static Constant gamma(const Rational& x, int power = 1);
    static Constant sin_pi(const Rational& x, int power = 1);
    static Constant cos_pi(const Rational& x, int power = 1);
    static Constant tan_pi(const Rational& x, int power = 1);
    static Constant exp_i_pi(const Rational& x);
    static Constant pi(int power = 1);

    bool is_rational() const { return factors.empty() && scale == 1.0; }
    bool is_zero() const { return rational.is_zero(); }
    Complex value() const;

    friend Constant operator*(Constant x, const Constant& y);
    friend Constant operator/(Constant x, const Constant& y);
    Constant operator-() const;

    std::string str() const;
    std::string latex() const;
};

struct PowerFactor {
    Mobius base;
    Rational exponent;
};

struct LogFactor {
    Mobius arg;
};

/// slope * j + offset, slope in {+1, -1}.
struct LinearFactor {
    int slope = 1;
    Rational offset;
};

/// sign * psi(offset + dir * j).
struct PsiWeight {
    int sign = 1;
    Rational offset;
    int dir = 1;
};

/**
 * sum_{j=0}^{last} c_j psiw_j w^{j+shift}, with w a Moebius map of z,
 * c_{j+1} = c_j * prod(num factors at j) / prod(den factors at j) and
 * psiw_j = sum of the psi weights at j (1 when there are none).
 */
struct SeriesFactor {
    Mobius arg;
    Rational c0{1};
    std::vector<LinearFactor> num, den;
    std::optional<long long> last;
    long long shift = 0;
    std::vector<PsiWeight> psi;
    /// Set when this is exactly 2F1(A,B;C;w) (for display).
    std::optional<std::array<Rational, 3>> hyp;
    /// For a non-terminating hyp: outside the summation disc, evaluate
    /// (1-w)^(-A) 2F1(A,C-B;C;w/(w-1)) instead when that argument is inside.
    bool pfaff_continuation = false;

    /// 2F1(A,B;C;w) under the terminating convention; UndefinedSeries when
    /// the lower parameter is an unrescued pole.
    static SeriesFactor hyp2f1(const Rational& A, const Rational& B, const Rational& C, const Mobius& w);

    bool finite() const { return last.has_value(); }
    std::string latex() const;
};

struct Term {
    Constant coef;
    std::vector<PowerFactor> powers;
    std::optional<LogFactor> log;
    std::vector<SeriesFactor> series;
    std::string tag;  // names the constant for mutation tests, may be empty
};

struct EvalInfo {
    long long terms_used = 0;
    double truncation_estimate = 0;
};

struct Expression {
    std::string label;
    std::vector<Term> terms;

    /// Admissible evaluation point: z not 0 or 1, power bases and log
    /// arguments nonzero, infinite series within the summation disc.
    bool in_domain(Complex z) const;
    bool has_infinite_series() const;
    bool has_log() const;
    /// All constants rational, integer exponents, no log, finite sums and
    /// digamma weights that reduce to rationals.
    bool exact_capable() const;

    Jet<Complex> jet(Complex z, const EvalOptions& opts = {}, EvalInfo* info = nullptr) const;
    Complex value(Complex z, const EvalOptions& opts = {}) const { return jet(z, opts).v; }
    /// Sum of the absolute values of all terms and series terms at z; its
    /// ratio to |value| bounds the cancellation in binary64 evaluation.
    double magnitude(Complex z) const;
    /// Exact jet over Q(i); nullopt unless exact_capable().
    std::optional<Jet<CRational>> exact_jet(const CRational& z) const;

    /// Copy with every term tagged `tag` scaled by (1 + eps).
    Expression perturbed(const std::string& tag, double eps) const;
    Expression scaled(const Constant& c) const;
    Expression times_power(const PowerFactor& p) const;
    /// The same expression in the variable inner(z): every Moebius map m
    /// becomes m o inner.
    Expression composed(const Mobius& inner) const;
    Expression operator+(const Expression& o) const;
    Expression operator-(const Expression& o) const;

    std::string latex() const;
};

/// sum_k Gamma(A+k)Gamma(B+k)/(Gamma(C+k) k!) w^k with the same conventions
/// as eval_bold_f, as terms (empty coefficient tags).
std::vector<Term> bold_f_terms(const Rational& A, const Rational& B, const Rational& C, const Mobius& w);

/// Single-term expression c * prod powers * 2F1(A,B;C;w).
Expression hyp_expression(std::string label, Constant c, std::vector<PowerFactor> powers, const Rational& A,
                          const Rational& B, const Rational& C, const Mobius& w);

/// Central differences of the value, for debugging derivative code only.
Jet<Complex> finite_difference_jet(const Expression& e, Complex z, double h = 1e-4);

void to_json(nlohmann::json& j, const Constant& c);
void to_json(nlohmann::json& j, const SeriesFactor& s);
void to_json(nlohmann::json& j, const Term& t);
void to_json(nlohmann::json& j, const Expression& e);

}  // namespace hgdeg
