#pragma once

/**
 * @file params.hpp
 * @brief Exact classification of hypergeometric equations E(a,b,c).
 *
 * Everything here is decided with exact rational arithmetic: the local
 * exponents, the type of the monodromy group, logarithmic points, and the
 * degeneracy case together with a fractional-linear reduction to the
 * case's normal form.
 */

#include "hgdeg/equation.hpp"
#include "hgdeg/transform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgdeg {

struct LocalExponents {
    Rational e0;    ///< 1 - c
    Rational e1;    ///< c - a - b
    Rational einf;  ///< b - a
    // Raw exponent pairs at 0, 1 and infinity.
    std::pair<Rational, Rational> at0;
    std::pair<Rational, Rational> at1;
    std::pair<Rational, Rational> atinf;
};

LocalExponents local_exponents(const EquationParams& p);

enum class MonodromyClass { Irreducible, ReducibleNonAbelian, MultiplicativeAbelian, AdditiveAbelian, Trivial };

const char* to_string(MonodromyClass m);

MonodromyClass classify_monodromy(const EquationParams& p);

/// True if a basis of local solutions at `point` needs a logarithm.
bool is_logarithmic_point(const EquationParams& p, SingularPoint point);

std::vector<SingularPoint> logarithmic_points(const EquationParams& p);

enum class CaseTag { Generic, Case1, Case2, Case3, Case4, Case5, Case6 };

const char* to_string(CaseTag t);

/**
 * Degeneracy case with witnesses. The reduction maps the input equation to
 * `normal_form`:
 *   Case1 E(-n, a, c)            Case4 E(-n, a-m, -n-m)
 *   Case2 E(a, b, m+1)           Case5 E(-n, l+1, -n-m)
 *   Case3 E(a, -n, m+1)          Case6 E(-l, -n-l, -m-n-2l)
 * For Case2, `l` is set when the normal form has a - b = l in Z>=0.
 * `residual` is the non-integer parameter a of the normal form (Cases 1-4).
 */
struct DegeneracyCase {
    CaseTag tag = CaseTag::Generic;
    std::optional<long long> n;
    std::optional<long long> m;
    std::optional<long long> l;
    std::optional<Rational> residual;
    FracLinTransform reduction;
    EquationParams normal_form;
};

DegeneracyCase degeneracy_case(const EquationParams& p);

}  // namespace hgdeg
