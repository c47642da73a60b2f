#include "hgdeg/params.hpp"

#include "hgdeg/errors.hpp"

#include <array>

namespace hgdeg {

LocalExponents local_exponents(const EquationParams& p) {
    LocalExponents e;
    const Rational one(1);
    e.at0 = {Rational(0), one - p.c};
    e.at1 = {Rational(0), p.c - p.a - p.b};
    e.atinf = {p.a, p.b};
    e.e0 = e.at0.second - e.at0.first;
    e.e1 = e.at1.second - e.at1.first;
    e.einf = e.atinf.second - e.atinf.first;
    return e;
}

const char* to_string(MonodromyClass m) {
    switch (m) {
        case MonodromyClass::Irreducible: return "Irreducible";
        case MonodromyClass::ReducibleNonAbelian: return "ReducibleNonAbelian";
        case MonodromyClass::MultiplicativeAbelian: return "MultiplicativeAbelian";
        case MonodromyClass::AdditiveAbelian: return "AdditiveAbelian";
        case MonodromyClass::Trivial: return "Trivial";
    }
    return "?";
}

const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::Generic: return "Generic";
        case CaseTag::Case1: return "Case1";
        case CaseTag::Case2: return "Case2";
        case CaseTag::Case3: return "Case3";
        case CaseTag::Case4: return "Case4";
        case CaseTag::Case5: return "Case5";
        case CaseTag::Case6: return "Case6";
    }
    return "?";
}

MonodromyClass classify_monodromy(const EquationParams& p) {
    const Rational& a = p.a;
    const Rational& b = p.b;
    const Rational& c = p.c;
    const Rational one(1);

    std::array<Rational, 4> reducibility{a, b, c - a, c - b};
    bool any_integer = false;
    for (const auto& x : reducibility) any_integer = any_integer || x.is_integer();
    if (!any_integer) return MonodromyClass::Irreducible;

    if (a.is_integer() && b.is_integer() && c.is_integer()) {
        int positives = 0;
        for (const auto& x : reducibility) positives += x.is_positive_integer() ? 1 : 0;
        return positives % 2 == 1 ? MonodromyClass::Trivial : MonodromyClass::AdditiveAbelian;
    }

    std::array<Rational, 4> diagonal{a, one - b, c - a, one + b - c};
    int integers = 0, positives = 0;
    for (const auto& x : diagonal) {
        if (!x.is_integer()) continue;
        ++integers;
        positives += x.sign() > 0 ? 1 : 0;
    }
    if (integers == 2 && (positives == 0 || positives == 2)) return MonodromyClass::MultiplicativeAbelian;
    return MonodromyClass::ReducibleNonAbelian;
}

bool is_logarithmic_point(const EquationParams& p, SingularPoint point) {
    const Rational one(1);
    auto d = exponent_differences(p);
    // Two local forms moving `point` to z = 0: the second one swaps exponents.
    Rational diff;
    EquationParams lowered, raised;
    switch (point) {
        case SingularPoint::Zero:
            diff = d.e0;
            lowered = p;
            raised = {one + p.a - p.c, one + p.b - p.c, 2 - p.c};
            break;
        case SingularPoint::One:
            diff = d.e1;
            lowered = {p.a, p.b, one + p.a + p.b - p.c};
            raised = {p.c - p.a, p.c - p.b, one + p.c - p.a - p.b};
            break;
        case SingularPoint::Infinity:
            diff = d.einf;
            lowered = {p.a, one + p.a - p.c, one + p.a - p.b};
            raised = {p.b, one + p.b - p.c, one + p.b - p.a};
            break;
    }
    if (!diff.is_integer()) return false;
    if (diff.is_zero()) return true;
    // Pick the local equation with c' = 1 + m, m >= 1.
    const EquationParams& local = lowered.c > one ? lowered : raised;
    Rational m = local.c - one;
    auto rescues = [&](const Rational& x) { return x.is_positive_integer() && x <= m; };
    return !(rescues(local.a) || rescues(local.b));
}

std::vector<SingularPoint> logarithmic_points(const EquationParams& p) {
    std::vector<SingularPoint> out;
    for (auto pt : {SingularPoint::Zero, SingularPoint::One, SingularPoint::Infinity})
        if (is_logarithmic_point(p, pt)) out.push_back(pt);
    return out;
}

namespace {

CaseTag case_tag(const EquationParams& p) {
    switch (classify_monodromy(p)) {
        case MonodromyClass::Trivial: return CaseTag::Case5;
        case MonodromyClass::AdditiveAbelian: return CaseTag::Case6;
        case MonodromyClass::MultiplicativeAbelian: return CaseTag::Case4;
        case MonodromyClass::ReducibleNonAbelian:
            return logarithmic_points(p).empty() ? CaseTag::Case1 : CaseTag::Case3;
        case MonodromyClass::Irreducible: {
            auto d = exponent_differences(p);
            bool integral = d.e0.is_integer() || d.e1.is_integer() || d.einf.is_integer();
            return integral ? CaseTag::Case2 : CaseTag::Generic;
        }
    }
    return CaseTag::Generic;
}

bool nonpos_int(const Rational& x) { return x.is_nonpositive_integer(); }
bool pos_int(const Rational& x) { return x.is_positive_integer(); }
bool nonint(const Rational& x) { return !x.is_integer(); }

// Fills witnesses if target matches the normal form of `tag`.
bool match_normal_form(CaseTag tag, const EquationParams& t, DegeneracyCase& out) {
    const Rational& A = t.a;
    const Rational& B = t.b;
    const Rational& C = t.c;
    switch (tag) {
        case CaseTag::Generic:
            return true;
        case CaseTag::Case1:
            if (!(nonpos_int(A) && nonint(B) && nonint(C) && nonint(C - B))) return false;
            out.n = -A.as_int();
            out.residual = B;
            return true;
        case CaseTag::Case2:
            if (!(pos_int(C) && nonint(A) && nonint(B))) return false;
            out.m = C.as_int() - 1;
            if (Rational diff = A - B; diff.is_integer() && diff.sign() >= 0) out.l = diff.as_int();
            out.residual = A;
            return true;
        case CaseTag::Case3:
            if (!(nonint(A) && nonpos_int(B) && pos_int(C))) return false;
            out.n = -B.as_int();
            out.m = C.as_int() - 1;
            out.residual = A;
            return true;
        case CaseTag::Case4: {
            if (!(nonpos_int(A) && C.is_integer())) return false;
            Rational m = -C + A;  // C = -n - m, A = -n
            if (m.sign() < 0 || (B + m).is_integer()) return false;
            out.n = -A.as_int();
            out.m = m.as_int();
            out.residual = B + m;
            return true;
        }
        case CaseTag::Case5: {
            if (!(nonpos_int(A) && pos_int(B) && C.is_integer())) return false;
            Rational m = -C + A;
            if (m.sign() < 0) return false;
            out.n = -A.as_int();
            out.l = B.as_int() - 1;
            out.m = m.as_int();
            return true;
        }
        case CaseTag::Case6: {
            if (!(nonpos_int(A) && B.is_integer() && C.is_integer())) return false;
            Rational l = -A;
            Rational n = A - B;
            Rational m = -C - n - 2 * l;
            if (n.sign() < 0 || m.sign() < 0) return false;
            out.l = l.as_int();
            out.n = n.as_int();
            out.m = m.as_int();
            return true;
        }
    }
    return false;
}

}  // namespace

DegeneracyCase degeneracy_case(const EquationParams& p) {
    DegeneracyCase result;
    result.tag = case_tag(p);
    if (result.tag == CaseTag::Generic) {
        result.reduction = make_transform(p, 0);
        result.normal_form = p;
        return result;
    }
    auto transforms = all_transforms(p);
    std::optional<DegeneracyCase> first;
    for (const auto& t : transforms) {
        DegeneracyCase candidate;
        candidate.tag = result.tag;
        if (!match_normal_form(result.tag, t.target, candidate)) continue;
        candidate.reduction = t;
        candidate.normal_form = t.target;
        // Case2 prefers a normal form whose point at infinity carries the
        // second logarithmic point (a - b in Z>=0), when one exists.
        if (result.tag == CaseTag::Case2 && !candidate.l) {
            if (!first) first = candidate;
            continue;
        }
        return candidate;
    }
    if (first) return *first;
    throw Error("no fractional-linear reduction to the normal form of " + std::string(to_string(result.tag)) +
                " for " + p.str());
}

}  // namespace hgdeg
