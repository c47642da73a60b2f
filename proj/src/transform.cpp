#include "hgdeg/transform.hpp"

#include "hgdeg/errors.hpp"

namespace hgdeg {

Mobius to_mobius(Argument arg) {
    switch (arg) {
        case Argument::Z: return Mobius::z();
        case Argument::ZOverZMinusOne: return Mobius::z_over_z_minus_one();
        case Argument::OneMinusZ: return Mobius::one_minus_z();
        case Argument::OneMinusInvZ: return Mobius::one_minus_inv_z();
        case Argument::InvZ: return Mobius::inv_z();
        case Argument::InvOneMinusZ: return Mobius::inv_one_minus_z();
    }
    return Mobius::z();
}

const char* to_string(Argument arg) {
    switch (arg) {
        case Argument::Z: return "z";
        case Argument::ZOverZMinusOne: return "z/(z-1)";
        case Argument::OneMinusZ: return "1-z";
        case Argument::OneMinusInvZ: return "1-1/z";
        case Argument::InvZ: return "1/z";
        case Argument::InvOneMinusZ: return "1/(1-z)";
    }
    return "?";
}

SingularPoint base_point(Argument arg) {
    switch (arg) {
        case Argument::Z:
        case Argument::ZOverZMinusOne: return SingularPoint::Zero;
        case Argument::OneMinusZ:
        case Argument::OneMinusInvZ: return SingularPoint::One;
        default: return SingularPoint::Infinity;
    }
}

int argument_rank(Argument arg) { return static_cast<int>(arg); }

namespace {

struct Row {
    Argument phi;
    Rational alpha, beta;
    Rational A, B, C;
};

// The 24 related equations, listed family by family; within a family the
// first upper parameter choice varies slowest.
Row kummer_row(const EquationParams& p, int k) {
    const Rational& a = p.a;
    const Rational& b = p.b;
    const Rational& c = p.c;
    const Rational one(1);
    using A = Argument;
    switch (k) {
        // E(A, B, c), A in {a, c-a}, B in {b, c-b}
        case 0: return {A::Z, 0, 0, a, b, c};
        case 1: return {A::ZOverZMinusOne, 0, a, a, c - b, c};
        case 2: return {A::ZOverZMinusOne, 0, b, c - a, b, c};
        case 3: return {A::Z, 0, a + b - c, c - a, c - b, c};
        // E(A, B, 2-c), A in {1-a, 1+a-c}, B in {1-b, 1+b-c}
        case 4: return {A::Z, c - one, a + b - c, one - a, one - b, 2 - c};
        case 5: return {A::ZOverZMinusOne, c - one, one + b - c, one - a, one + b - c, 2 - c};
        case 6: return {A::ZOverZMinusOne, c - one, one + a - c, one + a - c, one - b, 2 - c};
        case 7: return {A::Z, c - one, 0, one + a - c, one + b - c, 2 - c};
        // E(A, B, 1+a+b-c), A in {a, 1+b-c}, B in {b, 1+a-c}
        case 8: return {A::OneMinusZ, 0, 0, a, b, one + a + b - c};
        case 9: return {A::OneMinusInvZ, a, 0, a, one + a - c, one + a + b - c};
        case 10: return {A::OneMinusInvZ, b, 0, one + b - c, b, one + a + b - c};
        case 11: return {A::OneMinusZ, c - one, 0, one + b - c, one + a - c, one + a + b - c};
        // E(A, B, 1+c-a-b), A in {1-a, c-b}, B in {1-b, c-a}
        case 12: return {A::OneMinusZ, c - one, a + b - c, one - a, one - b, one + c - a - b};
        case 13: return {A::OneMinusInvZ, c - a, a + b - c, one - a, c - a, one + c - a - b};
        case 14: return {A::OneMinusInvZ, c - b, a + b - c, c - b, one - b, one + c - a - b};
        case 15: return {A::OneMinusZ, 0, a + b - c, c - b, c - a, one + c - a - b};
        // E(A, B, 1+a-b), A in {a, 1-b}, B in {1+a-c, c-b}
        case 16: return {A::InvZ, a, 0, a, one + a - c, one + a - b};
        case 17: return {A::InvOneMinusZ, 0, a, a, c - b, one + a - b};
        case 18: return {A::InvOneMinusZ, c - one, one + a - c, one - b, one + a - c, one + a - b};
        case 19: return {A::InvZ, c - b, a + b - c, one - b, c - b, one + a - b};
        // E(A, B, 1+b-a), A in {1-a, b}, B in {c-a, 1+b-c}
        case 20: return {A::InvZ, c - a, a + b - c, one - a, c - a, one + b - a};
        case 21: return {A::InvOneMinusZ, c - one, one + b - c, one - a, one + b - c, one + b - a};
        case 22: return {A::InvOneMinusZ, 0, b, b, c - a, one + b - a};
        case 23: return {A::InvZ, b, 0, b, one + b - c, one + b - a};
        default: break;
    }
    throw DomainError("kummer row out of range");
}

}  // namespace

FracLinTransform make_transform(const EquationParams& p, int index) {
    if (index < 0 || index >= kTransformCount) throw DomainError("transform index out of range");
    FracLinTransform t;
    t.index = index;
    t.kummer_row = index / 2;
    t.swap_ab = (index % 2) == 1;
    Row row = kummer_row(p, t.kummer_row);
    t.phi = row.phi;
    t.alpha = row.alpha;
    t.beta = row.beta;
    t.target = t.swap_ab ? EquationParams{row.B, row.A, row.C} : EquationParams{row.A, row.B, row.C};
    return t;
}

std::array<FracLinTransform, kTransformCount> all_transforms(const EquationParams& p) {
    std::array<FracLinTransform, kTransformCount> out;
    for (int i = 0; i < kTransformCount; ++i) out[i] = make_transform(p, i);
    return out;
}

ExponentDifferences exponent_differences(const EquationParams& p) {
    return {Rational(1) - p.c, p.c - p.a - p.b, p.b - p.a};
}

}  // namespace hgdeg
