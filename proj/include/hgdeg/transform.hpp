#pragma once

#include "hgdeg/equation.hpp"
#include "hgdeg/mobius.hpp"

#include <array>
#include <string>

namespace hgdeg {

/// The six arguments permuting {0, 1, inf}, in the canonical order
/// z, z/(z-1), 1-z, 1-1/z, 1/z, 1/(1-z).
enum class Argument { Z, ZOverZMinusOne, OneMinusZ, OneMinusInvZ, InvZ, InvOneMinusZ };

Mobius to_mobius(Argument arg);
const char* to_string(Argument arg);
/// Singular point where the argument is a local parameter.
SingularPoint base_point(Argument arg);
/// Argument position (0..5) in the canonical order.
int argument_rank(Argument arg);

/**
 * One element of the 48-element group acting on E(a,b,c).
 *
 * The associated Kummer series is
 *   X^{-alpha} (1-z)^{-beta} 2F1(A, B; C; phi(z)),
 * with X = z when phi is local at 0 or 1 and X = -z when phi is local at
 * infinity. (A, B, C) = target; swap_ab exchanges A and B.
 */
struct FracLinTransform {
    int index = 0;      ///< 0..47, = 2 * kummer_row + swap_ab
    int kummer_row = 0; ///< 0..23 position in the list of 24 related equations
    bool swap_ab = false;
    Argument phi = Argument::Z;
    Rational alpha;
    Rational beta;
    EquationParams target;

    bool prefactor_uses_neg_z() const {
        return phi == Argument::InvZ || phi == Argument::InvOneMinusZ;
    }
};

inline constexpr int kTransformCount = 48;
inline constexpr int kKummerCount = 24;

/// Transform number `index` (0..47) applied to p.
FracLinTransform make_transform(const EquationParams& p, int index);

std::array<FracLinTransform, kTransformCount> all_transforms(const EquationParams& p);

/// Local exponent difference (sign included) at each point: 1-c, c-a-b, b-a.
struct ExponentDifferences {
    Rational e0, e1, einf;
};
ExponentDifferences exponent_differences(const EquationParams& p);

}  // namespace hgdeg
