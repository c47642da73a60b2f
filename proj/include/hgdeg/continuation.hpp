#pragma once

// Analytic continuation of solutions of E(a,b,c) by Taylor re-expansion of
// the equation along paths in the upper half-plane.

#include "hgdeg/equation.hpp"
#include "hgdeg/mobius.hpp"

namespace hgdeg {

struct LocalData {
    Complex y, dy;
};

/// Continues (y, y') from z0 to z1 along z0 -> Re z0 + iH -> Re z1 + iH -> z1
/// with H = max(1, Im z0, Im z1). Both points must lie in the closed upper
/// half-plane and differ from 0 and 1.
LocalData continue_solution(const EquationParams& p, Complex z0, LocalData start, Complex z1);

/// One straight segment; the step size stays below 0.4 of the distance to
/// the nearest singular point.
LocalData continue_segment(const EquationParams& p, Complex z0, LocalData start, Complex z1);

}  // namespace hgdeg
