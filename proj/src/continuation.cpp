#include "hgdeg/continuation.hpp"

#include "hgdeg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hgdeg {

namespace {

// Taylor step of length h from center z0.
LocalData taylor_step(double a, double b, double c, Complex z0, LocalData at, Complex h) {
    const Complex P0 = z0 * (1.0 - z0), P1 = 1.0 - 2.0 * z0;
    const double P2 = -1, Q1 = -(a + b + 1);
    const Complex Q0 = c - (a + b + 1) * z0;
    const double ab = a * b;
    Complex y0 = at.y, y1 = at.dy;  // coefficients y_k, y_{k+1}
    Complex val = y0 + y1 * h, der = y1;
    Complex hpow1 = h;  // h^{k+1}
    int small = 0;
    for (int k = 0; k < 400; ++k) {
        double kk = k;
        Complex y2 = -((P1 * (kk + 1) * kk + Q0 * (kk + 1)) * y1 + (P2 * kk * (kk - 1) + Q1 * kk - ab) * y0) /
                     (P0 * (kk + 2) * (kk + 1));
        Complex hpow2 = hpow1 * h;
        Complex tv = y2 * hpow2, td = (kk + 2) * y2 * hpow1;
        val += tv;
        der += td;
        bool tiny = std::abs(tv) <= 1e-17 * std::abs(val) && std::abs(td) <= 1e-17 * std::abs(der);
        small = tiny ? small + 1 : 0;
        if (small >= 3) break;
        y0 = y1;
        y1 = y2;
        hpow1 = hpow2;
    }
    return {val, der};
}

}  // namespace

LocalData continue_segment(const EquationParams& p, Complex z0, LocalData start, Complex z1) {
    const double a = p.a.to_double(), b = p.b.to_double(), c = p.c.to_double();
    Complex z = z0;
    LocalData cur = start;
    for (int guard = 0; guard < 100000; ++guard) {
        Complex rest = z1 - z;
        if (std::abs(rest) == 0) return cur;
        double radius = std::min(std::abs(z), std::abs(1.0 - z));
        if (radius < 1e-8) throw SingularPointError("continuation path hits a singular point");
        double step = 0.4 * radius;
        Complex h = std::abs(rest) <= step ? rest : rest * (step / std::abs(rest));
        cur = taylor_step(a, b, c, z, cur, h);
        z = std::abs(rest) <= step ? z1 : z + h;
    }
    throw NoConvergence("continuation did not reach its end point");
}

LocalData continue_solution(const EquationParams& p, Complex z0, LocalData start, Complex z1) {
    if (z0.imag() < 0 || z1.imag() < 0) throw DomainError("continuation is confined to the upper half-plane");
    double H = std::max({1.0, z0.imag(), z1.imag()});
    Complex w0(z0.real(), H), w1(z1.real(), H);
    LocalData d = continue_segment(p, z0, start, w0);
    d = continue_segment(p, w0, d, w1);
    return continue_segment(p, w1, d, z1);
}

}  // namespace hgdeg
