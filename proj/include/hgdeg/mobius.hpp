#pragma once

#include "hgdeg/rational.hpp"

#include <complex>
#include <string>

namespace hgdeg {

using Complex = std::complex<double>;

/// w = (p z + q) / (r z + s) with integer entries.
struct Mobius {
    int p = 1, q = 0, r = 0, s = 1;

    static constexpr Mobius identity() { return {1, 0, 0, 1}; }
    static constexpr Mobius z() { return {1, 0, 0, 1}; }
    static constexpr Mobius neg_z() { return {-1, 0, 0, 1}; }
    static constexpr Mobius one_minus_z() { return {-1, 1, 0, 1}; }
    static constexpr Mobius z_minus_one() { return {1, -1, 0, 1}; }
    static constexpr Mobius z_over_z_minus_one() { return {1, 0, 1, -1}; }
    static constexpr Mobius z_over_one_minus_z() { return {1, 0, -1, 1}; }
    static constexpr Mobius one_minus_inv_z() { return {1, -1, 1, 0}; }
    static constexpr Mobius one_minus_z_over_z() { return {-1, 1, 1, 0}; }
    static constexpr Mobius inv_z() { return {0, 1, 1, 0}; }
    static constexpr Mobius inv_one_minus_z() { return {0, 1, -1, 1}; }
    static constexpr Mobius inv_z_minus_one() { return {0, 1, 1, -1}; }

    int det() const { return p * s - q * r; }
    bool is_affine() const { return r == 0; }

    /// Scaled to a canonical representative (gcd 1, first nonzero of (r, s) positive).
    Mobius normalized() const;

    friend bool operator==(const Mobius& x, const Mobius& y) {
        Mobius a = x.normalized(), b = y.normalized();
        return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s;
    }

    /// (this o inner)(z) = this(inner(z)).
    Mobius compose(const Mobius& inner) const {
        return Mobius{p * inner.p + q * inner.r, p * inner.q + q * inner.s,
                      r * inner.p + s * inner.r, r * inner.q + s * inner.s}
            .normalized();
    }

    /// 1 - w as a Mobius map.
    Mobius one_minus() const { return Mobius{r - p, s - q, r, s}.normalized(); }
    /// w / (w - 1).
    Mobius pfaff() const { return Mobius::z_over_z_minus_one().compose(*this); }
    /// 1 / w.
    Mobius inverse_value() const { return Mobius{r, s, p, q}.normalized(); }
    /// -w.
    Mobius negated() const { return Mobius{-p, -q, r, s}.normalized(); }

    template <class T>
    T operator()(const T& z) const {
        return (T(p) * z + T(q)) / (T(r) * z + T(s));
    }
    /// dw/dz = det / (r z + s)^2
    template <class T>
    T d1(const T& z) const {
        T den = T(r) * z + T(s);
        return T(det()) / (den * den);
    }
    /// d2w/dz2 = -2 r det / (r z + s)^3
    template <class T>
    T d2(const T& z) const {
        T den = T(r) * z + T(s);
        return T(-2 * r * det()) / (den * den * den);
    }

    /// Pole of the map (z where r z + s = 0), if any.
    bool has_finite_pole() const { return r != 0; }

    std::string str() const;    // plain text, e.g. "z/(z-1)"
    std::string latex() const;  // e.g. "\\frac{z}{z-1}"
};

}  // namespace hgdeg
