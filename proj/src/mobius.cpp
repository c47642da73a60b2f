#include "hgdeg/mobius.hpp"

#include <numeric>
#include <sstream>

namespace hgdeg {

Mobius Mobius::normalized() const {
    int g = std::gcd(std::gcd(std::abs(p), std::abs(q)), std::gcd(std::abs(r), std::abs(s)));
    if (g == 0) return *this;
    Mobius m{p / g, q / g, r / g, s / g};
    int lead = m.r != 0 ? m.r : m.s;
    if (lead < 0) m = Mobius{-m.p, -m.q, -m.r, -m.s};
    return m;
}

namespace {

// Linear form "u z + v" rendered compactly.
std::string linear(int u, int v) {
    std::ostringstream os;
    if (u == 0) {
        os << v;
        return os.str();
    }
    if (u == 1) os << "z";
    else if (u == -1) os << "-z";
    else os << u << "z";
    if (v > 0) os << "+" << v;
    else if (v < 0) os << v;
    return os.str();
}

bool is_atom(int u, int v) { return u == 0 || v == 0; }

}  // namespace

std::string Mobius::str() const {
    Mobius m = normalized();
    // Prefer the familiar spellings of the six Kummer arguments.
    if (m == Mobius::z()) return "z";
    if (m == Mobius::z_over_z_minus_one()) return "z/(z-1)";
    if (m == Mobius::one_minus_z()) return "1-z";
    if (m == Mobius::one_minus_inv_z()) return "1-1/z";
    if (m == Mobius::inv_z()) return "1/z";
    if (m == Mobius::inv_one_minus_z()) return "1/(1-z)";
    if (m == Mobius::neg_z()) return "-z";
    if (m == Mobius::z_minus_one()) return "z-1";
    if (m == Mobius::z_over_one_minus_z()) return "z/(1-z)";
    if (m == Mobius::one_minus_z_over_z()) return "(1-z)/z";
    if (m == Mobius::inv_z_minus_one()) return "1/(z-1)";
    std::string num = linear(m.p, m.q), den = linear(m.r, m.s);
    if (m.r == 0 && m.s == 1) return num;
    return (is_atom(m.p, m.q) ? num : "(" + num + ")") + "/" + (is_atom(m.r, m.s) ? den : "(" + den + ")");
}

std::string Mobius::latex() const {
    Mobius m = normalized();
    if (m.r == 0 && m.s == 1) return linear(m.p, m.q);
    if (m == Mobius::one_minus_inv_z()) return "1-\\frac{1}{z}";
    return "\\frac{" + linear(m.p, m.q) + "}{" + linear(m.r, m.s) + "}";
}

}  // namespace hgdeg
