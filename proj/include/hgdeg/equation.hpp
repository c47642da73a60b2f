#pragma once

#include "hgdeg/rational.hpp"

#include <string>

namespace hgdeg {

/// Parameters of the hypergeometric equation
///   z(1-z) y'' + (c - (a+b+1) z) y' - a b y = 0.
struct EquationParams {
    Rational a;
    Rational b;
    Rational c;

    friend bool operator==(const EquationParams&, const EquationParams&) = default;

    std::string str() const { return "E(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
};

enum class SingularPoint { Zero, One, Infinity };

inline const char* to_string(SingularPoint p) {
    switch (p) {
        case SingularPoint::Zero: return "0";
        case SingularPoint::One: return "1";
        case SingularPoint::Infinity: return "inf";
    }
    return "?";
}

}  // namespace hgdeg
