#pragma once

// The 24 Kummer series of an equation, their status, and their grouping into
// solutions.

#include "hgdeg/equation.hpp"
#include "hgdeg/expression.hpp"
#include "hgdeg/hypergeometric.hpp"
#include "hgdeg/transform.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hgdeg {

struct KummerDescriptor {
    int index = 0;  // position in the fixed order, label k01..k24
    FracLinTransform transform;
    Rational A, B, C;
    SeriesStatus status;
    SingularPoint base_point = SingularPoint::Zero;

    std::string label() const;
    bool well_defined() const { return status.kind != SeriesKind::Undefined; }
    bool terminating() const { return status.kind == SeriesKind::Terminating; }
    /// X^{-alpha} (1-z)^{-beta} 2F1(A,B;C;phi) with X = -z for the series at
    /// infinity and X = z otherwise. Requires well_defined().
    Expression expression() const;
};

/// Ordered by argument (z, z/(z-1), 1-z, 1-1/z, 1/z, 1/(1-z)), then by the
/// row order of the list of 24 equations.
std::vector<KummerDescriptor> enumerate_24(const EquationParams& p);

/// Groups of well-defined descriptors that coincide literally (same
/// prefactor exponents, argument, {A,B} and C). Each group lists indices in
/// increasing order; groups are ordered by their first index.
std::vector<std::vector<int>> literal_classes(const std::vector<KummerDescriptor>& descs);

int distinct_series_count(const std::vector<KummerDescriptor>& descs);

enum class OrbitKind { Terminating, NonTerminating, LogarithmicCompanion };

const char* to_string(OrbitKind k);

/// Distinct series (by representative index) that are constant multiples of
/// one solution.
struct SolutionOrbit {
    std::vector<int> members;
    OrbitKind kind = OrbitKind::NonTerminating;
    int terminating = 0;
    int nonterminating = 0;
};

/**
 * Builds orbits from Euler-Pfaff identities that remain valid under the
 * terminating convention and from exact proportionality of terminating
 * series. With `numeric_check`, every pair of representatives is also tested
 * for proportionality (proportionality_defect); disagreement throws
 * InconsistentOrbit.
 */
std::vector<SolutionOrbit> group_orbits(const EquationParams& p, const std::vector<KummerDescriptor>& descs,
                                        bool numeric_check = true);

/// How far two solutions of E(p) are from f = lambda g: the relative misfit
/// of a local fit on (y, y') and the relative spread of lambda over fixed
/// reference points of the upper half-plane, reached by continuation.
double proportionality_defect(const EquationParams& p, const Expression& f, const Expression& g);

/// Index of the group element outer o inner among the 48 (acting on
/// parameters and arguments); throws Error if the composite is not found.
int compose_transforms(int outer, int inner);
int inverse_transform(int index);

void to_json(nlohmann::json& j, const KummerDescriptor& d);
void to_json(nlohmann::json& j, const SolutionOrbit& o);

}  // namespace hgdeg
