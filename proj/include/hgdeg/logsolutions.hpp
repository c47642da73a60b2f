#pragma once

/**
 * @file logsolutions.hpp
 * @brief Solution bases of the degenerate cases, with every closed-form
 * expression of each solution: terminating chains, their Euler partners and
 * the logarithmic solutions U1, U2, U3.
 *
 * Builders accept any equation of the right case and work on its normal
 * form (DegeneracyCase::normal_form); the expressions solve that equation.
 * Expression labels read "<solution>.expr.<key>".
 */

#include "hgdeg/expression.hpp"
#include "hgdeg/params.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace hgdeg {

/// lhs = rhs as functions on the upper half-plane. Records with
/// expect_equal = false describe plausible but false identities; the
/// verifier must find a gap.
struct IdentityRecord {
    std::string id;
    Expression lhs, rhs;
    double tolerance = 1e-9;
    bool expect_equal = true;
};

/// One function with all its expressions; any two evaluate equal.
struct Solution {
    std::string name;
    std::vector<Expression> expressions;

    int terminating_count() const;
    int nonterminating_count() const;
};

struct CaseBasis {
    DegeneracyCase dc;
    EquationParams equation;  // the normal form
    std::vector<Solution> solutions;
    std::vector<IdentityRecord> relations;
    /// Pairs of solution names that form a basis of the solution space.
    std::vector<std::pair<std::string, std::string>> bases;

    /// Throws UnknownSolutionLabel.
    const Solution& solution(const std::string& name) const;
    const Expression& expression(const std::string& label) const;
    std::vector<const Expression*> all_expressions() const;
};

CaseBasis basis_case1(const EquationParams& p);
/// Case2: F(a,b;m+1;z), U1 with all its expressions, and the second power
/// series solution at 0 is absent (z=0 is logarithmic).
CaseBasis build_u1(const EquationParams& p);
/// Case2 with a-b = l >= 0 in the normal form: the logarithmic solution at
/// infinity and its identification with a multiple of U1.
CaseBasis build_u1_infinity(const EquationParams& p);
CaseBasis build_u2(const EquationParams& p);
CaseBasis basis_case4(const EquationParams& p);
CaseBasis basis_case5(const EquationParams& p);
CaseBasis basis_case6(const EquationParams& p);

/// H1, H2 and the four connection formulas for bold-F series at 1 and
/// infinity. Needs a, b, c, c-a, c-b, a-b non-integers.
std::vector<IdentityRecord> generic_connection_records(const EquationParams& p);

/// Dispatch on the case. Generic equations get H1, H2 and the connection
/// records; Case2 merges build_u1 and, when it applies, build_u1_infinity.
CaseBasis case_basis(const EquationParams& p);

void to_json(nlohmann::json& j, const IdentityRecord& r);
void to_json(nlohmann::json& j, const Solution& s);
void to_json(nlohmann::json& j, const CaseBasis& b);

}  // namespace hgdeg
