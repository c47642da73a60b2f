#pragma once

// Numerical verification: identity residuals, ODE residuals, Wronskians and
// the per-case suite assembled from them.

#include "hgdeg/continuation.hpp"
#include "hgdeg/logsolutions.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hgdeg {

/// Sample points come from a jittered Halton grid, first in the rectangle
/// [0.05,0.9] x [0.05,0.6]i, then in wider upper half-plane boxes while fewer
/// than `count` points are admissible.
struct SamplePolicy {
    int count = 12;
    int min_points = 8;
    std::uint64_t seed = 1;
    /// Points where sum|terms| / |value| exceeds this are skipped.
    double max_condition = 1e5;
};

inline constexpr int kSampleRegions = 3;

std::vector<Complex> sample_points(const SamplePolicy& policy, int region);

enum class CheckKind { Identity, OdeResidual, Wronskian };

const char* to_string(CheckKind k);

struct VerificationReport {
    std::string id;
    CheckKind kind = CheckKind::Identity;
    int points = 0;
    double max_rel_deviation = 0;
    double tolerance = 0;
    /// Identity records with expect_equal = false and Wronskians pass when
    /// the deviation is at least the tolerance.
    bool expect_equal = true;
    bool pass = false;
    std::optional<Complex> worst_point;
    /// Some values were obtained by continuation along the equation.
    bool continued = false;
    bool exact = false;
    std::string error;
};

/// 1e-11 for records without logarithms or digamma weights, 1e-9 otherwise,
/// never looser than the record's own tolerance.
double identity_tolerance(const IdentityRecord& rec);

/// Throws EmptyDomain when no admissible point exists. With `ode`, sides that
/// share fewer than min_points admissible points are completed by
/// continuation of the solution along E(ode).
VerificationReport check_identity(const IdentityRecord& rec, const SamplePolicy& policy = {},
                                  const std::optional<EquationParams>& ode = std::nullopt);

/// (y, y') of the solution of E(p) given by e, continued from the nearest
/// well-conditioned sample point when z itself is not admissible.
LocalData local_solution(const Expression& e, const EquationParams& p, Complex z, const SamplePolicy& policy = {});

inline constexpr double kOdeTolerance = 1e-8;

/// Residual of the equation relative to |z(1-z)y''| + |(c-(a+b+1)z)y'| +
/// |ab y| + |y|. Exact-capable expressions are checked in rational
/// arithmetic at the points rounded to multiples of 1/64.
VerificationReport check_ode_residual(const Expression& e, const EquationParams& p, const std::vector<Complex>& points);
VerificationReport check_ode_residual(const Expression& e, const EquationParams& p, const SamplePolicy& policy = {});

inline constexpr Complex kWronskianPoint{0.3, 0.4};
inline constexpr double kWronskianFloor = 1e-10;

/// |W| / (|y1 y2'| + |y2 y1'|) at z0; passes above kWronskianFloor.
VerificationReport check_wronskian(const std::string& id, const Expression& y1, const Expression& y2,
                                   const EquationParams& p, Complex z0 = kWronskianPoint,
                                   const SamplePolicy& policy = {});

/// Scales every term tagged `tag` by (1 + eps).
struct Mutation {
    std::string tag;
    double eps = 1e-6;
};

CaseBasis mutate(const CaseBasis& cb, const Mutation& m);

/// Identity records of the suite: pairs within each solution, the case
/// relations and, for generic equations, the Euler-Pfaff pairs of each orbit.
std::vector<IdentityRecord> suite_identities(const EquationParams& p, const CaseBasis& cb);

/// Every check for p, sorted by id. Evaluation errors become failed reports.
std::vector<VerificationReport> run_case_suite(const EquationParams& p, const SamplePolicy& policy = {},
                                               const std::optional<Mutation>& mutation = std::nullopt);

/// Parameter-free identities: the corrected Euler-Pfaff forms for
/// 2F1(-n,a;-N;z) with 0 <= n <= N <= 2, and the digamma-series reflection.
std::vector<IdentityRecord> standalone_records();
std::vector<VerificationReport> run_standalone_suite(const SamplePolicy& policy = {});

/// Count of reports per kind, as {identity, ode, wronskian}.
std::array<int, 3> kind_counts(const std::vector<VerificationReport>& reports);
bool all_pass(const std::vector<VerificationReport>& reports);

void to_json(nlohmann::json& j, const VerificationReport& r);
std::string render_text(const std::vector<VerificationReport>& reports);

}  // namespace hgdeg
