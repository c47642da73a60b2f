#include "hgdeg/verify.hpp"

#include "hgdeg/atlas.hpp"
#include "hgdeg/errors.hpp"
#include "hgdeg/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

namespace hgdeg {

namespace {

struct Box {
    double x0, x1, y0, y1;
};

constexpr Box kRegions[kSampleRegions] = {{0.05, 0.9, 0.05, 0.6}, {-2.5, 2.5, 0.05, 2.5}, {-8, 8, 0.5, 8}};

double radical_inverse(std::uint64_t i, int base) {
    double f = 1, r = 0;
    while (i) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

double rel_dev(Complex u, Complex v) { return std::abs(u - v) / std::max({std::abs(u), std::abs(v), 1e-300}); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Lazily evaluated side of a check: direct values where admissible and well
/// conditioned, continuation from the nearest such point otherwise.
class Side {
public:
    Side(const Expression& e, const SamplePolicy& policy, std::optional<EquationParams> ode)
        : e_(e), policy_(policy), ode_(std::move(ode)) {}

    std::optional<Jet<Complex>> direct(Complex z) {
        auto key = std::pair{z.real(), z.imag()};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        return cache_[key] = evaluate(z);
    }

    std::optional<LocalData> local(Complex z) {
        if (auto j = direct(z)) return LocalData{j->v, j->d1};
        if (!ode_) return std::nullopt;
        std::vector<Complex> pool;
        for (int r = 0; r < kSampleRegions; ++r) {
            auto pts = sample_points(policy_, r);
            pool.insert(pool.end(), pts.begin(), pts.end());
        }
        std::stable_sort(pool.begin(), pool.end(),
                         [&](Complex x, Complex y) { return std::abs(x - z) < std::abs(y - z); });
        for (auto w : pool)
            if (auto j = direct(w)) return continue_solution(*ode_, w, {j->v, j->d1}, z);
        return std::nullopt;
    }

private:
    std::optional<Jet<Complex>> evaluate(Complex z) const {
        if (!e_.in_domain(z)) return std::nullopt;
        try {
            auto j = e_.jet(z);
            if (!finite(j.v) || !finite(j.d1) || !finite(j.d2)) return std::nullopt;
            if (e_.magnitude(z) > policy_.max_condition * std::abs(j.v)) return std::nullopt;
            return j;
        } catch (const DomainError&) {
            return std::nullopt;
        } catch (const NoConvergence&) {
            return std::nullopt;
        }
    }

    const Expression& e_;
    const SamplePolicy& policy_;
    std::optional<EquationParams> ode_;
    std::map<std::pair<double, double>, std::optional<Jet<Complex>>> cache_;
};

bool has_psi(const Expression& e) {
    for (const auto& t : e.terms)
        for (const auto& s : t.series)
            if (!s.psi.empty()) return true;
    return false;
}

std::string key_of(const std::string& label) {
    auto at = label.find(".expr.");
    return at == std::string::npos ? label : label.substr(at + 6);
}

struct Planned {
    IdentityRecord rec;
    std::optional<EquationParams> ode;
};

std::vector<Planned> plan_identities(const EquationParams& p, const CaseBasis& cb) {
    std::vector<Planned> out;
    for (const auto& s : cb.solutions) {
        const auto& ex = s.expressions;
        for (size_t i = 0; i < ex.size(); ++i)
            for (size_t j = i + 1; j < ex.size(); ++j)
                out.push_back({{s.name + "." + key_of(ex[i].label) + "=" + key_of(ex[j].label), ex[i], ex[j]},
                               cb.equation});
    }
    for (const auto& r : cb.relations) out.push_back({r, cb.equation});
    if (cb.dc.tag == CaseTag::Generic) {
        auto d = enumerate_24(p);
        for (const auto& o : group_orbits(p, d, false))
            for (size_t i = 1; i < o.members.size(); ++i) {
                const auto& x = d[o.members[0]];
                const auto& y = d[o.members[i]];
                out.push_back({{"orbit." + x.label() + "=" + y.label(), x.expression(), y.expression()}, p});
            }
    }
    return out;
}

std::vector<Planned> plan_standalone() {
    std::vector<Planned> out;
    const Mobius z = Mobius::z(), w = Mobius::z_over_z_minus_one(), one_minus = Mobius::one_minus_z();
    for (const char* as : {"1/3", "-7/4"}) {
        Rational a = Rational::parse(as);
        for (long long N = 0; N <= 2; ++N)
            for (long long n = 0; n <= N; ++n) {
                Rational rn(n), rN(N);
                EquationParams eq{-rn, a, -rN};
                Constant sign_fr(Rational(n % 2 ? -1 : 1) * factorial(N - n) / factorial(N));
                auto lhs = hyp_expression("pole_pfaff.lhs", Constant(1), {}, -rn, a, -rN, z);
                auto r1 = Expression{"pole_pfaff.r1", bold_f_terms(rn - rN, -a - rN, -rN, z)}
                              .scaled(sign_fr / Constant::gamma(-a - rN))
                              .times_power({one_minus, -a + rn - rN});
                auto r2 = Expression{"pole_pfaff.r2", bold_f_terms(rn - rN, a, -rN, w)}
                              .scaled(sign_fr / Constant::gamma(a))
                              .times_power({one_minus, -a});
                auto r3 = hyp_expression("pole_pfaff.r3", Constant(1), {{one_minus, rn}}, -rn, -a - rN, -rN, w);
                std::string id = "pole_pfaff.a=" + a.str() + ".n=" + std::to_string(n) + ".N=" + std::to_string(N);
                out.push_back({{id + ".r1", lhs, r1}, eq});
                out.push_back({{id + ".r2", lhs, r2}, eq});
                out.push_back({{id + ".r3", lhs, r3}, eq});
            }
    }
    for (auto [as, bs, cs] : {std::array{"1/3", "2/7", "5/4"}, std::array{"-1/5", "3/4", "1/3"},
                              std::array{"5/2", "-3/7", "2/9"}}) {
        Rational a = Rational::parse(as), b = Rational::parse(bs), c = Rational::parse(cs);
        auto psi_series = [&](PsiWeight pw) {
            SeriesFactor s;
            s.arg = z;
            s.num = {{1, a}, {1, b}};
            s.den = {{1, c}, {1, Rational(1)}};
            s.psi = {pw};
            return Expression{"", {Term{Constant(1), {}, std::nullopt, {s}, ""}}};
        };
        auto lhs = psi_series({1, b, 1});
        auto rhs = psi_series({1, Rational(1) - b, -1}) +
                   hyp_expression("", -(Constant::pi() / Constant::tan_pi(b)), {}, a, b, c, z);
        IdentityRecord rec{"psi_reflection.a=" + a.str() + ".b=" + b.str() + ".c=" + c.str(), lhs, rhs, 1e-10};
        out.push_back({rec, std::nullopt});
    }
    return out;
}

VerificationReport failed(const std::string& id, CheckKind kind, const std::string& what) {
    VerificationReport r;
    r.id = id;
    r.kind = kind;
    r.error = what;
    return r;
}

template <class F>
VerificationReport guarded(const std::string& id, CheckKind kind, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return failed(id, kind, e.what());
    }
}

void sort_reports(std::vector<VerificationReport>& v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
}

}  // namespace

std::vector<Complex> sample_points(const SamplePolicy& policy, int region) {
    const Box& box = kRegions[region];
    std::mt19937_64 rng(policy.seed * 7919 + static_cast<std::uint64_t>(region));
    const int n = 3 * policy.count;
    std::uniform_real_distribution<double> jitter(-0.3 / n, 0.3 / n);
    std::vector<Complex> pts;
    for (int i = 1; i <= n; ++i) {
        double u = std::clamp(radical_inverse(i, 2) + jitter(rng), 0.0, 1.0);
        double v = std::clamp(radical_inverse(i, 3) + jitter(rng), 0.0, 1.0);
        pts.emplace_back(box.x0 + u * (box.x1 - box.x0), box.y0 + v * (box.y1 - box.y0));
    }
    return pts;
}

const char* to_string(CheckKind k) {
    switch (k) {
        case CheckKind::Identity: return "identity";
        case CheckKind::OdeResidual: return "ode";
        case CheckKind::Wronskian: return "wronskian";
    }
    return "?";
}

double identity_tolerance(const IdentityRecord& rec) {
    bool pure = !rec.lhs.has_log() && !rec.rhs.has_log() && !has_psi(rec.lhs) && !has_psi(rec.rhs);
    return std::min(pure ? 1e-11 : 1e-9, rec.tolerance);
}

VerificationReport check_identity(const IdentityRecord& rec, const SamplePolicy& policy,
                                  const std::optional<EquationParams>& ode) {
    VerificationReport rep;
    rep.id = rec.id;
    rep.tolerance = identity_tolerance(rec);
    rep.expect_equal = rec.expect_equal;
    Side lhs(rec.lhs, policy, ode), rhs(rec.rhs, policy, ode);

    auto record = [&](Complex z, Complex u, Complex v) {
        ++rep.points;
        double d = rel_dev(u, v);
        if (!rep.worst_point || d > rep.max_rel_deviation) {
            rep.max_rel_deviation = d;
            rep.worst_point = z;
        }
    };
    std::vector<Complex> used;
    for (int r = 0; r < kSampleRegions && rep.points < policy.count; ++r)
        for (auto z : sample_points(policy, r)) {
            if (rep.points >= policy.count) break;
            auto u = lhs.direct(z);
            if (!u) continue;
            auto v = rhs.direct(z);
            if (!v) continue;
            record(z, u->v, v->v);
            used.push_back(z);
        }
    if (rep.points < policy.min_points && ode) {
        for (int r = 0; r < kSampleRegions && rep.points < policy.count; ++r)
            for (auto z : sample_points(policy, r)) {
                if (rep.points >= policy.count) break;
                if (std::find(used.begin(), used.end(), z) != used.end()) continue;
                auto u = lhs.direct(z);
                auto v = rhs.direct(z);
                if (!u && !v) continue;
                auto lu = u ? LocalData{u->v, u->d1} : lhs.local(z);
                auto lv = v ? LocalData{v->v, v->d1} : rhs.local(z);
                if (!lu || !lv) continue;
                rep.continued = true;
                record(z, lu->y, lv->y);
            }
    }
    if (rep.points == 0) throw EmptyDomain("no admissible sample point for " + rec.id);
    rep.pass = rec.expect_equal ? rep.max_rel_deviation < rep.tolerance : rep.max_rel_deviation >= rep.tolerance;
    return rep;
}

LocalData local_solution(const Expression& e, const EquationParams& p, Complex z, const SamplePolicy& policy) {
    Side s(e, policy, p);
    auto d = s.local(z);
    if (!d) throw EmptyDomain("no admissible anchor point for " + e.label);
    return *d;
}

VerificationReport check_ode_residual(const Expression& e, const EquationParams& p, const std::vector<Complex>& points) {
    VerificationReport rep;
    rep.id = "ode." + e.label;
    rep.kind = CheckKind::OdeResidual;
    rep.tolerance = kOdeTolerance;
    const bool exact = e.exact_capable();
    rep.exact = exact;
    const Complex a = p.a.to_double(), b = p.b.to_double(), c = p.c.to_double();
    for (auto z : points) {
        double dev = 0;
        if (exact) {
            auto round64 = [](double x) { return Rational(static_cast<long long>(std::llround(x * 64)), 64); };
            CRational zr{round64(z.real()), round64(z.imag())};
            z = zr.to_complex();
            if (!e.in_domain(z)) continue;
            auto j = e.exact_jet(zr);
            if (!j) continue;
            CRational ab(p.a * p.b);
            CRational res = zr * (CRational(Rational(1)) - zr) * j->d2 +
                            (CRational(p.c) - CRational(p.a + p.b + Rational(1)) * zr) * j->d1 - ab * j->v;
            if (!res.is_zero()) {
                Complex y = j->v.to_complex(), d1 = j->d1.to_complex(), d2 = j->d2.to_complex();
                double scale = std::abs(z * (1.0 - z) * d2) + std::abs((c - (a + b + 1.0) * z) * d1) +
                               std::abs(a * b * y) + std::abs(y);
                dev = std::abs(res.to_complex()) / std::max(scale, 1e-300);
                if (dev == 0) dev = 1e-300;  // nonzero in exact arithmetic
            }
        } else {
            if (!e.in_domain(z)) continue;
            auto j = e.jet(z);
            Complex res = z * (1.0 - z) * j.d2 + (c - (a + b + 1.0) * z) * j.d1 - a * b * j.v;
            double scale = std::abs(z * (1.0 - z) * j.d2) + std::abs((c - (a + b + 1.0) * z) * j.d1) +
                           std::abs(a * b * j.v) + std::abs(j.v);
            dev = std::abs(res) / std::max(scale, 1e-300);
        }
        ++rep.points;
        if (!rep.worst_point || dev > rep.max_rel_deviation) {
            rep.max_rel_deviation = dev;
            rep.worst_point = z;
        }
    }
    if (rep.points == 0) throw EmptyDomain("no admissible point for " + rep.id);
    rep.pass = exact ? rep.max_rel_deviation == 0 : rep.max_rel_deviation < rep.tolerance;
    return rep;
}

VerificationReport check_ode_residual(const Expression& e, const EquationParams& p, const SamplePolicy& policy) {
    Side s(e, policy, std::nullopt);
    std::vector<Complex> pts;
    for (int r = 0; r < kSampleRegions && static_cast<int>(pts.size()) < policy.min_points; ++r)
        for (auto z : sample_points(policy, r)) {
            if (static_cast<int>(pts.size()) >= policy.min_points) break;
            if (s.direct(z)) pts.push_back(z);
        }
    return check_ode_residual(e, p, pts);
}

VerificationReport check_wronskian(const std::string& id, const Expression& y1, const Expression& y2,
                                   const EquationParams& p, Complex z0, const SamplePolicy& policy) {
    Side s1(y1, policy, p), s2(y2, policy, p);
    auto u = s1.local(z0), v = s2.local(z0);
    if (!u || !v) throw EmptyDomain("no admissible anchor point for " + id);
    VerificationReport rep;
    rep.id = id;
    rep.kind = CheckKind::Wronskian;
    rep.tolerance = kWronskianFloor;
    rep.expect_equal = false;
    rep.points = 1;
    rep.worst_point = z0;
    rep.continued = !s1.direct(z0) || !s2.direct(z0);
    Complex w = u->y * v->dy - v->y * u->dy;
    double scale = std::abs(u->y * v->dy) + std::abs(v->y * u->dy);
    rep.max_rel_deviation = std::abs(w) / std::max(scale, 1e-300);
    rep.pass = rep.max_rel_deviation > kWronskianFloor;
    return rep;
}

CaseBasis mutate(const CaseBasis& cb, const Mutation& m) {
    CaseBasis out = cb;
    for (auto& s : out.solutions)
        for (auto& e : s.expressions) e = e.perturbed(m.tag, m.eps);
    for (auto& r : out.relations) {
        r.lhs = r.lhs.perturbed(m.tag, m.eps);
        r.rhs = r.rhs.perturbed(m.tag, m.eps);
    }
    return out;
}

std::vector<IdentityRecord> suite_identities(const EquationParams& p, const CaseBasis& cb) {
    std::vector<IdentityRecord> out;
    for (auto& x : plan_identities(p, cb)) out.push_back(std::move(x.rec));
    return out;
}

std::vector<VerificationReport> run_case_suite(const EquationParams& p, const SamplePolicy& policy,
                                               const std::optional<Mutation>& mutation) {
    CaseBasis cb = case_basis(p);
    if (mutation) cb = mutate(cb, *mutation);
    std::vector<VerificationReport> out;
    for (const auto& x : plan_identities(p, cb))
        out.push_back(guarded(x.rec.id, CheckKind::Identity, [&] { return check_identity(x.rec, policy, x.ode); }));
    for (const auto& s : cb.solutions)
        for (const auto& e : s.expressions)
            out.push_back(guarded("ode." + e.label, CheckKind::OdeResidual,
                                  [&] { return check_ode_residual(e, cb.equation, policy); }));
    for (const auto& d : enumerate_24(p)) {
        if (!d.well_defined()) continue;
        auto e = d.expression();
        e.label = "kummer." + d.label();
        out.push_back(guarded("ode." + e.label, CheckKind::OdeResidual, [&] { return check_ode_residual(e, p, policy); }));
    }
    for (const auto& [x, y] : cb.bases) {
        std::string id = "wronskian." + x + "." + y;
        out.push_back(guarded(id, CheckKind::Wronskian, [&] {
            return check_wronskian(id, cb.solution(x).expressions.at(0), cb.solution(y).expressions.at(0), cb.equation,
                                   kWronskianPoint, policy);
        }));
    }
    sort_reports(out);
    return out;
}

std::vector<IdentityRecord> standalone_records() {
    std::vector<IdentityRecord> out;
    for (auto& x : plan_standalone()) out.push_back(std::move(x.rec));
    return out;
}

std::vector<VerificationReport> run_standalone_suite(const SamplePolicy& policy) {
    std::vector<VerificationReport> out;
    for (const auto& x : plan_standalone())
        out.push_back(guarded(x.rec.id, CheckKind::Identity, [&] { return check_identity(x.rec, policy, x.ode); }));
    sort_reports(out);
    return out;
}

std::array<int, 3> kind_counts(const std::vector<VerificationReport>& reports) {
    std::array<int, 3> n{};
    for (const auto& r : reports) ++n[static_cast<int>(r.kind)];
    return n;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = nlohmann::json{{"id", r.id},
                       {"kind", to_string(r.kind)},
                       {"points", r.points},
                       {"max_rel_deviation", r.max_rel_deviation},
                       {"tolerance", r.tolerance},
                       {"expect_equal", r.expect_equal},
                       {"pass", r.pass},
                       {"continued", r.continued},
                       {"exact", r.exact}};
    if (r.worst_point) j["worst_point"] = {r.worst_point->real(), r.worst_point->imag()};
    if (!r.error.empty()) j["error"] = r.error;
}

std::string render_text(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    int failures = 0;
    char buf[96];
    for (const auto& r : reports) {
        if (!r.pass) ++failures;
        std::snprintf(buf, sizeof buf, "%-4s %-9s %3d  %9.2e %s %8.1e  ", r.pass ? "ok" : "FAIL", to_string(r.kind),
                      r.points, r.max_rel_deviation, r.expect_equal ? "<" : ">", r.tolerance);
        out << buf << r.id;
        if (r.exact) out << "  [exact]";
        if (r.continued) out << "  [continued]";
        if (!r.error.empty()) out << "  error: " << r.error;
        out << '\n';
    }
    out << reports.size() << " checks, " << failures << " failed\n";
    return out.str();
}

}  // namespace hgdeg
