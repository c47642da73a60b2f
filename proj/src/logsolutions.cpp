#include "hgdeg/logsolutions.hpp"

#include "hgdeg/atlas.hpp"
#include "hgdeg/errors.hpp"

#include <algorithm>
#include <set>

namespace hgdeg {

namespace {

using R = Rational;

const Mobius kZ = Mobius::z();
const Mobius kNegZ = Mobius::neg_z();
const Mobius kOneMinusZ = Mobius::one_minus_z();
const Mobius kZMinusOne = Mobius::z_minus_one();
const Mobius kPfaff = Mobius::z_over_z_minus_one();
const Mobius kZOverOneMinusZ = Mobius::z_over_one_minus_z();
const Mobius kOneMinusInvZ = Mobius::one_minus_inv_z();
const Mobius kOneMinusZOverZ = Mobius::one_minus_z_over_z();
const Mobius kInvZ = Mobius::inv_z();
const Mobius kInvOneMinusZ = Mobius::inv_one_minus_z();
const Mobius kInvZMinusOne = Mobius::inv_z_minus_one();

R sign(long long e) { return R(e % 2 == 0 ? 1 : -1); }
R fact(long long n) { return factorial(n); }

LinearFactor up(R x) { return {1, std::move(x)}; }
LinearFactor down(R x) { return {-1, std::move(x)}; }
PsiWeight psi_up(int s, R x) { return {s, std::move(x), 1}; }
PsiWeight psi_down(int s, R x) { return {s, std::move(x), -1}; }

/// 2F1 node; infinite ones may be continued by Pfaff outside their disc.
SeriesFactor hyp(const R& A, const R& B, const R& C, const Mobius& w) {
    auto s = SeriesFactor::hyp2f1(A, B, C, w);
    s.pfaff_continuation = !s.finite();
    return s;
}

SeriesFactor sum(const Mobius& w, R c0, std::vector<LinearFactor> num, std::vector<LinearFactor> den,
                 std::optional<long long> last, long long shift = 0, std::vector<PsiWeight> psi = {}) {
    SeriesFactor s;
    s.arg = w;
    s.c0 = std::move(c0);
    s.num = std::move(num);
    s.den = std::move(den);
    s.last = last;
    s.shift = shift;
    s.psi = std::move(psi);
    return s;
}

Term term(Constant c, std::vector<PowerFactor> powers, std::vector<SeriesFactor> series, std::string tag = {},
          std::optional<Mobius> log = std::nullopt) {
    Term t;
    t.coef = std::move(c);
    for (auto& p : powers)
        if (!p.exponent.is_zero()) t.powers.push_back(std::move(p));
    t.series = std::move(series);
    t.tag = std::move(tag);
    if (log) t.log = LogFactor{*log};
    return t;
}

std::string label(const std::string& sol, const std::string& key) { return sol + ".expr." + key; }

/// Literal identity of single-2F1 expressions ignores the order of A, B.
std::string literal_key(const Expression& e) {
    if (e.terms.size() != 1 || e.terms[0].series.size() != 1 || !e.terms[0].series[0].hyp) return e.latex();
    Term t = e.terms[0];
    auto& h = *t.series[0].hyp;
    if (h[1] < h[0]) std::swap(h[0], h[1]);
    t.series[0] = SeriesFactor::hyp2f1(h[0], h[1], h[2], t.series[0].arg);
    return Expression{"", {t}}.latex();
}

void dedupe(Solution& s) {
    std::set<std::string> seen;
    std::vector<Expression> out;
    for (auto& e : s.expressions)
        if (seen.insert(literal_key(e)).second) out.push_back(std::move(e));
    s.expressions = std::move(out);
}

/// Six terminating expressions of c * pre * 2F1(-n, A; C; w) at the six
/// arguments; keys chain1..chain6.
std::vector<Expression> chain6(const std::string& sol, long long n, const R& A, const R& C, const Mobius& w,
                               const Constant& c, const std::vector<PowerFactor>& pre, const std::string& tag) {
    const R N(n);
    const R r1 = pochhammer(A, n) / pochhammer(C, n);
    const R r2 = pochhammer(C - A, n) / pochhammer(C, n);
    auto one = [&](int i, const R& k, std::vector<PowerFactor> pw, const R& a1, const R& b1, const R& c1,
                   const Mobius& arg) {
        pw.insert(pw.begin(), pre.begin(), pre.end());
        bool plain = k == R(1);
        return Expression{label(sol, "chain" + std::to_string(i)),
                          {term(c * Constant(k), std::move(pw), {hyp(a1, b1, c1, arg)}, plain ? tag : "chain")}};
    };
    const Mobius omw = w.one_minus();
    return {
        one(1, R(1), {}, -N, A, C, w),
        one(2, R(1), {{omw, N}}, -N, C - A, C, w.pfaff()),
        one(3, r1, {{kNegZ.compose(w), N}}, -N, 1 - N - C, 1 - N - A, kInvZ.compose(w)),
        one(4, r1, {{omw, N}}, -N, C - A, 1 - N - A, kInvOneMinusZ.compose(w)),
        one(5, r2, {{w, N}}, -N, 1 - N - C, 1 - N + A - C, kOneMinusInvZ.compose(w)),
        one(6, r2, {}, -N, A, 1 - N + A - C, omw),
    };
}

/// Euler's transformation of a single-2F1 expression when it yields a
/// non-terminating series (terminating partners are already in the chains).
std::optional<Expression> euler_partner(const Expression& e) {
    if (e.terms.size() != 1 || e.terms[0].series.size() != 1 || e.terms[0].log) return std::nullopt;
    const Term& t = e.terms[0];
    const SeriesFactor& s = t.series[0];
    if (!s.hyp || s.shift != 0) return std::nullopt;
    const auto& [A, B, C] = *s.hyp;
    if (C.is_nonpositive_integer()) return std::nullopt;
    auto ns = hyp(C - A, C - B, C, s.arg);
    if (ns.finite()) return std::nullopt;
    Term nt = t;
    nt.series = {ns};
    if (!(C - A - B).is_zero()) nt.powers.push_back({s.arg.one_minus(), C - A - B});
    std::string l = e.label;
    auto pos = l.rfind(".expr.");
    l = l.substr(0, pos + 6) + "euler_" + l.substr(pos + 6);
    return Expression{l, {nt}};
}

void add_euler_partners(Solution& s) {
    std::vector<Expression> extra;
    for (const auto& e : s.expressions)
        if (auto p = euler_partner(e)) extra.push_back(*p);
    s.expressions.insert(s.expressions.end(), extra.begin(), extra.end());
    dedupe(s);
}

Solution terminating_solution(const std::string& name, std::vector<Expression> exprs) {
    Solution s{name, std::move(exprs)};
    dedupe(s);
    add_euler_partners(s);
    return s;
}

/// Non-terminating solutions read off the atlas orbits; members of such an
/// orbit are equal as functions (Euler-Pfaff within one related equation).
std::vector<Solution> nonterminating_orbit_solutions(const EquationParams& p, const std::string& prefix) {
    auto d = enumerate_24(p);
    std::vector<Solution> out;
    for (const auto& o : group_orbits(p, d, false)) {
        if (o.terminating > 0) continue;
        Solution s{prefix + std::to_string(out.size() + 1), {}};
        for (int i : o.members) {
            auto e = d[i].expression();
            e.label = label(s.name, d[i].label());
            for (auto& t : e.terms)
                for (auto& x : t.series) x.pfaff_continuation = !x.finite();
            s.expressions.push_back(std::move(e));
        }
        out.push_back(std::move(s));
    }
    return out;
}

Expression single(const std::string& l, Constant c, std::vector<PowerFactor> pw, const R& A, const R& B, const R& C,
                  const Mobius& w, std::string tag = {}) {
    return Expression{l, {term(std::move(c), std::move(pw), {hyp(A, B, C, w)}, std::move(tag))}};
}

DegeneracyCase require(const EquationParams& p, CaseTag tag, const char* who) {
    auto dc = degeneracy_case(p);
    if (dc.tag != tag)
        throw WrongCase(std::string(who) + " needs " + to_string(tag) + ", " + p.str() + " is " + to_string(dc.tag));
    return dc;
}

Constant pi_sin_ratio(const R& a, const R& b) {
    return Constant::pi() * Constant::sin_pi(a + b) * Constant::sin_pi(a, -1) * Constant::sin_pi(b, -1);
}

Constant pi_cot(const R& x) {
    if ((R(2) * x).is_integer() && !x.is_integer()) return Constant(0);
    return Constant::pi() * Constant::tan_pi(x, -1);
}

}  // namespace

// ---------------------------------------------------------------- accessors

int Solution::terminating_count() const {
    return static_cast<int>(std::count_if(expressions.begin(), expressions.end(), [](const Expression& e) {
        return !e.has_log() && !e.has_infinite_series();
    }));
}

int Solution::nonterminating_count() const { return static_cast<int>(expressions.size()) - terminating_count(); }

const Solution& CaseBasis::solution(const std::string& name) const {
    for (const auto& s : solutions)
        if (s.name == name) return s;
    throw UnknownSolutionLabel("no solution named " + name);
}

const Expression& CaseBasis::expression(const std::string& l) const {
    for (const auto& s : solutions)
        for (const auto& e : s.expressions)
            if (e.label == l) return e;
    throw UnknownSolutionLabel("no expression labelled " + l);
}

std::vector<const Expression*> CaseBasis::all_expressions() const {
    std::vector<const Expression*> out;
    for (const auto& s : solutions)
        for (const auto& e : s.expressions) out.push_back(&e);
    return out;
}

// ---------------------------------------------------------------- case 1

CaseBasis basis_case1(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case1, "basis_case1");
    cb.equation = cb.dc.normal_form;
    const long long n = *cb.dc.n;
    const R a = cb.equation.b, c = cb.equation.c, N(n);

    cb.solutions.push_back(terminating_solution("T", chain6("T", n, a, c, kZ, Constant(1), {}, "")));
    for (auto& s : nonterminating_orbit_solutions(cb.equation, "N")) cb.solutions.push_back(std::move(s));

    const Expression poly = single("", Constant(1), {}, -N, a, c, kZ);
    const Expression at0 = single("", Constant(1), {}, 1 + N, 1 - a, 2 - c, kZ);
    IdentityRecord r1;
    r1.id = "case1.connection.1";
    r1.lhs = single("lhs", Constant(1), {}, 1 + N, 1 - a, 1 + N + c - a, kOneMinusZ);
    r1.rhs = at0.scaled(pochhammer(c - a, n + 1) / pochhammer(c - 1, n + 1)) +
             poly.scaled(Constant::gamma(1 + N + c - a) * Constant::gamma(1 - c) * Constant::gamma(1 - a, -1) *
                         Constant(R(1) / fact(n)))
                 .times_power({kZ, c - 1})
                 .times_power({kOneMinusZ, a - c - N});
    r1.rhs.label = "rhs";
    r1.rhs.terms[1].tag = "gamma_ratio";
    IdentityRecord r2;
    r2.id = "case1.connection.2";
    r2.lhs = single("lhs", Constant(1), {}, 1 + N, c + N, 1 + N + a, kInvZ);
    r2.rhs = at0.scaled(pochhammer(a, n + 1) / pochhammer(c - 1, n + 1)).times_power({kNegZ, N + 1}) +
             poly.scaled(Constant::gamma(1 + N + a) * Constant::gamma(1 - c) * Constant::gamma(1 + a - c, -1) *
                         Constant(R(1) / fact(n)))
                 .times_power({kNegZ, c + N})
                 .times_power({kOneMinusZ, a - c - N});
    r2.rhs.label = "rhs";
    r2.rhs.terms[1].tag = "gamma_ratio";
    cb.relations = {r1, r2};
    cb.bases = {{"T", "N1"}};
    return cb;
}

// ---------------------------------------------------------------- case 2

namespace {

/// u1ab: the U1 expression with the series at infinity in a, a-m.
Expression u1_at_infinity(const std::string& key, const R& a, const R& b, long long m) {
    const R M(m);
    Term t1 = term(Constant(sign(m + 1) * fact(m)) * Constant::gamma(a - M) * Constant::gamma(1 - b) *
                       Constant::gamma(1 + a - b, -1),
                   {{kNegZ, -a}}, {hyp(a, a - M, 1 + a - b, kInvZ)}, "gamma_ratio");
    Term t2 = term(Constant(-1) * Constant::pi() * Constant::exp_i_pi(-b) * Constant::sin_pi(b, -1), {},
                   {hyp(a, b, M + 1, kZ)}, "trig");
    return Expression{label("U1", key), {t1, t2}};
}

/// u1ab2 in the order (a, b).
Expression u1_log_pfaff(const std::string& key, const R& a, const R& b, long long m) {
    const R M(m);
    Expression e{label("U1", key), {}};
    e.terms.push_back(term(Constant(1), {}, {hyp(a, b, M + 1, kZ)}, "", kZOverOneMinusZ));
    e.terms.push_back(term(-pi_cot(b), {}, {hyp(a, b, M + 1, kZ)}, "trig"));
    if (m > 0) {
        R k = sign(m + 1) * fact(m) * fact(m - 1) / (pochhammer(1 - a, m) * pochhammer(1 - b, m));
        e.terms.push_back(term(Constant(k), {{kZ, -M}, {kOneMinusZ, M - a}},
                               {sum(kPfaff, R(1), {up(a - M), up(1 - b)}, {up(1 - M), up(R(1))}, m - 1)}));
    }
    e.terms.push_back(term(Constant(1), {{kOneMinusZ, -a}},
                           {sum(kPfaff, R(1), {up(a), up(M + 1 - b)}, {up(M + 1), up(R(1))}, std::nullopt, 0,
                                {psi_up(1, a), psi_up(1, M + 1 - b), psi_up(-1, M + 1), psi_up(-1, R(1))})}));
    return e;
}

template <class F>
void try_add(std::vector<Expression>& out, F&& make) {
    try {
        out.push_back(make());
    } catch (const UndefinedSeries&) {
        // that expression has an undefined series for these parameters
    }
}

}  // namespace

CaseBasis build_u1(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case2, "build_u1");
    cb.equation = cb.dc.normal_form;
    const R a = cb.equation.a, b = cb.equation.b;
    const long long m = *cb.dc.m;
    const R M(m);

    auto d = enumerate_24(cb.equation);
    for (const auto& o : group_orbits(cb.equation, d, false)) {
        if (std::find(o.members.begin(), o.members.end(), 0) == o.members.end()) continue;
        Solution f{"F", {}};
        for (int i : o.members) {
            auto e = d[i].expression();
            e.label = label("F", d[i].label());
            for (auto& t : e.terms)
                for (auto& x : t.series) x.pfaff_continuation = !x.finite();
            f.expressions.push_back(std::move(e));
        }
        cb.solutions.push_back(std::move(f));
    }

    Solution u{"U1", {}};
    const Constant k1(m > 0 ? sign(m + 1) * fact(m) * fact(m - 1) / (pochhammer(1 - a, m) * pochhammer(1 - b, m))
                            : R(0));
    try_add(u.expressions, [&] {
        return single(label("U1", "logsol2"),
                      Constant(sign(m + 1) * fact(m)) * Constant::gamma(a - M) * Constant::gamma(b - M) *
                          Constant::gamma(a + b - M, -1),
                      {}, a, b, a + b - M, kOneMinusZ, "gamma_ratio");
    });
    try_add(u.expressions, [&] {
        Term t1 = term(Constant(sign(m + 1) * fact(m)) * Constant::gamma(1 - a) * Constant::gamma(1 - b) *
                           Constant::gamma(M + 2 - a - b, -1),
                       {{kOneMinusZ, M + 1 - a - b}}, {hyp(M + 1 - a, M + 1 - b, M + 2 - a - b, kOneMinusZ)},
                       "gamma_ratio");
        Term t2 = term(-pi_sin_ratio(a, b), {}, {hyp(a, b, M + 1, kZ)}, "trig");
        return Expression{label("U1", "logsol3"), {t1, t2}};
    });
    try_add(u.expressions, [&] { return u1_at_infinity("u1ab", a, b, m); });
    try_add(u.expressions, [&] { return u1_at_infinity("u1ba", b, a, m); });
    {
        Expression e{label("U1", "logsol1"), {}};
        e.terms.push_back(term(Constant(1), {}, {hyp(a, b, M + 1, kZ)}, "", kZ));
        if (m > 0)
            e.terms.push_back(term(k1, {{kZ, -M}},
                                   {sum(kZ, R(1), {up(a - M), up(b - M)}, {up(1 - M), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(1), {},
                               {sum(kZ, R(1), {up(a), up(b)}, {up(M + 1), up(R(1))}, std::nullopt, 0,
                                    {psi_up(1, a), psi_up(1, b), psi_up(-1, M + 1), psi_up(-1, R(1))})}));
        u.expressions.push_back(std::move(e));
    }
    {
        Expression e{label("U1", "logsol3a"), {}};
        e.terms.push_back(term(Constant(1), {}, {hyp(a, b, M + 1, kZ)}, "", kZ));
        e.terms.push_back(term(-pi_sin_ratio(a, b), {}, {hyp(a, b, M + 1, kZ)}, "trig"));
        if (m > 0)
            e.terms.push_back(term(k1, {{kZ, -M}, {kOneMinusZ, M + 1 - a - b}},
                                   {sum(kZ, R(1), {up(1 - a), up(1 - b)}, {up(1 - M), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(1), {{kOneMinusZ, M + 1 - a - b}},
                               {sum(kZ, R(1), {up(M + 1 - a), up(M + 1 - b)}, {up(M + 1), up(R(1))}, std::nullopt,
                                    0,
                                    {psi_up(1, M + 1 - a), psi_up(1, M + 1 - b), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})}));
        u.expressions.push_back(std::move(e));
    }
    u.expressions.push_back(u1_log_pfaff("u1ab2", a, b, m));
    u.expressions.push_back(u1_log_pfaff("u1ba2", b, a, m));
    cb.solutions.push_back(std::move(u));
    cb.bases = {{"F", "U1"}};
    return cb;
}

CaseBasis build_u1_infinity(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case2, "build_u1_infinity");
    if (!cb.dc.l) throw WrongCase(p.str() + " has no logarithmic point at infinity");
    cb.equation = cb.dc.normal_form;
    const R a = cb.equation.a, b = cb.equation.b;
    const long long m = *cb.dc.m, l = *cb.dc.l;
    const R M(m), L(l);

    Solution v{"V", {}};
    Expression e{label("V", "logsol_inf"), {}};
    e.terms.push_back(term(Constant(1), {{kZ, -a}}, {hyp(a, a - M, L + 1, kInvZ)}, "", kInvZ));
    if (l > 0) {
        R k = sign(l + 1) * fact(l) * fact(l - 1) / (pochhammer(1 - a, l) * pochhammer(M + 1 - a, l));
        e.terms.push_back(
            term(Constant(k), {{kZ, -b}}, {sum(kInvZ, R(1), {up(b), up(b - M)}, {up(1 - L), up(R(1))}, l - 1)}));
    }
    e.terms.push_back(term(Constant(1), {{kZ, -a}},
                           {sum(kInvZ, R(1), {up(a), up(a - M)}, {up(L + 1), up(R(1))}, std::nullopt, 0,
                                {psi_up(1, a), psi_up(1, a - M), psi_up(-1, L + 1), psi_up(-1, R(1))})}));
    v.expressions.push_back(e);
    cb.solutions.push_back(v);

    auto multiple = [&](const Rational& gamma_arg) {
        return single("rhs",
                      Constant(sign(l + 1) * fact(l)) * Constant::gamma(gamma_arg) * Constant::gamma(b - M) *
                          Constant::gamma(a + b - M, -1),
                      {}, a, b, a + b - M, kOneMinusZ, "gamma_ratio");
    };
    try {
        cb.relations.push_back({"u1_infinity.identification", e, multiple(b)});
        // the handbook connection formula has Gamma(c) in place of Gamma(b)
        cb.relations.push_back({"u1_infinity.gamma_c_variant", e, multiple(M + 1), 1e-9, false});
    } catch (const UndefinedSeries&) {
        // a+b-m in Z<=0: the multiple of U1 has no series at 1
    }
    IdentityRecord ps;
    ps.id = "u1_infinity.power_series";
    ps.lhs = single("lhs", Constant::gamma(a) * Constant::gamma(a - M) * Constant(R(1) / fact(l)), {{kZ, -a}}, a,
                    a - M, L + 1, kInvZ);
    ps.rhs = Expression{"rhs", bold_f_terms(b, b - M, 1 - L, kInvZ)}.times_power({kZ, -b});
    cb.relations.push_back(ps);
    return cb;
}

// ---------------------------------------------------------------- case 3

CaseBasis build_u2(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case3, "build_u2");
    cb.equation = cb.dc.normal_form;
    const R a = cb.equation.a;
    const long long n = *cb.dc.n, m = *cb.dc.m;
    const R N(n), M(m);

    auto chain = chain6("T", n, a, M + 1, kZ, Constant(1), {}, "");
    if (m != 0) {
        const R k1 = fact(m) * pochhammer(a, n) / fact(m + n);
        const R k2 = fact(m) * pochhammer(M + 1 - a, n) / fact(m + n);
        chain.push_back(single(label("T", "long1"), Constant(k1), {{kNegZ, -M}, {kOneMinusZ, M + N}}, -M - N, 1 - a,
                               1 - N - a, kInvOneMinusZ, "chain"));
        chain.push_back(single(label("T", "long2"), Constant(k2), {{kZ, -M}}, -M - N, a - M, a - M - N, kOneMinusZ,
                               "chain"));
    }
    cb.solutions.push_back(terminating_solution("T", std::move(chain)));

    const auto F = [&] { return hyp(-N, a, M + 1, kZ); };
    Solution u{"U2", {}};
    u.expressions.push_back(single(label("U2", "u2exp1"),
                                   Constant(sign(m + 1) * fact(m) * fact(n) / pochhammer(1 - a, m + n + 1)),
                                   {{kOneMinusZ, M + N + 1 - a}}, M + 1 - a, M + N + 1, M + N + 2 - a, kOneMinusZ,
                                   "u2_const"));
    u.expressions.push_back(Expression{
        label("U2", "u2exp2"),
        {term(Constant(sign(m + 1) * fact(m) * fact(n) / pochhammer(a - M, m + n + 1)), {{kNegZ, -a}},
              {hyp(a, a - M, a + N + 1, kInvZ)}, "u2_const"),
         term(Constant::pi() * Constant::exp_i_pi(a) * Constant::sin_pi(a, -1), {}, {F()}, "trig")}});
    {
        Expression e{label("U2", "u2exp3"), {}};
        e.terms.push_back(term(Constant(1), {}, {F()}, "", kZ));
        e.terms.push_back(term(pi_cot(a), {}, {F()}, "trig"));
        if (m > 0)
            e.terms.push_back(term(Constant(sign(m + 1) * fact(m) * fact(n) / pochhammer(1 - a, m)), {{kZ, -M}},
                                   {sum(kZ, fact(m - 1) / fact(m + n), {up(a - M), down(M + N)},
                                        {down(M - 1), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(1), {},
                               {sum(kNegZ, R(1), {up(a), down(N)}, {up(M + 1), up(R(1))}, n, 0,
                                    {psi_up(1, a), psi_down(1, N + 1), psi_up(-1, M + 1), psi_up(-1, R(1))})}));
        // the tail k > n, from the limit of (b)_k psi(1-b-k) as b -> -n
        e.terms.push_back(term(Constant(1), {},
                               {sum(kZ,
                                    sign(n) * fact(n) * fact(m) * pochhammer(a, n + 1) /
                                        (fact(m + n + 1) * fact(n + 1)),
                                    {up(a + N + 1), up(R(1))}, {up(M + N + 2), up(N + 2)}, std::nullopt, n + 1)},
                               "tail"));
        u.expressions.push_back(std::move(e));
    }
    {
        Expression e{label("U2", "u2exp4"), {}};
        e.terms.push_back(term(Constant(1), {}, {F()}, "", kZ));
        if (m > 0)
            e.terms.push_back(term(Constant(sign(m + 1) * fact(m) / (pochhammer(1 - a, m) * fact(m + n))),
                                   {{kZ, -M}, {kOneMinusZ, M + N + 1 - a}},
                                   {sum(kNegZ, fact(m - 1) * fact(n), {up(1 - a), up(N + 1)},
                                        {down(M - 1), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(fact(m) / fact(m + n)), {{kOneMinusZ, M + N + 1 - a}},
                               {sum(kZ, fact(m + n) / fact(m), {up(M + 1 - a), up(M + N + 1)},
                                    {up(M + 1), up(R(1))}, std::nullopt, 0,
                                    {psi_up(1, M + 1 - a), psi_up(1, M + N + 1), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})}));
        u.expressions.push_back(std::move(e));
    }
    {
        Expression e{label("U2", "u2exp5"), {}};
        e.terms.push_back(term(Constant(1), {}, {F()}, "", kZOverOneMinusZ));
        e.terms.push_back(term(pi_cot(a), {}, {F()}, "trig"));
        if (m > 0)
            e.terms.push_back(term(Constant(sign(m + 1) * fact(m) / (pochhammer(1 - a, m) * fact(m + n))),
                                   {{kZ, -M}, {kOneMinusZ, M - a}},
                                   {sum(kZOverOneMinusZ, fact(m - 1) * fact(n), {up(a - M), up(N + 1)},
                                        {down(M - 1), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(fact(m) / fact(m + n)), {{kOneMinusZ, -a}},
                               {sum(kPfaff, fact(m + n) / fact(m), {up(a), up(M + N + 1)}, {up(M + 1), up(R(1))},
                                    std::nullopt, 0,
                                    {psi_up(1, a), psi_up(1, M + N + 1), psi_up(-1, M + 1), psi_up(-1, R(1))})}));
        u.expressions.push_back(std::move(e));
    }
    {
        Expression e{label("U2", "u2exp6"), {}};
        e.terms.push_back(term(Constant(1), {}, {F()}, "", kZOverOneMinusZ));
        if (m > 0)
            e.terms.push_back(term(Constant(sign(m + 1) * fact(m) * fact(n) / pochhammer(1 - a, m)),
                                   {{kZ, -M}, {kOneMinusZ, N + M}},
                                   {sum(kPfaff, fact(m - 1) / fact(m + n), {up(1 - a), down(M + N)},
                                        {down(M - 1), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(fact(m) * fact(n)), {{kOneMinusZ, N}},
                               {sum(kZOverOneMinusZ, R(1) / (fact(m) * fact(n)), {up(M + 1 - a), down(N)},
                                    {up(M + 1), up(R(1))}, n, 0,
                                    {psi_up(1, M + 1 - a), psi_down(1, N + 1), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})}));
        e.terms.push_back(term(Constant(fact(m) * fact(n)), {{kZMinusOne, N}},
                               {sum(kPfaff, pochhammer(M + 1 - a, n + 1) / (fact(m + n + 1) * fact(n + 1)),
                                    {up(M + 1 - a + N + 1), up(R(1))}, {up(M + N + 2), up(N + 2)}, std::nullopt,
                                    n + 1)},
                               "tail"));
        u.expressions.push_back(std::move(e));
    }
    cb.solutions.push_back(std::move(u));
    for (auto& s : nonterminating_orbit_solutions(cb.equation, "N")) cb.solutions.push_back(std::move(s));
    cb.bases = {{"T", "U2"}};
    return cb;
}

// ---------------------------------------------------------------- case 4

CaseBasis basis_case4(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case4, "basis_case4");
    cb.equation = cb.dc.normal_form;
    const long long n = *cb.dc.n, m = *cb.dc.m;
    const R N(n), M(m), a = cb.equation.b + M;

    cb.solutions.push_back(terminating_solution("S1", chain6("S1", n, a - M, -N - M, kZ, Constant(1), {}, "")));
    cb.solutions.push_back(
        terminating_solution("S2", chain6("S2", m, -a - N, -N - M, kZ, Constant(1), {{kOneMinusZ, -a}}, "")));
    for (auto& s : nonterminating_orbit_solutions(cb.equation, "N")) cb.solutions.push_back(std::move(s));

    const Expression& s1 = cb.solutions[0].expressions[0];
    const Expression& s2 = cb.solutions[1].expressions[0];
    Expression rhs = s1;
    rhs.label = "rhs";
    rhs.terms.push_back(term(Constant(sign(m) * fact(n) * fact(m) * pochhammer(a - M, n + m + 1) /
                                      (fact(n + m) * fact(n + m + 1))),
                             {{kZ, N + M + 1}}, {hyp(M + 1, a + N + 1, N + M + 2, kZ)}, "three_term"));
    cb.relations.push_back({"case4.three_term", s2, rhs});
    cb.relations.push_back({"case4.naive_euler", s2, s1, 1e-9, false});
    cb.bases = {{"S1", "S2"}};
    return cb;
}

// ---------------------------------------------------------------- case 5

CaseBasis basis_case5(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case5, "basis_case5");
    cb.equation = cb.dc.normal_form;
    const long long n = *cb.dc.n, m = *cb.dc.m, l = *cb.dc.l;
    const R N(n), M(m), L(l);

    cb.solutions.push_back(terminating_solution("S1", chain6("S1", n, L + 1, -N - M, kZ, Constant(1), {}, "")));
    cb.solutions.push_back(terminating_solution(
        "S2", chain6("S2", m, L + 1, -N - M, kPfaff, Constant(1), {{kOneMinusZ, -L - 1}}, "")));
    cb.solutions.push_back(terminating_solution(
        "S3", chain6("S3", l, N + 1, -M - L, kOneMinusZ, Constant(1), {{kZ, N + M + 1}, {kOneMinusZ, -M - L - 1}},
                     "")));

    Expression rhs = cb.solutions[0].expressions[0];
    rhs.label = "rhs";
    Expression third = cb.solutions[2].expressions[0];
    third = third.scaled(Constant(sign(m) * fact(n) * fact(m + l) / (fact(l) * fact(n + m))));
    third.terms[0].tag = "relation";
    rhs = rhs + third;
    cb.relations.push_back({"case5.relation", cb.solutions[1].expressions[0], rhs, 1e-12});
    cb.bases = {{"S1", "S2"}, {"S1", "S3"}, {"S2", "S3"}};
    return cb;
}

// ---------------------------------------------------------------- case 6

namespace {

/// U3 expressions of E(-l, -n-l, -m-n-2l), keys def, u3exp1..4
/// with `suffix` appended.
std::vector<Expression> u3_expressions(long long m, long long n, long long l, const std::string& suffix) {
    const R M(m), N(n), L(l);
    const long long top = m + n + 2 * l + 1;
    const R T(top);
    const R c3 = R(1) / (fact(l) * fact(m + l) * fact(n + l) * fact(m + n + l));
    auto F = [&] { return hyp(-L, -N - L, -M - N - 2 * L, kZ); };
    std::vector<Expression> out;

    out.push_back(single(label("U3", "def" + suffix), Constant(sign(m + 1) / fact(top)), {{kZ, T}}, M + L + 1,
                         M + N + L + 1, T + 1, kZ));
    {
        Expression e{label("U3", "u3exp1" + suffix), {}};
        e.terms.push_back(term(Constant(c3 * fact(top - 1)), {}, {F()}, "C3", kOneMinusZ));
        e.terms.push_back(term(Constant(1), {},
                               {sum(kOneMinusZ, R(1) / (fact(m) * fact(n + l) * fact(l)), {down(N + L), down(L)},
                                    {up(M + 1), up(R(1))}, l, 0,
                                    {psi_down(1, N + L + 1), psi_down(1, L + 1), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})}));
        if (m > 0)
            e.terms.push_back(term(Constant(-1), {{kZMinusOne, -M}},
                                   {sum(kZMinusOne, fact(m - 1) / (fact(m + n + l) * fact(m + l)),
                                        {down(M + N + L), down(M + L)}, {down(M - 1), up(R(1))}, m - 1)}));
        if (n > 0)
            e.terms.push_back(term(Constant(sign(l)), {{kZMinusOne, N + L}},
                                   {sum(kInvZMinusOne, fact(n - 1) / (fact(m + n + l) * fact(n + l)),
                                        {down(M + N + L), down(N + L)}, {down(N - 1), up(R(1))}, n - 1)}));
        out.push_back(std::move(e));
    }
    {
        Expression e{label("U3", "u3exp2" + suffix), {}};
        e.terms.push_back(term(Constant(c3 * fact(top - 1)), {}, {F()}, "C3", kOneMinusZ));
        if (m > 0)
            e.terms.push_back(term(Constant(-c3), {{kZ, T}, {kZMinusOne, -M}},
                                   {sum(kZMinusOne, fact(n + l) * fact(l) * fact(m - 1), {up(N + L + 1), up(L + 1)},
                                        {down(M - 1), up(R(1))}, m - 1)},
                                   "C3"));
        e.terms.push_back(term(Constant(c3), {{kZ, T}},
                               {sum(kOneMinusZ, fact(m + l) * fact(m + n + l) / fact(m), {up(M + L + 1), up(M + N + L + 1)},
                                    {up(M + 1), up(R(1))}, std::nullopt, 0,
                                    {psi_up(1, M + N + L + 1), psi_up(1, M + L + 1), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})},
                               "C3"));
        out.push_back(std::move(e));
    }
    {
        const R k = R(1) / (fact(n + l) * fact(m + n + l));
        Expression e{label("U3", "u3exp3" + suffix), {}};
        e.terms.push_back(term(Constant(c3 * fact(top - 1)), {}, {F()}, "C3", kOneMinusZOverZ));
        if (m > 0)
            e.terms.push_back(term(Constant(-k), {{kZ, M + L}, {kZMinusOne, -M}},
                                   {sum(kOneMinusInvZ, fact(n + l) * fact(m - 1) / fact(m + l),
                                        {up(N + L + 1), down(M + L)}, {down(M - 1), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(k), {{kZ, L}},
                               {sum(kOneMinusZOverZ, fact(m + n + l) / (fact(m) * fact(l)), {up(M + N + L + 1), down(L)},
                                    {up(M + 1), up(R(1))}, l, 0,
                                    {psi_up(1, M + N + L + 1), psi_down(1, L + 1), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})}));
        e.terms.push_back(term(Constant(k), {{kNegZ, L}},
                               {sum(kOneMinusInvZ, fact(m + n + 2 * l + 1) / (fact(m + l + 1) * fact(l + 1)),
                                    {up(M + N + 2 * L + 2), up(R(1))}, {up(M + L + 2), up(L + 2)}, std::nullopt,
                                    l + 1)}));
        out.push_back(std::move(e));
    }
    {
        const R k = R(1) / (fact(l) * fact(m + l));
        Expression e{label("U3", "u3exp4" + suffix), {}};
        e.terms.push_back(term(Constant(c3 * fact(top - 1)), {}, {F()}, "C3", kOneMinusZOverZ));
        if (m > 0)
            e.terms.push_back(term(Constant(-k), {{kZ, M + N + L}, {kZMinusOne, -M}},
                                   {sum(kOneMinusInvZ, fact(l) * fact(m - 1) / fact(m + n + l),
                                        {up(L + 1), down(M + N + L)}, {down(M - 1), up(R(1))}, m - 1)}));
        e.terms.push_back(term(Constant(k), {{kZ, N + L}},
                               {sum(kOneMinusZOverZ, fact(m + l) / (fact(m) * fact(n + l)), {up(M + L + 1), down(N + L)},
                                    {up(M + 1), up(R(1))}, n + l, 0,
                                    {psi_up(1, M + L + 1), psi_down(1, N + L + 1), psi_up(-1, M + 1),
                                     psi_up(-1, R(1))})}));
        e.terms.push_back(term(Constant(k), {{kNegZ, N + L}},
                               {sum(kOneMinusInvZ, fact(m + n + 2 * l + 1) / (fact(m + n + l + 1) * fact(n + l + 1)),
                                    {up(M + N + 2 * L + 2), up(R(1))}, {up(M + N + L + 2), up(N + L + 2)},
                                    std::nullopt, n + l + 1)}));
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

CaseBasis basis_case6(const EquationParams& p) {
    CaseBasis cb;
    cb.dc = require(p, CaseTag::Case6, "basis_case6");
    cb.equation = cb.dc.normal_form;
    const long long n = *cb.dc.n, m = *cb.dc.m, l = *cb.dc.l;
    const R N(n), M(m), L(l), bottom = -M - N - 2 * L;
    const R c1 = fact(n + l) * fact(n + m + l) / (fact(n) * fact(n + m + 2 * l));
    const R c2 = fact(m + l) * fact(n + m + l) / (fact(m) * fact(n + m + 2 * l));
    const Constant one(1), k1(c1), k2(c2);

    auto t = [&](int i) { return label("T", "term" + std::to_string(i)); };
    std::vector<Expression> chain = {
        single(t(1), one, {}, -L, -N - L, bottom, kZ),
        single(t(2), one, {{kOneMinusZ, L}}, -L, -M - L, bottom, kPfaff),
        single(t(3), k1, {{kNegZ, L}}, -L, N + M + L + 1, N + 1, kInvZ, "C1"),
        single(t(4), k1, {{kOneMinusZ, L}}, -L, -M - L, N + 1, kInvOneMinusZ, "C1"),
        single(t(5), k2, {{kZ, L}}, -L, N + M + L + 1, M + 1, kOneMinusInvZ, "C2"),
        single(t(6), k2, {}, -L, -N - L, M + 1, kOneMinusZ, "C2"),
        single(t(7), one, {{kOneMinusZ, -M}}, -M - L, -N - M - L, bottom, kZ),
        single(t(8), one, {{kOneMinusZ, N + L}}, -N - L, -N - M - L, bottom, kPfaff),
        single(t(9), k1, {{kNegZ, M + L}, {kOneMinusZ, -M}}, -M - L, N + L + 1, N + 1, kInvZ, "C1"),
        single(t(10), k2, {{kZ, N + L}}, -N - L, M + L + 1, M + 1, kOneMinusInvZ, "C2"),
    };
    cb.solutions.push_back(terminating_solution("T", std::move(chain)));

    const R top(m + n + 2 * l + 1);
    Solution ps{"P", {}};
    ps.expressions = {
        single(label("P", "series"), one, {{kZ, top}}, M + L + 1, M + N + L + 1, top + 1, kZ),
        single(label("P", "euler"), one, {{kZ, top}, {kOneMinusZ, -M}}, N + L + 1, L + 1, top + 1, kZ),
        single(label("P", "pfaff1"), one, {{kZ, top}, {kOneMinusZ, -M - L - 1}}, M + L + 1, L + 1, top + 1, kPfaff),
        single(label("P", "pfaff2"), one, {{kZ, top}, {kOneMinusZ, -M - N - L - 1}}, M + N + L + 1, N + L + 1,
               top + 1, kPfaff),
    };
    dedupe(ps);
    cb.solutions.push_back(std::move(ps));

    Solution u{"U3", u3_expressions(m, n, l, "")};
    // interchange m and n, substitute z/(z-1) and multiply by -(1-z)^l
    for (auto& e : u3_expressions(n, m, l, "_swap")) {
        auto s = e.composed(kPfaff).scaled(Constant(-1)).times_power({kOneMinusZ, L});
        u.expressions.push_back(std::move(s));
    }
    cb.solutions.push_back(std::move(u));
    cb.bases = {{"T", "P"}, {"T", "U3"}};
    return cb;
}

// ---------------------------------------------------------------- generic

std::vector<IdentityRecord> generic_connection_records(const EquationParams& p) {
    if (degeneracy_case(p).tag != CaseTag::Generic)
        throw WrongCase("generic_connection_records needs a generic equation, got " + p.str());
    const R a = p.a, b = p.b, c = p.c;
    auto bold = [](const R& A, const R& B, const R& C, const Mobius& w) {
        auto terms = bold_f_terms(A, B, C, w);
        for (auto& t : terms)
            for (auto& s : t.series) s.pfaff_continuation = !s.finite();
        return Expression{"", terms};
    };
    const Expression h1 = bold(a, b, c, kZ);
    const Expression h2 = bold(1 + a - c, 1 + b - c, 2 - c, kZ).times_power({kZ, 1 - c});
    const Constant inv_k =
        Constant::pi() * Constant::sin_pi(c, -1) * Constant::gamma(1 + a - c, -1) * Constant::gamma(1 + b - c, -1);

    std::vector<IdentityRecord> out;
    out.push_back({"generic.connection.1", bold(a, b, 1 + a + b - c, kOneMinusZ), (h1 - h2).scaled(inv_k)});
    out.push_back({"generic.connection.2",
                   bold(c - a, c - b, 1 + c - a - b, kOneMinusZ).times_power({kOneMinusZ, c - a - b}),
                   (h1.scaled(Constant::sin_pi(a) * Constant::sin_pi(b) * Constant::sin_pi(c - a, -1) *
                              Constant::sin_pi(c - b, -1)) -
                    h2)
                       .scaled(inv_k)});
    out.push_back({"generic.connection.3", bold(a, 1 + a - c, 1 + a - b, kInvZ).times_power({kNegZ, -a}),
                   (h1.scaled(Constant::sin_pi(b)) + h2.scaled(Constant::exp_i_pi(c) * Constant::sin_pi(c - b)))
                       .scaled(Constant::sin_pi(c, -1))});
    out.push_back({"generic.connection.4", bold(1 + b - c, b, 1 + b - a, kInvZ).times_power({kNegZ, -b}),
                   (h1.scaled(Constant::sin_pi(a)) + h2.scaled(Constant::exp_i_pi(c) * Constant::sin_pi(c - a)))
                       .scaled(Constant::sin_pi(c, -1))});
    for (auto& r : out) {
        r.lhs.label = r.id + ".lhs";
        r.rhs.label = r.id + ".rhs";
    }
    return out;
}

CaseBasis case_basis(const EquationParams& p) {
    auto dc = degeneracy_case(p);
    switch (dc.tag) {
        case CaseTag::Case1: return basis_case1(p);
        case CaseTag::Case2: {
            auto cb = build_u1(p);
            if (dc.l) {
                auto inf = build_u1_infinity(p);
                for (auto& s : inf.solutions) cb.solutions.push_back(std::move(s));
                for (auto& r : inf.relations) cb.relations.push_back(std::move(r));
            }
            return cb;
        }
        case CaseTag::Case3: return build_u2(p);
        case CaseTag::Case4: return basis_case4(p);
        case CaseTag::Case5: return basis_case5(p);
        case CaseTag::Case6: return basis_case6(p);
        case CaseTag::Generic: break;
    }
    CaseBasis cb;
    cb.dc = dc;
    cb.equation = p;
    Solution h1{"H1", {}}, h2{"H2", {}};
    Expression e1{label("H1", "bold"), bold_f_terms(p.a, p.b, p.c, kZ)};
    Expression e2 = Expression{label("H2", "bold"), bold_f_terms(1 + p.a - p.c, 1 + p.b - p.c, 2 - p.c, kZ)}
                        .times_power({kZ, 1 - p.c});
    h1.expressions.push_back(e1);
    h2.expressions.push_back(e2);
    cb.solutions = {h1, h2};
    cb.relations = generic_connection_records(p);
    cb.bases = {{"H1", "H2"}};
    return cb;
}

// ---------------------------------------------------------------- json

void to_json(nlohmann::json& j, const IdentityRecord& r) {
    j = {{"id", r.id},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"tolerance", r.tolerance},
         {"expect_equal", r.expect_equal}};
}

void to_json(nlohmann::json& j, const Solution& s) {
    j = {{"name", s.name},
         {"terminating", s.terminating_count()},
         {"nonterminating", s.nonterminating_count()},
         {"expressions", s.expressions}};
}

void to_json(nlohmann::json& j, const CaseBasis& b) {
    nlohmann::json bases = nlohmann::json::array();
    for (const auto& [x, y] : b.bases) bases.push_back({x, y});
    j = {{"case", to_string(b.dc.tag)},
         {"equation", {{"a", b.equation.a.str()}, {"b", b.equation.b.str()}, {"c", b.equation.c.str()}}},
         {"solutions", b.solutions},
         {"relations", b.relations},
         {"bases", bases}};
}

}  // namespace hgdeg
