#include "hgdeg/atlas.hpp"

#include "hgdeg/continuation.hpp"
#include "hgdeg/errors.hpp"
#include "hgdeg/params.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hgdeg {

std::string KummerDescriptor::label() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "k%02d", index + 1);
    return buf;
}

Expression KummerDescriptor::expression() const {
    if (!well_defined()) throw UndefinedSeries(label() + " is undefined: lower parameter " + C.str());
    std::vector<PowerFactor> powers;
    if (!transform.alpha.is_zero())
        powers.push_back({transform.prefactor_uses_neg_z() ? Mobius::neg_z() : Mobius::z(), -transform.alpha});
    if (!transform.beta.is_zero()) powers.push_back({Mobius::one_minus_z(), -transform.beta});
    return hyp_expression(label(), Constant(1), std::move(powers), A, B, C, to_mobius(transform.phi));
}

std::vector<KummerDescriptor> enumerate_24(const EquationParams& p) {
    std::vector<int> rows(kKummerCount);
    std::iota(rows.begin(), rows.end(), 0);
    auto rank = [&](int r) { return argument_rank(make_transform(p, 2 * r).phi); };
    std::stable_sort(rows.begin(), rows.end(), [&](int x, int y) { return rank(x) < rank(y); });
    std::vector<KummerDescriptor> out;
    for (int i = 0; i < kKummerCount; ++i) {
        KummerDescriptor d;
        d.index = i;
        d.transform = make_transform(p, 2 * rows[i]);
        d.A = d.transform.target.a;
        d.B = d.transform.target.b;
        d.C = d.transform.target.c;
        d.status = series_status(d.A, d.B, d.C);
        d.base_point = base_point(d.transform.phi);
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

using Key = std::tuple<int, Rational, Rational, Rational, Rational, Rational>;

Key literal_key(const KummerDescriptor& d) {
    Rational lo = std::min(d.A, d.B), hi = std::max(d.A, d.B);
    return {argument_rank(d.transform.phi), d.transform.alpha, d.transform.beta, lo, hi, d.C};
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
};

// Polynomials over Q, lowest degree first.
using Poly = std::vector<Rational>;

Poly poly_mul(const Poly& x, const Poly& y) {
    Poly r(x.size() + y.size() - 1);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    return r;
}

Rational poly_at(const Poly& x, const Rational& z) {
    Rational v;
    for (size_t i = x.size(); i-- > 0;) v = v * z + x[i];
    return v;
}

// Division by (z - root), assuming root is a zero.
Poly poly_deflate(const Poly& x, const Rational& root) {
    Poly q(x.size() - 1);
    Rational carry;
    for (size_t i = x.size(); i-- > 1;) {
        carry = x[i] + carry * root;
        q[i - 1] = carry;
    }
    return q;
}

// A terminating descriptor equals, up to a nonzero constant,
// z^e0 (1-z)^e1 Q(z) with Q(0) = 1 and Q(1) != 0.
struct PolyForm {
    Rational e0, e1;
    Poly q;
    friend bool operator==(const PolyForm&, const PolyForm&) = default;
};

PolyForm poly_form(const KummerDescriptor& d) {
    long long deg = d.status.degree;
    const Rational& top = (d.A.is_nonpositive_integer() && d.A.as_int() == -deg) ? d.A : d.B;
    const Rational& other = (&top == &d.A) ? d.B : d.A;
    Poly coeff(deg + 1);
    coeff[0] = 1;
    for (long long k = 0; k < deg; ++k)
        coeff[k + 1] = coeff[k] * (top + k) * (other + k) / ((d.C + k) * Rational(k + 1));
    Mobius m = to_mobius(d.transform.phi);
    Poly num{Rational(m.q), Rational(m.p)}, den{Rational(m.s), Rational(m.r)};
    // Q = sum c_k num^k den^(deg-k)
    std::vector<Poly> npow{Poly{1}}, dpow{Poly{1}};
    for (long long k = 0; k < deg; ++k) {
        npow.push_back(poly_mul(npow.back(), num));
        dpow.push_back(poly_mul(dpow.back(), den));
    }
    Poly q(deg + 1);
    for (long long k = 0; k <= deg; ++k) {
        Poly t = poly_mul(npow[k], dpow[deg - k]);
        for (size_t i = 0; i < t.size(); ++i) q[i] += coeff[k] * t[i];
    }
    while (q.size() > 1 && q.back().is_zero()) q.pop_back();

    PolyForm f{-d.transform.alpha, -d.transform.beta, {}};
    // den^-deg: den is constant, z, or +-(1-z)
    if (m.r != 0) {
        if (m.s == 0)
            f.e0 -= deg;
        else
            f.e1 -= deg;
    }
    while (q.size() > 1 && q[0].is_zero()) {
        q = poly_deflate(q, 0);
        f.e0 += 1;
    }
    while (q.size() > 1 && poly_at(q, 1).is_zero()) {
        q = poly_deflate(q, 1);
        f.e1 += 1;
    }
    Rational lead = q[0];
    for (auto& x : q) x /= lead;
    f.q = std::move(q);
    return f;
}

// Rows 4k..4k+3 solve one related equation E(A0, B0, C) with upper
// parameters (A0, B0), (A0, C-B0), (C-A0, B0), (C-A0, C-B0). Two rows share an
// upper parameter through a Pfaff identity; when C = -N that identity
// survives only if the shared parameter is -n with n <= N.
bool pfaff_rescued(const KummerDescriptor& x, const KummerDescriptor& y) {
    int qx = x.transform.kummer_row % 4, qy = y.transform.kummer_row % 4;
    std::optional<Rational> shared;
    if ((qx < 2) == (qy < 2))
        shared = x.A;
    else if (qx % 2 == qy % 2)
        shared = x.B;
    if (!shared || !shared->is_nonpositive_integer()) return false;
    return -shared->as_int() <= -x.C.as_int();
}

// Probe points of the upper half-plane, several inside each summation domain
// and some close to a base point. Short dyadics keep exact sums cheap.
const Complex kProbe[] = {{0.3125, 0.375}, {0.0625, 0.125}, {0.1875, 0.1875}, {0.125, 0.4375},
                          {0.6875, 0.3125}, {0.9375, 0.0625}, {0.8125, 0.1875}, {0.875, 0.4375},
                          {-1.0, 1.5},      {1.5, 2.0},       {3.0, 6.0},       {-3.0, 6.0}};
// Far apart reference points for comparisons after continuation.
const Complex kReference[] = {{0.4, 0.6}, {-1.5, 1.0}, {2.5, 1.0}, {0.5, 2.5}};

double largest_series_argument(const Expression& e, Complex z) {
    double r = 0;
    for (const auto& t : e.terms)
        for (const auto& s : t.series)
            if (!s.finite()) r = std::max(r, std::abs(s.arg(z)));
    return r;
}

LocalData local_data(const Expression& e, Complex z) {
    auto j = e.jet(z);
    return {j.v, j.d1};
}

// Evaluated at the admissible probe with the smallest series argument, then
// continued to the reference points.
std::vector<LocalData> data_at_references(const EquationParams& p, const Expression& e) {
    std::optional<Complex> best;
    for (Complex z : kProbe)
        if (e.in_domain(z) && (!best || largest_series_argument(e, z) < largest_series_argument(e, *best))) best = z;
    if (!best) throw EmptyDomain("no probe point in the domain of " + e.label);
    LocalData start = local_data(e, *best);
    std::vector<LocalData> out;
    for (Complex r : kReference) out.push_back(continue_solution(p, *best, start, r));
    return out;
}

// At each point fit f = lambda_i g on (y, y'); the defect is the worst local
// misfit or spread of lambda_i, both relative.
double defect(const std::vector<LocalData>& f, const std::vector<LocalData>& g) {
    double worst = 0;
    std::vector<Complex> lambda;
    for (size_t i = 0; i < f.size(); ++i) {
        double gg = std::norm(g[i].y) + std::norm(g[i].dy);
        double ff = std::norm(f[i].y) + std::norm(f[i].dy);
        if (gg == 0 || ff == 0) return ff == gg ? 0 : 1;
        Complex l = (std::conj(g[i].y) * f[i].y + std::conj(g[i].dy) * f[i].dy) / gg;
        double res = std::norm(f[i].y - l * g[i].y) + std::norm(f[i].dy - l * g[i].dy);
        worst = std::max(worst, std::sqrt(res / ff));
        lambda.push_back(l);
    }
    for (Complex l : lambda) worst = std::max(worst, std::abs(l - lambda[0]) / std::abs(lambda[0]));
    return worst;
}

// Without continuation when the domains share at least two probe points.
double direct_defect(const EquationParams& p, const Expression& f, const Expression& g) {
    std::vector<std::pair<double, Complex>> common;
    for (Complex z : kProbe)
        if (f.in_domain(z) && g.in_domain(z))
            common.emplace_back(std::max(largest_series_argument(f, z), largest_series_argument(g, z)), z);
    if (common.size() < 2) return defect(data_at_references(p, f), data_at_references(p, g));
    std::stable_sort(common.begin(), common.end(), [](auto& x, auto& y) { return x.first < y.first; });
    common.resize(std::min<size_t>(common.size(), 3));
    std::vector<LocalData> fv, gv;
    for (auto& [r, z] : common) {
        fv.push_back(local_data(f, z));
        gv.push_back(local_data(g, z));
    }
    return defect(fv, gv);
}

// A symbolic link must hold to this accuracy.
constexpr double kLinkTol = 1e-6;
// Two orbits are reported as one solution only if every cross pair is this
// close to proportional. Independent solutions of equations with large
// parameters can be nearly parallel (1e-7 was seen for polynomials of degree
// 8), so this is deliberately strict.
constexpr double kMissingLinkTol = 1e-9;

}  // namespace

std::vector<std::vector<int>> literal_classes(const std::vector<KummerDescriptor>& descs) {
    std::map<Key, std::vector<int>> groups;
    for (const auto& d : descs)
        if (d.well_defined()) groups[literal_key(d)].push_back(d.index);
    std::vector<std::vector<int>> out;
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    std::sort(out.begin(), out.end());
    return out;
}

int distinct_series_count(const std::vector<KummerDescriptor>& descs) {
    return static_cast<int>(literal_classes(descs).size());
}

double proportionality_defect(const EquationParams& p, const Expression& f, const Expression& g) {
    return defect(data_at_references(p, f), data_at_references(p, g));
}

const char* to_string(OrbitKind k) {
    switch (k) {
        case OrbitKind::Terminating: return "terminating";
        case OrbitKind::NonTerminating: return "non-terminating";
        case OrbitKind::LogarithmicCompanion: return "logarithmic-companion";
    }
    return "?";
}

std::vector<SolutionOrbit> group_orbits(const EquationParams& p, const std::vector<KummerDescriptor>& descs,
                                        bool numeric_check) {
    const int n = static_cast<int>(descs.size());
    UnionFind uf(n);
    std::vector<int> reps;
    for (const auto& cls : literal_classes(descs)) {
        reps.push_back(cls.front());
        for (int i : cls) uf.unite(cls.front(), i);
    }

    std::vector<std::pair<int, int>> edges;
    // Euler and Pfaff identities inside one related equation
    for (int i : reps)
        for (int j : reps) {
            if (j <= i) continue;
            const auto& x = descs[i];
            const auto& y = descs[j];
            if (x.transform.kummer_row / 4 != y.transform.kummer_row / 4) continue;
            if (!x.C.is_nonpositive_integer() || pfaff_rescued(x, y)) edges.emplace_back(i, j);
        }

    std::vector<std::pair<int, PolyForm>> polys;
    for (int i : reps)
        if (descs[i].terminating()) polys.emplace_back(i, poly_form(descs[i]));
    for (size_t s = 0; s < polys.size(); ++s)
        for (size_t t = s + 1; t < polys.size(); ++t)
            if (polys[s].second == polys[t].second) edges.emplace_back(polys[s].first, polys[t].first);

    for (auto [i, j] : edges) uf.unite(i, j);

    auto fail = [&](int i, int j, const char* what, double w) {
        std::ostringstream msg;
        msg << p.str() << ": " << descs[i].label() << " and " << descs[j].label() << what << " (defect " << w << ")";
        throw InconsistentOrbit(msg.str());
    };
    if (numeric_check) {
        std::map<int, Expression> expr;
        for (int i : reps) expr.emplace(i, descs[i].expression());
        for (auto [i, j] : edges) {
            double w = direct_defect(p, expr.at(i), expr.at(j));
            if (!(w < kLinkTol)) fail(i, j, " are linked but not proportional", w);
        }
        std::map<int, std::vector<LocalData>> at_ref;
        for (int i : reps) at_ref[i] = data_at_references(p, expr.at(i));
        std::map<int, std::vector<int>> groups;
        for (int i : reps) groups[uf.find(i)].push_back(i);
        for (auto x = groups.begin(); x != groups.end(); ++x)
            for (auto y = std::next(x); y != groups.end(); ++y) {
                double w = 0;
                for (int i : x->second)
                    for (int j : y->second) w = std::max(w, defect(at_ref[i], at_ref[j]));
                if (w < kMissingLinkTol) fail(x->second[0], y->second[0], " are proportional but not linked", w);
            }
    }

    std::map<int, SolutionOrbit> by_root;
    for (int i : reps) by_root[uf.find(i)].members.push_back(i);
    std::vector<SolutionOrbit> out;
    for (auto& [root, o] : by_root) {
        bool log_member = false;
        for (int i : o.members) {
            if (descs[i].terminating())
                ++o.terminating;
            else
                ++o.nonterminating;
            log_member = log_member || is_logarithmic_point(p, descs[i].base_point);
        }
        o.kind = o.terminating > 0 ? OrbitKind::Terminating
                 : log_member      ? OrbitKind::LogarithmicCompanion
                                   : OrbitKind::NonTerminating;
        out.push_back(std::move(o));
    }
    return out;
}

namespace {

const EquationParams kBasis[4] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

int find_element(const std::array<EquationParams, 4>& images, const Mobius& phi) {
    for (int k = 0; k < kTransformCount; ++k) {
        if (!(to_mobius(make_transform(kBasis[0], k).phi) == phi)) continue;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) ok = make_transform(kBasis[i], k).target == images[i];
        if (ok) return k;
    }
    throw Error("composite transform not among the 48");
}

}  // namespace

int compose_transforms(int outer, int inner) {
    std::array<EquationParams, 4> images;
    for (int i = 0; i < 4; ++i) images[i] = make_transform(make_transform(kBasis[i], inner).target, outer).target;
    Mobius phi = to_mobius(make_transform(kBasis[0], outer).phi).compose(to_mobius(make_transform(kBasis[0], inner).phi));
    return find_element(images, phi);
}

int inverse_transform(int index) {
    for (int k = 0; k < kTransformCount; ++k)
        if (compose_transforms(k, index) == 0) return k;
    throw Error("transform has no inverse");
}

void to_json(nlohmann::json& j, const KummerDescriptor& d) {
    const char* status = d.status.kind == SeriesKind::Terminating ? "terminating"
                         : d.status.kind == SeriesKind::Undefined ? "undefined"
                                                                  : "non-terminating";
    j = {{"label", d.label()},
         {"argument", to_string(d.transform.phi)},
         {"alpha", d.transform.alpha.str()},
         {"beta", d.transform.beta.str()},
         {"A", d.A.str()},
         {"B", d.B.str()},
         {"C", d.C.str()},
         {"status", status},
         {"base_point", to_string(d.base_point)}};
    if (d.terminating()) j["degree"] = d.status.degree;
    if (d.well_defined()) j["latex"] = d.expression().latex();
}

void to_json(nlohmann::json& j, const SolutionOrbit& o) {
    j = {{"members", o.members}, {"kind", to_string(o.kind)}, {"terminating", o.terminating},
         {"nonterminating", o.nonterminating}};
}

}  // namespace hgdeg
