#include "hgdeg/expression.hpp"

#include "hgdeg/errors.hpp"
#include "hgdeg/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hgdeg {

// ---------------------------------------------------------------- constants

namespace {

Constant single(ConstFn fn, const Rational& x, int power) {
    Constant c;
    c.factors.push_back({fn, x, power});
    return c;
}

void merge(std::vector<ConstFactor>& into, const ConstFactor& f) {
    for (auto it = into.begin(); it != into.end(); ++it) {
        if (it->fn != f.fn || (f.fn != ConstFn::Pi && it->arg != f.arg)) continue;
        it->power += f.power;
        if (it->power == 0) into.erase(it);
        return;
    }
    if (f.power != 0) into.push_back(f);
}

const char* fn_name(ConstFn fn) {
    switch (fn) {
        case ConstFn::Gamma: return "gamma";
        case ConstFn::SinPi: return "sin_pi";
        case ConstFn::CosPi: return "cos_pi";
        case ConstFn::TanPi: return "tan_pi";
        case ConstFn::ExpIPi: return "exp_i_pi";
        case ConstFn::Pi: return "pi";
    }
    return "?";
}

std::string latex_rational(const Rational& r) {
    if (r.is_integer()) return r.str();
    std::string s = r.sign() < 0 ? "-" : "";
    return s + "\\frac{" + r.abs().num().str() + "}{" + r.den().str() + "}";
}

std::string latex_factor(const ConstFactor& f) {
    std::string a = latex_rational(f.arg);
    switch (f.fn) {
        case ConstFn::Gamma: return "\\Gamma\\left(" + a + "\\right)";
        case ConstFn::SinPi: return "\\sin\\left(" + a + "\\pi\\right)";
        case ConstFn::CosPi: return "\\cos\\left(" + a + "\\pi\\right)";
        case ConstFn::TanPi: return "\\tan\\left(" + a + "\\pi\\right)";
        case ConstFn::ExpIPi: return "e^{" + a + "\\pi i}";
        case ConstFn::Pi: return "\\pi";
    }
    return "?";
}

}  // namespace

Constant Constant::gamma(const Rational& x, int power) { return single(ConstFn::Gamma, x, power); }
Constant Constant::sin_pi(const Rational& x, int power) { return single(ConstFn::SinPi, x, power); }
Constant Constant::cos_pi(const Rational& x, int power) { return single(ConstFn::CosPi, x, power); }
Constant Constant::tan_pi(const Rational& x, int power) { return single(ConstFn::TanPi, x, power); }
Constant Constant::exp_i_pi(const Rational& x) { return single(ConstFn::ExpIPi, x, 1); }
Constant Constant::pi(int power) { return single(ConstFn::Pi, Rational(0), power); }

Complex Constant::value() const {
    Complex v = rational.to_double() * scale;
    for (const auto& f : factors) {
        Complex base;
        switch (f.fn) {
            case ConstFn::Gamma: base = hgdeg::gamma(f.arg); break;
            case ConstFn::SinPi: base = hgdeg::sin_pi(f.arg); break;
            case ConstFn::CosPi: base = hgdeg::cos_pi(f.arg); break;
            case ConstFn::TanPi: base = hgdeg::tan_pi(f.arg); break;
            case ConstFn::ExpIPi: base = Complex(hgdeg::cos_pi(f.arg), hgdeg::sin_pi(f.arg)); break;
            case ConstFn::Pi: base = kPi; break;
        }
        if (f.power < 0 && base == Complex(0)) throw DomainError("constant divides by zero: " + str());
        for (int k = 0; k < std::abs(f.power); ++k) v = f.power > 0 ? v * base : v / base;
    }
    return v;
}

Constant operator*(Constant x, const Constant& y) {
    x.rational *= y.rational;
    x.scale *= y.scale;
    for (const auto& f : y.factors) merge(x.factors, f);
    return x;
}

Constant operator/(Constant x, const Constant& y) {
    if (y.rational.is_zero()) throw DomainError("division by a zero constant");
    x.rational /= y.rational;
    x.scale /= y.scale;
    for (auto f : y.factors) {
        f.power = -f.power;
        merge(x.factors, f);
    }
    return x;
}

Constant Constant::operator-() const {
    Constant c = *this;
    c.rational = -c.rational;
    return c;
}

std::string Constant::str() const {
    std::ostringstream os;
    os << rational.str();
    for (const auto& f : factors) {
        os << " * " << fn_name(f.fn);
        if (f.fn != ConstFn::Pi) os << "(" << f.arg.str() << ")";
        if (f.power != 1) os << "^" << f.power;
    }
    if (scale != 1.0) os << " * " << scale;
    return os.str();
}

std::string Constant::latex() const {
    std::string num, den;
    for (const auto& f : factors) {
        std::string s = latex_factor(f);
        int p = std::abs(f.power);
        if (p != 1) s += "^{" + std::to_string(p) + "}";
        (f.power > 0 ? num : den) += s;
    }
    Rational r = rational.abs();
    std::string rn = r.num() == 1 && !num.empty() ? "" : r.num().str();
    std::string rd = r.den() == 1 ? "" : r.den().str();
    std::string top = rn + num, bottom = rd + den;
    if (top.empty()) top = "1";
    std::string out = rational.sign() < 0 ? "-" : "";
    out += bottom.empty() ? top : "\\frac{" + top + "}{" + bottom + "}";
    return out;
}

// ---------------------------------------------------------------- series

SeriesFactor SeriesFactor::hyp2f1(const Rational& A, const Rational& B, const Rational& C, const Mobius& w) {
    auto st = series_status(A, B, C);
    if (st.kind == SeriesKind::Undefined)
        throw UndefinedSeries("2F1(" + A.str() + "," + B.str() + ";" + C.str() + ") is undefined");
    SeriesFactor s;
    s.arg = w;
    s.num = {{1, A}, {1, B}};
    s.den = {{1, C}, {1, Rational(1)}};
    if (st.kind == SeriesKind::Terminating) s.last = st.degree;
    s.hyp = std::array<Rational, 3>{A, B, C};
    return s;
}

namespace {

std::string latex_linear_product(const std::vector<LinearFactor>& fs) {
    std::string s;
    for (const auto& f : fs) {
        if (f.slope == 1 && f.offset == Rational(1)) s += "j!";
        else if (f.slope == 1) s += "\\left(" + latex_rational(f.offset) + "\\right)_j";
        else s += "(-1)^j\\left(" + latex_rational(-f.offset) + "\\right)_j";
    }
    return s.empty() ? "1" : s;
}

}  // namespace

std::string SeriesFactor::latex() const {
    std::string w = arg.latex();
    std::string out;
    if (hyp) {
        if (shift != 0) out += "\\left(" + w + "\\right)^{" + std::to_string(shift) + "}";
        out += "{}_2F_1\\!\\left(" + latex_rational((*hyp)[0]) + ",\\," + latex_rational((*hyp)[1]) + ";\\," +
               latex_rational((*hyp)[2]) + ";\\," + w + "\\right)";
        return out;
    }
    out = "\\sum_{j=0}^{" + (last ? std::to_string(*last) : std::string("\\infty")) + "}";
    if (c0 != Rational(1)) out += latex_rational(c0) + "\\,";
    out += "\\frac{" + latex_linear_product(num) + "}{" + latex_linear_product(den) + "}";
    if (!psi.empty()) {
        out += "\\left[";
        bool first = true;
        for (const auto& p : psi) {
            if (!first || p.sign < 0) out += p.sign < 0 ? "-" : "+";
            first = false;
            out += "\\psi\\left(" + latex_rational(p.offset) + (p.dir > 0 ? "+j" : "-j") + "\\right)";
        }
        out += "\\right]";
    }
    out += "\\left(" + w + "\\right)^{j";
    if (shift > 0) out += "+" + std::to_string(shift);
    if (shift < 0) out += std::to_string(shift);
    out += "}";
    return out;
}

namespace {

// log with the upper-half-plane limit on the cut for real z
Complex branch_log(Complex u, const Mobius& m, Complex z) {
    if (z.imag() == 0 && u.imag() == 0 && u.real() < 0) return {std::log(-u.real()), m.det() > 0 ? kPi : -kPi};
    return principal_log(u);
}

Jet<Complex> power_jet(const PowerFactor& f, Complex z) {
    if (f.exponent.is_zero()) return Jet<Complex>::constant(1);
    auto u = mobius_jet<Complex>(f.base, z);
    if (u.v == Complex(0) || !std::isfinite(std::abs(u.v))) throw SingularPointError("power base vanishes at z");
    Complex p;
    if (f.exponent.is_integer()) p = principal_power(u.v, f.exponent);
    else p = std::exp(f.exponent.to_double() * branch_log(u.v, f.base, z));
    double e = f.exponent.to_double();
    Complex q = p / u.v;
    return {p, e * q * u.d1, e * (e - 1) * q / u.v * u.d1 * u.d1 + e * q * u.d2};
}

Jet<CRational> power_jet(const PowerFactor& f, const CRational& z) {
    if (f.exponent.is_zero()) return Jet<CRational>::constant(CRational(Rational(1)));
    auto u = mobius_jet<CRational>(f.base, z);
    if (u.v.is_zero()) throw SingularPointError("power base vanishes at z");
    long long k = f.exponent.as_int();
    CRational p = int_power(u.v, k), q = p / u.v;
    CRational e{Rational(k)}, e1{Rational(k - 1)};
    return {p, e * q * u.d1, e * e1 * q / u.v * u.d1 * u.d1 + e * q * u.d2};
}

Jet<Complex> log_jet(const LogFactor& f, Complex z) {
    auto u = mobius_jet<Complex>(f.arg, z);
    if (u.v == Complex(0) || !std::isfinite(std::abs(u.v))) throw SingularPointError("log argument vanishes at z");
    Complex r = u.d1 / u.v;
    return {branch_log(u.v, f.arg, z), r, u.d2 / u.v - r * r};
}

bool is_pole(const Rational& x) { return x.is_nonpositive_integer(); }

Rational psi_difference(const Rational& x, const Rational& y) {
    // psi(x) - psi(y) for integral x - y
    if (is_pole(x) || is_pole(y)) throw PoleError("digamma pole in a weight");
    long long k = (x - y).as_int();
    Rational s(0);
    if (k >= 0)
        for (long long t = 0; t < k; ++t) s += Rational(1) / (y + Rational(t));
    else
        for (long long t = 0; t < -k; ++t) s -= Rational(1) / (x + Rational(t));
    return s;
}

Rational frac_part(const Rational& x) { return x - Rational(x.floor()); }

bool psi_exact_capable(const std::vector<PsiWeight>& ws) {
    std::map<std::string, int> signs;
    for (const auto& w : ws) signs[frac_part(w.offset).str()] += w.sign;
    return std::all_of(signs.begin(), signs.end(), [](const auto& kv) { return kv.second == 0; });
}

Rational exact_psi_weight(const std::vector<PsiWeight>& ws, long long j) {
    if (ws.empty()) return Rational(1);
    std::map<std::string, Rational> ref;
    Rational total(0);
    for (const auto& w : ws) {
        Rational x = w.offset + Rational(w.dir * j);
        auto key = frac_part(x).str();
        auto it = ref.find(key);
        if (it == ref.end()) it = ref.emplace(key, x).first;
        total += Rational(w.sign) * psi_difference(x, it->second);
    }
    return total;
}

double ratio_at(const SeriesFactor& s, long long j, bool& zero) {
    double r = 1;
    for (const auto& f : s.num) {
        double v = f.slope * double(j) + f.offset.to_double();
        if (v == 0) zero = true;
        r *= v;
    }
    for (const auto& f : s.den) {
        double v = f.slope * double(j) + f.offset.to_double();
        if (v == 0) throw UndefinedSeries("series coefficient hits a pole");
        r /= v;
    }
    return r;
}

Rational exact_ratio_at(const SeriesFactor& s, long long j) {
    Rational r(1);
    for (const auto& f : s.num) r *= Rational(f.slope * j) + f.offset;
    if (r.is_zero()) return r;
    for (const auto& f : s.den) {
        Rational v = Rational(f.slope * j) + f.offset;
        if (v.is_zero()) throw UndefinedSeries("series coefficient hits a pole");
        r /= v;
    }
    return r;
}

Jet<CRational> series_jet(const SeriesFactor& s, const CRational& z);
Jet<Complex> pfaff_jet(const SeriesFactor& s, Complex z, const EvalOptions& opts, EvalInfo* info);

bool pfaff_reachable(const SeriesFactor& s, Complex w) {
    if (!s.pfaff_continuation || !s.hyp || s.finite() || s.shift != 0 || s.c0 != Rational(1) || w == Complex(1))
        return false;
    return std::abs(w / (w - 1.0)) <= kSummationRadius;
}

// Finite sums up to this length are summed exactly when exact_terminating is
// set; alternating terminating sums lose most of their digits in binary64.
constexpr long long kExactSumLimit = 400;

Jet<Complex> series_jet(const SeriesFactor& s, Complex z, const EvalOptions& opts, EvalInfo* info) {
    if (opts.exact_terminating && s.finite() && *s.last <= kExactSumLimit && psi_exact_capable(s.psi) &&
        std::isfinite(z.real()) && std::isfinite(z.imag())) {
        auto j = series_jet(s, CRational::from_complex(z));
        if (info) info->terms_used += *s.last + 1;
        return {j.v.to_complex(), j.d1.to_complex(), j.d2.to_complex()};
    }
    auto wj = mobius_jet<Complex>(s.arg, z);
    Complex w = wj.v;
    if (w == Complex(0) || !std::isfinite(std::abs(w))) throw SingularPointError("series argument is singular at z");
    if (!s.finite() && std::abs(w) > kSummationRadius * (1 + 1e-12) && pfaff_reachable(s, w))
        return pfaff_jet(s, z, opts, info);
    if (!s.finite() && std::abs(w) > kSummationRadius * (1 + 1e-12))
        throw DomainError("series argument outside the summation disc");

    std::vector<double> psi(s.psi.size());
    for (std::size_t i = 0; i < s.psi.size(); ++i) psi[i] = digamma(s.psi[i].offset);

    SeriesAccumulator a0(opts), a1(opts), a2(opts);
    double c = s.c0.to_double();
    Complex pw = principal_power(w, Rational(s.shift));
    long long j = 0;
    for (;; ++j) {
        double weight = 1;
        if (!s.psi.empty()) {
            weight = 0;
            for (std::size_t i = 0; i < psi.size(); ++i) weight += s.psi[i].sign * psi[i];
        }
        Complex term = c * weight * pw;
        double e = double(j + s.shift);
        bool f0 = a0.add(term), f1 = a1.add(term * e), f2 = a2.add(term * (e * (e - 1)));
        if (s.last && j >= *s.last) break;
        if (!s.last && f0 && f1 && f2) break;
        bool zero = false;
        c *= ratio_at(s, j, zero);
        if (zero) break;
        if (!s.last && j + 1 >= opts.max_terms) throw NoConvergence("series did not converge");
        pw *= w;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const auto& pw8 = s.psi[i];
            // psi(x+1) = psi(x) + 1/x
            Rational x = pw8.offset + Rational(pw8.dir * j);
            Rational next = x + Rational(pw8.dir);
            if (is_pole(next)) throw PoleError("digamma pole in a weight");
            psi[i] += pw8.dir > 0 ? 1.0 / x.to_double() : -1.0 / next.to_double();
        }
    }
    if (info) {
        info->terms_used += j + 1;
        if (!s.last) info->truncation_estimate = std::max(info->truncation_estimate, a0.truncation_estimate());
    }
    Complex t0 = a0.sum(), t1 = a1.sum() / w, t2 = a2.sum() / (w * w);
    return {t0, t1 * wj.d1, t2 * wj.d1 * wj.d1 + t1 * wj.d2};
}

Jet<CRational> series_jet(const SeriesFactor& s, const CRational& z) {
    auto wj = mobius_jet<CRational>(s.arg, z);
    const CRational& w = wj.v;
    if (w.is_zero()) throw SingularPointError("series argument is singular at z");
    CRational t0, t1, t2;
    Rational c = s.c0;
    CRational pw = int_power(w, s.shift);
    for (long long j = 0; j <= *s.last && !c.is_zero(); ++j) {
        CRational term = CRational(c * exact_psi_weight(s.psi, j)) * pw;
        Rational e(j + s.shift);
        t0 += term;
        t1 += term * CRational(e);
        t2 += term * CRational(e * (e - Rational(1)));
        if (j == *s.last) break;
        c *= exact_ratio_at(s, j);
        pw *= w;
    }
    t1 = t1 / w;
    t2 = t2 / (w * w);
    return {t0, t1 * wj.d1, t2 * wj.d1 * wj.d1 + t1 * wj.d2};
}

// sum_j |c_j psiw_j w^(j+shift)|, the scale against which the series value
// suffers cancellation.
double series_abs(const SeriesFactor& s, Complex z) {
    Complex w = s.arg(z);
    if (pfaff_reachable(s, w) && std::abs(w) > kSummationRadius) {
        const auto& [A, B, C] = *s.hyp;
        Term t;
        t.powers.push_back({s.arg.one_minus(), -A});
        t.series.push_back(SeriesFactor::hyp2f1(A, C - B, C, s.arg.pfaff()));
        return Expression{"", {t}}.magnitude(z);
    }
    const double r = std::abs(w);
    std::vector<double> psi(s.psi.size());
    for (std::size_t i = 0; i < s.psi.size(); ++i) psi[i] = digamma(s.psi[i].offset);
    double c = s.c0.to_double(), pw = std::pow(r, double(s.shift)), total = 0;
    for (long long j = 0;; ++j) {
        double weight = 1;
        if (!s.psi.empty()) {
            weight = 0;
            for (std::size_t i = 0; i < psi.size(); ++i) weight += s.psi[i].sign * psi[i];
        }
        double term = std::abs(c * weight) * pw;
        total += term;
        if (s.last && j >= *s.last) break;
        if (!s.last && j > 20 && term < 1e-18 * total) break;
        if (!s.last && j >= 200000) break;
        bool zero = false;
        c *= ratio_at(s, j, zero);
        if (zero) break;
        pw *= r;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const auto& pw8 = s.psi[i];
            Rational x = pw8.offset + Rational(pw8.dir * j);
            Rational next = x + Rational(pw8.dir);
            if (is_pole(next)) break;
            psi[i] += pw8.dir > 0 ? 1.0 / x.to_double() : -1.0 / next.to_double();
        }
    }
    return total;
}

Jet<Complex> pfaff_jet(const SeriesFactor& s, Complex z, const EvalOptions& opts, EvalInfo* info) {
    const auto& [A, B, C] = *s.hyp;
    Term t;
    t.powers.push_back({s.arg.one_minus(), -A});
    t.series.push_back(SeriesFactor::hyp2f1(A, C - B, C, s.arg.pfaff()));
    return Expression{"", {t}}.jet(z, opts, info);
}

}  // namespace

// ---------------------------------------------------------------- expressions

bool Expression::in_domain(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (z == Complex(0) || z == Complex(1)) return false;
    auto ok = [&](const Mobius& m) {
        Complex den = double(m.r) * z + double(m.s);
        if (den == Complex(0)) return false;
        return m(z) != Complex(0);
    };
    for (const auto& t : terms) {
        for (const auto& p : t.powers)
            if (!p.exponent.is_zero() && !ok(p.base)) return false;
        if (t.log && !ok(t.log->arg)) return false;
        for (const auto& s : t.series) {
            if (!ok(s.arg)) return false;
            if (!s.finite() && std::abs(s.arg(z)) > kSummationRadius && !pfaff_reachable(s, s.arg(z)))
                return false;
        }
    }
    return true;
}

bool Expression::has_infinite_series() const {
    for (const auto& t : terms)
        for (const auto& s : t.series)
            if (!s.finite()) return true;
    return false;
}

bool Expression::has_log() const {
    return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.log.has_value(); });
}

bool Expression::exact_capable() const {
    for (const auto& t : terms) {
        if (!t.coef.is_rational() || t.log) return false;
        for (const auto& p : t.powers)
            if (!p.exponent.is_integer()) return false;
        for (const auto& s : t.series) {
            if (!s.finite() || !psi_exact_capable(s.psi)) return false;
        }
    }
    return true;
}

double Expression::magnitude(Complex z) const {
    double total = 0;
    for (const auto& t : terms) {
        if (t.coef.is_zero()) continue;
        double m = std::abs(t.coef.value());
        for (const auto& p : t.powers) m *= std::abs(power_jet(p, z).v);
        if (t.log) m *= std::abs(log_jet(*t.log, z).v);
        for (const auto& x : t.series) m *= series_abs(x, z);
        total += m;
    }
    return total;
}

Jet<Complex> Expression::jet(Complex z, const EvalOptions& opts, EvalInfo* info) const {
    Jet<Complex> total;
    for (const auto& t : terms) {
        if (t.coef.is_zero()) continue;
        Jet<Complex> j = Jet<Complex>::constant(t.coef.value());
        for (const auto& p : t.powers) j = j * power_jet(p, z);
        if (t.log) j = j * log_jet(*t.log, z);
        for (const auto& s : t.series) j = j * series_jet(s, z, opts, info);
        total += j;
    }
    return total;
}

std::optional<Jet<CRational>> Expression::exact_jet(const CRational& z) const {
    if (!exact_capable()) return std::nullopt;
    Jet<CRational> total;
    for (const auto& t : terms) {
        if (t.coef.is_zero()) continue;
        Jet<CRational> j = Jet<CRational>::constant(CRational(t.coef.rational));
        for (const auto& p : t.powers) j = j * power_jet(p, z);
        for (const auto& s : t.series) j = j * series_jet(s, z);
        total += j;
    }
    return total;
}

Expression Expression::perturbed(const std::string& tag, double eps) const {
    Expression e = *this;
    for (auto& t : e.terms)
        if (t.tag == tag) t.coef.scale *= 1 + eps;
    return e;
}

Expression Expression::scaled(const Constant& c) const {
    Expression e = *this;
    for (auto& t : e.terms) t.coef = c * t.coef;
    return e;
}

Expression Expression::times_power(const PowerFactor& p) const {
    Expression e = *this;
    for (auto& t : e.terms) t.powers.push_back(p);
    return e;
}

Expression Expression::composed(const Mobius& inner) const {
    Expression e = *this;
    for (auto& t : e.terms) {
        for (auto& p : t.powers) p.base = p.base.compose(inner);
        if (t.log) t.log->arg = t.log->arg.compose(inner);
        for (auto& s : t.series) s.arg = s.arg.compose(inner);
    }
    return e;
}

Expression Expression::operator+(const Expression& o) const {
    Expression e = *this;
    e.terms.insert(e.terms.end(), o.terms.begin(), o.terms.end());
    return e;
}

Expression Expression::operator-(const Expression& o) const { return *this + o.scaled(Constant(-1)); }

std::string Expression::latex() const {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        std::string c = t.coef.latex();
        if (i > 0 && (c.empty() || c[0] != '-')) out += " + ";
        else if (i > 0) out += " ";
        bool bare = t.powers.empty() && !t.log && t.series.empty();
        if (c == "1" && !bare) c.clear();
        if (c == "-1" && !bare) c = "-";
        out += c;
        for (const auto& p : t.powers) {
            if (p.exponent.is_zero()) continue;
            out += "\\left(" + p.base.latex() + "\\right)";
            if (p.exponent != Rational(1)) out += "^{" + latex_rational(p.exponent) + "}";
        }
        if (t.log) out += "\\log\\left(" + t.log->arg.latex() + "\\right)";
        for (const auto& s : t.series) out += s.latex();
    }
    return out.empty() ? "0" : out;
}

std::vector<Term> bold_f_terms(const Rational& A, const Rational& B, const Rational& C, const Mobius& w) {
    auto fail = [&]() -> std::vector<Term> {
        throw UndefinedSeries("bold F(" + A.str() + "," + B.str() + ";" + C.str() + ") outside all conventions");
    };
    bool a_pole = A.is_nonpositive_integer(), b_pole = B.is_nonpositive_integer();
    if (!C.is_nonpositive_integer()) {
        if (a_pole || b_pole) return fail();
        Term t;
        t.coef = Constant::gamma(A) * Constant::gamma(B) * Constant::gamma(C, -1);
        t.series.push_back(SeriesFactor::hyp2f1(A, B, C, w));
        return {t};
    }
    const long long N = -C.as_int();
    const Rational shift(N + 1);
    if (!a_pole && !b_pole) {
        Term t;
        t.coef = Constant(Rational(1) / factorial(N + 1)) * Constant::gamma(A + shift) * Constant::gamma(B + shift);
        auto s = SeriesFactor::hyp2f1(A + shift, B + shift, Rational(N + 2), w);
        s.shift = N + 1;
        t.series.push_back(s);
        return {t};
    }
    if (a_pole && b_pole) return fail();
    const Rational& upper = a_pole ? A : B;
    const Rational& other = a_pole ? B : A;
    const long long n = -upper.as_int();
    if (n > N) return fail();
    Term head, tail;
    Rational sign((N - n) % 2 ? -1 : 1);
    head.coef = Constant(sign * factorial(N) / factorial(n)) * Constant::gamma(other);
    head.series.push_back(SeriesFactor::hyp2f1(upper, other, C, w));
    tail.coef = Constant(factorial(N - n) / factorial(N + 1)) * Constant::gamma(other + shift);
    auto s = SeriesFactor::hyp2f1(Rational(N - n + 1), other + shift, Rational(N + 2), w);
    s.shift = N + 1;
    tail.series.push_back(s);
    return {head, tail};
}

Expression hyp_expression(std::string label, Constant c, std::vector<PowerFactor> powers, const Rational& A,
                          const Rational& B, const Rational& C, const Mobius& w) {
    Term t;
    t.coef = std::move(c);
    t.powers = std::move(powers);
    t.series.push_back(SeriesFactor::hyp2f1(A, B, C, w));
    return Expression{std::move(label), {t}};
}

Jet<Complex> finite_difference_jet(const Expression& e, Complex z, double h) {
    Complex f0 = e.value(z), fp = e.value(z + h), fm = e.value(z - h);
    return {f0, (fp - fm) / (2 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

// ---------------------------------------------------------------- json

void to_json(nlohmann::json& j, const Constant& c) {
    j = nlohmann::json{{"rational", c.rational.str()}};
    auto fs = nlohmann::json::array();
    for (const auto& f : c.factors) {
        nlohmann::json e{{"fn", fn_name(f.fn)}, {"power", f.power}};
        if (f.fn != ConstFn::Pi) e["arg"] = f.arg.str();
        fs.push_back(e);
    }
    j["factors"] = fs;
    if (c.scale != 1.0) j["scale"] = c.scale;
}

void to_json(nlohmann::json& j, const SeriesFactor& s) {
    auto lin = [](const std::vector<LinearFactor>& fs) {
        auto a = nlohmann::json::array();
        for (const auto& f : fs) a.push_back({{"slope", f.slope}, {"offset", f.offset.str()}});
        return a;
    };
    j = nlohmann::json{{"arg", s.arg.str()}, {"c0", s.c0.str()}, {"num", lin(s.num)}, {"den", lin(s.den)},
                       {"shift", s.shift}};
    j["last"] = s.last ? nlohmann::json(*s.last) : nlohmann::json(nullptr);
    auto psi = nlohmann::json::array();
    for (const auto& p : s.psi) psi.push_back({{"sign", p.sign}, {"offset", p.offset.str()}, {"dir", p.dir}});
    j["psi"] = psi;
    if (s.hyp) j["hyp2f1"] = {(*s.hyp)[0].str(), (*s.hyp)[1].str(), (*s.hyp)[2].str()};
}

void to_json(nlohmann::json& j, const Term& t) {
    j = nlohmann::json{{"constant", t.coef}};
    auto ps = nlohmann::json::array();
    for (const auto& p : t.powers) ps.push_back({{"base", p.base.str()}, {"exponent", p.exponent.str()}});
    j["powers"] = ps;
    j["log"] = t.log ? nlohmann::json{{"arg", t.log->arg.str()}} : nlohmann::json(nullptr);
    j["series"] = t.series;
    if (!t.tag.empty()) j["tag"] = t.tag;
}

void to_json(nlohmann::json& j, const Expression& e) { j = nlohmann::json{{"label", e.label}, {"terms", e.terms}}; }

}  // namespace hgdeg
