#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgdeg/errors.hpp"
#include "hgdeg/expression.hpp"
#include "hgdeg/special.hpp"

using namespace hgdeg;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

double rel(Complex x, Complex y) {
    double s = std::max(std::abs(x), std::abs(y));
    return s == 0 ? 0 : std::abs(x - y) / s;
}

// y'' z(1-z) + (c-(a+b+1)z) y' - ab y, exactly
CRational ode_exact(const Jet<CRational>& y, const CRational& z, const Rational& a, const Rational& b, const Rational& c) {
    CRational one(Rational(1));
    return z * (one - z) * y.d2 + (CRational(c) - CRational(a + b + 1) * z) * y.d1 - CRational(a * b) * y.v;
}

}  // namespace

TEST_CASE("2F1 node agrees with eval_2f1") {
    auto e = hyp_expression("k", Constant(1), {}, R("1/2"), R("1/2"), R("1"), Mobius::z());
    CHECK(std::abs(e.value(Complex(0.5, 0)).real() - 1.18034059901) < 1e-11);
    Complex z(0.3, 0.2);
    auto w = Mobius::z_over_z_minus_one();
    auto e2 = hyp_expression("k", Constant(1), {{Mobius::one_minus_z(), R("-1/3")}}, R("1/3"), R("3/4"), R("5/7"), w);
    Complex expect = principal_power(1.0 - z, R("-1/3")) * eval_2f1(R("1/3"), R("3/4"), R("5/7"), w(z)).value;
    CHECK(rel(e2.value(z), expect) < 1e-15);
}

TEST_CASE("symbolic derivatives agree with finite differences") {
    Term t;
    t.coef = Constant(R("2/3")) * Constant::gamma(R("1/3"));
    t.powers = {{Mobius::z(), R("-1/3")}, {Mobius::one_minus_z(), R("5/4")}};
    t.log = LogFactor{Mobius::z_over_one_minus_z()};
    SeriesFactor s;
    s.arg = Mobius::z();
    s.num = {{1, R("1/3")}, {1, R("2/5")}};
    s.den = {{1, R("1")}, {1, R("2")}};
    s.psi = {{1, R("1"), 1}, {-1, R("1/3"), 1}};
    s.shift = 1;
    t.series = {s, SeriesFactor::hyp2f1(R("-3"), R("1/7"), R("2/9"), Mobius::inv_z())};
    Expression e{"mixed", {t}};
    for (Complex z : {Complex(0.3, 0.2), Complex(-0.4, 0.5), Complex(0.7, 0.1)}) {
        auto j = e.jet(z);
        // Richardson-extrapolated central differences
        auto f1 = finite_difference_jet(e, z, 2e-3), f2 = finite_difference_jet(e, z, 1e-3);
        CHECK(rel(j.d1, (4.0 * f2.d1 - f1.d1) / 3.0) < 1e-8);
        CHECK(rel(j.d2, (4.0 * f2.d2 - f1.d2) / 3.0) < 1e-6);
    }
}

TEST_CASE("exact evaluation of a terminating solution") {
    Rational a = R("-2"), b = R("1/3"), c = R("1/5");
    auto e = hyp_expression("k01", Constant(1), {}, a, b, c, Mobius::z());
    REQUIRE(e.exact_capable());
    CRational z(R("3/10"), R("1/5"));
    auto j = e.exact_jet(z);
    REQUIRE(j);
    CHECK(ode_exact(*j, z, a, b, c).is_zero());
    // the chain partner at 1/z carries an integer power (-z)^2
    auto e3 = hyp_expression("k", Constant(1), {{Mobius::neg_z(), R("2")}}, R("-2"), R("1") - c + a, R("1") + a - b,
                             Mobius::inv_z());
    auto j3 = e3.exact_jet(z);
    REQUIRE(j3);
    CHECK(ode_exact(*j3, z, a, b, c).is_zero());
    // the exact path rounds to the double path
    CHECK(rel(j->v.to_complex(), e.value(z.to_complex())) < 1e-15);
}

TEST_CASE("exact digamma weights") {
    SeriesFactor s;
    s.arg = Mobius::z();
    s.num = {{-1, R("3")}};
    s.den = {{1, R("1")}};
    s.last = 3;
    s.psi = {{1, R("1"), 1}, {-1, R("4"), -1}, {1, R("1/2"), 1}, {-1, R("5/2"), 1}};
    Term t;
    t.series = {s};
    Expression e{"psi", {t}};
    REQUIRE(e.exact_capable());
    CRational z(R("1/4"), R("1/8"));
    auto j = e.exact_jet(z);
    REQUIRE(j);
    CHECK(rel(j->v.to_complex(), e.value(z.to_complex())) < 1e-14);
    CHECK(rel(j->d2.to_complex(), e.jet(z.to_complex()).d2) < 1e-13);

    s.psi = {{1, R("1/3"), 1}};
    t.series = {s};
    CHECK_FALSE(Expression{"x", {t}}.exact_capable());
}

TEST_CASE("bold F terms reproduce eval_bold_f") {
    Complex z(0.25, 0.3);
    struct P { const char *a, *b, *c; };
    for (auto p : {P{"1/3", "2/5", "1/7"}, P{"1/3", "2/5", "-2"}, P{"-1", "1/3", "-2"}, P{"1/3", "-2", "-2"}}) {
        Expression e{"bf", bold_f_terms(R(p.a), R(p.b), R(p.c), Mobius::z())};
        CHECK(rel(e.value(z), eval_bold_f(R(p.a), R(p.b), R(p.c), z).value) < 1e-14);
    }
    CHECK_THROWS_AS(bold_f_terms(R("-3"), R("1/3"), R("-2"), Mobius::z()), UndefinedSeries);
}

TEST_CASE("upper half-plane limit on the cut") {
    Term t;
    t.powers = {{Mobius::neg_z(), R("1/2")}};
    Expression e{"sqrt", {t}};
    Complex on = e.value(Complex(2, 0)), above = e.value(Complex(2, 1e-13));
    CHECK(std::abs(on - above) < 1e-12);
    CHECK(std::abs(on - Complex(0, -std::sqrt(2.0))) < 1e-15);
    Term l;
    l.log = LogFactor{Mobius::one_minus_z()};
    Expression le{"log", {l}};
    CHECK(std::abs(le.value(Complex(3, 0)) - le.value(Complex(3, 1e-13))) < 1e-12);
}

TEST_CASE("domains, mutation and rendering") {
    auto e = hyp_expression("k", Constant::gamma(R("1/3")), {{Mobius::z(), R("1/2")}}, R("1/3"), R("1/2"), R("1/5"),
                            Mobius::one_minus_z());
    CHECK(e.in_domain(Complex(0.5, 0.3)));
    CHECK_FALSE(e.in_domain(Complex(-0.5, 0.3)));  // |1-z| > 0.9
    CHECK_FALSE(e.in_domain(Complex(1, 0)));
    CHECK_THROWS_AS(e.value(Complex(-0.5, 0.3)), DomainError);
    e.terms[0].tag = "C1";
    auto m = e.perturbed("C1", 1e-6);
    CHECK(rel(m.value(Complex(0.5, 0.3)), e.value(Complex(0.5, 0.3)) * (1 + 1e-6)) < 1e-15);
    CHECK_FALSE(m.terms[0].coef.is_rational());
    CHECK(e.latex().find("{}_2F_1") != std::string::npos);
    nlohmann::json j = e;
    CHECK(j["terms"][0]["series"][0]["hyp2f1"][2] == "1/5");
    CHECK(j["terms"][0]["constant"]["factors"][0]["fn"] == "gamma");
    CHECK(Constant(R("3/8")).latex() == "\\frac{3}{8}");
    Constant c = Constant::gamma(R("1/3")) / Constant::gamma(R("1/3"));
    CHECK(c.is_rational());
}
