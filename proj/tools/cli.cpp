#include "cli.hpp"

#include "hgdeg/atlas.hpp"
#include "hgdeg/errors.hpp"
#include "hgdeg/logsolutions.hpp"
#include "hgdeg/params.hpp"
#include "hgdeg/table.hpp"
#include "hgdeg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

namespace hgdeg::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string a, b, c;
    std::string z;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::string solution;
};

const char* kLabelHelp =
    "Solution labels: k01..k24 name the Kummer series in the order of `solutions`.\n"
    "Case expressions read <solution>.<key> or <solution>.expr.<key>, e.g. T.chain3,\n"
    "U1.logsol2, U2.u2exp3, U3.u3exp1, S1.chain1, V.logsol_inf, H1.bold; `solutions`\n"
    "lists every label available for an equation.";

// Shortest decimal that reads back as x.
std::string num(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string complex_text(Complex z) {
    std::string im = num(z.imag());
    return num(z.real()) + (im[0] == '-' ? "" : "+") + im + "i";
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

EquationParams params(const Config& cfg) {
    return {Rational::parse(cfg.a), Rational::parse(cfg.b), Rational::parse(cfg.c)};
}

std::string latex_point(SingularPoint p) { return p == SingularPoint::Infinity ? "\\infty" : to_string(p); }

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int cmd_classify(const Config& cfg, std::ostream& out) {
    auto p = params(cfg);
    auto dc = degeneracy_case(p);
    auto mono = classify_monodromy(p);
    auto ex = local_exponents(p);
    auto logs = logarithmic_points(p);
    std::vector<std::pair<std::string, long long>> wit;
    if (dc.l) wit.emplace_back("l", *dc.l);
    if (dc.n) wit.emplace_back("n", *dc.n);
    if (dc.m) wit.emplace_back("m", *dc.m);

    if (cfg.format == "json") {
        json w = json::object();
        for (const auto& [k, v] : wit) w[k] = v;
        if (dc.residual) w["residual"] = dc.residual->str();
        json lp = json::array();
        for (auto x : logs) lp.push_back(to_string(x));
        auto pair = [](const std::pair<Rational, Rational>& x) { return json::array({x.first.str(), x.second.str()}); };
        emit_json(out, {{"equation", p.str()},
                        {"monodromy", to_string(mono)},
                        {"case", to_string(dc.tag)},
                        {"witnesses", w},
                        {"normal_form", dc.normal_form.str()},
                        {"exponents", {{"0", pair(ex.at0)}, {"1", pair(ex.at1)}, {"inf", pair(ex.atinf)}}},
                        {"differences", {{"1-c", ex.e0.str()}, {"c-a-b", ex.e1.str()}, {"b-a", ex.einf.str()}}},
                        {"logarithmic_points", lp}});
        return kExitOk;
    }
    std::string wtext, ltext;
    for (const auto& [k, v] : wit) {
        if (!wtext.empty()) wtext += cfg.format == "latex" ? ",\\ " : " ";
        wtext += (k == "l" && cfg.format == "latex" ? "\\ell" : k) + "=" + std::to_string(v);
    }
    for (auto x : logs) {
        if (!ltext.empty()) ltext += ", ";
        ltext += cfg.format == "latex" ? latex_point(x) : to_string(x);
    }
    if (cfg.format == "latex") {
        out << "$" << p.str() << "$: " << to_string(dc.tag);
        if (!wtext.empty()) out << ", $" << wtext << "$";
        out << ", " << to_string(mono) << ", logarithmic points $\\{" << ltext << "\\}$\n";
        return kExitOk;
    }
    auto pair = [](const std::pair<Rational, Rational>& x) { return x.first.str() + ", " + x.second.str(); };
    out << "equation            " << p.str() << '\n'
        << "monodromy           " << to_string(mono) << '\n'
        << "case                " << to_string(dc.tag) << '\n'
        << "witnesses           " << (wtext.empty() ? "none" : wtext) << '\n';
    if (dc.residual) out << "residual            a=" << dc.residual->str() << '\n';
    out << "normal form         " << dc.normal_form.str() << '\n'
        << "exponents at 0      " << pair(ex.at0) << '\n'
        << "exponents at 1      " << pair(ex.at1) << '\n'
        << "exponents at inf    " << pair(ex.atinf) << '\n'
        << "differences         1-c=" << ex.e0.str() << " c-a-b=" << ex.e1.str() << " b-a=" << ex.einf.str() << '\n'
        << "logarithmic points  {" << ltext << "}\n";
    return kExitOk;
}

int cmd_solutions(const Config& cfg, std::ostream& out) {
    auto p = params(cfg);
    auto d = enumerate_24(p);
    auto orbits = group_orbits(p, d);
    auto cb = case_basis(p);
    if (cfg.format == "json") {
        json orb = json::array();
        for (const auto& o : orbits) {
            json j = o;
            json labels = json::array();
            for (int i : o.members) labels.push_back(d[i].label());
            j["labels"] = labels;
            orb.push_back(j);
        }
        json sols = json::array();
        for (const auto& s : cb.solutions) {
            json labels = json::array();
            for (const auto& e : s.expressions) labels.push_back(e.label);
            sols.push_back({{"name", s.name},
                            {"terminating", s.terminating_count()},
                            {"nonterminating", s.nonterminating_count()},
                            {"labels", labels}});
        }
        emit_json(out, {{"equation", p.str()},
                        {"case", to_string(cb.dc.tag)},
                        {"descriptors", d},
                        {"distinct", distinct_series_count(d)},
                        {"orbits", orb},
                        {"case_equation", cb.equation.str()},
                        {"case_solutions", sols}});
        return kExitOk;
    }
    if (cfg.format == "latex") {
        out << "\\begin{align*}\n";
        for (const auto& x : d) {
            out << "&" << x.label() << ":\\ ";
            if (x.well_defined())
                out << x.expression().latex();
            else
                out << "\\text{undefined}";
            out << " \\\\\n";
        }
        for (const auto& s : cb.solutions)
            for (const auto& e : s.expressions) out << "&\\text{" << e.label << "}:\\ " << e.latex() << " \\\\\n";
        out << "\\end{align*}\n";
        return kExitOk;
    }
    out << p.str() << "  " << to_string(cb.dc.tag) << "  " << distinct_series_count(d) << " distinct series\n";
    for (const auto& x : d) {
        json j = x;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s  %-8s 2F1(%s,%s;%s)  at %-3s %s", x.label().c_str(),
                      j["argument"].get<std::string>().c_str(), x.A.str().c_str(), x.B.str().c_str(),
                      x.C.str().c_str(), to_string(x.base_point), j["status"].get<std::string>().c_str());
        out << buf;
        if (x.terminating()) out << " (degree " << x.status.degree << ")";
        out << '\n';
    }
    out << "orbits\n";
    for (const auto& o : orbits) {
        out << "  " << o.terminating << "+" << o.nonterminating << "  " << to_string(o.kind) << " ";
        for (int i : o.members) out << " " << d[i].label();
        out << '\n';
    }
    out << "case solutions of " << cb.equation.str() << '\n';
    for (const auto& s : cb.solutions) {
        out << "  " << s.name << "  " << s.terminating_count() << "+" << s.nonterminating_count() << '\n';
        for (const auto& e : s.expressions) out << "    " << e.label << '\n';
    }
    return kExitOk;
}

int cmd_eval(const Config& cfg, std::ostream& out) {
    auto p = params(cfg);
    Complex z = parse_complex(cfg.z);
    if (z == Complex(0) || z == Complex(1)) throw SingularPointError("z = " + cfg.z + " is a singular point");

    Expression e;
    EquationParams eq = p;
    static const std::regex kummer("k(0[1-9]|1[0-9]|2[0-4])");
    if (std::regex_match(cfg.solution, kummer)) {
        auto d = enumerate_24(p).at(std::stoi(cfg.solution.substr(1)) - 1);
        e = d.expression();  // throws UndefinedSeries
        e.label = d.label();
    } else {
        auto cb = case_basis(p);
        std::string label = cfg.solution;
        if (label.find(".expr.") == std::string::npos) {
            auto dot = label.find('.');
            if (dot == std::string::npos) throw UnknownSolutionLabel("unknown solution label '" + label + "'");
            label = label.substr(0, dot) + ".expr." + label.substr(dot + 1);
        }
        e = cb.expression(label);
        eq = cb.equation;
    }

    Complex v, dv;
    std::string method;
    EvalInfo info;
    if (e.in_domain(z)) {
        auto j = e.jet(z, {}, &info);
        v = j.v;
        dv = j.d1;
        method = "series";
    } else {
        auto l = local_solution(e, eq, z);
        v = l.y;
        dv = l.dy;
        method = "continuation";
    }

    if (cfg.format == "json") {
        json j = {{"label", e.label}, {"equation", eq.str()}, {"z", complex_json(z)},   {"value", complex_json(v)},
                  {"derivative", complex_json(dv)}, {"method", method}};
        if (method == "series") {
            j["terms"] = info.terms_used;
            j["truncation_estimate"] = info.truncation_estimate;
        }
        emit_json(out, j);
    } else if (cfg.format == "latex") {
        out << "$" << e.latex() << " = " << complex_text(v) << "$ at $z=" << complex_text(z) << "$\n";
    } else {
        out << "label       " << e.label << '\n'
            << "equation    " << eq.str() << '\n'
            << "z           " << complex_text(z) << '\n'
            << "value       " << complex_text(v) << '\n'
            << "derivative  " << complex_text(dv) << '\n'
            << "method      " << method << '\n';
        if (method == "series") {
            out << "terms       " << info.terms_used << '\n';
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2e", info.truncation_estimate);
            out << "truncation  " << buf << '\n';
        }
    }
    return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
    auto p = params(cfg);
    SamplePolicy policy;
    policy.seed = cfg.seed;
    auto reports = run_case_suite(p, policy);
    if (cfg.tol)
        for (auto& r : reports)
            if (r.kind == CheckKind::Identity && r.expect_equal && r.error.empty()) {
                r.tolerance = *cfg.tol;
                r.pass = r.max_rel_deviation < r.tolerance;
            }
    if (cfg.format == "json") {
        emit_json(out, reports);
    } else if (cfg.format == "latex") {
        out << "\\begin{tabular}{|l|l|r|r|c|}\n\\hline\nCheck & Kind & Points & Deviation & Pass \\\\\n\\hline\n";
        for (const auto& r : reports) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2e", r.max_rel_deviation);
            out << "\\texttt{" << std::regex_replace(r.id, std::regex("_"), "\\_") << "} & " << to_string(r.kind)
                << " & " << r.points << " & " << buf << " & " << (r.pass ? "yes" : "no") << " \\\\\n";
        }
        out << "\\hline\n\\end{tabular}\n";
    } else {
        out << p.str() << "  " << to_string(degeneracy_case(p).tag) << '\n' << render_text(reports);
    }
    return all_pass(reports) ? kExitOk : kExitFailure;
}

int cmd_table(const Config& cfg, std::ostream& out) {
    auto rows = reproduce_table();
    if (cfg.format == "json")
        emit_json(out, rows);
    else
        out << render_table(rows, cfg.format);
    bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match; });
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

Complex parse_complex(const std::string& s) {
    static const std::string number = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex full("([+-]?" + number + ")?(?:([+-])(" + number + ")?i)?");
    static const std::regex imag("([+-]?)(" + number + ")?i");
    std::smatch m;
    if (s.empty()) throw ParseError("empty complex number");
    if (std::regex_match(s, m, imag)) {
        double y = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -y : y};
    }
    if (!std::regex_match(s, m, full) || !m[1].matched) throw ParseError("malformed complex number '" + s + "'");
    double x = std::stod(m[1]);
    double y = 0;
    if (m[2].matched) {
        y = m[3].matched ? std::stod(m[3]) : 1.0;
        if (m[2] == "-") y = -y;
    }
    return {x, y};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification, solutions and verification for degenerate Gauss hypergeometric equations",
                 "hgdeg"};
    app.footer(kLabelHelp);
    app.require_subcommand(1);
    Config cfg;

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("-a", cfg.a, "parameter a (exact rational, e.g. -5/3)")->required();
        sub->add_option("-b", cfg.b, "parameter b")->required();
        sub->add_option("-c", cfg.c, "parameter c")->required();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text", "latex"}));
    };

    auto* classify = app.add_subcommand("classify", "monodromy class, case, witnesses, exponents");
    add_params(classify);
    add_format(classify);

    auto* solutions = app.add_subcommand("solutions", "the 24 Kummer series, orbits and case solutions");
    add_params(solutions);
    add_format(solutions);

    auto* eval = app.add_subcommand("eval", "evaluate a solution expression at z");
    add_params(eval);
    add_format(eval);
    eval->add_option("-z", cfg.z, "point, e.g. 0.25+0.15i")->required();
    eval->add_option("--solution", cfg.solution, "solution label")->required();

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    add_params(verify);
    add_format(verify);
    verify->add_option("--seed", cfg.seed, "sample-point seed");
    verify->add_option("--tol", cfg.tol, "tolerance for identity records");

    auto* table = app.add_subcommand("table", "Kummer series counts on the witness equations");
    add_format(table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*classify) return cmd_classify(cfg, out);
        if (*solutions) return cmd_solutions(cfg, out);
        if (*eval) return cmd_eval(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
        return cmd_table(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace hgdeg::cli
