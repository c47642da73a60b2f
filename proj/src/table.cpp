#include "hgdeg/table.hpp"

#include "hgdeg/atlas.hpp"

#include <algorithm>
#include <sstream>

namespace hgdeg {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

EquationParams E(const char* a, const char* b, const char* c) {
    return {Rational::parse(a), Rational::parse(b), Rational::parse(c)};
}

bool same(const TableShape& x, const TableShape& y) {
    return x.distinct == y.distinct && x.terminating == y.terminating && x.nonterminating == y.nonterminating;
}

std::string join(const std::vector<std::string>& parts) {
    if (parts.empty()) return "\u2014";
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    return out;
}

std::string term_text(const TableShape& s) {
    std::vector<std::string> parts;
    for (auto [t, n] : s.terminating) parts.push_back(std::to_string(t) + "+" + std::to_string(n));
    return join(parts);
}

std::string nonterm_text(const TableShape& s) {
    std::vector<std::string> parts;
    for (int n : s.nonterminating) parts.push_back(std::to_string(n));
    return join(parts);
}

}  // namespace

TableShape kummer_shape(const EquationParams& p) {
    auto d = enumerate_24(p);
    TableShape s;
    s.distinct = distinct_series_count(d);
    for (const auto& o : group_orbits(p, d)) {
        if (o.terminating > 0)
            s.terminating.emplace_back(o.terminating, o.nonterminating);
        else
            s.nonterminating.push_back(o.nonterminating);
    }
    std::sort(s.terminating.rbegin(), s.terminating.rend());
    std::sort(s.nonterminating.rbegin(), s.nonterminating.rend());
    return s;
}

std::string shape_text(const TableShape& s) {
    return std::to_string(s.distinct) + " | " + term_text(s) + " | " + nonterm_text(s);
}

std::vector<TableRow> reproduce_table() {
    std::vector<TableRow> rows = {
        // Generic equations are not a table row; four Euler-Pfaff forms for each of six solutions.
        {"Generic", E("1/3", "2/5", "1/7"), "24 | \u2014 | 4, 4, 4, 4, 4, 4", {{24, {}, {4, 4, 4, 4, 4, 4}}}, {}, false},
        {"Case1", E("-2", "1/3", "1/5"), "24 | 6+6 | 4, 4, 4", {{24, {{6, 6}}, {4, 4, 4}}}, {}, false},
        {"Case2", E("1/3", "2/5", "2"), "12, 16 or 20 | \u2014 | 4, 4, 4 (and possibly 4, 4)",
         {{12, {}, {4, 4, 4}}, {16, {}, {4, 4, 4, 4}}, {20, {}, {4, 4, 4, 4, 4}}}, {}, false},
        {"Case2", E("1/2", "1/2", "1"), "6, 8 or 10 | \u2014 | 2, 2, 2; or 2, 3, 3; or 2, 2, 3, 3",
         {{6, {}, {2, 2, 2}}, {8, {}, {3, 3, 2}}, {10, {}, {3, 3, 2, 2}}}, {}, false},
        {"Case3", E("1/3", "-2", "2"), "16 or 20 | 6+4 or 8+4 | 3, 3 or 4, 4",
         {{16, {{6, 4}}, {3, 3}}, {20, {{8, 4}}, {4, 4}}}, {}, false},
        {"Case4", E("-1", "-5/3", "-3"), "24 | 6+4, 6+4 | 4", {{24, {{6, 4}, {6, 4}}, {4}}}, {}, false},
        {"Case5", E("-1", "2", "-2"), "24 | 6+2, 6+2, 6+2 | \u2014", {{24, {{6, 2}, {6, 2}, {6, 2}}, {}}}, {}, false},
        {"Case6", E("-1", "-3", "-8"), "10, 13 or 16 | 6+2; or 8+2; or 10+2 | 2; or 3; or 4",
         {{10, {{6, 2}}, {2}}, {13, {{8, 2}}, {3}}, {16, {{10, 2}}, {4}}}, {}, false},
    };
    for (auto& r : rows) {
        r.measured = kummer_shape(r.witness);
        r.match = std::any_of(r.expected.begin(), r.expected.end(), [&](const auto& e) { return same(e, r.measured); });
    }
    return rows;
}

std::string render_table(const std::vector<TableRow>& rows, const std::string& format) {
    std::ostringstream out;
    if (format == "latex") {
        out << "\\begin{tabular}{|l|l|c|c|c|c|}\n\\hline\nCase & Witness & Series & Terminating & "
               "Non-terminating & Match \\\\\n\\hline\n";
        for (const auto& r : rows) {
            auto t = term_text(r.measured), n = nonterm_text(r.measured);
            if (t == "\u2014") t = "---";
            if (n == "\u2014") n = "---";
            out << r.name << " & $" << r.witness.str() << "$ & " << r.measured.distinct << " & " << t << " & " << n
                << " & " << (r.match ? "yes" : "no") << " \\\\\n";
        }
        out << "\\hline\n\\end{tabular}\n";
        return out.str();
    }
    for (const auto& r : rows) {
        std::string head = r.name + " " + r.witness.str();
        head.resize(std::max<size_t>(head.size(), 24), ' ');
        out << head << "  " << shape_text(r.measured) << "   expected " << r.expected_text << "   "
            << (r.match ? "match" : "MISMATCH") << '\n';
    }
    return out.str();
}

void to_json(nlohmann::json& j, const TableShape& s) {
    auto t = nlohmann::json::array();
    for (auto [x, y] : s.terminating) t.push_back(std::to_string(x) + "+" + std::to_string(y));
    j = nlohmann::json{{"distinct", s.distinct}, {"terminating", t}, {"nonterminating", s.nonterminating}};
}

void to_json(nlohmann::json& j, const TableRow& r) {
    j = nlohmann::json{{"case", r.name},
                       {"witness", r.witness.str()},
                       {"measured", r.measured},
                       {"expected", r.expected_text},
                       {"match", r.match}};
}

}  // namespace hgdeg
