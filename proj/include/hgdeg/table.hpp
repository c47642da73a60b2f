#pragma once

// Reproduction of the table of Kummer's solutions in degenerate cases on
// fixed witness equations.

#include "hgdeg/equation.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace hgdeg {

/// One admissible combination of the table's "or" alternatives.
struct TableShape {
    int distinct = 0;
    std::vector<std::pair<int, int>> terminating;  // t+n per solution, sorted descending
    std::vector<int> nonterminating;               // sorted descending
};

struct TableRow {
    std::string name;
    EquationParams witness;
    std::string expected_text;  // the table's cells as printed
    std::vector<TableShape> expected;
    TableShape measured;
    bool match = false;
};

/// Shape of the Kummer series of p (distinct count and orbits).
TableShape kummer_shape(const EquationParams& p);
std::string shape_text(const TableShape& s);

/// Witness rows: Generic, Case1, Case2 (two sub-rows), Case3..Case6.
std::vector<TableRow> reproduce_table();

std::string render_table(const std::vector<TableRow>& rows, const std::string& format);

void to_json(nlohmann::json& j, const TableShape& s);
void to_json(nlohmann::json& j, const TableRow& r);

}  // namespace hgdeg
