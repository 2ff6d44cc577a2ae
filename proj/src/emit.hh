#ifndef OWCSIM_EMIT_HH
#define OWCSIM_EMIT_HH

// Machine-readable result emission.  Both formats share one tabular model:
// a fixed column list and rows of double/bool cells.  Numbers go out with 6
// significant digits; files are written to a temp path and renamed so a
// failed write never leaves a partial file behind.

#include <string>
#include <variant>
#include <vector>

#include "scenario.hh"

namespace owcsim {

using Cell = std::variant<double, bool>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

ResultTable to_table(const std::vector<SweepRecord>& records);
ResultTable to_table(const std::vector<StepRecord>& records);
ResultTable to_table(const AvailabilityResult& result);

enum class EmitFormat { csv, json_lines };

// Throws model_error on empty tables or unknown format names.
EmitFormat parse_format(const std::string& name);

std::string render(const ResultTable& table, EmitFormat format);

// destination "-" writes to stdout; anything else is a file path.
void emit_results(const ResultTable& table, EmitFormat format, const std::string& destination);

// Round-trip parsers (tests and downstream tooling).
ResultTable parse_csv(const std::string& text);
ResultTable parse_json_lines(const std::string& text);

} // namespace owcsim

#endif
