#include "emit.hh"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace owcsim {

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string cell_text(const Cell& cell) {
    if (std::holds_alternative<bool>(cell))
        return std::get<bool>(cell) ? "true" : "false";
    return format_number(std::get<double>(cell));
}

} // namespace

ResultTable to_table(const std::vector<SweepRecord>& records) {
    ResultTable t;
    t.columns = {"distance_m", "rate_mbps", "mean_snr_db"};
    for (const auto& r : records)
        t.rows.push_back({Cell{r.distance_m}, Cell{r.rate_mbps}, Cell{r.mean_snr_db}});
    return t;
}

ResultTable to_table(const std::vector<StepRecord>& records) {
    ResultTable t;
    t.columns = {"time_ms",        "owc_rate_mbps",  "owc_mean_snr_db",
                 "owc_link_up",    "mmwave_cinr_db", "mmwave_link_up"};
    for (const auto& r : records)
        t.rows.push_back({Cell{r.time_ms}, Cell{r.owc_rate_mbps}, Cell{r.owc_mean_snr_db},
                          Cell{r.owc_link_up}, Cell{r.mmwave_cinr_db}, Cell{r.mmwave_link_up}});
    return t;
}

ResultTable to_table(const AvailabilityResult& result) {
    ResultTable t;
    t.columns = {"samples", "up_count", "availability"};
    t.rows.push_back({Cell{static_cast<double>(result.samples)},
                      Cell{static_cast<double>(result.up_count)}, Cell{result.availability}});
    return t;
}

EmitFormat parse_format(const std::string& name) {
    if (name == "csv")
        return EmitFormat::csv;
    if (name == "json-lines")
        return EmitFormat::json_lines;
    throw model_error("format: expected \"csv\" or \"json-lines\", got \"" + name + "\"");
}

std::string render(const ResultTable& table, EmitFormat format) {
    if (table.rows.empty())
        throw model_error("emit: no records to write");
    std::ostringstream out;
    if (format == EmitFormat::csv) {
        for (size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << table.columns[c];
        out << '\n';
        for (const auto& row : table.rows) {
            for (size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << cell_text(row[c]);
            out << '\n';
        }
    } else {
        for (const auto& row : table.rows) {
            out << '{';
            for (size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << '"' << table.columns[c] << "\":" << cell_text(row[c]);
            out << "}\n";
        }
    }
    return out.str();
}

void emit_results(const ResultTable& table, EmitFormat format, const std::string& destination) {
    const std::string text = render(table, format);
    if (destination == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(destination);
    const fs::path tmp = target.string() + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("emit: cannot open \"" + destination + "\" for writing");
        out << text;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw io_error("emit: write failed for \"" + destination + "\"");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw io_error("emit: cannot move results into place at \"" + destination + "\"");
    }
}

namespace {

Cell parse_cell(const std::string& text) {
    if (text == "true")
        return Cell{true};
    if (text == "false")
        return Cell{false};
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw model_error("parse: bad cell \"" + text + "\"");
    return Cell{v};
}

} // namespace

ResultTable parse_csv(const std::string& text) {
    ResultTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (header) {
            table.columns = fields;
            header = false;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& f : fields)
            row.push_back(parse_cell(f));
        if (row.size() != table.columns.size())
            throw model_error("parse: row width does not match header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable parse_json_lines(const std::string& text) {
    ResultTable table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            const auto obj = nlohmann::ordered_json::parse(line);
            if (table.columns.empty())
                for (auto it = obj.begin(); it != obj.end(); ++it)
                    table.columns.push_back(it.key());
            std::vector<Cell> row;
            for (const auto& col : table.columns) {
                const auto& v = obj.at(col);
                if (v.is_boolean())
                    row.push_back(Cell{v.get<bool>()});
                else
                    row.push_back(Cell{v.get<double>()});
            }
            table.rows.push_back(std::move(row));
        } catch (const nlohmann::json::exception& e) {
            throw model_error(std::string("parse: bad json line: ") + e.what());
        }
    }
    return table;
}

} // namespace owcsim
