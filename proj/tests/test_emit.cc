#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "emit.hh"

using namespace owcsim;

namespace {

ResultTable sample_table() {
    std::vector<StepRecord> steps;
    steps.push_back({0.0, 1077.15, 16.7383, true, 26.9746, true});
    steps.push_back({100.0, 521.647, 3.77785, true, 0.0, false});
    return to_table(steps);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("tables carry the documented column sets") {
    CHECK(to_table(std::vector<SweepRecord>{{10.0, 1669.0, 53.4}}).columns ==
          std::vector<std::string>{"distance_m", "rate_mbps", "mean_snr_db"});
    CHECK(sample_table().columns ==
          std::vector<std::string>{"time_ms", "owc_rate_mbps", "owc_mean_snr_db", "owc_link_up",
                                   "mmwave_cinr_db", "mmwave_link_up"});
    const ResultTable avail = to_table(AvailabilityResult{1000000, 999013, 0.999013});
    CHECK(avail.columns == std::vector<std::string>{"samples", "up_count", "availability"});
    REQUIRE(avail.rows.size() == 1);
    CHECK(std::get<double>(avail.rows[0][1]) == doctest::Approx(999013.0));
}

TEST_CASE("csv rendering") {
    const std::string text = render(sample_table(), EmitFormat::csv);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "time_ms,owc_rate_mbps,owc_mean_snr_db,owc_link_up,mmwave_cinr_db,mmwave_link_up");
    std::getline(in, line);
    CHECK(line == "0,1077.15,16.7383,true,26.9746,true");
    std::getline(in, line);
    CHECK(line == "100,521.647,3.77785,true,0,false");
}

TEST_CASE("json-lines rendering") {
    const std::string text = render(sample_table(), EmitFormat::json_lines);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          R"({"time_ms":0,"owc_rate_mbps":1077.15,"owc_mean_snr_db":16.7383,"owc_link_up":true,)"
          R"("mmwave_cinr_db":26.9746,"mmwave_link_up":true})");
}

TEST_CASE("render/parse round trips are stable in both formats") {
    const ResultTable table = sample_table();
    for (EmitFormat format : {EmitFormat::csv, EmitFormat::json_lines}) {
        const std::string once = render(table, format);
        const ResultTable back =
            format == EmitFormat::csv ? parse_csv(once) : parse_json_lines(once);
        CHECK(back.columns == table.columns);
        REQUIRE(back.rows.size() == table.rows.size());
        CHECK(render(back, format) == once); // fixed point after one pass
    }
    // Booleans survive as booleans, not 0/1.
    const ResultTable back = parse_csv(render(table, EmitFormat::csv));
    CHECK(std::get<bool>(back.rows[0][3]) == true);
    CHECK(std::get<bool>(back.rows[1][5]) == false);
}

TEST_CASE("format names are strict") {
    CHECK(parse_format("csv") == EmitFormat::csv);
    CHECK(parse_format("json-lines") == EmitFormat::json_lines);
    CHECK_THROWS_AS(parse_format("json"), model_error);
    CHECK_THROWS_AS(parse_format("CSV"), model_error);
}

TEST_CASE("empty tables refuse to render") {
    ResultTable empty;
    empty.columns = {"a"};
    CHECK_THROWS_AS(render(empty, EmitFormat::csv), model_error);
}

TEST_CASE("malformed input is rejected while parsing") {
    CHECK_THROWS_AS(parse_csv("a,b\n1,notanumber\n"), model_error);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), model_error); // width mismatch
}

TEST_CASE("file emission is whole-or-not-at-all") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "owcsim_emit_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path out = dir / "table.csv";
    emit_results(sample_table(), EmitFormat::csv, out.string());
    CHECK(slurp(out) == render(sample_table(), EmitFormat::csv));
    CHECK(!fs::exists(dir / "table.csv.partial"));

    // A destination in a missing directory fails cleanly, leaving nothing.
    const fs::path bad = dir / "nope" / "table.csv";
    CHECK_THROWS_AS(emit_results(sample_table(), EmitFormat::csv, bad.string()), io_error);
    CHECK(!fs::exists(bad));

    fs::remove_all(dir);
}
