// Command-line front end.  Deliberately speaks only the C API so the shared
// library surface stays exercised end to end; no core headers are included.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "owcsim/owcsim.h"

namespace {

struct ScenarioDeleter {
    void operator()(owcsim_scenario* sc) const { owcsim_scenario_free(sc); }
};
struct RecordsDeleter {
    void operator()(owcsim_records* rec) const { owcsim_records_free(rec); }
};
struct TargetsDeleter {
    void operator()(owcsim_targets* t) const { owcsim_targets_free(t); }
};

using ScenarioPtr = std::unique_ptr<owcsim_scenario, ScenarioDeleter>;
using RecordsPtr = std::unique_ptr<owcsim_records, RecordsDeleter>;
using TargetsPtr = std::unique_ptr<owcsim_targets, TargetsDeleter>;

int fail(const char* what) {
    std::fprintf(stderr, "owcsim: %s: %s\n", what, owcsim_last_error());
    return 2;
}

// Options shared by every subcommand.
struct CommonOpts {
    std::string config_path;
    std::string out = "-";
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    double distance_m = 0.0;
    bool distance_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "scenario config file (default: built-in)")
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", opts.out, "output destination, '-' for stdout");
    cmd->add_option("-f,--format", opts.format, "output format: csv or json-lines");
    cmd->add_option("--seed", opts.seed, "override the scenario seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("-d,--distance", opts.distance_m, "override the link distance (m)")
        ->each([&opts](const std::string&) { opts.distance_set = true; });
}

ScenarioPtr open_scenario(const CommonOpts& opts, int& rc) {
    owcsim_scenario* raw = nullptr;
    if (opts.config_path.empty()) {
        raw = owcsim_scenario_default();
    } else if (owcsim_scenario_load(opts.config_path.c_str(), &raw) != OWCSIM_OK) {
        rc = fail("config");
        return nullptr;
    }
    ScenarioPtr sc(raw);
    if (opts.seed_set && owcsim_scenario_set_seed(sc.get(), opts.seed) != OWCSIM_OK) {
        rc = fail("seed");
        return nullptr;
    }
    if (opts.distance_set &&
        owcsim_scenario_set_distance(sc.get(), opts.distance_m) != OWCSIM_OK) {
        rc = fail("distance");
        return nullptr;
    }
    return sc;
}

int emit(const RecordsPtr& rec, const CommonOpts& opts) {
    if (owcsim_records_emit(rec.get(), opts.format.c_str(), opts.out.c_str()) != OWCSIM_OK)
        return fail("emit");
    return 0;
}

int run_table(const CommonOpts& opts,
              owcsim_status (*run)(const owcsim_scenario*, owcsim_records**)) {
    int rc = 0;
    ScenarioPtr sc = open_scenario(opts, rc);
    if (!sc)
        return rc;
    owcsim_records* raw = nullptr;
    if (run(sc.get(), &raw) != OWCSIM_OK)
        return fail("run");
    return emit(RecordsPtr(raw), opts);
}

int run_calibrate(const CommonOpts& opts, const std::string& targets_path,
                  const std::string& save_path) {
    int rc = 0;
    ScenarioPtr sc = open_scenario(opts, rc);
    if (!sc)
        return rc;

    owcsim_targets* traw = nullptr;
    if (owcsim_targets_load(targets_path.c_str(), &traw) != OWCSIM_OK)
        return fail("targets");
    TargetsPtr targets(traw);

    owcsim_fit_report report{};
    const owcsim_status status = owcsim_calibrate(sc.get(), targets.get(), &report);
    if (status != OWCSIM_OK && status != OWCSIM_ERR_CALIBRATION)
        return fail("calibrate");

    std::printf("tx_power_w = %.10g\n", report.tx_power_w);
    std::printf("noise_density = %.10g\n", report.noise_density);
    std::printf("rolloff_mhz = %.10g\n", report.rolloff_mhz);
    std::printf("snr_gap_db = %.10g\n", report.snr_gap_db);
    std::printf("objective = %.6g over %zu targets (%d descent iterations)\n", report.objective,
                owcsim_targets_count(targets.get()), report.descent_iterations);

    if (!save_path.empty() && owcsim_scenario_save(sc.get(), save_path.c_str()) != OWCSIM_OK)
        return fail("save");

    if (status == OWCSIM_ERR_CALIBRATION) {
        std::fprintf(stderr, "owcsim: calibrate: %s\n", owcsim_last_error());
        return 3;
    }
    return 0;
}

int run_eval(const CommonOpts& opts, int glass_panes) {
    int rc = 0;
    ScenarioPtr sc = open_scenario(opts, rc);
    if (!sc)
        return rc;
    if (glass_panes >= 0 && owcsim_scenario_set_glass(sc.get(), glass_panes) != OWCSIM_OK)
        return fail("glass");
    if (!opts.distance_set) {
        std::fprintf(stderr, "owcsim: eval: --distance is required\n");
        return 2;
    }
    const double d = opts.distance_m;
    double rate = 0, snr = 0, spot = 0, cinr_clear = 0, cinr_glass = 0;
    int owc_up = 0, mm_clear_up = 0, mm_glass_up = 0;
    if (owcsim_link_rate_mbps(sc.get(), d, &rate) != OWCSIM_OK ||
        owcsim_mean_snr_db(sc.get(), d, &snr) != OWCSIM_OK ||
        owcsim_owc_link_up(sc.get(), d, &owc_up) != OWCSIM_OK ||
        owcsim_spot_diameter_m(sc.get(), d, &spot) != OWCSIM_OK ||
        owcsim_mmwave_cinr_db(sc.get(), d, 0, &cinr_clear) != OWCSIM_OK ||
        owcsim_mmwave_cinr_db(sc.get(), d, 1, &cinr_glass) != OWCSIM_OK ||
        owcsim_mmwave_link_up(sc.get(), cinr_clear, &mm_clear_up) != OWCSIM_OK ||
        owcsim_mmwave_link_up(sc.get(), cinr_glass, &mm_glass_up) != OWCSIM_OK)
        return fail("eval");
    std::printf("distance_m = %g\n", d);
    std::printf("spot_diameter_m = %.6g\n", spot);
    std::printf("owc_rate_mbps = %.6g\n", rate);
    std::printf("owc_mean_snr_db = %.6g\n", snr);
    std::printf("owc_link_up = %s\n", owc_up ? "true" : "false");
    std::printf("mmwave_cinr_db = %.6g (clear), %.6g (through glass)\n", cinr_clear, cinr_glass);
    std::printf("mmwave_link_up = %s (clear), %s (through glass)\n",
                mm_clear_up ? "true" : "false", mm_glass_up ? "true" : "false");
    return 0;
}

int run_validate(const std::string& config_path, bool canonical) {
    owcsim_scenario* raw = nullptr;
    if (owcsim_scenario_load(config_path.c_str(), &raw) != OWCSIM_OK)
        return fail("config");
    ScenarioPtr sc(raw);
    if (canonical) {
        char* text = nullptr;
        if (owcsim_scenario_serialize(sc.get(), &text) != OWCSIM_OK)
            return fail("serialize");
        std::fputs(text, stdout);
        owcsim_string_free(text);
    } else {
        std::printf("%s: ok\n", config_path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"owcsim: optical wireless link simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(owcsim_version()));

    CommonOpts sweep_opts, timeline_opts, avail_opts, calib_opts, eval_opts;

    CLI::App* sweep = app.add_subcommand("sweep", "data rate vs distance");
    add_common(sweep, sweep_opts);

    CLI::App* timeline =
        app.add_subcommand("timeline", "event-driven demo: adaptation, glass, 60 GHz");
    add_common(timeline, timeline_opts);

    CLI::App* avail = app.add_subcommand("availability", "Monte Carlo weather availability");
    add_common(avail, avail_opts);

    CLI::App* calibrate = app.add_subcommand("calibrate", "fit hardware parameters to targets");
    add_common(calibrate, calib_opts);
    std::string targets_path, save_path;
    calibrate->add_option("-t,--targets", targets_path, "measured operating points")
        ->required()
        ->check(CLI::ExistingFile);
    calibrate->add_option("--save", save_path, "write the updated config here");

    CLI::App* eval = app.add_subcommand("eval", "single-point link budget at --distance");
    add_common(eval, eval_opts);
    int glass_panes = -1;
    eval->add_option("--glass", glass_panes, "number of coated panes in the path");

    CLI::App* validate = app.add_subcommand("validate-config", "parse and check a config file");
    std::string validate_path;
    bool canonical = false;
    validate->add_option("config", validate_path, "config file")->required()->check(
        CLI::ExistingFile);
    validate->add_flag("--canonical", canonical, "print the canonical serialization");

    CLI11_PARSE(app, argc, argv);

    if (sweep->parsed())
        return run_table(sweep_opts, owcsim_run_sweep);
    if (timeline->parsed())
        return run_table(timeline_opts, owcsim_run_timeline);
    if (avail->parsed())
        return run_table(avail_opts, owcsim_run_availability);
    if (calibrate->parsed())
        return run_calibrate(calib_opts, targets_path, save_path);
    if (eval->parsed())
        return run_eval(eval_opts, glass_panes);
    if (validate->parsed())
        return run_validate(validate_path, canonical);
    return 0;
}
