// C ABI over the core: opaque handles wrap the C++ objects, exceptions are
// folded into status codes, and the message of the most recent failure is
// kept per-thread for owcsim_last_error().

#include "owcsim/owcsim.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "calib.hh"
#include "configio.hh"
#include "emit.hh"
#include "scenario.hh"

struct owcsim_scenario {
    owcsim::ConfigBundle rep;
};

struct owcsim_records {
    owcsim::ResultTable rep;
};

struct owcsim_targets {
    std::vector<owcsim::CalibrationTarget> rep;
};

namespace {

thread_local std::string g_last_error;

// Runs `body`, translating exceptions to statuses.  `on_model` is the status
// for a model_error: parse entry points report OWCSIM_ERR_PARSE, everything
// else OWCSIM_ERR_MODEL.
template <typename F>
owcsim_status guarded(owcsim_status on_model, F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const owcsim::io_error& e) {
        g_last_error = e.what();
        return OWCSIM_ERR_IO;
    } catch (const owcsim::model_error& e) {
        g_last_error = e.what();
        return on_model;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return OWCSIM_ERR_MODEL;
    }
}

owcsim_status arg_error(const char* message) {
    g_last_error = message;
    return OWCSIM_ERR_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Channel at an explicit distance, everything else from the scenario baseline.
owcsim::ChannelState channel_at(const owcsim::ScenarioConfig& cfg, double distance_m) {
    owcsim::ChannelState state = cfg.channel;
    state.geometry.distance_m = distance_m;
    owcsim::validate(state.geometry);
    return state;
}

} // namespace

extern "C" {

const char* owcsim_version(void) {
    return "1.0.0";
}

const char* owcsim_last_error(void) {
    return g_last_error.c_str();
}

owcsim_scenario* owcsim_scenario_default(void) {
    return new owcsim_scenario{};
}

owcsim_status owcsim_scenario_parse(const char* text, owcsim_scenario** out) {
    if (!text || !out)
        return arg_error("owcsim_scenario_parse: null argument");
    return guarded(OWCSIM_ERR_PARSE, [&] {
        auto sc = std::make_unique<owcsim_scenario>();
        sc->rep = owcsim::parse_config(text);
        *out = sc.release();
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_scenario_load(const char* path, owcsim_scenario** out) {
    if (!path || !out)
        return arg_error("owcsim_scenario_load: null argument");
    return guarded(OWCSIM_ERR_PARSE, [&] {
        auto sc = std::make_unique<owcsim_scenario>();
        sc->rep = owcsim::load_config(path);
        *out = sc.release();
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_scenario_save(const owcsim_scenario* sc, const char* path) {
    if (!sc || !path)
        return arg_error("owcsim_scenario_save: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        owcsim::save_config(sc->rep, path);
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_scenario_serialize(const owcsim_scenario* sc, char** out_text) {
    if (!sc || !out_text)
        return arg_error("owcsim_scenario_serialize: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        *out_text = dup_string(owcsim::serialize_config(sc->rep));
        return OWCSIM_OK;
    });
}

void owcsim_scenario_free(owcsim_scenario* sc) {
    delete sc;
}

owcsim_status owcsim_scenario_set_seed(owcsim_scenario* sc, uint64_t seed) {
    if (!sc)
        return arg_error("owcsim_scenario_set_seed: null scenario");
    sc->rep.scenario.seed = seed;
    return OWCSIM_OK;
}

owcsim_status owcsim_scenario_set_distance(owcsim_scenario* sc, double distance_m) {
    if (!sc)
        return arg_error("owcsim_scenario_set_distance: null scenario");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        owcsim::LinkGeometry geo = sc->rep.scenario.channel.geometry;
        geo.distance_m = distance_m;
        owcsim::validate(geo);
        sc->rep.scenario.channel.geometry = geo;
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_scenario_set_glass(owcsim_scenario* sc, int pane_count) {
    if (!sc)
        return arg_error("owcsim_scenario_set_glass: null scenario");
    if (pane_count < 0)
        return arg_error("owcsim_scenario_set_glass: pane_count must be >= 0");
    sc->rep.scenario.channel.panes.assign(static_cast<size_t>(pane_count), owcsim::GlassPane{});
    return OWCSIM_OK;
}

owcsim_status owcsim_run_sweep(const owcsim_scenario* sc, owcsim_records** out) {
    if (!sc || !out)
        return arg_error("owcsim_run_sweep: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        auto rec = std::make_unique<owcsim_records>();
        rec->rep = owcsim::to_table(owcsim::run_sweep(sc->rep.scenario));
        *out = rec.release();
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_run_timeline(const owcsim_scenario* sc, owcsim_records** out) {
    if (!sc || !out)
        return arg_error("owcsim_run_timeline: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        auto rec = std::make_unique<owcsim_records>();
        rec->rep = owcsim::to_table(owcsim::run_timeline(sc->rep.scenario));
        *out = rec.release();
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_run_availability(const owcsim_scenario* sc, owcsim_records** out) {
    if (!sc || !out)
        return arg_error("owcsim_run_availability: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        auto rec = std::make_unique<owcsim_records>();
        rec->rep = owcsim::to_table(owcsim::run_availability(sc->rep.scenario));
        *out = rec.release();
        return OWCSIM_OK;
    });
}

size_t owcsim_records_rows(const owcsim_records* rec) {
    return rec ? rec->rep.rows.size() : 0;
}

size_t owcsim_records_columns(const owcsim_records* rec) {
    return rec ? rec->rep.columns.size() : 0;
}

owcsim_status owcsim_records_column_name(const owcsim_records* rec, size_t column,
                                         const char** out_name) {
    if (!rec || !out_name)
        return arg_error("owcsim_records_column_name: null argument");
    if (column >= rec->rep.columns.size())
        return arg_error("owcsim_records_column_name: column out of range");
    *out_name = rec->rep.columns[column].c_str();
    return OWCSIM_OK;
}

owcsim_status owcsim_records_cell(const owcsim_records* rec, size_t row, size_t column,
                                  double* out_value) {
    if (!rec || !out_value)
        return arg_error("owcsim_records_cell: null argument");
    if (row >= rec->rep.rows.size() || column >= rec->rep.columns.size())
        return arg_error("owcsim_records_cell: cell out of range");
    const owcsim::Cell& cell = rec->rep.rows[row][column];
    if (const double* d = std::get_if<double>(&cell))
        *out_value = *d;
    else
        *out_value = std::get<bool>(cell) ? 1.0 : 0.0;
    return OWCSIM_OK;
}

owcsim_status owcsim_records_render(const owcsim_records* rec, const char* format,
                                    char** out_text) {
    if (!rec || !format || !out_text)
        return arg_error("owcsim_records_render: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        *out_text = dup_string(owcsim::render(rec->rep, owcsim::parse_format(format)));
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_records_emit(const owcsim_records* rec, const char* format,
                                  const char* destination) {
    if (!rec || !format || !destination)
        return arg_error("owcsim_records_emit: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        owcsim::emit_results(rec->rep, owcsim::parse_format(format), destination);
        return OWCSIM_OK;
    });
}

void owcsim_records_free(owcsim_records* rec) {
    delete rec;
}

owcsim_status owcsim_link_rate_mbps(const owcsim_scenario* sc, double distance_m, double* out) {
    if (!sc || !out)
        return arg_error("owcsim_link_rate_mbps: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        const owcsim::ScenarioConfig& cfg = sc->rep.scenario;
        *out = owcsim::link_rate_bps(cfg.frontend, cfg.tx_optics, cfg.rx_optics,
                                     channel_at(cfg, distance_m), cfg.ofdm) /
               1e6;
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_mean_snr_db(const owcsim_scenario* sc, double distance_m, double* out) {
    if (!sc || !out)
        return arg_error("owcsim_mean_snr_db: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        const owcsim::ScenarioConfig& cfg = sc->rep.scenario;
        *out = owcsim::link_eval(cfg.frontend, cfg.tx_optics, cfg.rx_optics,
                                 channel_at(cfg, distance_m), cfg.ofdm)
                   .profile.mean_db();
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_owc_link_up(const owcsim_scenario* sc, double distance_m, int* out) {
    if (!sc || !out)
        return arg_error("owcsim_owc_link_up: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        const owcsim::ScenarioConfig& cfg = sc->rep.scenario;
        *out = owcsim::owc_link_up(cfg.frontend, cfg.tx_optics, cfg.rx_optics,
                                   channel_at(cfg, distance_m), cfg.ofdm)
                   ? 1
                   : 0;
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_mmwave_cinr_db(const owcsim_scenario* sc, double distance_m,
                                    int glass_present, double* out) {
    if (!sc || !out)
        return arg_error("owcsim_mmwave_cinr_db: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        *out = owcsim::cinr_db(sc->rep.scenario.mmwave, distance_m, glass_present != 0);
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_mmwave_link_up(const owcsim_scenario* sc, double cinr_db, int* out) {
    if (!sc || !out)
        return arg_error("owcsim_mmwave_link_up: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        *out = owcsim::mmwave_link_up(cinr_db, sc->rep.scenario.mmwave) ? 1 : 0;
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_spot_diameter_m(const owcsim_scenario* sc, double distance_m, double* out) {
    if (!sc || !out)
        return arg_error("owcsim_spot_diameter_m: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        *out = owcsim::spot_diameter_m(distance_m,
                                       sc->rep.scenario.tx_optics.divergence_half_angle_deg);
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_targets_parse(const char* text, owcsim_targets** out) {
    if (!text || !out)
        return arg_error("owcsim_targets_parse: null argument");
    return guarded(OWCSIM_ERR_PARSE, [&] {
        auto t = std::make_unique<owcsim_targets>();
        t->rep = owcsim::parse_targets(text);
        *out = t.release();
        return OWCSIM_OK;
    });
}

owcsim_status owcsim_targets_load(const char* path, owcsim_targets** out) {
    if (!path || !out)
        return arg_error("owcsim_targets_load: null argument");
    return guarded(OWCSIM_ERR_PARSE, [&] {
        auto t = std::make_unique<owcsim_targets>();
        t->rep = owcsim::load_targets(path);
        *out = t.release();
        return OWCSIM_OK;
    });
}

size_t owcsim_targets_count(const owcsim_targets* targets) {
    return targets ? targets->rep.size() : 0;
}

void owcsim_targets_free(owcsim_targets* targets) {
    delete targets;
}

owcsim_status owcsim_calibrate(owcsim_scenario* sc, const owcsim_targets* targets,
                               owcsim_fit_report* report) {
    if (!sc || !targets)
        return arg_error("owcsim_calibrate: null argument");
    return guarded(OWCSIM_ERR_MODEL, [&] {
        const owcsim::CalibrationResult result =
            owcsim::fit(sc->rep.scenario, sc->rep.space, targets->rep);
        sc->rep.scenario.frontend = result.params;
        sc->rep.scenario.ofdm.snr_gap_db = result.snr_gap_db;
        if (report) {
            report->tx_power_w = result.params.tx_optical_power_w;
            report->noise_density = result.params.thermal_noise_density;
            report->rolloff_mhz = result.params.led_rolloff_freq_mhz;
            report->snr_gap_db = result.snr_gap_db;
            report->objective = result.objective;
            report->within_ceiling = result.within_ceiling ? 1 : 0;
            report->descent_iterations = result.descent_iterations;
        }
        if (!result.within_ceiling) {
            g_last_error = "calibration objective " + std::to_string(result.objective) +
                           " exceeds failure ceiling " +
                           std::to_string(sc->rep.space.failure_ceiling);
            return OWCSIM_ERR_CALIBRATION;
        }
        return OWCSIM_OK;
    });
}

void owcsim_string_free(char* text) {
    delete[] text;
}

} // extern "C"
