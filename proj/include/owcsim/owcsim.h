#ifndef OWCSIM_H
#define OWCSIM_H

/*
 * C interface to the owcsim core.  Everything lives behind three opaque
 * handles: a scenario (full parameter set plus run specs), a record table
 * (the output of a run), and a target list (measured operating points for
 * calibration).  Functions return owcsim_status; on any non-OK status a
 * human-readable message is available from owcsim_last_error() until the
 * next call on the same thread.
 *
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with owcsim_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum owcsim_status {
    OWCSIM_OK = 0,
    OWCSIM_ERR_ARGUMENT = 1,    /* null handle / out pointer, bad enum value */
    OWCSIM_ERR_PARSE = 2,       /* config or target text rejected */
    OWCSIM_ERR_IO = 3,          /* file could not be read or written */
    OWCSIM_ERR_MODEL = 4,       /* parameters failed validation or evaluation */
    OWCSIM_ERR_CALIBRATION = 5  /* fit finished above the failure ceiling */
} owcsim_status;

typedef struct owcsim_scenario owcsim_scenario;
typedef struct owcsim_records owcsim_records;
typedef struct owcsim_targets owcsim_targets;

/* Fitted parameters and fit diagnostics from owcsim_calibrate. */
typedef struct owcsim_fit_report {
    double tx_power_w;
    double noise_density;
    double rolloff_mhz;
    double snr_gap_db;
    double objective;       /* sum of squared relative rate errors */
    int within_ceiling;     /* 1 when objective <= configured ceiling */
    int descent_iterations;
} owcsim_fit_report;

const char* owcsim_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* owcsim_last_error(void);

/* --- scenario lifecycle ------------------------------------------------ */

/* Built-in defaults (the calibrated 200 MHz link).  Never fails short of
 * allocation failure, which aborts. */
owcsim_scenario* owcsim_scenario_default(void);

owcsim_status owcsim_scenario_parse(const char* text, owcsim_scenario** out);
owcsim_status owcsim_scenario_load(const char* path, owcsim_scenario** out);
owcsim_status owcsim_scenario_save(const owcsim_scenario* sc, const char* path);
owcsim_status owcsim_scenario_serialize(const owcsim_scenario* sc, char** out_text);
void owcsim_scenario_free(owcsim_scenario* sc);

owcsim_status owcsim_scenario_set_seed(owcsim_scenario* sc, uint64_t seed);
owcsim_status owcsim_scenario_set_distance(owcsim_scenario* sc, double distance_m);
/* Replace the baseline glass list with `pane_count` default coated panes. */
owcsim_status owcsim_scenario_set_glass(owcsim_scenario* sc, int pane_count);

/* --- runs --------------------------------------------------------------- */

owcsim_status owcsim_run_sweep(const owcsim_scenario* sc, owcsim_records** out);
owcsim_status owcsim_run_timeline(const owcsim_scenario* sc, owcsim_records** out);
owcsim_status owcsim_run_availability(const owcsim_scenario* sc, owcsim_records** out);

/* --- record tables ------------------------------------------------------ */

size_t owcsim_records_rows(const owcsim_records* rec);
size_t owcsim_records_columns(const owcsim_records* rec);
owcsim_status owcsim_records_column_name(const owcsim_records* rec, size_t column,
                                         const char** out_name);
owcsim_status owcsim_records_cell(const owcsim_records* rec, size_t row, size_t column,
                                  double* out_value);

/* format is "csv" or "json-lines". */
owcsim_status owcsim_records_render(const owcsim_records* rec, const char* format,
                                    char** out_text);
/* destination "-" writes to stdout; files are written whole-or-not-at-all. */
owcsim_status owcsim_records_emit(const owcsim_records* rec, const char* format,
                                  const char* destination);
void owcsim_records_free(owcsim_records* rec);

/* --- point evaluations --------------------------------------------------- */

owcsim_status owcsim_link_rate_mbps(const owcsim_scenario* sc, double distance_m, double* out);
owcsim_status owcsim_mean_snr_db(const owcsim_scenario* sc, double distance_m, double* out);
owcsim_status owcsim_owc_link_up(const owcsim_scenario* sc, double distance_m, int* out);
owcsim_status owcsim_mmwave_cinr_db(const owcsim_scenario* sc, double distance_m,
                                    int glass_present, double* out);
owcsim_status owcsim_mmwave_link_up(const owcsim_scenario* sc, double cinr_db, int* out);
owcsim_status owcsim_spot_diameter_m(const owcsim_scenario* sc, double distance_m, double* out);

/* --- calibration --------------------------------------------------------- */

owcsim_status owcsim_targets_parse(const char* text, owcsim_targets** out);
owcsim_status owcsim_targets_load(const char* path, owcsim_targets** out);
size_t owcsim_targets_count(const owcsim_targets* targets);
void owcsim_targets_free(owcsim_targets* targets);

/* Fit tx power, noise density, rolloff frequency, and SNR gap against the
 * targets, using the scenario's calibration search space.  The fitted values
 * are written back into the scenario (and into *report when non-null) even
 * when the fit lands above the ceiling; that case returns
 * OWCSIM_ERR_CALIBRATION. */
owcsim_status owcsim_calibrate(owcsim_scenario* sc, const owcsim_targets* targets,
                               owcsim_fit_report* report);

void owcsim_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* OWCSIM_H */
