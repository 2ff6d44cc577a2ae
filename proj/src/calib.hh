#ifndef OWCSIM_CALIB_HH
#define OWCSIM_CALIB_HH

// Fit the hardware parameters no datasheet pins down (tx power, noise
// density, rolloff frequency, SNR gap) so the simulator reproduces measured
// operating points.  Derivative-free by necessity: integer bit loading makes
// the objective piecewise-constant, so a coarse grid locates the basins and
// a multi-start pattern search with halving steps (followed by zoomed
// re-grids) polishes them.  Deterministic: fixed orders, no randomness.

#include <vector>

#include "scenario.hh"

namespace owcsim {

struct CalibrationTarget {
    double distance_m = 0.0;
    double expected_rate_mbps = 0.0;
    bool glass = false; // measured through the default coated double pane
};

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    int resolution = 9; // grid points on this axis
    bool log_scale = false;
};

struct CalibrationSpace {
    AxisRange tx_power_w{0.1, 5.0, 9, true};
    AxisRange noise_density{1e-22, 1e-18, 9, true};
    AxisRange rolloff_mhz{30.0, 300.0, 9, false};
    AxisRange gap_db{3.0, 12.0, 9, false};
    double failure_ceiling = 0.01; // objective above this reports failure
};

struct CalibrationResult {
    FrontendParams params;
    double snr_gap_db = 0.0;
    std::vector<double> residuals; // signed relative error per target
    double objective = 0.0;        // sum of squared residuals
    bool within_ceiling = false;
    int descent_iterations = 0;
};

void validate(const CalibrationSpace& space);
void validate(const std::vector<CalibrationTarget>& targets);

// Sum of squared relative rate errors over the targets.  Targets are
// evaluated under calibration conditions: clear atmosphere, no offset, and
// exactly one default pane when the glass flag is set.
double calibration_objective(const ScenarioConfig& base, const FrontendParams& fe,
                             double snr_gap_db, const std::vector<CalibrationTarget>& targets);

CalibrationResult fit(const ScenarioConfig& base, const CalibrationSpace& space,
                      const std::vector<CalibrationTarget>& targets);

// Model rate (Mbit/s) through the default coated pane at the demo distance,
// using the fitted parameters.
double validate_glass_point(const ScenarioConfig& base, const CalibrationResult& result,
                            double demo_distance_m);

} // namespace owcsim

#endif
