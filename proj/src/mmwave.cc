#include "mmwave.hh"

#include <cmath>
#include <numbers>

namespace owcsim {

namespace {

constexpr double speed_of_light = 299792458.0; // m/s
constexpr double boltzmann = 1.380649e-23;     // J/K

// kT at the 290 K reference temperature, in dBm/Hz (~ -173.98).
const double thermal_noise_dbm_per_hz = 10.0 * std::log10(boltzmann * 290.0 * 1e3);

} // namespace

void validate(const MmWaveParams& params) {
    if (!(params.carrier_freq_ghz > 0.0))
        throw model_error("mmwave: carrier_freq_ghz must be > 0");
    if (!(params.bandwidth_mhz > 0.0))
        throw model_error("mmwave: bandwidth_mhz must be > 0");
    if (!(params.glass_penetration_loss_db >= 0.0))
        throw model_error("mmwave: glass_penetration_loss_db must be >= 0");
    if (!std::isfinite(params.eirp_dbm) || !std::isfinite(params.rx_antenna_gain_dbi) ||
        !std::isfinite(params.noise_figure_db) || !std::isfinite(params.cinr_up_threshold_db))
        throw model_error("mmwave: budget terms must be finite");
}

double fspl_db(double freq_ghz, double distance_m) {
    if (!(freq_ghz > 0.0))
        throw model_error("fspl: freq must be > 0");
    if (!(distance_m > 0.0))
        throw model_error("fspl: distance must be > 0");
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * freq_ghz * 1e9 / speed_of_light);
}

double cinr_db(const MmWaveParams& params, double distance_m, bool glass_present) {
    validate(params);
    const double rx_dbm = params.eirp_dbm + params.rx_antenna_gain_dbi -
                          fspl_db(params.carrier_freq_ghz, distance_m) -
                          (glass_present ? params.glass_penetration_loss_db : 0.0);
    const double noise_dbm = thermal_noise_dbm_per_hz +
                             10.0 * std::log10(params.bandwidth_mhz * 1e6) +
                             params.noise_figure_db;
    // Interference adds in linear power; the default floor is -inf (absent).
    double denom_dbm = noise_dbm;
    if (std::isfinite(params.interference_floor_dbm))
        denom_dbm = 10.0 * std::log10(std::pow(10.0, noise_dbm / 10.0) +
                                      std::pow(10.0, params.interference_floor_dbm / 10.0));
    return std::max(rx_dbm - denom_dbm, 0.0);
}

bool mmwave_link_up(double cinr_db_value, const MmWaveParams& params) {
    return cinr_db_value >= params.cinr_up_threshold_db;
}

} // namespace owcsim
