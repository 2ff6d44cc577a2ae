#ifndef OWCSIM_MMWAVE_HH
#define OWCSIM_MMWAVE_HH

// The 60 GHz comparison link: Friis budget to a scalar CINR and a binary
// link-up verdict.  The radio's parameters are a calibrated lump — individual
// gains are not separable from a measured CINR; metal-coated insulation glass
// adds a penetration loss large enough to deplete the margin entirely.

#include <limits>

#include "quantities.hh"

namespace owcsim {

struct MmWaveParams {
    double carrier_freq_ghz = 60.0;
    double eirp_dbm = 41.0;          // lump set for 27 dB CINR at the demo distance
    double rx_antenna_gain_dbi = 15.0;
    double noise_figure_db = 8.0;
    double bandwidth_mhz = 500.0;
    double interference_floor_dbm = -std::numeric_limits<double>::infinity();
    double glass_penetration_loss_db = 30.0;
    double cinr_up_threshold_db = 5.0;
};

void validate(const MmWaveParams& params);

// 20 log10(4 pi d f / c)
double fspl_db(double freq_ghz, double distance_m);

// Friis budget minus kTB+NF (plus any interference floor), clamped at 0 dB
// to mirror the instrument's reporting floor.
double cinr_db(const MmWaveParams& params, double distance_m, bool glass_present);

// Inclusive threshold: exactly at the threshold counts as up.
bool mmwave_link_up(double cinr_db_value, const MmWaveParams& params);

} // namespace owcsim

#endif
