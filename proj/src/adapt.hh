#ifndef OWCSIM_ADAPT_HH
#define OWCSIM_ADAPT_HH

// Closed-loop rate adaptation: re-load bits from each measured SNR profile.
// Downgrades are immediate (the link runs without margin); upgrades must
// clear the loading threshold plus a hysteresis band so a noisy SNR cannot
// flap the table.  The link counts as up while any carrier loads a bit.

#include "phy.hh"

namespace owcsim {

struct AdaptationConfig {
    double measurement_period_ms = 100.0;
    double hysteresis_db = 1.0;
    double down_margin_db = 0.0; // 0 = step down exactly at the threshold, no reserve
};

struct AdaptationState {
    BitTable current_table;
    double current_rate_bps = 0.0;
    SnrProfile last_profile;
    bool link_up = false;
};

void validate(const AdaptationConfig& acfg);

// Target loading for one carrier: step down as soon as the margin-adjusted
// SNR stops supporting the old bits; step up only past threshold+hysteresis.
int hysteresis_band(int old_bits, double snr_db, const OfdmConfig& cfg,
                    const AdaptationConfig& acfg);

// Fresh state from the first measured profile (plain stateless loading).
AdaptationState initial_state(const SnrProfile& first, const OfdmConfig& cfg);

AdaptationState adapt_step(const AdaptationState& state, const SnrProfile& measured,
                           const OfdmConfig& cfg, const AdaptationConfig& acfg);

} // namespace owcsim

#endif
