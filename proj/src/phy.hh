#ifndef OWCSIM_PHY_HH
#define OWCSIM_PHY_HH

// DCO-OFDM PHY abstraction: received optical power -> per-carrier electrical
// SNR -> gap-approximation bit loading -> gross rate.  Signal on carrier k is
// (responsivity * p_rx * |H(f_k)| / n_carriers)^2 — the photocurrent swing is
// shared across carriers — against thermal + shot noise per carrier-width.
// |H| is a Butterworth-style low-pass of configurable order: the equalized
// LED driver chain is flat until the equalizer runs out of gain, then falls
// steeply; order 1 is the classic single-pole LED response.  The 3 dB point
// is f0 for every order.

#include <cstdint>
#include <vector>

#include "channel.hh"
#include "optics.hh"
#include "quantities.hh"

namespace owcsim {

// Elementary charge, for the shot-noise term 2 q R P.
inline constexpr double elementary_charge = 1.602176634e-19;

// Finite stand-in for "no signal".
inline constexpr double snr_floor_db = -60.0;

struct FrontendParams {
    double tx_optical_power_w = 2.3;       // calibrated
    double wavelength_nm = 820.0;          // informational
    double responsivity_a_per_w = 0.55;    // lumped with tx power in the fit
    double led_rolloff_freq_mhz = 118.0;   // 3 dB frequency, calibrated
    int led_rolloff_order = 16;            // band-edge steepness, 1 = single pole
    double thermal_noise_density = 3.2e-19; // A^2/Hz input-referred, calibrated
    bool include_shot_noise = true;
};

struct OfdmConfig {
    double bandwidth_mhz = 200.0;
    int n_carriers = 1024;
    int max_bits_per_carrier = 12;
    double snr_gap_db = 3.0; // calibrated
    double overhead_efficiency = 5.0 / 6.0;
    double tdd_duty = 1.0;

    double carrier_spacing_hz() const { return bandwidth_mhz * 1e6 / n_carriers; }
};

struct SnrProfile {
    std::vector<double> snr_db; // electrical, one per carrier
    double carrier_spacing_hz = 0.0;

    double mean_db() const;
};

struct BitTable {
    std::vector<int> bits;

    long total() const;
};

void validate(const FrontendParams& fe);
void validate(const OfdmConfig& cfg);

// tx_power scaled down by the loss; nullopt loss (link dark) -> 0 W.
Power received_optical_power(const FrontendParams& fe, std::optional<DecibelOptical> total_loss);

SnrProfile carrier_snr_profile(Power p_rx, const FrontendParams& fe, const OfdmConfig& cfg);

// clamp(floor(log2(1 + 10^((snr-gap)/10))), 0, max_bits)
int bits_per_carrier(double snr_db, const OfdmConfig& cfg);

// Lowest SNR (dB) that still loads `bits`: gap + 10 log10(2^bits - 1).
double loading_threshold_db(int bits, const OfdmConfig& cfg);

struct RateResult {
    double rate_bps = 0.0;
    BitTable table;
};

// overhead * tdd * carrier_spacing * sum(bits)
RateResult gross_rate(const SnrProfile& profile, const OfdmConfig& cfg);

struct LinkEval {
    double rate_bps = 0.0;
    SnrProfile profile;
    bool dark = false;
};

// Full composition: losses -> received power -> SNR profile -> gross rate.
LinkEval link_eval(const FrontendParams& fe, const TxOptics& tx, const RxOptics& rx,
                   const ChannelState& channel, const OfdmConfig& cfg, Rng* rng = nullptr);

inline double link_rate_bps(const FrontendParams& fe, const TxOptics& tx, const RxOptics& rx,
                            const ChannelState& channel, const OfdmConfig& cfg,
                            Rng* rng = nullptr) {
    return link_eval(fe, tx, rx, channel, cfg, rng).rate_bps;
}

} // namespace owcsim

#endif
