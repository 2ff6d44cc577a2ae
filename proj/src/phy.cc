#include "phy.hh"

#include <algorithm>
#include <cmath>

namespace owcsim {

namespace {

// Guards the exact-threshold cases (10^((snr-gap)/10) = 15 must load
// exactly 4 bits) against floating-point shortfall in log2.
constexpr double loading_epsilon = 1e-9;

} // namespace

double SnrProfile::mean_db() const {
    if (snr_db.empty())
        return snr_floor_db;
    double sum = 0.0;
    for (double v : snr_db)
        sum += v;
    return sum / static_cast<double>(snr_db.size());
}

long BitTable::total() const {
    long sum = 0;
    for (int b : bits)
        sum += b;
    return sum;
}

void validate(const FrontendParams& fe) {
    if (!(fe.tx_optical_power_w > 0.0))
        throw model_error("frontend: tx_optical_power_w must be > 0");
    if (!(fe.wavelength_nm > 0.0))
        throw model_error("frontend: wavelength_nm must be > 0");
    if (!(fe.responsivity_a_per_w > 0.0) || !(fe.responsivity_a_per_w <= 1.0))
        throw model_error("frontend: responsivity_a_per_w must lie in (0, 1]");
    if (!(fe.led_rolloff_freq_mhz > 0.0))
        throw model_error("frontend: led_rolloff_freq_mhz must be > 0");
    if (fe.led_rolloff_order < 1 || fe.led_rolloff_order > 32)
        throw model_error("frontend: led_rolloff_order must lie in [1, 32]");
    if (!(fe.thermal_noise_density > 0.0))
        throw model_error("frontend: thermal_noise_density must be > 0");
}

void validate(const OfdmConfig& cfg) {
    if (!(cfg.bandwidth_mhz > 0.0))
        throw model_error("ofdm: bandwidth_mhz must be > 0");
    if (cfg.n_carriers < 1)
        throw model_error("ofdm: n_carriers must be >= 1");
    if (cfg.max_bits_per_carrier < 1 || cfg.max_bits_per_carrier > 15)
        throw model_error("ofdm: max_bits_per_carrier must lie in [1, 15]");
    if (!std::isfinite(cfg.snr_gap_db) || !(cfg.snr_gap_db >= 0.0))
        throw model_error("ofdm: snr_gap_db must be finite and >= 0");
    if (!(cfg.overhead_efficiency > 0.0) || !(cfg.overhead_efficiency <= 1.0))
        throw model_error("ofdm: overhead_efficiency must lie in (0, 1]");
    if (!(cfg.tdd_duty > 0.0) || !(cfg.tdd_duty <= 1.0))
        throw model_error("ofdm: tdd_duty must lie in (0, 1]");
}

Power received_optical_power(const FrontendParams& fe, std::optional<DecibelOptical> total_loss) {
    validate(fe);
    if (!total_loss)
        return Power(0.0, PowerDomain::optical);
    if (!std::isfinite(total_loss->value))
        throw model_error("received_optical_power: loss must be finite");
    return Power(fe.tx_optical_power_w, PowerDomain::optical).attenuated(*total_loss);
}

SnrProfile carrier_snr_profile(Power p_rx, const FrontendParams& fe, const OfdmConfig& cfg) {
    validate(fe);
    validate(cfg);
    if (p_rx.domain != PowerDomain::optical)
        throw model_error("carrier_snr_profile: received power must be optical");

    const int n = cfg.n_carriers;
    SnrProfile profile;
    profile.carrier_spacing_hz = cfg.carrier_spacing_hz();
    profile.snr_db.assign(static_cast<size_t>(n), snr_floor_db);
    if (p_rx.watts <= 0.0)
        return profile; // no signal: every carrier at the floor

    const double photocurrent = fe.responsivity_a_per_w * p_rx.watts;
    const double amp = photocurrent / static_cast<double>(n);
    const double f0_hz = fe.led_rolloff_freq_mhz * 1e6;
    const double noise = (fe.thermal_noise_density +
                          (fe.include_shot_noise ? 2.0 * elementary_charge * photocurrent : 0.0)) *
                         profile.carrier_spacing_hz;
    const int order2 = 2 * fe.led_rolloff_order;

    for (int k = 0; k < n; ++k) {
        const double fk = (k + 0.5) * profile.carrier_spacing_hz;
        const double h2 = 1.0 / (1.0 + std::pow(fk / f0_hz, order2));
        const double signal = amp * amp * h2;
        profile.snr_db[static_cast<size_t>(k)] =
            std::max(10.0 * std::log10(signal / noise), snr_floor_db);
    }
    return profile;
}

int bits_per_carrier(double snr_db, const OfdmConfig& cfg) {
    if (!std::isfinite(snr_db))
        throw model_error("bits_per_carrier: snr must be finite (use the floor value)");
    const double lin = std::pow(10.0, (snr_db - cfg.snr_gap_db) / 10.0);
    const double raw = std::floor(std::log2(1.0 + lin) + loading_epsilon);
    if (raw <= 0.0)
        return 0;
    return std::min(static_cast<int>(raw), cfg.max_bits_per_carrier);
}

double loading_threshold_db(int bits, const OfdmConfig& cfg) {
    if (bits < 1)
        throw model_error("loading_threshold: bits must be >= 1");
    return cfg.snr_gap_db + 10.0 * std::log10(std::pow(2.0, bits) - 1.0);
}

RateResult gross_rate(const SnrProfile& profile, const OfdmConfig& cfg) {
    validate(cfg);
    if (static_cast<int>(profile.snr_db.size()) != cfg.n_carriers)
        throw model_error("gross_rate: profile length does not match n_carriers");
    RateResult out;
    out.table.bits.reserve(profile.snr_db.size());
    for (double snr : profile.snr_db)
        out.table.bits.push_back(bits_per_carrier(snr, cfg));
    out.rate_bps = cfg.overhead_efficiency * cfg.tdd_duty * profile.carrier_spacing_hz *
                   static_cast<double>(out.table.total());
    return out;
}

LinkEval link_eval(const FrontendParams& fe, const TxOptics& tx, const RxOptics& rx,
                   const ChannelState& channel, const OfdmConfig& cfg, Rng* rng) {
    LinkEval eval;
    const auto loss = total_loss_db(tx, rx, channel, rng);
    eval.dark = !loss.has_value();
    const Power p_rx = received_optical_power(fe, loss);
    eval.profile = carrier_snr_profile(p_rx, fe, cfg);
    eval.rate_bps = gross_rate(eval.profile, cfg).rate_bps;
    return eval;
}

} // namespace owcsim
