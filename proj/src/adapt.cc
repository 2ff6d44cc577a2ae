#include "adapt.hh"

#include <cmath>

namespace owcsim {

void validate(const AdaptationConfig& acfg) {
    if (!(acfg.measurement_period_ms > 0.0))
        throw model_error("adaptation: measurement_period_ms must be > 0");
    if (!(acfg.hysteresis_db >= 0.0) || !std::isfinite(acfg.hysteresis_db))
        throw model_error("adaptation: hysteresis_db must be finite and >= 0");
    if (!(acfg.down_margin_db >= 0.0) || !std::isfinite(acfg.down_margin_db))
        throw model_error("adaptation: down_margin_db must be finite and >= 0");
}

int hysteresis_band(int old_bits, double snr_db, const OfdmConfig& cfg,
                    const AdaptationConfig& acfg) {
    if (old_bits < 0 || old_bits > cfg.max_bits_per_carrier)
        throw model_error("hysteresis_band: old_bits out of range");
    const int supported = bits_per_carrier(snr_db - acfg.down_margin_db, cfg);
    if (supported < old_bits)
        return supported; // immediate downgrade
    const int up_target = bits_per_carrier(snr_db - acfg.hysteresis_db, cfg);
    if (up_target > old_bits)
        return up_target;
    return old_bits;
}

AdaptationState initial_state(const SnrProfile& first, const OfdmConfig& cfg) {
    AdaptationState state;
    const RateResult loaded = gross_rate(first, cfg);
    state.current_table = loaded.table;
    state.current_rate_bps = loaded.rate_bps;
    state.last_profile = first;
    state.link_up = loaded.table.total() >= 1;
    return state;
}

AdaptationState adapt_step(const AdaptationState& state, const SnrProfile& measured,
                           const OfdmConfig& cfg, const AdaptationConfig& acfg) {
    validate(cfg);
    validate(acfg);
    if (measured.snr_db.size() != state.current_table.bits.size() ||
        static_cast<int>(measured.snr_db.size()) != cfg.n_carriers)
        throw model_error("adapt_step: profile length does not match configuration");

    AdaptationState next;
    next.current_table.bits.reserve(measured.snr_db.size());
    for (size_t k = 0; k < measured.snr_db.size(); ++k)
        next.current_table.bits.push_back(
            hysteresis_band(state.current_table.bits[k], measured.snr_db[k], cfg, acfg));
    next.current_rate_bps = cfg.overhead_efficiency * cfg.tdd_duty * measured.carrier_spacing_hz *
                            static_cast<double>(next.current_table.total());
    next.last_profile = measured;
    next.link_up = next.current_table.total() >= 1;
    return next;
}

} // namespace owcsim
