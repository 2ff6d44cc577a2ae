#include "scenario.hh"

#include <algorithm>
#include <cmath>

namespace owcsim {

void validate(const ScenarioConfig& cfg) {
    validate(cfg.frontend);
    validate(cfg.tx_optics);
    validate(cfg.rx_optics);
    validate(cfg.ofdm);
    validate(cfg.adaptation);
    validate(cfg.mmwave);
    validate(cfg.channel);
    for (size_t i = 1; i < cfg.timeline.size(); ++i)
        if (cfg.timeline[i].time_ms < cfg.timeline[i - 1].time_ms)
            throw model_error("timeline: events must be sorted by time_ms");
    for (const auto& ev : cfg.timeline) {
        if (!(ev.time_ms >= 0.0))
            throw model_error("timeline: event time_ms must be >= 0");
        if (ev.kind == TimelineEvent::Kind::insert_glass)
            for (const auto& pane : ev.panes)
                validate(pane);
        if (ev.kind == TimelineEvent::Kind::set_atmosphere && !(ev.value >= 0.0))
            throw model_error("timeline: set_atmosphere value must be >= 0");
        if (ev.kind == TimelineEvent::Kind::set_offset && !(ev.value >= 0.0))
            throw model_error("timeline: set_offset value must be >= 0");
    }
    if (cfg.timeline_duration_ms && !(*cfg.timeline_duration_ms > 0.0))
        throw model_error("timeline: duration_ms must be > 0");
    if (!(cfg.sweep.step_m > 0.0))
        throw model_error("sweep: step_m must be > 0");
    if (!(cfg.sweep.start_m > 0.0))
        throw model_error("sweep: start_m must be > 0");
    if (!(cfg.sweep.stop_m >= cfg.sweep.start_m))
        throw model_error("sweep: stop_m must be >= start_m");
    if (cfg.availability) {
        validate(cfg.availability->weather);
        if (cfg.availability->samples < 1)
            throw model_error("weather: samples must be >= 1");
    }
}

std::vector<SweepRecord> run_sweep(const ScenarioConfig& cfg) {
    validate(cfg);
    std::vector<SweepRecord> out;
    std::uint64_t index = 0;
    for (double d = cfg.sweep.start_m; d <= cfg.sweep.stop_m + 1e-9; d += cfg.sweep.step_m) {
        ChannelState state = cfg.channel;
        state.geometry.distance_m = d;
        Rng rng = substream(cfg.seed, index++);
        Rng* rng_ptr = state.atmosphere.scintillation_sigma_db > 0.0 ? &rng : nullptr;
        const LinkEval eval = link_eval(cfg.frontend, cfg.tx_optics, cfg.rx_optics, state,
                                        cfg.ofdm, rng_ptr);
        out.push_back({d, eval.rate_bps / 1e6, eval.profile.mean_db()});
    }
    return out;
}

namespace {

// Timeline events mutate a working channel state; inserted panes stack on
// top of the baseline, and remove_glass restores the baseline pane list.
void apply_event(const TimelineEvent& ev, const ScenarioConfig& cfg, ChannelState& state) {
    switch (ev.kind) {
    case TimelineEvent::Kind::insert_glass:
        if (ev.panes.empty())
            state.panes.push_back(GlassPane{});
        else
            state.panes.insert(state.panes.end(), ev.panes.begin(), ev.panes.end());
        break;
    case TimelineEvent::Kind::remove_glass:
        state.panes = cfg.channel.panes;
        break;
    case TimelineEvent::Kind::set_atmosphere:
        state.atmosphere.attenuation_db_per_km = ev.value;
        break;
    case TimelineEvent::Kind::set_offset:
        state.geometry.lateral_offset_m = ev.value;
        break;
    }
}

} // namespace

std::vector<StepRecord> run_timeline(const ScenarioConfig& cfg) {
    validate(cfg);
    const double period = cfg.adaptation.measurement_period_ms;
    double duration = cfg.timeline_duration_ms.value_or(
        (cfg.timeline.empty() ? 10.0 * period : cfg.timeline.back().time_ms + 5.0 * period));

    std::vector<StepRecord> out;
    ChannelState state = cfg.channel;
    size_t next_event = 0;
    AdaptationState adapt;
    bool first = true;
    std::uint64_t step_index = 0;

    for (double t = 0.0; t <= duration + 1e-9; t += period, ++step_index) {
        while (next_event < cfg.timeline.size() && cfg.timeline[next_event].time_ms <= t + 1e-9)
            apply_event(cfg.timeline[next_event++], cfg, state);

        Rng rng = substream(cfg.seed, step_index);
        Rng* rng_ptr = state.atmosphere.scintillation_sigma_db > 0.0 ? &rng : nullptr;
        const LinkEval eval = link_eval(cfg.frontend, cfg.tx_optics, cfg.rx_optics, state,
                                        cfg.ofdm, rng_ptr);
        if (first) {
            adapt = initial_state(eval.profile, cfg.ofdm);
            first = false;
        } else {
            adapt = adapt_step(adapt, eval.profile, cfg.ofdm, cfg.adaptation);
        }

        const bool glass_present = !state.panes.empty();
        const double cinr = cinr_db(cfg.mmwave, state.geometry.distance_m, glass_present);

        out.push_back({t, adapt.current_rate_bps / 1e6, eval.profile.mean_db(), adapt.link_up,
                       cinr, mmwave_link_up(cinr, cfg.mmwave)});
    }
    return out;
}

bool owc_link_up(const FrontendParams& fe, const TxOptics& tx, const RxOptics& rx,
                 const ChannelState& state, const OfdmConfig& cfg) {
    const auto loss = total_loss_db(tx, rx, state, nullptr);
    const Power p_rx = received_optical_power(fe, loss);
    if (p_rx.watts <= 0.0)
        return false;
    const double photocurrent = fe.responsivity_a_per_w * p_rx.watts;
    const double amp = photocurrent / static_cast<double>(cfg.n_carriers);
    const double spacing = cfg.carrier_spacing_hz();
    const double f0_hz = fe.led_rolloff_freq_mhz * 1e6;
    const double fk = 0.5 * spacing; // lowest carrier: the profile's maximum
    const double h2 = 1.0 / (1.0 + std::pow(fk / f0_hz, 2 * fe.led_rolloff_order));
    const double noise = (fe.thermal_noise_density +
                          (fe.include_shot_noise ? 2.0 * elementary_charge * photocurrent : 0.0)) *
                         spacing;
    const double snr0 = std::max(10.0 * std::log10(amp * amp * h2 / noise), snr_floor_db);
    return bits_per_carrier(snr0, cfg) >= 1;
}

AvailabilityResult run_availability(const ScenarioConfig& cfg) {
    validate(cfg);
    if (!cfg.availability)
        throw model_error("weather: availability run needs a weather section in the config");

    AvailabilityResult result;
    result.samples = cfg.availability->samples;
    ChannelState state = cfg.channel;
    for (std::uint64_t i = 0; i < result.samples; ++i) {
        Rng rng = substream(cfg.seed, i);
        state.atmosphere = sample_weather(cfg.availability->weather, rng);
        if (owc_link_up(cfg.frontend, cfg.tx_optics, cfg.rx_optics, state, cfg.ofdm))
            ++result.up_count;
    }
    result.availability =
        static_cast<double>(result.up_count) / static_cast<double>(result.samples);
    return result;
}

} // namespace owcsim
