#include "channel.hh"

#include <cmath>

namespace owcsim {

void validate(const GlassPane& pane) {
    if (!(pane.transmittance_db.value >= 0.0) || !std::isfinite(pane.transmittance_db.value))
        throw model_error("glass_pane: transmittance_db must be finite and >= 0");
}

void validate(const AtmosphereModel& model) {
    if (!(model.attenuation_db_per_km >= 0.0) || !std::isfinite(model.attenuation_db_per_km))
        throw model_error("atmosphere: attenuation_db_per_km must be finite and >= 0");
    if (!(model.scintillation_sigma_db >= 0.0) || !std::isfinite(model.scintillation_sigma_db))
        throw model_error("atmosphere: scintillation_sigma_db must be finite and >= 0");
}

void validate(const WeatherDistribution& dist) {
    if (dist.bins.empty())
        throw model_error("weather: distribution needs at least one bin");
    double total = 0.0;
    for (const auto& bin : dist.bins) {
        if (!(bin.probability >= 0.0) || !std::isfinite(bin.probability))
            throw model_error("weather: bin probability must be finite and >= 0");
        if (!(bin.attenuation_db_per_km >= 0.0) || !std::isfinite(bin.attenuation_db_per_km))
            throw model_error("weather: bin attenuation_db_per_km must be finite and >= 0");
        total += bin.probability;
    }
    if (!(total > 0.0))
        throw model_error("weather: probabilities must not all be zero");
}

void validate(const ChannelState& state) {
    validate(state.atmosphere);
    for (const auto& pane : state.panes)
        validate(pane);
    validate(state.geometry);
}

DecibelOptical atmospheric_loss_db(double distance_m, const AtmosphereModel& model, Rng* rng) {
    if (!(distance_m > 0.0))
        throw model_error("atmospheric_loss: distance must be > 0");
    validate(model);
    double loss = model.attenuation_db_per_km * distance_m / 1000.0;
    if (model.scintillation_sigma_db > 0.0 && rng != nullptr)
        loss += model.scintillation_sigma_db * rng->gaussian();
    // Scintillation can momentarily brighten the path, but a negative total
    // would mean the atmosphere amplifies light.
    return DecibelOptical{std::max(loss, 0.0)};
}

DecibelOptical glass_loss_db(const std::vector<GlassPane>& panes) {
    DecibelOptical sum{0.0};
    for (const auto& pane : panes) {
        validate(pane);
        sum = sum + pane.transmittance_db;
    }
    return sum;
}

std::optional<DecibelOptical> total_loss_db(const TxOptics& tx, const RxOptics& rx,
                                            const ChannelState& state, Rng* rng) {
    validate(state);
    const auto geo = geometric_loss_db(tx, rx, state.geometry);
    if (!geo)
        return std::nullopt;
    return *geo + atmospheric_loss_db(state.geometry.distance_m, state.atmosphere, rng) +
           glass_loss_db(state.panes);
}

AtmosphereModel sample_weather(const WeatherDistribution& dist, Rng& rng) {
    validate(dist);
    double total = 0.0;
    for (const auto& bin : dist.bins)
        total += bin.probability;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (const auto& bin : dist.bins) {
        acc += bin.probability;
        if (u < acc)
            return AtmosphereModel{bin.attenuation_db_per_km, 0.0};
    }
    return AtmosphereModel{dist.bins.back().attenuation_db_per_km, 0.0};
}

} // namespace owcsim
