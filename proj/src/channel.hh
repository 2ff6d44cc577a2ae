#ifndef OWCSIM_CHANNEL_HH
#define OWCSIM_CHANNEL_HH

// Optical-domain losses between transmitter and receiver: distance-scaled
// atmospheric attenuation (optionally with log-normal scintillation), glass
// panes as fixed dB losses, and a discrete weather table for availability
// sampling.  Everything composes additively in optical dB; a dark geometry
// propagates as nullopt.

#include <optional>
#include <string>
#include <vector>

#include "optics.hh"
#include "quantities.hh"
#include "rng.hh"

namespace owcsim {

struct GlassPane {
    std::string label = "coated double pane";
    DecibelOptical transmittance_db{6.5}; // loss, >= 0; 6.5 dB optical = 13 dB electrical
};

struct AtmosphereModel {
    double attenuation_db_per_km = 0.0;  // optical dB per km
    double scintillation_sigma_db = 0.0; // std-dev of a zero-mean dB term, 0 = off
};

struct WeatherBin {
    double attenuation_db_per_km = 0.0;
    double probability = 0.0;
};

struct WeatherDistribution {
    std::vector<WeatherBin> bins;
};

struct ChannelState {
    AtmosphereModel atmosphere;
    std::vector<GlassPane> panes;
    LinkGeometry geometry;
};

void validate(const GlassPane& pane);
void validate(const AtmosphereModel& model);
void validate(const WeatherDistribution& dist);
void validate(const ChannelState& state);

// attenuation_db_per_km * distance/1000 (+ Gaussian dB scintillation when
// sigma > 0 and an rng is supplied).
DecibelOptical atmospheric_loss_db(double distance_m, const AtmosphereModel& model,
                                   Rng* rng = nullptr);

// Sum of pane losses (empty list = 0 dB).
DecibelOptical glass_loss_db(const std::vector<GlassPane>& panes);

// geometric + atmospheric + glass; nullopt = link dark.
std::optional<DecibelOptical> total_loss_db(const TxOptics& tx, const RxOptics& rx,
                                            const ChannelState& state, Rng* rng = nullptr);

// One attenuation draw by inverse CDF over the (normalized) table.
AtmosphereModel sample_weather(const WeatherDistribution& dist, Rng& rng);

} // namespace owcsim

#endif
