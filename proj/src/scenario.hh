#ifndef OWCSIM_SCENARIO_HH
#define OWCSIM_SCENARIO_HH

// Scenario-level engine: one config object holding every module's parameters,
// a distance sweep, an event-driven timeline (the glass-insertion demo), and
// seeded Monte Carlo availability over a weather table.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adapt.hh"
#include "channel.hh"
#include "mmwave.hh"
#include "phy.hh"

namespace owcsim {

struct TimelineEvent {
    enum class Kind { insert_glass, remove_glass, set_atmosphere, set_offset };

    double time_ms = 0.0;
    Kind kind = Kind::insert_glass;
    std::vector<GlassPane> panes; // insert_glass payload
    double value = 0.0;           // set_atmosphere / set_offset payload
};

struct SweepSpec {
    double start_m = 10.0;
    double stop_m = 200.0;
    double step_m = 1.0;
};

struct AvailabilitySpec {
    WeatherDistribution weather;
    std::uint64_t samples = 1000000;
};

struct ScenarioConfig {
    FrontendParams frontend;
    TxOptics tx_optics;
    RxOptics rx_optics;
    OfdmConfig ofdm;
    AdaptationConfig adaptation;
    MmWaveParams mmwave;
    ChannelState channel; // baseline; geometry.distance_m doubles as the demo distance
    std::vector<TimelineEvent> timeline;
    std::optional<double> timeline_duration_ms; // default: last event + 5 periods
    SweepSpec sweep;
    std::optional<AvailabilitySpec> availability;
    std::uint64_t seed = 1;
};

void validate(const ScenarioConfig& cfg);

struct SweepRecord {
    double distance_m = 0.0;
    double rate_mbps = 0.0;
    double mean_snr_db = 0.0;
};

struct StepRecord {
    double time_ms = 0.0;
    double owc_rate_mbps = 0.0;
    double owc_mean_snr_db = 0.0;
    bool owc_link_up = false;
    double mmwave_cinr_db = 0.0;
    bool mmwave_link_up = false;
};

struct AvailabilityResult {
    std::uint64_t samples = 0;
    std::uint64_t up_count = 0;
    double availability = 0.0;
};

std::vector<SweepRecord> run_sweep(const ScenarioConfig& cfg);
std::vector<StepRecord> run_timeline(const ScenarioConfig& cfg);
AvailabilityResult run_availability(const ScenarioConfig& cfg);

// True iff any carrier loads >= 1 bit.  The profile is non-increasing in
// frequency, so only the lowest carrier needs evaluating; threshold(1) is
// exactly the gap.
bool owc_link_up(const FrontendParams& fe, const TxOptics& tx, const RxOptics& rx,
                 const ChannelState& state, const OfdmConfig& cfg);

} // namespace owcsim

#endif
