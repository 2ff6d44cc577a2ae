// Acceptance gate: every release-blocking behavior in one binary, one
// PASS/FAIL line each, exit code = number of failed criteria.  Usage:
//
//     acceptance <configs-dir>
//
// where <configs-dir> holds default.cfg and targets.cfg (the shipped files).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "owcsim/owcsim.h"

#include "adapt.hh"
#include "calib.hh"
#include "configio.hh"
#include "emit.hh"
#include "optics.hh"
#include "phy.hh"
#include "rng.hh"
#include "scenario.hh"

namespace {

int g_failures = 0;

std::string fmt(double v, int precision = 6) {
    std::ostringstream out;
    out << std::setprecision(precision) << v;
    return out.str();
}

void report(int number, const std::string& label, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label;
    if (!detail.empty())
        std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok)
        ++g_failures;
}

template <typename Body>
void criterion(int number, const std::string& label, Body&& body) {
    try {
        std::string detail;
        const bool ok = body(detail);
        report(number, label, ok, detail);
    } catch (const std::exception& e) {
        report(number, label, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Stateless rate (Mbit/s) at a distance, optionally through default panes.
double rate_mbps_at(const owcsim::ScenarioConfig& cfg, double distance_m, int panes) {
    owcsim::ChannelState state = cfg.channel;
    state.geometry.distance_m = distance_m;
    state.panes.assign(static_cast<size_t>(panes), owcsim::GlassPane{});
    return owcsim::link_rate_bps(cfg.frontend, cfg.tx_optics, cfg.rx_optics, state, cfg.ofdm) / 1e6;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <configs-dir>\n";
        return 2;
    }
    const std::string configs = argv[1];

    owcsim::ConfigBundle bundle;
    std::vector<owcsim::CalibrationTarget> targets;
    try {
        bundle = owcsim::load_config(configs + "/default.cfg");
        targets = owcsim::load_targets(configs + "/targets.cfg");
    } catch (const std::exception& e) {
        std::cerr << "acceptance: cannot load shipped configs: " << e.what() << "\n";
        return 2;
    }
    const owcsim::ScenarioConfig& cfg = bundle.scenario;
    const double demo_distance = cfg.channel.geometry.distance_m;

    // 1 — beam footprint at the reference distance.
    criterion(1, "spot diameter at 100 m is 1.4 m", [&](std::string& detail) {
        const double spot = owcsim::spot_diameter_m(100.0, cfg.tx_optics.divergence_half_angle_deg);
        detail = fmt(spot) + " m from " + fmt(cfg.tx_optics.divergence_half_angle_deg) +
                 " deg half angle";
        // Cross-check through the shared-library surface.
        owcsim_scenario* sc = owcsim_scenario_default();
        double spot_capi = 0.0;
        const bool capi_ok =
            owcsim_spot_diameter_m(sc, 100.0, &spot_capi) == OWCSIM_OK && spot_capi == spot;
        owcsim_scenario_free(sc);
        if (!capi_ok)
            detail += "; C API disagrees with core";
        return spot >= 1.38 && spot <= 1.46 && capi_ok;
    });

    // 2 — calibrate against the measured points, then reproduce them in a sweep.
    criterion(2, "calibrated sweep hits 1500/1400/1100 Mbit/s at 25/50/100 m (±5%)",
              [&](std::string& detail) {
                  const auto fit_start = std::chrono::steady_clock::now();
                  const owcsim::CalibrationResult fit_result =
                      owcsim::fit(cfg, bundle.space, targets);
                  const double fit_time = seconds_since(fit_start);
                  owcsim::ScenarioConfig fitted = cfg;
                  fitted.frontend = fit_result.params;
                  fitted.ofdm.snr_gap_db = fit_result.snr_gap_db;

                  const auto sweep_start = std::chrono::steady_clock::now();
                  const auto records = owcsim::run_sweep(fitted);
                  const double sweep_time = seconds_since(sweep_start);

                  bool ok = fit_time < 60.0 && sweep_time < 1.0;
                  std::string rates;
                  for (const auto& target : targets) {
                      double rate = -1.0;
                      for (const auto& r : records)
                          if (r.distance_m == target.distance_m)
                              rate = r.rate_mbps;
                      const double err = std::fabs(rate - target.expected_rate_mbps) /
                                         target.expected_rate_mbps;
                      if (!(err <= 0.05))
                          ok = false;
                      if (!rates.empty())
                          rates += ", ";
                      rates += fmt(rate, 5) + " @ " + fmt(target.distance_m, 3) + " m (" +
                               fmt(100.0 * err, 2) + "%)";
                  }
                  detail = rates + "; fit " + fmt(fit_time, 3) + " s, sweep " +
                           fmt(sweep_time, 3) + " s";
                  return ok;
              });

    // 3 — glass-insertion demo on the shipped scenario: SNR drop, through-glass
    // rate, link stays up.
    criterion(3, "coated pane drops SNR 13 ± 0.5 dB and leaves ~600 Mbit/s",
              [&](std::string& detail) {
                  const auto steps = owcsim::run_timeline(cfg);
                  // Shipped demo: pane in at 1000 ms, out at 2000 ms, 100 ms steps.
                  size_t before = 0, during = 0;
                  for (size_t i = 0; i < steps.size(); ++i) {
                      if (steps[i].time_ms < 1000.0)
                          before = i;
                      if (steps[i].time_ms < 2000.0)
                          during = i;
                  }
                  const double drop =
                      steps[before].owc_mean_snr_db - steps[during].owc_mean_snr_db;
                  const double glass_rate = steps[during].owc_rate_mbps;
                  bool all_up = true;
                  for (const auto& s : steps)
                      all_up = all_up && s.owc_link_up;
                  detail = "drop " + fmt(drop, 4) + " dB, " + fmt(glass_rate, 5) +
                           " Mbit/s through glass at " + fmt(demo_distance, 3) + " m (at 50 m: " +
                           fmt(rate_mbps_at(cfg, 50.0, 1), 5) + "), link up throughout: " +
                           (all_up ? "yes" : "no");
                  return drop >= 12.5 && drop <= 13.5 && glass_rate >= 480.0 &&
                         glass_rate <= 720.0 && all_up;
              });

    // 4 — 60 GHz comparison: healthy in the clear, dead behind the coating.
    criterion(4, "60 GHz CINR is 27 ± 0.5 dB clear and 0 dB behind glass", [&](std::string& detail) {
        const double clear = owcsim::cinr_db(cfg.mmwave, demo_distance, false);
        const double glass = owcsim::cinr_db(cfg.mmwave, demo_distance, true);
        const bool up_clear = owcsim::mmwave_link_up(clear, cfg.mmwave);
        const bool up_glass = owcsim::mmwave_link_up(glass, cfg.mmwave);
        detail = "clear " + fmt(clear, 5) + " dB (up: " + (up_clear ? "yes" : "no") + "), glass " +
                 fmt(glass, 5) + " dB (up: " + (up_glass ? "yes" : "no") + ")";
        return clear >= 26.5 && clear <= 27.5 && up_clear && glass == 0.0 && !up_glass;
    });

    // 5 — gross-rate ceiling at the default OFDM settings.
    criterion(5, "saturated gross rate is 2.000 Gbit/s (±0.1%) and never exceeded",
              [&](std::string& detail) {
                  const owcsim::OfdmConfig ofdm; // defaults
                  owcsim::SnrProfile saturated;
                  saturated.snr_db.assign(static_cast<size_t>(ofdm.n_carriers), 500.0);
                  saturated.carrier_spacing_hz = ofdm.carrier_spacing_hz();
                  const double peak = owcsim::gross_rate(saturated, ofdm).rate_bps;
                  const double cap = 2e9;
                  bool ok = std::fabs(peak - cap) <= 0.001 * cap;

                  // Hammer the full link path with hot configurations; none may
                  // load past the ceiling.
                  owcsim::Rng rng(7);
                  owcsim::ScenarioConfig hot = cfg;
                  hot.ofdm = ofdm;
                  hot.channel.panes.clear();
                  hot.channel.atmosphere = {};
                  double worst = peak;
                  for (int i = 0; i < 200; ++i) {
                      hot.frontend.tx_optical_power_w = 0.1 + 99.9 * rng.uniform();
                      hot.frontend.thermal_noise_density = 1e-24 * std::pow(10.0, 6.0 * rng.uniform());
                      hot.frontend.led_rolloff_freq_mhz = 30.0 + 270.0 * rng.uniform();
                      const double d = 1.0 + 199.0 * rng.uniform();
                      const double rate = rate_mbps_at(hot, d, 0) * 1e6;
                      worst = std::max(worst, rate);
                      if (rate > cap * (1.0 + 1e-12))
                          ok = false;
                  }
                  detail = "saturated " + fmt(peak / 1e9, 7) + " Gbit/s, max over 200 hot configs " +
                           fmt(worst / 1e9, 7) + " Gbit/s";
                  return ok;
              });

    // 6 — key invariants, spot-checked here and covered in depth by the unit suite.
    criterion(6, "invariants: monotone rate, overlap oracle, loading oracle, no flapping, reruns",
              [&](std::string& detail) {
                  std::string failed;

                  // Rate never rises with distance.
                  const auto records = owcsim::run_sweep(cfg);
                  for (size_t i = 1; i < records.size(); ++i)
                      if (records[i].rate_mbps > records[i - 1].rate_mbps + 1e-9)
                          failed = "rate not monotone in distance";

                  // Monte Carlo disc-overlap oracle: fraction of the lens disc
                  // covered by the spot disc, 4e6 points, fixed seed.
                  const double spot_d =
                      owcsim::spot_diameter_m(100.0, cfg.tx_optics.divergence_half_angle_deg);
                  const double spot_r = spot_d / 2.0;
                  const double rx_area = cfg.rx_optics.lens_area_cm2 * 1e-4;
                  const double rx_r = std::sqrt(rx_area / std::numbers::pi);
                  const double offset = 0.7; // partial overlap at 100 m
                  const double closed =
                      owcsim::disc_overlap_area(spot_r, rx_r, offset) / rx_area;
                  owcsim::Rng mc(20260816);
                  long hits = 0;
                  const long n_points = 4000000;
                  for (long i = 0; i < n_points; ++i) {
                      const double r = rx_r * std::sqrt(mc.uniform());
                      const double a = 2.0 * std::numbers::pi * mc.uniform();
                      const double x = offset + r * std::cos(a);
                      const double y = r * std::sin(a);
                      if (x * x + y * y <= spot_r * spot_r)
                          ++hits;
                  }
                  const double sampled = static_cast<double>(hits) / n_points;
                  if (std::fabs(sampled - closed) >= 1e-3)
                      failed = "overlap oracle off by " + fmt(std::fabs(sampled - closed), 3);
                  const double capture =
                      owcsim::capture_fraction(spot_d, rx_area, offset);
                  if (!(capture >= 0.0 && capture <= 1.0))
                      failed = "capture fraction out of [0,1]";

                  // Per-carrier loading equals a brute-force threshold search.
                  owcsim::Rng lr(11);
                  for (int trial = 0; trial < 400 && failed.empty(); ++trial) {
                      const double snr = -20.0 + 80.0 * lr.uniform();
                      int best = 0;
                      for (int b = 1; b <= cfg.ofdm.max_bits_per_carrier; ++b)
                          if (snr >= owcsim::loading_threshold_db(b, cfg.ofdm))
                              best = b;
                      if (owcsim::bits_per_carrier(snr, cfg.ofdm) != best)
                          failed = "bit loading disagrees with brute force at " + fmt(snr, 6) +
                                   " dB";
                  }

                  // Adaptation settles under an SNR oscillating across a
                  // loading threshold instead of flapping with it.
                  {
                      owcsim::AdaptationConfig acfg;
                      acfg.hysteresis_db = 1.0;
                      owcsim::OfdmConfig one = cfg.ofdm;
                      one.n_carriers = 1;
                      const double edge = owcsim::loading_threshold_db(5, one);
                      owcsim::SnrProfile probe;
                      probe.carrier_spacing_hz = one.carrier_spacing_hz();
                      probe.snr_db = {edge + 0.3};
                      owcsim::AdaptationState state = owcsim::initial_state(probe, one);
                      std::vector<int> seen;
                      for (int i = 0; i < 40; ++i) {
                          probe.snr_db[0] = (i % 2 == 0) ? edge - 0.3 : edge + 0.3;
                          state = owcsim::adapt_step(state, probe, one, acfg);
                          seen.push_back(state.current_table.bits[0]);
                      }
                      for (size_t i = 1; i < seen.size(); ++i)
                          if (seen[i] != seen[0])
                              failed = "adaptation flaps under an oscillating SNR";
                  }

                  // Same seed, same bytes — with the stochastic term switched on.
                  {
                      owcsim::ScenarioConfig noisy = cfg;
                      noisy.channel.atmosphere.scintillation_sigma_db = 1.0;
                      noisy.sweep.stop_m = 60.0;
                      const std::string once = owcsim::render(
                          owcsim::to_table(owcsim::run_sweep(noisy)), owcsim::EmitFormat::csv);
                      const std::string twice = owcsim::render(
                          owcsim::to_table(owcsim::run_sweep(noisy)), owcsim::EmitFormat::csv);
                      if (once != twice)
                          failed = "seeded rerun changed bytes";
                  }

                  detail = failed.empty() ? "all five spot checks hold" : failed;
                  return failed.empty();
              });

    // 7 — availability under the shipped weather table.
    criterion(7, "availability over 1e6 samples is 0.999 within 3 sigma", [&](std::string& detail) {
        const auto start = std::chrono::steady_clock::now();
        const owcsim::AvailabilityResult result = owcsim::run_availability(cfg);
        const double elapsed = seconds_since(start);
        const double n = static_cast<double>(result.samples);
        const double sigma = std::sqrt(0.999 * 0.001 / n);
        const double deviation = std::fabs(result.availability - 0.999);
        detail = fmt(result.availability, 7) + " from " + fmt(n, 7) + " samples (|dev| " +
                 fmt(deviation, 3) + " vs 3 sigma " + fmt(3.0 * sigma, 3) + "), " +
                 fmt(elapsed, 3) + " s";
        return result.samples == 1000000 && deviation <= 3.0 * sigma && elapsed < 30.0;
    });

    // 8 — identifiability: targets synthesized inside the search box re-fit to <= 1%.
    criterion(8, "round-trip calibration recovers synthesized targets to 1%",
              [&](std::string& detail) {
                  owcsim::ScenarioConfig truth = cfg;
                  truth.frontend.tx_optical_power_w = 1.4;
                  truth.frontend.thermal_noise_density = 8e-20;
                  truth.frontend.led_rolloff_freq_mhz = 150.0;
                  truth.ofdm.snr_gap_db = 4.5;
                  std::vector<owcsim::CalibrationTarget> synth;
                  for (double d : {25.0, 50.0, 100.0})
                      synth.push_back({d, rate_mbps_at(truth, d, 0), false});

                  const owcsim::CalibrationResult refit = owcsim::fit(cfg, bundle.space, synth);
                  owcsim::ScenarioConfig recovered = cfg;
                  recovered.frontend = refit.params;
                  recovered.ofdm.snr_gap_db = refit.snr_gap_db;

                  double worst = 0.0;
                  for (const auto& t : synth) {
                      const double rate = rate_mbps_at(recovered, t.distance_m, 0);
                      worst = std::max(worst,
                                       std::fabs(rate - t.expected_rate_mbps) / t.expected_rate_mbps);
                  }
                  detail = "worst rate error " + fmt(100.0 * worst, 3) + "%, objective " +
                           fmt(refit.objective, 3);
                  return worst <= 0.01;
              });

    std::cout << "acceptance: " << (8 - g_failures) << "/8 criteria passed\n";
    return g_failures == 0 ? 0 : 1;
}
