#include "doctest.h"

#include <cmath>
#include <limits>

#include "mmwave.hh"

using namespace owcsim;

TEST_CASE("free-space path loss at 60 GHz") {
    // 20*log10(4*pi*d*f/c), evaluated independently.
    CHECK(fspl_db(60.0, 100.0) == doctest::Approx(108.01080822955625).epsilon(1e-12));
    // +6 dB per doubling of distance.
    CHECK(fspl_db(60.0, 200.0) - fspl_db(60.0, 100.0) ==
          doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(fspl_db(60.0, 0.0), model_error);
    CHECK_THROWS_AS(fspl_db(0.0, 100.0), model_error);
}

TEST_CASE("free-LOS CINR reproduces the published 27 dB") {
    const MmWaveParams params; // EIRP 41 dBm, 15 dBi, NF 8 dB, 500 MHz
    // Independent budget: 41 + 15 - 108.0108 - (-173.9752 + 86.9897 + 8).
    CHECK(cinr_db(params, 100.0, false) == doctest::Approx(26.97467892131165).epsilon(1e-9));
    CHECK(cinr_db(params, 100.0, false) == doctest::Approx(27.0).epsilon(0.5 / 27.0));
    CHECK(cinr_db(params, 50.0, false) == doctest::Approx(32.995278834591275).epsilon(1e-9));
    CHECK(mmwave_link_up(cinr_db(params, 100.0, false), params));
}

TEST_CASE("coated glass depletes the 60 GHz margin entirely") {
    const MmWaveParams params;
    const double through = cinr_db(params, 100.0, true);
    CHECK(through == 0.0); // 30 dB penetration loss, clamped at the 0 dB floor
    CHECK(!mmwave_link_up(through, params));
}

TEST_CASE("the reporting floor clamps instead of going negative") {
    MmWaveParams params;
    params.eirp_dbm = -40.0; // hopeless budget
    CHECK(cinr_db(params, 100.0, false) == 0.0);
}

TEST_CASE("link-up threshold is inclusive") {
    MmWaveParams params;
    CHECK(mmwave_link_up(params.cinr_up_threshold_db, params));
    CHECK(mmwave_link_up(params.cinr_up_threshold_db + 0.1, params));
    CHECK(!mmwave_link_up(params.cinr_up_threshold_db - 0.1, params));
}

TEST_CASE("interference adds in linear power") {
    MmWaveParams quiet;
    MmWaveParams noisy = quiet;
    // Interference exactly at the thermal floor halves the CINR: -3.01 dB.
    const double noise_dbm = 10.0 * std::log10(1.380649e-23 * 290.0 * 1e3) +
                             10.0 * std::log10(quiet.bandwidth_mhz * 1e6) + quiet.noise_figure_db;
    noisy.interference_floor_dbm = noise_dbm;
    const double drop = cinr_db(quiet, 100.0, false) - cinr_db(noisy, 100.0, false);
    CHECK(drop == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("mmwave validation rejects nonsense") {
    MmWaveParams params;
    params.bandwidth_mhz = 0.0;
    CHECK_THROWS_AS(validate(params), model_error);
    params = MmWaveParams{};
    params.glass_penetration_loss_db = -3.0;
    CHECK_THROWS_AS(validate(params), model_error);
    params = MmWaveParams{};
    params.eirp_dbm = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(params), model_error);
}
