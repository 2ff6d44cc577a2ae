#include "doctest.h"

#include <cmath>

#include "channel.hh"

using namespace owcsim;

TEST_CASE("atmospheric loss scales with distance") {
    AtmosphereModel atm;
    atm.attenuation_db_per_km = 10.0;
    CHECK(atmospheric_loss_db(500.0, atm).value == doctest::Approx(5.0));
    CHECK(atmospheric_loss_db(100.0, atm).value == doctest::Approx(1.0));
    atm.attenuation_db_per_km = 0.0;
    CHECK(atmospheric_loss_db(100.0, atm).value == 0.0);
    CHECK_THROWS_AS(atmospheric_loss_db(0.0, atm), model_error);
}

TEST_CASE("scintillation perturbs but never amplifies below zero") {
    AtmosphereModel atm;
    atm.attenuation_db_per_km = 0.1;
    atm.scintillation_sigma_db = 2.0;

    // Deterministic under a fixed stream, different values along the stream.
    Rng a(7), b(7);
    const double first = atmospheric_loss_db(100.0, atm, &a).value;
    CHECK(atmospheric_loss_db(100.0, atm, &b).value == first);

    Rng rng(123);
    for (int i = 0; i < 2000; ++i)
        CHECK(atmospheric_loss_db(100.0, atm, &rng).value >= 0.0);

    // No rng pointer = mean path, scintillation off.
    CHECK(atmospheric_loss_db(100.0, atm, nullptr).value == doctest::Approx(0.01));
}

TEST_CASE("glass losses add like a monoid") {
    CHECK(glass_loss_db({}).value == 0.0);
    const GlassPane pane; // coated double pane, 6.5 dB optical
    CHECK(glass_loss_db({pane}).value == doctest::Approx(6.5));
    CHECK(glass_loss_db({pane, pane}).value == doctest::Approx(13.0));
    GlassPane thin;
    thin.transmittance_db = DecibelOptical{1.25};
    CHECK(glass_loss_db({pane, thin}).value == doctest::Approx(7.75));
}

TEST_CASE("total loss is the sum of the three segments") {
    ChannelState state;
    state.geometry.distance_m = 100.0;
    state.atmosphere.attenuation_db_per_km = 10.0;
    state.panes.push_back(GlassPane{});
    TxOptics tx;
    RxOptics rx;

    const auto geo = geometric_loss_db(tx, rx, state.geometry);
    REQUIRE(geo.has_value());
    const auto total = total_loss_db(tx, rx, state);
    REQUIRE(total.has_value());
    CHECK(total->value == doctest::Approx(geo->value + 1.0 + 6.5).epsilon(1e-12));
}

TEST_CASE("a dark geometry swallows the whole budget") {
    ChannelState state;
    state.geometry.distance_m = 100.0;
    state.geometry.lateral_offset_m = 10.0; // far outside the ~0.72 m spot
    CHECK(!total_loss_db(TxOptics{}, RxOptics{}, state).has_value());
}

TEST_CASE("weather sampling follows the table") {
    WeatherDistribution dist;
    dist.bins = {{0.0, 0.9}, {100.0, 0.1}};

    int heavy = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Rng rng = substream(42, static_cast<std::uint64_t>(i));
        if (sample_weather(dist, rng).attenuation_db_per_km > 0.0)
            ++heavy;
    }
    // 4 sigma around p = 0.1 over 1e5 draws.
    const double p = static_cast<double>(heavy) / n;
    CHECK(std::abs(p - 0.1) < 4.0 * std::sqrt(0.1 * 0.9 / n));
}

TEST_CASE("weather sampling is invariant under table normalization") {
    WeatherDistribution scaled, normalized;
    scaled.bins = {{0.0, 18.0}, {40.0, 6.0}, {200.0, 12.0}};
    normalized.bins = {{0.0, 0.5}, {40.0, 1.0 / 6.0}, {200.0, 1.0 / 3.0}};
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng a = substream(9, i), b = substream(9, i);
        CHECK(sample_weather(scaled, a).attenuation_db_per_km ==
              sample_weather(normalized, b).attenuation_db_per_km);
    }
}

TEST_CASE("channel validation rejects broken inputs") {
    GlassPane pane;
    pane.transmittance_db = DecibelOptical{-1.0}; // gain through glass
    CHECK_THROWS_AS(validate(pane), model_error);

    AtmosphereModel atm;
    atm.attenuation_db_per_km = -2.0;
    CHECK_THROWS_AS(validate(atm), model_error);

    WeatherDistribution dist;
    CHECK_THROWS_AS(validate(dist), model_error); // empty
    dist.bins = {{0.0, 0.0}};
    CHECK_THROWS_AS(validate(dist), model_error); // zero total mass
    dist.bins = {{0.0, -0.5}, {1.0, 1.5}};
    CHECK_THROWS_AS(validate(dist), model_error); // negative probability
}
