#include "doctest.h"

#include "quantities.hh"

using namespace owcsim;

TEST_CASE("dB/linear conversions invert each other") {
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(db_to_linear(-10.0) == doctest::Approx(0.1));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    for (double db : {-37.5, -3.0, 0.0, 0.25, 6.5, 44.0})
        CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-12));
}

TEST_CASE("dB/linear conversions reject junk") {
    CHECK_THROWS_AS(linear_to_db(0.0), model_error);
    CHECK_THROWS_AS(linear_to_db(-2.0), model_error);
    CHECK_THROWS_AS(linear_to_db(std::numeric_limits<double>::infinity()), model_error);
    CHECK_THROWS_AS(db_to_linear(std::numeric_limits<double>::quiet_NaN()), model_error);
}

TEST_CASE("square-law detection doubles optical dB") {
    // The coated pane: 6.5 dB optical is observed as 13 dB electrical.
    const DecibelOptical pane{6.5};
    CHECK(optical_to_electrical_db(pane).value == doctest::Approx(13.0));
    CHECK(electrical_to_optical_db(DecibelElectrical{13.0}).value == doctest::Approx(6.5));
    for (double v : {0.0, 1.0, 3.25, 20.0})
        CHECK(electrical_to_optical_db(optical_to_electrical_db(DecibelOptical{v})).value ==
              doctest::Approx(v));
}

TEST_CASE("decibel arithmetic stays in its domain") {
    const DecibelOptical a{2.0}, b{4.5};
    CHECK((a + b).value == doctest::Approx(6.5));
    CHECK((b - a).value == doctest::Approx(2.5));
    CHECK((-a).value == doctest::Approx(-2.0));
    const DecibelElectrical c{3.0}, d{10.0};
    CHECK((c + d).value == doctest::Approx(13.0));
}

TEST_CASE("power attenuation respects the domain tag") {
    const Power tx(2.0, PowerDomain::optical);
    CHECK(tx.attenuated(DecibelOptical{10.0}).watts == doctest::Approx(0.2));
    CHECK(tx.attenuated(DecibelOptical{0.0}).watts == doctest::Approx(2.0));
    // Negative loss = gain; allowed, the sign lives in the dB value.
    CHECK(tx.attenuated(DecibelOptical{-3.0}).watts == doctest::Approx(2.0 * db_to_linear(3.0)));
    CHECK_THROWS_AS(tx.attenuated(DecibelElectrical{10.0}), model_error);

    const Power rf(1.0, PowerDomain::electrical);
    CHECK(rf.attenuated(DecibelElectrical{3.0}).watts ==
          doctest::Approx(db_to_linear(-3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(rf.attenuated(DecibelOptical{3.0}), model_error);
}

TEST_CASE("power rejects negative and non-finite watts") {
    CHECK_THROWS_AS(Power(-1.0, PowerDomain::optical), model_error);
    CHECK_THROWS_AS(Power(std::numeric_limits<double>::quiet_NaN(), PowerDomain::optical),
                    model_error);
    CHECK(Power(0.0, PowerDomain::optical).watts == 0.0);
}
