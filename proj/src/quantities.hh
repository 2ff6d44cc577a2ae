#ifndef OWCSIM_QUANTITIES_HH
#define OWCSIM_QUANTITIES_HH

// Unit-safe scalars: optical vs electrical decibels, tagged power values.
// Photodetection is square-law (photocurrent ~ optical power, electrical
// power ~ photocurrent^2), so every optical dB is worth two electrical dB.
// Keeping the two domains as distinct types makes mixing them a compile
// error instead of a silent factor-of-two bug.

#include <cmath>
#include <stdexcept>
#include <string>

namespace owcsim {

struct model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem trouble, as opposed to a rejected model or config.
struct io_error : model_error {
    using model_error::model_error;
};

inline double db_to_linear(double db) {
    if (!std::isfinite(db))
        throw model_error("db_to_linear: non-finite input");
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw model_error("linear_to_db: ratio must be positive and finite");
    return 10.0 * std::log10(ratio);
}

struct DecibelElectrical {
    double value = 0.0;

    friend DecibelElectrical operator+(DecibelElectrical a, DecibelElectrical b) {
        return {a.value + b.value};
    }
    friend DecibelElectrical operator-(DecibelElectrical a, DecibelElectrical b) {
        return {a.value - b.value};
    }
};

struct DecibelOptical {
    double value = 0.0;

    friend DecibelOptical operator+(DecibelOptical a, DecibelOptical b) {
        return {a.value + b.value};
    }
    friend DecibelOptical operator-(DecibelOptical a, DecibelOptical b) {
        return {a.value - b.value};
    }
    DecibelOptical operator-() const { return {-value}; }
};

inline DecibelElectrical optical_to_electrical_db(DecibelOptical x) {
    if (!std::isfinite(x.value))
        throw model_error("optical_to_electrical_db: non-finite input");
    return {2.0 * x.value};
}

inline DecibelOptical electrical_to_optical_db(DecibelElectrical x) {
    if (!std::isfinite(x.value))
        throw model_error("electrical_to_optical_db: non-finite input");
    return {x.value / 2.0};
}

enum class PowerDomain { optical, electrical };

// Non-negative power with an immutable domain tag.  Losses are applied in
// dB of the matching domain; attenuate() refuses cross-domain dB.
struct Power {
    double watts = 0.0;
    PowerDomain domain = PowerDomain::optical;

    Power() = default;
    Power(double w, PowerDomain d) : watts(w), domain(d) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw model_error("Power: watts must be finite and >= 0");
    }

    Power attenuated(DecibelOptical loss) const {
        if (domain != PowerDomain::optical)
            throw model_error("Power: optical loss applied to electrical power");
        return Power(watts * db_to_linear(-loss.value), domain);
    }
    Power attenuated(DecibelElectrical loss) const {
        if (domain != PowerDomain::electrical)
            throw model_error("Power: electrical loss applied to optical power");
        return Power(watts * db_to_linear(-loss.value), domain);
    }
};

} // namespace owcsim

#endif
