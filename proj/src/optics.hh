#ifndef OWCSIM_OPTICS_HH
#define OWCSIM_OPTICS_HH

// Beam geometry: divergence -> spot size at the receiver plane -> fraction
// of the (top-hat) spot caught by the circular receiver lens.  A capture
// fraction of zero is a distinct "link dark" condition, not a loss value,
// so geometric_loss_db reports it through an optional.

#include <optional>

#include "quantities.hh"

namespace owcsim {

struct TxOptics {
    double divergence_half_angle_deg = 0.41; // after the collimating lens
    double lens_area_cm2 = 50.0;
    double lens_focal_length_mm = 208.0;
    double led_half_angle_deg = 10.0; // bare-LED half angle, upper bound for divergence
};

struct RxOptics {
    double lens_area_cm2 = 150.0;
    double lens_focal_length_mm = 208.0;
};

struct LinkGeometry {
    double distance_m = 100.0;
    double lateral_offset_m = 0.0;
};

void validate(const TxOptics& tx);
void validate(const RxOptics& rx);
void validate(const LinkGeometry& geo);

// 2 * d * tan(half_angle): far-field spot diameter, aperture term excluded.
double spot_diameter_m(double distance_m, double half_angle_deg);

// Intersection area of two discs with the given radii whose centers sit
// `center_dist` apart (closed-form circular segments, tangency clamped).
double disc_overlap_area(double radius_a, double radius_b, double center_dist);

// Fraction of a top-hat spot collected by a circular lens of rx_area_m2
// whose center is lateral_offset_m away from the spot center.
double capture_fraction(double spot_diameter_m, double rx_area_m2, double lateral_offset_m);

// Loss in optical dB; nullopt when the discs are disjoint (link dark).
std::optional<DecibelOptical> geometric_loss_db(const TxOptics& tx, const RxOptics& rx,
                                                const LinkGeometry& geo);

} // namespace owcsim

#endif
