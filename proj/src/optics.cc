#include "optics.hh"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace owcsim {

namespace {

constexpr double pi = std::numbers::pi;

double clamp_acos_arg(double x) {
    return std::clamp(x, -1.0, 1.0);
}

} // namespace

void validate(const TxOptics& tx) {
    if (!(tx.divergence_half_angle_deg > 0.0) || !(tx.divergence_half_angle_deg < tx.led_half_angle_deg))
        throw model_error("tx_optics: divergence_half_angle_deg must lie in (0, led_half_angle_deg)");
    if (!(tx.lens_area_cm2 > 0.0))
        throw model_error("tx_optics: lens_area_cm2 must be > 0");
    if (!(tx.lens_focal_length_mm > 0.0))
        throw model_error("tx_optics: lens_focal_length_mm must be > 0");
    if (!(tx.led_half_angle_deg > 0.0) || !(tx.led_half_angle_deg < 90.0))
        throw model_error("tx_optics: led_half_angle_deg must lie in (0, 90)");
}

void validate(const RxOptics& rx) {
    if (!(rx.lens_area_cm2 > 0.0))
        throw model_error("rx_optics: lens_area_cm2 must be > 0");
    if (!(rx.lens_focal_length_mm > 0.0))
        throw model_error("rx_optics: lens_focal_length_mm must be > 0");
}

void validate(const LinkGeometry& geo) {
    if (!(geo.distance_m > 0.0))
        throw model_error("geometry: distance_m must be > 0");
    if (!(geo.lateral_offset_m >= 0.0))
        throw model_error("geometry: lateral_offset_m must be >= 0");
}

double spot_diameter_m(double distance_m, double half_angle_deg) {
    if (!(distance_m > 0.0))
        throw model_error("spot_diameter: distance must be > 0");
    if (!(half_angle_deg > 0.0) || !(half_angle_deg < 90.0))
        throw model_error("spot_diameter: half angle must lie in (0, 90) degrees");
    return 2.0 * distance_m * std::tan(half_angle_deg * pi / 180.0);
}

double disc_overlap_area(double radius_a, double radius_b, double center_dist) {
    const double ra = radius_a, rb = radius_b, d = center_dist;
    if (d >= ra + rb)
        return 0.0; // disjoint (tangency counts as zero overlap)
    if (d <= std::abs(ra - rb)) {
        const double rmin = std::min(ra, rb);
        return pi * rmin * rmin; // one disc inside the other
    }
    // Two circular segments; acos arguments clamped against rounding at
    // near-tangency.
    const double a1 = clamp_acos_arg((d * d + ra * ra - rb * rb) / (2.0 * d * ra));
    const double a2 = clamp_acos_arg((d * d + rb * rb - ra * ra) / (2.0 * d * rb));
    const double k = (-d + ra + rb) * (d + ra - rb) * (d - ra + rb) * (d + ra + rb);
    return ra * ra * std::acos(a1) + rb * rb * std::acos(a2) - 0.5 * std::sqrt(std::max(k, 0.0));
}

double capture_fraction(double spot_diameter_m, double rx_area_m2, double lateral_offset_m) {
    if (!(spot_diameter_m > 0.0))
        throw model_error("capture_fraction: spot diameter must be > 0");
    if (!(rx_area_m2 > 0.0))
        throw model_error("capture_fraction: rx area must be > 0");
    if (!(lateral_offset_m >= 0.0))
        throw model_error("capture_fraction: lateral offset must be >= 0");
    const double spot_r = spot_diameter_m / 2.0;
    const double rx_r = std::sqrt(rx_area_m2 / pi);
    const double overlap = disc_overlap_area(spot_r, rx_r, lateral_offset_m);
    const double frac = overlap / (pi * spot_r * spot_r);
    return std::clamp(frac, 0.0, 1.0);
}

std::optional<DecibelOptical> geometric_loss_db(const TxOptics& tx, const RxOptics& rx,
                                                const LinkGeometry& geo) {
    validate(tx);
    validate(rx);
    validate(geo);
    const double spot = spot_diameter_m(geo.distance_m, tx.divergence_half_angle_deg);
    const double frac = capture_fraction(spot, rx.lens_area_cm2 * 1e-4, geo.lateral_offset_m);
    if (frac <= 0.0)
        return std::nullopt; // link dark
    return DecibelOptical{-10.0 * std::log10(frac)};
}

} // namespace owcsim
