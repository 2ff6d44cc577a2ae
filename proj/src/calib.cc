#include "calib.hh"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace owcsim {

namespace {

// Axis values are searched in a transformed coordinate (log10 for the two
// scale-like axes) so grid spacing and descent steps are uniform.
double to_coord(const AxisRange& axis, double value) {
    return axis.log_scale ? std::log10(value) : value;
}

double from_coord(const AxisRange& axis, double coord) {
    return axis.log_scale ? std::pow(10.0, coord) : coord;
}

struct SearchAxes {
    std::array<AxisRange, 4> axis; // tx power, noise density, rolloff, gap
};

FrontendParams apply_point(const ScenarioConfig& base, const std::array<double, 4>& coords,
                           const SearchAxes& axes, double* gap_out) {
    FrontendParams fe = base.frontend;
    fe.tx_optical_power_w = from_coord(axes.axis[0], coords[0]);
    fe.thermal_noise_density = from_coord(axes.axis[1], coords[1]);
    fe.led_rolloff_freq_mhz = from_coord(axes.axis[2], coords[2]);
    *gap_out = from_coord(axes.axis[3], coords[3]);
    return fe;
}

double rate_at_target(const ScenarioConfig& base, const FrontendParams& fe, double gap,
                      const CalibrationTarget& target) {
    ChannelState state;
    state.geometry.distance_m = target.distance_m;
    state.geometry.lateral_offset_m = 0.0;
    if (target.glass)
        state.panes.push_back(GlassPane{});
    OfdmConfig cfg = base.ofdm;
    cfg.snr_gap_db = gap;
    return link_rate_bps(fe, base.tx_optics, base.rx_optics, state, cfg) / 1e6;
}

} // namespace

void validate(const CalibrationSpace& space) {
    const AxisRange* axes[] = {&space.tx_power_w, &space.noise_density, &space.rolloff_mhz,
                               &space.gap_db};
    const char* names[] = {"tx_power_w", "noise_density", "rolloff_mhz", "gap_db"};
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(axes[i]->lo) || !std::isfinite(axes[i]->hi) ||
            !(axes[i]->lo <= axes[i]->hi))
            throw model_error(std::string("calibration space: bad range for ") + names[i]);
        if (axes[i]->log_scale && !(axes[i]->lo > 0.0))
            throw model_error(std::string("calibration space: log axis needs positive bounds: ") +
                              names[i]);
        if (axes[i]->resolution < 2)
            throw model_error(std::string("calibration space: resolution must be >= 2 for ") +
                              names[i]);
    }
    if (!(space.failure_ceiling > 0.0))
        throw model_error("calibration space: failure_ceiling must be > 0");
}

void validate(const std::vector<CalibrationTarget>& targets) {
    if (targets.empty())
        throw model_error("calibration: targets must not be empty");
    for (const auto& t : targets) {
        if (!(t.distance_m > 0.0))
            throw model_error("calibration target: distance_m must be > 0");
        if (!(t.expected_rate_mbps > 0.0))
            throw model_error("calibration target: expected_rate_mbps must be > 0");
    }
}

double calibration_objective(const ScenarioConfig& base, const FrontendParams& fe,
                             double snr_gap_db, const std::vector<CalibrationTarget>& targets) {
    validate(targets);
    double sum = 0.0;
    for (const auto& t : targets) {
        const double rate = rate_at_target(base, fe, snr_gap_db, t);
        const double rel = (rate - t.expected_rate_mbps) / t.expected_rate_mbps;
        sum += rel * rel;
    }
    return sum;
}

CalibrationResult fit(const ScenarioConfig& base, const CalibrationSpace& space,
                      const std::vector<CalibrationTarget>& targets) {
    validate(space);
    validate(targets);

    SearchAxes axes{{space.tx_power_w, space.noise_density, space.rolloff_mhz, space.gap_db}};

    auto evaluate = [&](const std::array<double, 4>& coords) {
        double gap = 0.0;
        const FrontendParams fe = apply_point(base, coords, axes, &gap);
        return calibration_objective(base, fe, gap, targets);
    };

    // Coarse grid.  Every cell is kept and ranked (objective, then
    // lexicographic coordinates) so ties can never depend on evaluation
    // order and the polish phase can start from more than one basin.
    std::array<double, 4> lo{}, hi{};
    for (int i = 0; i < 4; ++i) {
        lo[i] = to_coord(axes.axis[i], axes.axis[i].lo);
        hi[i] = to_coord(axes.axis[i], axes.axis[i].hi);
    }
    const std::array<int, 4> res = {axes.axis[0].resolution, axes.axis[1].resolution,
                                    axes.axis[2].resolution, axes.axis[3].resolution};
    auto grid_value = [&](int axis, int idx) {
        if (res[axis] == 1 || hi[axis] == lo[axis])
            return lo[axis];
        return lo[axis] + (hi[axis] - lo[axis]) * idx / (res[axis] - 1);
    };
    struct Candidate {
        double obj;
        std::array<double, 4> coords;
    };
    const auto by_rank = [](const Candidate& a, const Candidate& b) {
        return a.obj != b.obj ? a.obj < b.obj : a.coords < b.coords;
    };
    std::vector<Candidate> ranked;
    ranked.reserve(static_cast<size_t>(res[0]) * res[1] * res[2] * res[3]);
    for (int a = 0; a < res[0]; ++a)
        for (int b = 0; b < res[1]; ++b)
            for (int c = 0; c < res[2]; ++c)
                for (int d = 0; d < res[3]; ++d) {
                    const std::array<double, 4> point = {grid_value(0, a), grid_value(1, b),
                                                         grid_value(2, c), grid_value(3, d)};
                    ranked.push_back({evaluate(point), point});
                }
    std::sort(ranked.begin(), ranked.end(), by_rank);

    // Pattern-search polish.  The axes are coupled (tx power and noise
    // density both scale SNR; rolloff and gap both bend the loading curve),
    // so single-axis moves alone stall on diagonal valleys: the stencil
    // therefore holds the 8 single-axis moves plus all 24 two-axis
    // diagonals.  Each cycle takes the best strictly-improving probe and
    // rides that direction while it keeps improving; a cycle with no
    // improving probe halves every step.  Several grid cells are polished,
    // not just the winner, because the best basin is not always under the
    // best coarse cell.  Deterministic: fixed start order, fixed probe
    // order, strict improvement only.
    std::vector<std::array<double, 4>> stencil;
    for (int i = 0; i < 4; ++i)
        for (double di : {+1.0, -1.0}) {
            std::array<double, 4> move{};
            move[i] = di;
            stencil.push_back(move);
        }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (double di : {+1.0, -1.0})
                for (double dj : {+1.0, -1.0}) {
                    std::array<double, 4> move{};
                    move[i] = di;
                    move[j] = dj;
                    stencil.push_back(move);
                }

    std::array<double, 4> grid_step{};
    for (int i = 0; i < 4; ++i)
        grid_step[i] = (hi[i] - lo[i]) / std::max(res[i] - 1, 1);
    const double initial_scale =
        std::max({grid_step[0], grid_step[1], grid_step[2], grid_step[3], 1e-12});

    double best_obj = ranked.front().obj;
    std::array<double, 4> best = ranked.front().coords;
    int total_cycles = 0;

    auto polish = [&](std::array<double, 4> cur, double cur_obj,
                      const std::array<double, 4>& start_step) {
        std::array<double, 4> step = start_step;
        for (int cycle = 0; cycle < 200 && cur_obj > 0.0; ++cycle) {
            ++total_cycles;
            double probe_obj = cur_obj;
            std::array<double, 4> probe_at{};
            std::array<double, 4> probe_delta{};
            bool found = false;
            for (const auto& move : stencil) {
                std::array<double, 4> p = cur;
                bool moved = false;
                for (int i = 0; i < 4; ++i) {
                    if (move[i] == 0.0 || step[i] <= 0.0)
                        continue;
                    p[i] = std::clamp(p[i] + move[i] * step[i], lo[i], hi[i]);
                    moved = moved || p[i] != cur[i];
                }
                if (!moved)
                    continue;
                const double obj = evaluate(p);
                if (obj < probe_obj) {
                    probe_obj = obj;
                    probe_at = p;
                    for (int i = 0; i < 4; ++i)
                        probe_delta[i] = p[i] - cur[i];
                    found = true;
                }
            }
            if (found) {
                cur = probe_at;
                cur_obj = probe_obj;
                for (int walk = 0; walk < 64; ++walk) {
                    std::array<double, 4> p = cur;
                    bool moved = false;
                    for (int i = 0; i < 4; ++i) {
                        if (probe_delta[i] == 0.0)
                            continue;
                        p[i] = std::clamp(p[i] + probe_delta[i], lo[i], hi[i]);
                        moved = moved || p[i] != cur[i];
                    }
                    if (!moved)
                        break;
                    const double obj = evaluate(p);
                    if (obj >= cur_obj)
                        break;
                    cur = p;
                    cur_obj = obj;
                }
            } else {
                bool any_step_left = false;
                for (int i = 0; i < 4; ++i) {
                    step[i] *= 0.5;
                    if (step[i] > 1e-9 * initial_scale)
                        any_step_left = true;
                }
                if (!any_step_left)
                    break;
            }
        }
        return Candidate{cur_obj, cur};
    };
    auto take = [&](const Candidate& c) {
        if (c.obj < best_obj || (c.obj == best_obj && c.coords < best)) {
            best_obj = c.obj;
            best = c.coords;
        }
    };

    const size_t starts = std::min<size_t>(8, ranked.size());
    for (size_t s = 0; s < starts && best_obj > 0.0; ++s)
        take(polish(ranked[s].coords, ranked[s].obj, grid_step));

    // Successive refinement: re-grid a shrinking box around the incumbent
    // and polish the best cells of each level.  The exact-fit set is a thin
    // curved ridge (tx power trades off against noise density), easily
    // straddled by coarse cells and only pinned down once the box tightens.
    std::array<double, 4> half = grid_step;
    constexpr int zoom_res = 7;
    for (int level = 0; level < 3 && best_obj > 0.0; ++level) {
        std::array<double, 4> zlo{}, zstep{};
        for (int i = 0; i < 4; ++i) {
            zlo[i] = std::clamp(best[i] - half[i], lo[i], hi[i]);
            const double zhi = std::clamp(best[i] + half[i], lo[i], hi[i]);
            zstep[i] = (zhi - zlo[i]) / (zoom_res - 1);
        }
        std::vector<Candidate> zoom;
        zoom.reserve(zoom_res * zoom_res * zoom_res * zoom_res);
        for (int a = 0; a < zoom_res; ++a)
            for (int b = 0; b < zoom_res; ++b)
                for (int c = 0; c < zoom_res; ++c)
                    for (int d = 0; d < zoom_res; ++d) {
                        const std::array<double, 4> p = {
                            zlo[0] + zstep[0] * a, zlo[1] + zstep[1] * b, zlo[2] + zstep[2] * c,
                            zlo[3] + zstep[3] * d};
                        zoom.push_back({evaluate(p), p});
                    }
        std::sort(zoom.begin(), zoom.end(), by_rank);
        const size_t zoom_starts = std::min<size_t>(4, zoom.size());
        for (size_t s = 0; s < zoom_starts && best_obj > 0.0; ++s)
            take(polish(zoom[s].coords, zoom[s].obj, zstep));
        half = zstep;
    }

    CalibrationResult result;
    double gap = 0.0;
    result.params = apply_point(base, best, axes, &gap);
    result.snr_gap_db = gap;
    result.descent_iterations = total_cycles;
    for (const auto& t : targets) {
        const double rate = rate_at_target(base, result.params, gap, t);
        result.residuals.push_back((rate - t.expected_rate_mbps) / t.expected_rate_mbps);
    }
    result.objective = 0.0;
    for (double r : result.residuals)
        result.objective += r * r;
    result.within_ceiling = result.objective <= space.failure_ceiling;
    return result;
}

double validate_glass_point(const ScenarioConfig& base, const CalibrationResult& result,
                            double demo_distance_m) {
    CalibrationTarget t;
    t.distance_m = demo_distance_m;
    t.glass = true;
    t.expected_rate_mbps = 1.0; // unused by rate_at_target
    return rate_at_target(base, result.params, result.snr_gap_db, t);
}

} // namespace owcsim
