#include "configio.hh"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace owcsim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw model_error(where.empty() ? what : where + ": " + what);
}

double parse_double(const std::string& where, const std::string& text) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v))
            fail(where, "bad number \"" + text + "\"");
        return v;
    } catch (const model_error&) {
        throw;
    } catch (...) {
        fail(where, "bad number \"" + text + "\"");
    }
}

long parse_int(const std::string& where, const std::string& text) {
    try {
        size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size())
            fail(where, "bad integer \"" + text + "\"");
        return v;
    } catch (const model_error&) {
        throw;
    } catch (...) {
        fail(where, "bad integer \"" + text + "\"");
    }
}

std::uint64_t parse_u64(const std::string& where, const std::string& text) {
    try {
        size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size())
            fail(where, "bad integer \"" + text + "\"");
        return v;
    } catch (const model_error&) {
        throw;
    } catch (...) {
        fail(where, "bad integer \"" + text + "\"");
    }
}

bool parse_bool(const std::string& where, const std::string& text) {
    if (text == "true")
        return true;
    if (text == "false")
        return false;
    fail(where, "bad flag \"" + text + "\" (expected true or false)");
}

// One `key = value` line, already split at '='.
struct KeyLine {
    std::string key;
    std::string raw_value; // full text after '=' (for free-text labels)
    std::vector<std::string> tokens;
    int line_no = 0;
};

struct Section {
    std::string name;
    std::string path; // dotted, for messages
    std::vector<KeyLine> keys;
    std::vector<Section> children;
    int line_no = 0;
};

Section parse_tree(const std::string& text) {
    Section root;
    std::vector<Section*> stack{&root};
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line == "}") {
            if (stack.size() == 1)
                fail("config", "unmatched '}' at line " + std::to_string(line_no));
            stack.pop_back();
            continue;
        }
        if (line.size() >= 1 && line.back() == '{') {
            const std::string name = trim(line.substr(0, line.size() - 1));
            if (name.empty() || name.find_first_of(" \t={}") != std::string::npos)
                fail("config", "bad section header at line " + std::to_string(line_no));
            Section child;
            child.name = name;
            child.path = stack.back()->path.empty() ? name : stack.back()->path + "." + name;
            child.line_no = line_no;
            stack.back()->children.push_back(std::move(child));
            stack.push_back(&stack.back()->children.back());
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("config", "expected 'key = value' or a section at line " + std::to_string(line_no));
        KeyLine kl;
        kl.key = trim(line.substr(0, eq));
        kl.raw_value = trim(line.substr(eq + 1));
        kl.tokens = split_ws(kl.raw_value);
        kl.line_no = line_no;
        if (kl.key.empty() || kl.key.find_first_of(" \t{}") != std::string::npos)
            fail("config", "bad key at line " + std::to_string(line_no));
        if (kl.raw_value.empty())
            fail(stack.back()->path.empty() ? "config" : stack.back()->path,
                 "key \"" + kl.key + "\" has no value (line " + std::to_string(line_no) + ")");
        stack.back()->keys.push_back(std::move(kl));
    }
    if (stack.size() != 1)
        fail("config", "unclosed section \"" + stack.back()->path + "\"");
    return root;
}

// Tracks which keys a section consumed so leftovers become errors, and
// rejects duplicate scalar keys.
class KeyReader {
  public:
    explicit KeyReader(const Section& sec) : sec_(sec) {}

    const KeyLine* find(const std::string& key, bool repeatable = false) {
        const KeyLine* found = nullptr;
        for (const auto& kl : sec_.keys) {
            if (kl.key != key)
                continue;
            if (found && !repeatable)
                fail(sec_.path, "duplicate key \"" + key + "\"");
            found = &kl;
        }
        if (found)
            consumed_.insert(key);
        return found;
    }

    std::vector<const KeyLine*> all(const std::string& key) {
        std::vector<const KeyLine*> out;
        for (const auto& kl : sec_.keys)
            if (kl.key == key)
                out.push_back(&kl);
        if (!out.empty())
            consumed_.insert(key);
        return out;
    }

    void scalar(const std::string& key, double& target) {
        if (const KeyLine* kl = find(key)) {
            if (kl->tokens.size() != 1)
                fail(sec_.path, "key \"" + key + "\" expects one number");
            target = parse_double(sec_.path + "." + key, kl->tokens[0]);
        }
    }

    void scalar(const std::string& key, int& target) {
        if (const KeyLine* kl = find(key)) {
            if (kl->tokens.size() != 1)
                fail(sec_.path, "key \"" + key + "\" expects one integer");
            target = static_cast<int>(parse_int(sec_.path + "." + key, kl->tokens[0]));
        }
    }

    void scalar(const std::string& key, std::uint64_t& target) {
        if (const KeyLine* kl = find(key)) {
            if (kl->tokens.size() != 1)
                fail(sec_.path, "key \"" + key + "\" expects one integer");
            target = parse_u64(sec_.path + "." + key, kl->tokens[0]);
        }
    }

    void scalar(const std::string& key, bool& target) {
        if (const KeyLine* kl = find(key)) {
            if (kl->tokens.size() != 1)
                fail(sec_.path, "key \"" + key + "\" expects true or false");
            target = parse_bool(sec_.path + "." + key, kl->tokens[0]);
        }
    }

    void free_text(const std::string& key, std::string& target) {
        if (const KeyLine* kl = find(key))
            target = kl->raw_value;
    }

    // Call after reading everything the schema knows.
    void finish(const std::set<std::string>& known_children = {}) {
        for (const auto& kl : sec_.keys)
            if (!consumed_.count(kl.key))
                fail(sec_.path.empty() ? "config" : sec_.path,
                     "unknown key \"" + kl.key + "\" (line " + std::to_string(kl.line_no) + ")");
        for (const auto& child : sec_.children)
            if (!known_children.count(child.name))
                fail(sec_.path.empty() ? "config" : sec_.path,
                     "unknown section \"" + child.name + "\" (line " +
                         std::to_string(child.line_no) + ")");
    }

    const Section& sec() const { return sec_; }

  private:
    const Section& sec_;
    std::set<std::string> consumed_;
};

const Section* find_child(const Section& parent, const std::string& name, bool* dup = nullptr) {
    const Section* found = nullptr;
    for (const auto& child : parent.children) {
        if (child.name != name)
            continue;
        if (found && dup) {
            *dup = true;
            return found;
        }
        if (found)
            fail(parent.path.empty() ? "config" : parent.path,
                 "duplicate section \"" + name + "\"");
        found = &child;
    }
    return found;
}

std::vector<const Section*> find_children(const Section& parent, const std::string& name) {
    std::vector<const Section*> out;
    for (const auto& child : parent.children)
        if (child.name == name)
            out.push_back(&child);
    return out;
}

void read_frontend(const Section& sec, FrontendParams& fe) {
    KeyReader r(sec);
    r.scalar("tx_optical_power_w", fe.tx_optical_power_w);
    r.scalar("wavelength_nm", fe.wavelength_nm);
    r.scalar("responsivity_a_per_w", fe.responsivity_a_per_w);
    r.scalar("led_rolloff_freq_mhz", fe.led_rolloff_freq_mhz);
    r.scalar("led_rolloff_order", fe.led_rolloff_order);
    r.scalar("thermal_noise_density", fe.thermal_noise_density);
    r.scalar("include_shot_noise", fe.include_shot_noise);
    r.finish();
}

void read_tx_optics(const Section& sec, TxOptics& tx) {
    KeyReader r(sec);
    r.scalar("divergence_half_angle_deg", tx.divergence_half_angle_deg);
    r.scalar("lens_area_cm2", tx.lens_area_cm2);
    r.scalar("lens_focal_length_mm", tx.lens_focal_length_mm);
    r.scalar("led_half_angle_deg", tx.led_half_angle_deg);
    r.finish();
}

void read_rx_optics(const Section& sec, RxOptics& rx) {
    KeyReader r(sec);
    r.scalar("lens_area_cm2", rx.lens_area_cm2);
    r.scalar("lens_focal_length_mm", rx.lens_focal_length_mm);
    r.finish();
}

void read_ofdm(const Section& sec, OfdmConfig& cfg) {
    KeyReader r(sec);
    r.scalar("bandwidth_mhz", cfg.bandwidth_mhz);
    r.scalar("n_carriers", cfg.n_carriers);
    r.scalar("max_bits_per_carrier", cfg.max_bits_per_carrier);
    r.scalar("snr_gap_db", cfg.snr_gap_db);
    r.scalar("overhead_efficiency", cfg.overhead_efficiency);
    r.scalar("tdd_duty", cfg.tdd_duty);
    r.finish();
}

void read_adaptation(const Section& sec, AdaptationConfig& acfg) {
    KeyReader r(sec);
    r.scalar("measurement_period_ms", acfg.measurement_period_ms);
    r.scalar("hysteresis_db", acfg.hysteresis_db);
    r.scalar("down_margin_db", acfg.down_margin_db);
    r.finish();
}

void read_mmwave(const Section& sec, MmWaveParams& mm) {
    KeyReader r(sec);
    r.scalar("carrier_freq_ghz", mm.carrier_freq_ghz);
    r.scalar("eirp_dbm", mm.eirp_dbm);
    r.scalar("rx_antenna_gain_dbi", mm.rx_antenna_gain_dbi);
    r.scalar("noise_figure_db", mm.noise_figure_db);
    r.scalar("bandwidth_mhz", mm.bandwidth_mhz);
    r.scalar("interference_floor_dbm", mm.interference_floor_dbm);
    r.scalar("glass_penetration_loss_db", mm.glass_penetration_loss_db);
    r.scalar("cinr_up_threshold_db", mm.cinr_up_threshold_db);
    r.finish();
}

void read_pane(const Section& sec, GlassPane& pane) {
    KeyReader r(sec);
    r.free_text("label", pane.label);
    r.scalar("transmittance_db", pane.transmittance_db.value);
    r.finish();
}

void read_channel(const Section& sec, ChannelState& state) {
    KeyReader r(sec);
    r.finish({"atmosphere", "pane", "geometry"});
    if (const Section* atm = find_child(sec, "atmosphere")) {
        KeyReader ar(*atm);
        ar.scalar("attenuation_db_per_km", state.atmosphere.attenuation_db_per_km);
        ar.scalar("scintillation_sigma_db", state.atmosphere.scintillation_sigma_db);
        ar.finish();
    }
    for (const Section* ps : find_children(sec, "pane")) {
        GlassPane pane;
        read_pane(*ps, pane);
        state.panes.push_back(pane);
    }
    if (const Section* geo = find_child(sec, "geometry")) {
        KeyReader gr(*geo);
        gr.scalar("distance_m", state.geometry.distance_m);
        gr.scalar("lateral_offset_m", state.geometry.lateral_offset_m);
        gr.finish();
    }
}

TimelineEvent read_event(const std::string& path, const KeyLine& kl) {
    if (kl.tokens.size() < 2)
        fail(path, "event needs at least \"TIME_MS KIND\" (line " + std::to_string(kl.line_no) + ")");
    TimelineEvent ev;
    ev.time_ms = parse_double(path + ".event", kl.tokens[0]);
    const std::string& kind = kl.tokens[1];
    const size_t extra = kl.tokens.size() - 2;
    if (kind == "insert_glass") {
        ev.kind = TimelineEvent::Kind::insert_glass;
        for (size_t i = 2; i < kl.tokens.size(); ++i) {
            GlassPane pane;
            pane.transmittance_db.value = parse_double(path + ".event", kl.tokens[i]);
            ev.panes.push_back(pane);
        }
    } else if (kind == "remove_glass") {
        ev.kind = TimelineEvent::Kind::remove_glass;
        if (extra != 0)
            fail(path, "remove_glass takes no arguments (line " + std::to_string(kl.line_no) + ")");
    } else if (kind == "set_atmosphere") {
        ev.kind = TimelineEvent::Kind::set_atmosphere;
        if (extra != 1)
            fail(path, "set_atmosphere needs one dB/km value (line " +
                           std::to_string(kl.line_no) + ")");
        ev.value = parse_double(path + ".event", kl.tokens[2]);
    } else if (kind == "set_offset") {
        ev.kind = TimelineEvent::Kind::set_offset;
        if (extra != 1)
            fail(path, "set_offset needs one meter value (line " + std::to_string(kl.line_no) + ")");
        ev.value = parse_double(path + ".event", kl.tokens[2]);
    } else {
        fail(path, "unknown event kind \"" + kind + "\" (line " + std::to_string(kl.line_no) + ")");
    }
    return ev;
}

void read_timeline(const Section& sec, ScenarioConfig& cfg) {
    KeyReader r(sec);
    if (const KeyLine* kl = r.find("duration_ms")) {
        if (kl->tokens.size() != 1)
            fail(sec.path, "duration_ms expects one number");
        cfg.timeline_duration_ms = parse_double(sec.path + ".duration_ms", kl->tokens[0]);
    }
    for (const KeyLine* kl : r.all("event"))
        cfg.timeline.push_back(read_event(sec.path, *kl));
    r.finish();
}

void read_sweep(const Section& sec, SweepSpec& sweep) {
    KeyReader r(sec);
    r.scalar("start_m", sweep.start_m);
    r.scalar("stop_m", sweep.stop_m);
    r.scalar("step_m", sweep.step_m);
    r.finish();
}

void read_weather(const Section& sec, ScenarioConfig& cfg) {
    AvailabilitySpec spec;
    KeyReader r(sec);
    r.scalar("samples", spec.samples);
    for (const KeyLine* kl : r.all("bin")) {
        if (kl->tokens.size() != 2)
            fail(sec.path, "bin expects \"ATTENUATION_DB_PER_KM PROBABILITY\" (line " +
                               std::to_string(kl->line_no) + ")");
        WeatherBin bin;
        bin.attenuation_db_per_km = parse_double(sec.path + ".bin", kl->tokens[0]);
        bin.probability = parse_double(sec.path + ".bin", kl->tokens[1]);
        spec.weather.bins.push_back(bin);
    }
    r.finish();
    if (spec.weather.bins.empty())
        fail(sec.path, "weather section needs at least one bin");
    cfg.availability = spec;
}

void read_axis(const Section& sec, KeyReader& r, const std::string& key, AxisRange& axis) {
    if (const KeyLine* kl = r.find(key)) {
        if (kl->tokens.size() != 2 && kl->tokens.size() != 3)
            fail(sec.path, "key \"" + key + "\" expects \"LO HI [RESOLUTION]\"");
        axis.lo = parse_double(sec.path + "." + key, kl->tokens[0]);
        axis.hi = parse_double(sec.path + "." + key, kl->tokens[1]);
        if (kl->tokens.size() == 3)
            axis.resolution = static_cast<int>(parse_int(sec.path + "." + key, kl->tokens[2]));
    }
}

void read_calibration(const Section& sec, CalibrationSpace& space) {
    KeyReader r(sec);
    read_axis(sec, r, "tx_power_w", space.tx_power_w);
    read_axis(sec, r, "noise_density", space.noise_density);
    read_axis(sec, r, "rolloff_mhz", space.rolloff_mhz);
    read_axis(sec, r, "gap_db", space.gap_db);
    r.scalar("failure_ceiling", space.failure_ceiling);
    r.finish();
}

// Shortest decimal form that parses back to exactly the same double; keeps
// serialized configs stable across write/parse cycles.
std::string shortest_double(double v) {
    char buf[40];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::stod(buf) == v)
            return buf;
    }
    return buf;
}

} // namespace

ConfigBundle parse_config(const std::string& text) {
    const Section root = parse_tree(text);
    ConfigBundle bundle;
    ScenarioConfig& cfg = bundle.scenario;

    KeyReader r(root);
    r.scalar("seed", cfg.seed);
    r.finish({"frontend", "tx_optics", "rx_optics", "ofdm", "adaptation", "mmwave", "channel",
              "timeline", "sweep", "weather", "calibration"});

    if (const Section* s = find_child(root, "frontend"))
        read_frontend(*s, cfg.frontend);
    if (const Section* s = find_child(root, "tx_optics"))
        read_tx_optics(*s, cfg.tx_optics);
    if (const Section* s = find_child(root, "rx_optics"))
        read_rx_optics(*s, cfg.rx_optics);
    if (const Section* s = find_child(root, "ofdm"))
        read_ofdm(*s, cfg.ofdm);
    if (const Section* s = find_child(root, "adaptation"))
        read_adaptation(*s, cfg.adaptation);
    if (const Section* s = find_child(root, "mmwave"))
        read_mmwave(*s, cfg.mmwave);
    if (const Section* s = find_child(root, "channel"))
        read_channel(*s, cfg.channel);
    if (const Section* s = find_child(root, "timeline"))
        read_timeline(*s, cfg);
    if (const Section* s = find_child(root, "sweep"))
        read_sweep(*s, cfg.sweep);
    if (const Section* s = find_child(root, "weather"))
        read_weather(*s, cfg);
    if (const Section* s = find_child(root, "calibration"))
        read_calibration(*s, bundle.space);

    validate(cfg);
    validate(bundle.space);
    return bundle;
}

ConfigBundle load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ConfigBundle& bundle) {
    const ScenarioConfig& cfg = bundle.scenario;
    std::ostringstream out;
    auto num = [](double v) { return shortest_double(v); };

    out << "seed = " << cfg.seed << "\n\n";

    out << "frontend {\n";
    out << "  tx_optical_power_w = " << num(cfg.frontend.tx_optical_power_w) << "\n";
    out << "  wavelength_nm = " << num(cfg.frontend.wavelength_nm) << "\n";
    out << "  responsivity_a_per_w = " << num(cfg.frontend.responsivity_a_per_w) << "\n";
    out << "  led_rolloff_freq_mhz = " << num(cfg.frontend.led_rolloff_freq_mhz) << "\n";
    out << "  led_rolloff_order = " << cfg.frontend.led_rolloff_order << "\n";
    out << "  thermal_noise_density = " << num(cfg.frontend.thermal_noise_density) << "\n";
    out << "  include_shot_noise = " << (cfg.frontend.include_shot_noise ? "true" : "false")
        << "\n";
    out << "}\n\n";

    out << "tx_optics {\n";
    out << "  divergence_half_angle_deg = " << num(cfg.tx_optics.divergence_half_angle_deg) << "\n";
    out << "  lens_area_cm2 = " << num(cfg.tx_optics.lens_area_cm2) << "\n";
    out << "  lens_focal_length_mm = " << num(cfg.tx_optics.lens_focal_length_mm) << "\n";
    out << "  led_half_angle_deg = " << num(cfg.tx_optics.led_half_angle_deg) << "\n";
    out << "}\n\n";

    out << "rx_optics {\n";
    out << "  lens_area_cm2 = " << num(cfg.rx_optics.lens_area_cm2) << "\n";
    out << "  lens_focal_length_mm = " << num(cfg.rx_optics.lens_focal_length_mm) << "\n";
    out << "}\n\n";

    out << "ofdm {\n";
    out << "  bandwidth_mhz = " << num(cfg.ofdm.bandwidth_mhz) << "\n";
    out << "  n_carriers = " << cfg.ofdm.n_carriers << "\n";
    out << "  max_bits_per_carrier = " << cfg.ofdm.max_bits_per_carrier << "\n";
    out << "  snr_gap_db = " << num(cfg.ofdm.snr_gap_db) << "\n";
    out << "  overhead_efficiency = " << num(cfg.ofdm.overhead_efficiency) << "\n";
    out << "  tdd_duty = " << num(cfg.ofdm.tdd_duty) << "\n";
    out << "}\n\n";

    out << "adaptation {\n";
    out << "  measurement_period_ms = " << num(cfg.adaptation.measurement_period_ms) << "\n";
    out << "  hysteresis_db = " << num(cfg.adaptation.hysteresis_db) << "\n";
    out << "  down_margin_db = " << num(cfg.adaptation.down_margin_db) << "\n";
    out << "}\n\n";

    out << "mmwave {\n";
    out << "  carrier_freq_ghz = " << num(cfg.mmwave.carrier_freq_ghz) << "\n";
    out << "  eirp_dbm = " << num(cfg.mmwave.eirp_dbm) << "\n";
    out << "  rx_antenna_gain_dbi = " << num(cfg.mmwave.rx_antenna_gain_dbi) << "\n";
    out << "  noise_figure_db = " << num(cfg.mmwave.noise_figure_db) << "\n";
    out << "  bandwidth_mhz = " << num(cfg.mmwave.bandwidth_mhz) << "\n";
    if (std::isfinite(cfg.mmwave.interference_floor_dbm))
        out << "  interference_floor_dbm = " << num(cfg.mmwave.interference_floor_dbm) << "\n";
    out << "  glass_penetration_loss_db = " << num(cfg.mmwave.glass_penetration_loss_db) << "\n";
    out << "  cinr_up_threshold_db = " << num(cfg.mmwave.cinr_up_threshold_db) << "\n";
    out << "}\n\n";

    out << "channel {\n";
    out << "  atmosphere {\n";
    out << "    attenuation_db_per_km = " << num(cfg.channel.atmosphere.attenuation_db_per_km)
        << "\n";
    out << "    scintillation_sigma_db = " << num(cfg.channel.atmosphere.scintillation_sigma_db)
        << "\n";
    out << "  }\n";
    for (const auto& pane : cfg.channel.panes) {
        out << "  pane {\n";
        out << "    label = " << pane.label << "\n";
        out << "    transmittance_db = " << num(pane.transmittance_db.value) << "\n";
        out << "  }\n";
    }
    out << "  geometry {\n";
    out << "    distance_m = " << num(cfg.channel.geometry.distance_m) << "\n";
    out << "    lateral_offset_m = " << num(cfg.channel.geometry.lateral_offset_m) << "\n";
    out << "  }\n";
    out << "}\n\n";

    out << "timeline {\n";
    if (cfg.timeline_duration_ms)
        out << "  duration_ms = " << num(*cfg.timeline_duration_ms) << "\n";
    for (const auto& ev : cfg.timeline) {
        out << "  event = " << num(ev.time_ms) << ' ';
        switch (ev.kind) {
        case TimelineEvent::Kind::insert_glass:
            out << "insert_glass";
            for (const auto& pane : ev.panes)
                out << ' ' << num(pane.transmittance_db.value);
            break;
        case TimelineEvent::Kind::remove_glass:
            out << "remove_glass";
            break;
        case TimelineEvent::Kind::set_atmosphere:
            out << "set_atmosphere " << num(ev.value);
            break;
        case TimelineEvent::Kind::set_offset:
            out << "set_offset " << num(ev.value);
            break;
        }
        out << "\n";
    }
    out << "}\n\n";

    out << "sweep {\n";
    out << "  start_m = " << num(cfg.sweep.start_m) << "\n";
    out << "  stop_m = " << num(cfg.sweep.stop_m) << "\n";
    out << "  step_m = " << num(cfg.sweep.step_m) << "\n";
    out << "}\n";

    if (cfg.availability) {
        out << "\nweather {\n";
        out << "  samples = " << cfg.availability->samples << "\n";
        for (const auto& bin : cfg.availability->weather.bins)
            out << "  bin = " << num(bin.attenuation_db_per_km) << ' ' << num(bin.probability)
                << "\n";
        out << "}\n";
    }

    const CalibrationSpace& sp = bundle.space;
    out << "\ncalibration {\n";
    out << "  tx_power_w = " << num(sp.tx_power_w.lo) << ' ' << num(sp.tx_power_w.hi) << ' '
        << sp.tx_power_w.resolution << "\n";
    out << "  noise_density = " << num(sp.noise_density.lo) << ' ' << num(sp.noise_density.hi)
        << ' ' << sp.noise_density.resolution << "\n";
    out << "  rolloff_mhz = " << num(sp.rolloff_mhz.lo) << ' ' << num(sp.rolloff_mhz.hi) << ' '
        << sp.rolloff_mhz.resolution << "\n";
    out << "  gap_db = " << num(sp.gap_db.lo) << ' ' << num(sp.gap_db.hi) << ' '
        << sp.gap_db.resolution << "\n";
    out << "  failure_ceiling = " << num(sp.failure_ceiling) << "\n";
    out << "}\n";

    return out.str();
}

void save_config(const ConfigBundle& bundle, const std::string& path) {
    const std::string text = serialize_config(bundle);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("config: cannot open \"" + path + "\" for writing");
    out << text;
    if (!out)
        throw io_error("config: write failed for \"" + path + "\"");
}

std::vector<CalibrationTarget> parse_targets(const std::string& text) {
    const Section root = parse_tree(text);
    KeyReader r(root);
    r.finish({"targets"});
    const Section* sec = find_child(root, "targets");
    if (!sec)
        throw model_error("targets: missing \"targets\" section");
    KeyReader tr(*sec);
    std::vector<CalibrationTarget> targets;
    for (const KeyLine* kl : tr.all("target")) {
        if (kl->tokens.size() != 2 && kl->tokens.size() != 3)
            fail(sec->path, "target expects \"DISTANCE_M RATE_MBPS [glass]\" (line " +
                                std::to_string(kl->line_no) + ")");
        CalibrationTarget t;
        t.distance_m = parse_double("targets.target", kl->tokens[0]);
        t.expected_rate_mbps = parse_double("targets.target", kl->tokens[1]);
        if (kl->tokens.size() == 3) {
            if (kl->tokens[2] != "glass")
                fail(sec->path, "target third field must be \"glass\" (line " +
                                    std::to_string(kl->line_no) + ")");
            t.glass = true;
        }
        targets.push_back(t);
    }
    tr.finish();
    validate(targets);
    return targets;
}

std::vector<CalibrationTarget> load_targets(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("targets: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_targets(buf.str());
}

} // namespace owcsim
