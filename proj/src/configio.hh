#ifndef OWCSIM_CONFIGIO_HH
#define OWCSIM_CONFIGIO_HH

// Scenario config text format: nested brace sections mirroring the module
// types, `key = value` lines, `#` comments.  Fail-closed: unknown sections,
// unknown keys, duplicate scalars, and malformed values are all errors that
// name the offending field.  The writer emits a canonical form that parses
// back to an identical scenario (shortest round-trip number formatting).

#include <string>
#include <vector>

#include "calib.hh"
#include "scenario.hh"

namespace owcsim {

struct ConfigBundle {
    ScenarioConfig scenario;
    CalibrationSpace space; // defaults unless the config has a calibration section
};

ConfigBundle parse_config(const std::string& text);
ConfigBundle load_config(const std::string& path);

std::string serialize_config(const ConfigBundle& bundle);
void save_config(const ConfigBundle& bundle, const std::string& path);

// Targets file: a `targets { target = DIST RATE [glass] }` section.
std::vector<CalibrationTarget> parse_targets(const std::string& text);
std::vector<CalibrationTarget> load_targets(const std::string& path);

} // namespace owcsim

#endif
