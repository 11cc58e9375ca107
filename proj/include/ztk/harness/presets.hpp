#pragma once
#include <string>
#include <vector>

#include "ztk/harness/config.hpp"

namespace ztk {

// Locates the directory of shipped scenario files. Order: the explicit
// argument, the ZTK_PRESETS_DIR environment variable, ./presets relative to
// the working directory, then presets/ next to (or one level above) the
// executable. ConfigError if none exists.
std::string find_presets_dir(const std::string& explicit_dir = "");

// Names (file stems) of all *.json files in the directory, sorted.
std::vector<std::string> list_presets(const std::string& dir);

// Loads "<dir>/<name>.json" (a literal file name also works).
ScenarioConfig load_preset(const std::string& name, const std::string& dir);

}  // namespace ztk
