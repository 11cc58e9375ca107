#include "ztk/harness/presets.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

namespace ztk {

namespace fs = std::filesystem;

namespace {

bool usable_dir(const fs::path& p) {
    std::error_code ec;
    return fs::is_directory(p, ec);
}

fs::path exe_dir() {
    std::error_code ec;
    const fs::path p = fs::read_symlink("/proc/self/exe", ec);
    if (ec) return {};
    return p.parent_path();
}

}  // namespace

std::string find_presets_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) {
        if (!usable_dir(explicit_dir))
            throw ConfigError("presets directory not found: " + explicit_dir);
        return explicit_dir;
    }
    if (const char* env = std::getenv("ZTK_PRESETS_DIR")) {
        if (usable_dir(env)) return env;
        throw ConfigError(std::string("ZTK_PRESETS_DIR points to a missing directory: ") +
                          env);
    }
    if (usable_dir("presets")) return "presets";
    const fs::path ed = exe_dir();
    if (!ed.empty()) {
        for (const char* rel : {"presets", "../presets", "../share/ztk/presets"}) {
            const fs::path cand = ed / rel;
            if (usable_dir(cand)) return cand.lexically_normal().string();
        }
    }
    throw ConfigError(
        "no presets directory found (tried ./presets and the executable's vicinity; "
        "set ZTK_PRESETS_DIR or pass --presets-dir)");
}

std::vector<std::string> list_presets(const std::string& dir) {
    if (!usable_dir(dir)) throw ConfigError("presets directory not found: " + dir);
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const fs::path p = e.path();
        if (p.extension() == ".json") names.push_back(p.stem().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

ScenarioConfig load_preset(const std::string& name, const std::string& dir) {
    fs::path p = fs::path(dir) / (name + ".json");
    std::error_code ec;
    if (!fs::exists(p, ec)) {
        const fs::path direct = fs::path(dir) / name;
        if (fs::exists(direct, ec)) {
            p = direct;
        } else {
            std::string known;
            for (const auto& n : list_presets(dir)) known += (known.empty() ? "" : ", ") + n;
            throw ConfigError("unknown preset '" + name + "' (available: " + known + ")");
        }
    }
    return ScenarioConfig::from_file(p.string());
}

}  // namespace ztk
