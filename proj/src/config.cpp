#include "ztk/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace ztk {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("at " + path + ": " + msg);
}

void expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown(const Json& j, const std::string& path,
                    const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(path, "unknown key '" + it.key() + "'");
}

double jdouble(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double jdouble_opt(const Json& obj, const std::string& key, const std::string& path,
                   double def) {
    if (!obj.contains(key)) return def;
    return jdouble(obj.at(key), path + "/" + key);
}

int jint_opt(const Json& obj, const std::string& key, const std::string& path, int def) {
    if (!obj.contains(key)) return def;
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
    return v.get<int>();
}

uint64_t ju64_opt(const Json& obj, const std::string& key, const std::string& path,
                  uint64_t def) {
    if (!obj.contains(key)) return def;
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected a non-negative integer");
    if (!v.is_number_unsigned() && v.get<int64_t>() < 0)
        fail(path + "/" + key, "expected a non-negative integer");
    return v.get<uint64_t>();
}

bool jbool_opt(const Json& obj, const std::string& key, const std::string& path, bool def) {
    if (!obj.contains(key)) return def;
    const Json& v = obj.at(key);
    if (!v.is_boolean()) fail(path + "/" + key, "expected true or false");
    return v.get<bool>();
}

std::string jstring(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<double> jdoubles(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(jdouble(j[i], path + "/" + std::to_string(i)));
    return out;
}

V2 jv2_opt(const Json& obj, const std::string& key, const std::string& path, const V2& def) {
    if (!obj.contains(key)) return def;
    auto v = jdoubles(obj.at(key), path + "/" + key);
    if (v.size() != 2) fail(path + "/" + key, "expected exactly 2 entries");
    return V2(v[0], v[1]);
}

Json v2_json(const V2& v) { return Json::array({v(0), v(1)}); }

}  // namespace

// ---------------------------------------------------------------- reference

V2 ReferenceSpec::at(double t) const {
    switch (type) {
        case Type::Constant:
            return V2(constant_level, constant_level);
        case Type::Steps: {
            size_t i = 0;
            while (i < step_times.size() && t >= step_times[i] - 1e-12) ++i;
            return V2(step_levels[i], step_levels[i]);
        }
        case Type::Sinusoid: {
            const double v = base + amplitude * std::sin(omega * t);
            return V2(v, v);
        }
    }
    throw ConfigError("reference: unknown profile type");
}

void ReferenceSpec::validate(double t_end) const {
    (void)t_end;
    switch (type) {
        case Type::Constant:
            if (!(constant_level > 0.0)) fail("/reference/level", "must be > 0");
            return;
        case Type::Steps: {
            if (step_levels.size() != step_times.size() + 1)
                fail("/reference/levels", "need exactly one more level than change times");
            for (size_t i = 0; i + 1 < step_times.size(); ++i)
                if (!(step_times[i] < step_times[i + 1]))
                    fail("/reference/times", "change times must be strictly ascending");
            for (double l : step_levels)
                if (!(l > 0.0)) fail("/reference/levels", "levels must be > 0");
            return;
        }
        case Type::Sinusoid:
            if (!(omega > 0.0)) fail("/reference/omega", "must be > 0");
            if (!(base - std::abs(amplitude) > 0.0))
                fail("/reference/base", "base - |amplitude| must stay > 0");
            return;
    }
    fail("/reference/type", "unknown profile type");
}

void NoiseSpec::validate() const {
    if (variance < 0.0 || !std::isfinite(variance))
        fail("/noise/variance", "must be finite and >= 0");
}

FourTankParams PlantSpec::resolve(double gravity) const {
    if (inline_params) return params;
    if (preset == "actual") return four_tank_actual_params(gravity);
    if (preset == "nominal") return four_tank_nominal_params(gravity);
    throw ConfigError("at /plant/preset: unknown parameter set '" + preset +
                      "' (expected 'actual' or 'nominal')");
}

// ----------------------------------------------------------------- validate

void ScenarioConfig::validate() const {
    if (!(gravity > 0.0)) fail("/gravity", "must be > 0");
    grid.grid();  // ctor performs the grid checks
    reference.validate(grid.t_end);
    noise.validate();
    plant.resolve(gravity).validate();
    nominal.resolve(gravity).validate();
    attack.validate();
    detector.validate();
    recovery.validate();
    if (attack.enabled) {
        if (!(attack.t_on < attack.t_off)) fail("/attack", "t_on must be < t_off");
        if (attack.t_off > grid.t_end + 1e-12) fail("/attack/t_off", "must be <= grid t_end");
        if (attack.t_on < grid.t0 - 1e-12) fail("/attack/t_on", "must be >= grid t0");
    }
    // the detector arms at t_on even in attack-free runs; it must exist on the grid
    if (attack.t_on < grid.t0 - 1e-12 || attack.t_on > grid.t_end + 1e-12)
        fail("/attack/t_on", "must lie inside the simulated horizon");
}

// -------------------------------------------------------------------- parse

namespace {

PlantSpec parse_plant(const Json& j, const std::string& path, const char* def_preset) {
    PlantSpec out;
    out.preset = def_preset;
    if (j.is_null()) return out;
    expect_object(j, path);
    if (j.contains("preset")) {
        reject_unknown(j, path, {"preset"});
        out.preset = jstring(j.at("preset"), path + "/preset");
        return out;
    }
    reject_unknown(j, path,
                   {"A_L", "A_R", "a_L", "a_R", "k1", "k2", "sigma1", "sigma2", "g"});
    out.inline_params = true;
    FourTankParams d;  // defaults for omitted entries
    out.params.A_L = jdouble_opt(j, "A_L", path, d.A_L);
    out.params.A_R = jdouble_opt(j, "A_R", path, d.A_R);
    out.params.a_L = jdouble_opt(j, "a_L", path, d.a_L);
    out.params.a_R = jdouble_opt(j, "a_R", path, d.a_R);
    out.params.k1 = jdouble_opt(j, "k1", path, d.k1);
    out.params.k2 = jdouble_opt(j, "k2", path, d.k2);
    out.params.sigma1 = jdouble_opt(j, "sigma1", path, d.sigma1);
    out.params.sigma2 = jdouble_opt(j, "sigma2", path, d.sigma2);
    out.params.g = jdouble_opt(j, "g", path, d.g);
    return out;
}

ReferenceSpec parse_reference(const Json& j, const std::string& path) {
    ReferenceSpec out;
    if (j.is_null()) return out;
    expect_object(j, path);
    const std::string type =
        j.contains("type") ? jstring(j.at("type"), path + "/type") : "constant";
    if (type == "constant") {
        reject_unknown(j, path, {"type", "level"});
        out.type = ReferenceSpec::Type::Constant;
        out.constant_level = jdouble_opt(j, "level", path, 10.0);
    } else if (type == "steps") {
        reject_unknown(j, path, {"type", "times", "levels"});
        out.type = ReferenceSpec::Type::Steps;
        if (!j.contains("times") || !j.contains("levels"))
            fail(path, "step profile needs 'times' and 'levels'");
        out.step_times = jdoubles(j.at("times"), path + "/times");
        out.step_levels = jdoubles(j.at("levels"), path + "/levels");
    } else if (type == "sinusoid") {
        reject_unknown(j, path, {"type", "base", "amplitude", "omega"});
        out.type = ReferenceSpec::Type::Sinusoid;
        out.base = jdouble_opt(j, "base", path, 10.0);
        out.amplitude = jdouble_opt(j, "amplitude", path, 1.0);
        out.omega = jdouble_opt(j, "omega", path, 0.05);
    } else {
        fail(path + "/type", "expected 'constant', 'steps' or 'sinusoid'");
    }
    return out;
}

NoiseSpec parse_noise(const Json& j, const std::string& path) {
    NoiseSpec out;
    if (j.is_null()) return out;
    expect_object(j, path);
    const std::string type =
        j.contains("type") ? jstring(j.at("type"), path + "/type") : "none";
    if (type == "none") {
        reject_unknown(j, path, {"type"});
        out.type = NoiseSpec::Type::None;
    } else if (type == "gaussian") {
        reject_unknown(j, path, {"type", "variance", "seed"});
        out.type = NoiseSpec::Type::Gaussian;
        out.variance = jdouble_opt(j, "variance", path, 0.01);
        out.seed = ju64_opt(j, "seed", path, 1);
    } else {
        fail(path + "/type", "expected 'none' or 'gaussian'");
    }
    return out;
}

AttackConfig parse_attack(const Json& j, const std::string& path) {
    AttackConfig out;
    if (j.is_null()) return out;
    expect_object(j, path);
    reject_unknown(j, path,
                   {"enabled", "t_on", "t_off", "delta0", "mode", "direction_seed"});
    out.enabled = jbool_opt(j, "enabled", path, true);
    out.t_on = jdouble_opt(j, "t_on", path, out.t_on);
    out.t_off = jdouble_opt(j, "t_off", path, out.t_off);
    out.delta0 = jv2_opt(j, "delta0", path, out.delta0);
    out.direction_seed = ju64_opt(j, "direction_seed", path, out.direction_seed);
    if (j.contains("mode")) {
        const std::string m = jstring(j.at("mode"), path + "/mode");
        if (m == "zero-dynamics")
            out.mode = AttackConfig::Mode::ZeroDynamics;
        else if (m == "random-direction")
            out.mode = AttackConfig::Mode::RandomDirection;
        else
            fail(path + "/mode", "expected 'zero-dynamics' or 'random-direction'");
    }
    return out;
}

DetectorConfig parse_detector(const Json& j, const std::string& path) {
    DetectorConfig out;
    if (j.is_null()) return out;
    expect_object(j, path);
    reject_unknown(j, path,
                   {"threshold", "hold_count", "smooth_window", "bias_tau",
                    "calibration_window", "threshold_floor"});
    if (j.contains("threshold") && !j.at("threshold").is_null())
        out.threshold = jdouble(j.at("threshold"), path + "/threshold");
    out.hold_count = jint_opt(j, "hold_count", path, out.hold_count);
    out.smooth_window = jdouble_opt(j, "smooth_window", path, out.smooth_window);
    out.bias_tau = jdouble_opt(j, "bias_tau", path, out.bias_tau);
    out.calibration_window =
        jdouble_opt(j, "calibration_window", path, out.calibration_window);
    out.threshold_floor = jdouble_opt(j, "threshold_floor", path, out.threshold_floor);
    return out;
}

RecoveryConfig parse_recovery(const Json& j, const std::string& path) {
    RecoveryConfig out;
    if (j.is_null()) return out;
    expect_object(j, path);
    reject_unknown(j, path, {"enabled", "lambda", "drift_center", "activation"});
    out.enabled = jbool_opt(j, "enabled", path, true);
    out.lambda = jdouble_opt(j, "lambda", path, out.lambda);
    if (j.contains("drift_center")) {
        const std::string d = jstring(j.at("drift_center"), path + "/drift_center");
        if (d == "nominal")
            out.drift_center = RecoveryConfig::Drift::NominalEquilibrium;
        else if (d == "plant")
            out.drift_center = RecoveryConfig::Drift::PlantEquilibrium;
        else
            fail(path + "/drift_center", "expected 'nominal' or 'plant'");
    }
    if (j.contains("activation")) {
        const std::string a = jstring(j.at("activation"), path + "/activation");
        if (a == "odd-sqrt")
            out.activation = RecoveryConfig::Activation::OddSqrt;
        else if (a == "clamped")
            out.activation = RecoveryConfig::Activation::Clamped;
        else
            fail(path + "/activation", "expected 'odd-sqrt' or 'clamped'");
    }
    return out;
}

GridSpec parse_grid(const Json& j, const std::string& path) {
    GridSpec out;
    if (j.is_null()) return out;
    expect_object(j, path);
    reject_unknown(j, path, {"t0", "t_end", "dt"});
    out.t0 = jdouble_opt(j, "t0", path, out.t0);
    out.t_end = jdouble_opt(j, "t_end", path, out.t_end);
    out.dt = jdouble_opt(j, "dt", path, out.dt);
    return out;
}

OutputSpec parse_outputs(const Json& j, const std::string& path) {
    OutputSpec out;
    if (j.is_null()) return out;
    expect_object(j, path);
    reject_unknown(j, path, {"csv", "svg", "metrics"});
    out.csv = jbool_opt(j, "csv", path, out.csv);
    out.svg = jbool_opt(j, "svg", path, out.svg);
    out.metrics = jbool_opt(j, "metrics", path, out.metrics);
    return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
    expect_object(j, "/");
    reject_unknown(j, "/",
                   {"plant", "nominal", "gravity", "reference", "noise", "attack",
                    "detector", "recovery", "grid", "outputs"});
    ScenarioConfig c;
    c.plant = parse_plant(j.value("plant", Json()), "/plant", "actual");
    c.nominal = parse_plant(j.value("nominal", Json()), "/nominal", "nominal");
    c.gravity = jdouble_opt(j, "gravity", "", 981.0);
    c.reference = parse_reference(j.value("reference", Json()), "/reference");
    c.noise = parse_noise(j.value("noise", Json()), "/noise");
    c.attack = parse_attack(j.value("attack", Json()), "/attack");
    c.detector = parse_detector(j.value("detector", Json()), "/detector");
    c.recovery = parse_recovery(j.value("recovery", Json()), "/recovery");
    c.grid = parse_grid(j.value("grid", Json()), "/grid");
    c.outputs = parse_outputs(j.value("outputs", Json()), "/outputs");
    c.validate();
    return c;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

// ---------------------------------------------------------------- serialize

namespace {

Json plant_json(const PlantSpec& p) {
    Json j;
    if (!p.inline_params) {
        j["preset"] = p.preset;
        return j;
    }
    j["A_L"] = p.params.A_L;
    j["A_R"] = p.params.A_R;
    j["a_L"] = p.params.a_L;
    j["a_R"] = p.params.a_R;
    j["k1"] = p.params.k1;
    j["k2"] = p.params.k2;
    j["sigma1"] = p.params.sigma1;
    j["sigma2"] = p.params.sigma2;
    j["g"] = p.params.g;
    return j;
}

}  // namespace

Json ScenarioConfig::to_json() const {
    Json j;
    j["plant"] = plant_json(plant);
    j["nominal"] = plant_json(nominal);
    j["gravity"] = gravity;

    Json r;
    switch (reference.type) {
        case ReferenceSpec::Type::Constant:
            r["type"] = "constant";
            r["level"] = reference.constant_level;
            break;
        case ReferenceSpec::Type::Steps:
            r["type"] = "steps";
            r["times"] = reference.step_times;
            r["levels"] = reference.step_levels;
            break;
        case ReferenceSpec::Type::Sinusoid:
            r["type"] = "sinusoid";
            r["base"] = reference.base;
            r["amplitude"] = reference.amplitude;
            r["omega"] = reference.omega;
            break;
    }
    j["reference"] = r;

    Json n;
    if (noise.type == NoiseSpec::Type::None) {
        n["type"] = "none";
    } else {
        n["type"] = "gaussian";
        n["variance"] = noise.variance;
        n["seed"] = noise.seed;
    }
    j["noise"] = n;

    Json a;
    a["enabled"] = attack.enabled;
    a["t_on"] = attack.t_on;
    a["t_off"] = attack.t_off;
    a["delta0"] = v2_json(attack.delta0);
    a["mode"] = attack.mode == AttackConfig::Mode::ZeroDynamics ? "zero-dynamics"
                                                                : "random-direction";
    a["direction_seed"] = attack.direction_seed;
    j["attack"] = a;

    Json d;
    if (detector.auto_threshold())
        d["threshold"] = nullptr;
    else
        d["threshold"] = detector.threshold;
    d["hold_count"] = detector.hold_count;
    d["smooth_window"] = detector.smooth_window;
    d["bias_tau"] = detector.bias_tau;
    d["calibration_window"] = detector.calibration_window;
    d["threshold_floor"] = detector.threshold_floor;
    j["detector"] = d;

    Json rec;
    rec["enabled"] = recovery.enabled;
    rec["lambda"] = recovery.lambda;
    rec["drift_center"] =
        recovery.drift_center == RecoveryConfig::Drift::NominalEquilibrium ? "nominal"
                                                                           : "plant";
    rec["activation"] =
        recovery.activation == RecoveryConfig::Activation::OddSqrt ? "odd-sqrt"
                                                                   : "clamped";
    j["recovery"] = rec;

    Json g;
    g["t0"] = grid.t0;
    g["t_end"] = grid.t_end;
    g["dt"] = grid.dt;
    j["grid"] = g;

    Json o;
    o["csv"] = outputs.csv;
    o["svg"] = outputs.svg;
    o["metrics"] = outputs.metrics;
    j["outputs"] = o;
    return j;
}

std::string ScenarioConfig::config_hash() const {
    const std::string s = to_json().dump();
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace ztk
