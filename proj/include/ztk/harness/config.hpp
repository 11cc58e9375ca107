#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ztk/attack/attack.hpp"
#include "ztk/detect/detector.hpp"
#include "ztk/plant/four_tank.hpp"
#include "ztk/recover/recovery.hpp"
#include "ztk/sim/grid.hpp"

namespace ztk {

using Json = nlohmann::ordered_json;

// Output setpoint over time; both channels share one profile. Must stay
// strictly positive (the controller feedforward takes square roots of it).
struct ReferenceSpec {
    enum class Type { Constant, Steps, Sinusoid };

    Type type = Type::Constant;
    double constant_level = 10.0;
    std::vector<double> step_times;   // strictly ascending change instants
    std::vector<double> step_levels;  // one more entry than step_times
    double base = 10.0, amplitude = 1.0, omega = 0.05;

    V2 at(double t) const;
    double level(double t) const { return at(t).mean(); }
    void validate(double t_end) const;
};

struct NoiseSpec {
    enum class Type { None, Gaussian };
    Type type = Type::None;
    double variance = 0.01;  // per-sample, added to each measured component
    uint64_t seed = 1;

    void validate() const;
};

struct GridSpec {
    double t0 = 0.0, t_end = 1000.0, dt = 0.01;
    TimeGrid grid() const { return TimeGrid(t0, t_end, dt); }
};

struct OutputSpec {
    bool csv = true, svg = true, metrics = true;
};

// Either a named parameter set or inline values. The top-level gravity knob
// applies to named sets; inline values may carry their own g.
struct PlantSpec {
    std::string preset = "actual";  // "actual" | "nominal"; empty = inline
    FourTankParams params;          // meaningful when inline
    bool inline_params = false;

    FourTankParams resolve(double gravity) const;
};

struct ScenarioConfig {
    PlantSpec plant;    // defaults to the "actual" parameter set
    PlantSpec nominal;  // defaults to the "nominal" parameter set
    double gravity = 981.0;
    ReferenceSpec reference;
    NoiseSpec noise;
    AttackConfig attack;
    DetectorConfig detector;
    RecoveryConfig recovery;
    GridSpec grid;
    OutputSpec outputs;

    void validate() const;  // cross-field checks; throws ConfigError

    static ScenarioConfig from_json(const Json& j);
    static ScenarioConfig from_file(const std::string& path);
    Json to_json() const;          // canonical: every field, fixed order
    std::string config_hash() const;  // FNV-1a 64 of the canonical form, hex
};

}  // namespace ztk
