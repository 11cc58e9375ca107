#pragma once
#include <optional>
#include <string>

#include "ztk/harness/config.hpp"
#include "ztk/harness/metrics.hpp"
#include "ztk/sim/trajectory.hpp"

namespace ztk {

// One closed-loop simulation. The four kinds share every block and differ
// only in which switches are live:
//   Clean      no injection, no recovery   (baseline)
//   Attack     injection on, recovery off  (undefended)
//   Recovered  injection on, recovery engages on the detector flag
//   Probe      like Attack but the injection direction is randomized
//              (equal magnitude, no output-cancelling structure)
enum class RunKind { Clean, Attack, Recovered, Probe };

struct RunResult {
    Trajectory traj;
    std::optional<double> flag_time;
    std::optional<double> threshold;
    bool attack_clamped = false;
    bool replica_clamped = false;
    bool plant_clamped = false;
    int64_t singular_skips = 0;
};

struct ScenarioResult {
    ScenarioConfig cfg;
    MetricsReport metrics;
    std::optional<RunResult> clean;
    std::optional<RunResult> attacked;
    std::optional<RunResult> recovered;

    // most featureful run: recovered, else attacked, else clean
    const RunResult& primary() const;
};

RunResult run_single(const ScenarioConfig& cfg, RunKind kind);

// Runs the coordinated set (clean always; attacked / recovered when the
// config enables them), computes the metrics.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Writes trajectory.csv, metrics.json and the SVG plots into out_dir
// (created if missing), honoring cfg.outputs.
void emit_outputs(const ScenarioResult& res, const std::string& out_dir);

}  // namespace ztk
