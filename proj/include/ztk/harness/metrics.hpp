#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "ztk/harness/config.hpp"

namespace ztk {

// Per-scenario performance figures plus the diagnostics the pass/fail checks
// read. Optionals render as null in JSON ("no detection" is an outcome, not
// an error). gamma is present only when the clean / attacked / recovered
// triple actually ran.
struct MetricsReport {
    std::optional<double> detection_time;  // flag time - t_on
    std::optional<double> gamma;           // internal-deviation ratio
    double max_output_deviation = 0.0;     // max |x - ref| over the window
    double residual_steady_norm = 0.0;     // max ||r|| in the pre-onset window

    // metadata
    uint64_t seed = 0;
    double dt = 0.0;
    std::string config_hash;

    struct Diagnostics {
        std::optional<double> threshold;
        std::optional<double> flag_time;
        int64_t false_positives_pre_arm = 0;
        std::optional<double> drain_deviation;     // no-recovery internal drift
        std::optional<double> alpha_peak;          // max |alpha_i| over window
        std::optional<double> r_minus_alpha_late;  // settled residual-vs-injection gap
        std::optional<double> r_minus_alpha_ratio;
        std::optional<double> zr_minus_alpha_max;  // estimator-vs-injection, whole window
        std::optional<double> zr_minus_alpha_late;
        std::optional<double> zr_minus_alpha_ratio;
        std::optional<double> clean_tracking_error;
        std::optional<double> tracking_ratio;      // vs the attack-free run
        bool attack_clamped = false;
        bool replica_clamped = false;
        bool plant_clamped = false;
        int64_t singular_skips = 0;
    } diag;
};

Json metrics_to_json(const MetricsReport& m);

}  // namespace ztk
