#pragma once
#include <cmath>
#include <deque>
#include <limits>

#include "ztk/plant/four_tank.hpp"

namespace ztk {

// Sustained-threshold residual evaluation with a slow trim tracker.
//
// The raw residual (measured plant input minus copy-controller output) is
// contaminated by two things the monitor can account for without seeing the
// injection: the feedback terms both controllers generate from known signals
// (the caller passes those in as a feedthrough term and they are subtracted
// exactly), and the actuation-trim mismatch between the two parameter sets.
// The trim scales with the square root of the operating level, because pump
// trim balances outflows that follow Torricelli's law; a first-order tracker
// therefore estimates the level-normalized trim p and the corrected residual
// is r = (r_raw - feedthrough) - p * sqrt(level). Setpoint changes move the
// trim and its estimate by the same factor, so they cancel from r.
//
// When the flag latches, the tracker is rolled back to its value from before
// the exceedance built up (so it cannot have swallowed part of the injection)
// and frozen; the live sqrt(level) factor keeps the correction valid if the
// setpoint moves afterwards.
struct DetectorConfig {
    double threshold = std::numeric_limits<double>::quiet_NaN();  // NaN = auto
    int hold_count = 10;             // consecutive samples above tau to latch
    double smooth_window = 0.0;      // s of vector moving average (0 = none)
    double bias_tau = 0.5;           // s, trim tracker time constant
    double calibration_window = 100.0;  // s before arm used by auto threshold
    double threshold_floor = 1e-3;   // additive floor of the auto threshold
    double level_floor = 1e-6;       // guards the sqrt-level normalization

    bool auto_threshold() const { return !(threshold > 0.0); }
    void validate() const;
};

struct ResidualSample {
    double t = 0.0;
    V2 r{0.0, 0.0};      // corrected residual
    double norm = 0.0;   // ||r||
    double stat = 0.0;   // smoothed statistic compared against tau
    bool flagged = false;
};

class Detector {
public:
    // t_arm: instant from which exceedances count (and, in auto mode, at
    // which the threshold is resolved from the preceding calibration window).
    Detector(const DetectorConfig& cfg, double dt, double t_arm);

    // feedthrough: the part of the clean-loop input mismatch the monitor can
    // compute from its own signals (reference feedback of the plant-side
    // controller minus the copy-controller output); level: current reference
    // level, drives the sqrt-level trim normalization.
    ResidualSample update(double t, const V2& r_raw, const V2& feedthrough,
                          double level);

    bool flagged() const { return flagged_; }
    double flag_time() const { return flag_time_; }  // NaN until latched
    double threshold() const { return tau_; }        // NaN until resolved
    const V2& trim() const { return trim_; }         // level-normalized estimate

    void reset();  // back to the just-constructed state

private:
    DetectorConfig cfg_;
    double dt_;
    double t_arm_;

    bool first_ = true;
    V2 trim_{0.0, 0.0};
    std::deque<V2> ma_buf_;          // last few corrected residuals
    int ma_len_;                     // moving-average length, samples
    V2 ma_sum_{0.0, 0.0};

    std::deque<V2> hist_;            // trim per sample for the latch rollback
    int lookback_;                   // samples between latch and restored trim

    double cal_max_ = 0.0;
    double tau_;
    int count_ = 0;
    bool flagged_ = false;
    double flag_time_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace ztk
