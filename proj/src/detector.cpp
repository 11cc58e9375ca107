#include "ztk/detect/detector.hpp"

#include <algorithm>

namespace ztk {

void DetectorConfig::validate() const {
    if (!auto_threshold() && !std::isfinite(threshold))
        throw ConfigError("detector: threshold must be finite and > 0, or unset for auto");
    if (hold_count < 1) throw ConfigError("detector: hold count must be >= 1");
    if (smooth_window < 0.0) throw ConfigError("detector: smoothing window must be >= 0");
    if (!(bias_tau > 0.0)) throw ConfigError("detector: trim time constant must be > 0");
    if (calibration_window < 0.0) throw ConfigError("detector: calibration window must be >= 0");
    if (!(threshold_floor >= 0.0)) throw ConfigError("detector: threshold floor must be >= 0");
    if (!(level_floor > 0.0)) throw ConfigError("detector: level floor must be > 0");
}

Detector::Detector(const DetectorConfig& cfg, double dt, double t_arm)
    : cfg_(cfg), dt_(dt), t_arm_(t_arm) {
    cfg_.validate();
    if (!(dt > 0.0)) throw ConfigError("detector: dt must be > 0");
    ma_len_ = std::max<int>(1, static_cast<int>(std::lround(cfg_.smooth_window / dt)));
    // restore the trim from before the whole exceedance run-up: smoothing
    // span + hold span + a tenth of a second of margin
    lookback_ = static_cast<int>(
        std::lround((cfg_.smooth_window + cfg_.hold_count * dt + 0.1) / dt));
    tau_ = cfg_.auto_threshold() ? std::numeric_limits<double>::quiet_NaN()
                                 : cfg_.threshold;
}

void Detector::reset() { *this = Detector(cfg_, dt_, t_arm_); }

ResidualSample Detector::update(double t, const V2& r_raw, const V2& feedthrough,
                                double level) {
    if (!r_raw.allFinite() || !feedthrough.allFinite())
        throw NonFiniteState(t, "detector input");
    const double root = std::sqrt(std::max(level, cfg_.level_floor));
    const V2 mismatch = r_raw - feedthrough;   // trim * root + injected part
    const V2 p = mismatch / root;

    if (first_) {
        trim_ = p;  // swallow the startup offset outright
        first_ = false;
    }

    ResidualSample s;
    s.t = t;
    s.r = mismatch - trim_ * root;
    s.norm = s.r.norm();

    if (!flagged_) {
        // slow tracker; anything much faster than bias_tau passes through
        const double a = std::min(dt_ / cfg_.bias_tau, 1.0);
        hist_.push_back(trim_);
        while (static_cast<int>(hist_.size()) > lookback_ + 1) hist_.pop_front();
        trim_ += a * (p - trim_);
    }

    ma_buf_.push_back(s.r);
    ma_sum_ += s.r;
    while (static_cast<int>(ma_buf_.size()) > ma_len_) {
        ma_sum_ -= ma_buf_.front();
        ma_buf_.pop_front();
    }
    s.stat = (ma_sum_ / static_cast<double>(ma_buf_.size())).norm();

    const bool armed = t >= t_arm_ - 1e-12;
    if (!armed && t >= t_arm_ - cfg_.calibration_window - 1e-12)
        cal_max_ = std::max(cal_max_, s.stat);
    if (armed && std::isnan(tau_))
        tau_ = 3.0 * cal_max_ + cfg_.threshold_floor;

    if (armed && !flagged_) {
        count_ = (s.stat > tau_) ? count_ + 1 : 0;
        if (count_ >= cfg_.hold_count) {
            flagged_ = true;
            flag_time_ = t;
            // keep only the restore point; everything since is contaminated
            trim_ = hist_.front();
            hist_.clear();
        }
    }
    s.flagged = flagged_;
    return s;
}

}  // namespace ztk
