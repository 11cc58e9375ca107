#include "ztk/harness/metrics.hpp"

namespace ztk {

namespace {

Json opt(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

Json metrics_to_json(const MetricsReport& m) {
    Json j;
    j["detection_time"] = opt(m.detection_time);
    j["gamma"] = opt(m.gamma);
    j["max_output_deviation"] = m.max_output_deviation;
    j["residual_steady_norm"] = m.residual_steady_norm;

    Json meta;
    meta["seed"] = m.seed;
    meta["dt"] = m.dt;
    meta["config_hash"] = m.config_hash;
    j["metadata"] = meta;

    Json d;
    d["threshold"] = opt(m.diag.threshold);
    d["flag_time"] = opt(m.diag.flag_time);
    d["false_positives_pre_arm"] = m.diag.false_positives_pre_arm;
    d["drain_deviation"] = opt(m.diag.drain_deviation);
    d["alpha_peak"] = opt(m.diag.alpha_peak);
    d["r_minus_alpha_late"] = opt(m.diag.r_minus_alpha_late);
    d["r_minus_alpha_ratio"] = opt(m.diag.r_minus_alpha_ratio);
    d["zr_minus_alpha_max"] = opt(m.diag.zr_minus_alpha_max);
    d["zr_minus_alpha_late"] = opt(m.diag.zr_minus_alpha_late);
    d["zr_minus_alpha_ratio"] = opt(m.diag.zr_minus_alpha_ratio);
    d["clean_tracking_error"] = opt(m.diag.clean_tracking_error);
    d["tracking_ratio"] = opt(m.diag.tracking_ratio);
    d["attack_clamped"] = m.diag.attack_clamped;
    d["replica_clamped"] = m.diag.replica_clamped;
    d["plant_clamped"] = m.diag.plant_clamped;
    d["singular_skips"] = m.diag.singular_skips;
    j["diagnostics"] = d;
    return j;
}

}  // namespace ztk
