#pragma once
#include <cstdint>
#include <limits>
#include <string>

#include "ztk/plant/four_tank.hpp"
#include "ztk/plant/operating_point.hpp"
#include "ztk/sim/trajectory.hpp"

namespace ztk {

// Online adaptive estimator engaged by the detector flag. A weight vector w
// (same shape as the internal coordinates) estimates the internal state the
// injected signal is generated from: the output z_r is the inflow imbalance
// between the healthy equilibrium and that estimate, which is exactly the
// form of the injected signal itself. w is adapted by a normalized residual
// gradient plus a drift term that replays the injection's own internal
// dynamics, so once w locks on, the drift carries it along and only model
// error is left to the gradient. z_r is subtracted at the plant input,
// restoring the healthy input as z_r approaches the injection.
struct RecoveryConfig {
    enum class Drift { NominalEquilibrium, PlantEquilibrium };
    enum class Activation {
        OddSqrt,   // sign(s)*sqrt(|s|): odd extension, output range unrestricted
        Clamped,   // sqrt(max(s,0)): physical radical, matches the generator's
                   // own saturation when an estimated upper tank runs empty
    };

    bool enabled = true;
    double lambda = 0.5;  // adaptation rate > 0
    Drift drift_center = Drift::NominalEquilibrium;
    Activation activation = Activation::Clamped;

    void validate() const;
};

class Recovery {
public:
    Recovery(const NormalFormPlant& nominal, const OperatingPoint& op,
             const RecoveryConfig& cfg);

    // Called on the detector flag; starts the weights at the plant equilibrium
    // so the emitted signal starts at exactly zero.
    void engage(double t);
    bool engaged() const { return engaged_; }
    double engage_time() const { return engage_time_; }  // NaN if never engaged

    // Estimator output (zero while disengaged).
    V2 z_r() const;

    // One adaptation step with the residual e held over [t, t+dt]. No-op
    // while disengaged.
    void advance(const V2& e, double t, double dt);

    // d z_r / d w, analytic (diagonal for this plant); used by the adaptation
    // normalization and cross-checked against finite differences in tests.
    M2 jacobian(const V2& w) const;

    const V2& w() const { return w_; }
    int64_t singular_skips() const { return singular_skips_; }
    const RecoveryConfig& config() const { return cfg_; }

private:
    double act(double s) const;
    double act_deriv(double s) const;
    double rad1n(const V2& v) const;  // nominal-model radicands at frozen x*
    double rad2n(const V2& v) const;
    V2 drift(const V2& w) const;

    NormalFormPlant model_;
    OperatingPoint op_;
    RecoveryConfig cfg_;
    V2 shift_;  // drift evaluation offset (zero when anchored at the nominal point)
    V2 w_{0.0, 0.0};
    bool engaged_ = false;
    double engage_time_ = std::numeric_limits<double>::quiet_NaN();
    int64_t singular_skips_ = 0;
};

// Attack-effectiveness ratio: largest internal-coordinate deviation from the
// attack-free run with recovery on, over the same without recovery, both over
// the attack window. Requires column names z1, z2 in all three runs.
double gamma_index(const Trajectory& recovered, const Trajectory& no_recovery,
                   const Trajectory& clean, double t_on, double t_off);

}  // namespace ztk
